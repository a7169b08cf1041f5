import math

import numpy as np
import pytest
from hypothesis import given, settings

from steerlab.errors import InvalidArgumentError, PreconditionError, StructureError
from steerlab.gaussian import TwoModeStandardForm, symplectic_eigenvalues
from steerlab.model import SystemParams, build_model, cooperativity_params, lab_cavity
from steerlab.steady import (
    MechanicalCM,
    analytic_mechanical_cm,
    cross_validate,
    lyapunov_residual,
    mechanical_block,
    numeric_mechanical_cm,
    relative_deviation,
    solve_lyapunov,
    steady_state_cm,
)

from . import oracles
from .conftest import FIG_TAU, model_params, random_model_points

# 50-digit closed-form values at C=(35,15), n=(1,2), r=0.8, tau=140/215000
FIG2C_R08 = (1.2947344458996667818, 1.3651754264088942763, 1.0434608386001364893)
# C=(35,25), r=0.5, n2=0.1, n1=1
FIG3A_N1 = (0.79223617805619528324, 0.76483527829212599571, 0.56003368697214891781)


class TestSolveLyapunov:
    def test_scalar_decay(self):
        V = solve_lyapunov(-0.5 * np.eye(4), np.eye(4))
        np.testing.assert_allclose(V, np.eye(4), rtol=1e-14)

    def test_decoupled_thermal(self):
        params = cooperativity_params(0, 0, 3.0, 0.25, 0.0, tau=0.01)
        V = steady_state_cm(params)
        np.testing.assert_allclose(np.diag(V)[:4], [3.5, 3.5, 0.75, 0.75], rtol=1e-12)
        np.testing.assert_allclose(np.diag(V)[4:], 0.5, rtol=1e-12)

    def test_random_stable_system(self, rng):
        n = 6
        X = rng.normal(size=(n, n))
        A = X - (np.max(np.real(np.linalg.eigvals(X))) + 1.0) * np.eye(n)
        Y = rng.normal(size=(n, n))
        D = Y @ Y.T
        V = solve_lyapunov(A, D)
        np.testing.assert_array_equal(V, V.T)
        assert lyapunov_residual(A, V, D) <= 1e-10 * np.max(np.abs(D))

    def test_unstable_drift(self):
        with pytest.raises(PreconditionError):
            solve_lyapunov(np.diag([1.0, -1.0]), np.eye(2))

    def test_marginal_drift(self):
        with pytest.raises(PreconditionError):
            solve_lyapunov(np.zeros((2, 2)), np.eye(2))

    def test_shape_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            solve_lyapunov(-np.eye(2), np.eye(3))

    def test_golden_point(self):
        params = cooperativity_params(35, 15, 1, 2, 0.8, FIG_TAU)
        A, D = build_model(params)
        V = solve_lyapunov(A, D)
        assert lyapunov_residual(A, V, D) <= 1e-10 * np.max(np.abs(D))
        np.testing.assert_allclose(mechanical_block(V).as_tuple(), FIG2C_R08, rtol=1e-10)

    def test_residual_on_random_draws(self):
        for point in random_model_points(300, seed=5):
            A, D = build_model(cooperativity_params(*point))
            V = solve_lyapunov(A, D)
            assert lyapunov_residual(A, V, D) <= 1e-10 * np.max(np.abs(D))


class TestAnalytic:
    def test_product_state_at_zero_squeezing(self):
        cm = analytic_mechanical_cm(35, 15, 1, 2, 0.0, FIG_TAU)
        assert cm.v12 == 0.0
        assert cm.provenance == "analytic"

    def test_uncoupled_thermal(self):
        cm = analytic_mechanical_cm(0, 0, 1.5, 1.5, 0.9, 0.3)
        assert cm.as_tuple() == pytest.approx((2.0, 2.0, 0.0), rel=1e-15)

    def test_golden_triple(self):
        ref = tuple(float(x) for x in oracles.mechanical_cm(35, 15, 1, 2, 0.8, FIG_TAU))
        assert ref == pytest.approx(FIG2C_R08, rel=1e-16)
        np.testing.assert_allclose(analytic_mechanical_cm(35, 15, 1, 2, 0.8, FIG_TAU).as_tuple(), FIG2C_R08, rtol=1e-14)

    @pytest.mark.parametrize("bad", [(-1, 1, 0, 0, 0.1, 0.1), (1, 1, -0.5, 0, 0.1, 0.1), (1, 1, 0, 0, -0.1, 0.1), (1, 1, 0, 0, 0.1, 0.0)])
    def test_invalid_inputs(self, bad):
        with pytest.raises(InvalidArgumentError):
            analytic_mechanical_cm(*bad)

    @settings(max_examples=200, deadline=None)
    @given(model_params())
    def test_parameter_swap_symmetry(self, p):
        c1, c2, n1, n2, r, tau = p
        fwd = analytic_mechanical_cm(c1, c2, n1, n2, r, tau)
        bwd = analytic_mechanical_cm(c2, c1, n2, n1, r, tau)
        assert (fwd.v1, fwd.v2) == (bwd.v2, bwd.v1)
        assert fwd.v12 == pytest.approx(bwd.v12, rel=1e-15, abs=0.0)

    @settings(max_examples=200, deadline=None)
    @given(model_params())
    def test_analytic_is_physical(self, p):
        cm = analytic_mechanical_cm(*p)
        assert symplectic_eigenvalues(cm.standard_form.matrix())[0] >= 0.5 - 1e-9

    @pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
    def test_state_transfer_limit(self, r):
        target = TwoModeStandardForm.two_mode_squeezed_vacuum(r)
        for cm in (analytic_mechanical_cm(1e6, 1e6, 0, 0, r, 1e-6), numeric_mechanical_cm(1e6, 1e6, 0, 0, r, 1e-6)):
            np.testing.assert_allclose(cm.as_tuple(), (target.a, target.b, target.c_plus), rtol=1e-4)


class TestMechanicalBlock:
    def test_decoupled_is_diagonal(self):
        cm = mechanical_block(steady_state_cm(cooperativity_params(0, 0, 1, 1, 0.7)))
        assert cm.standard_form.c_plus == 0.0 and cm.standard_form.c_minus == 0.0
        assert cm.provenance == "numeric"

    def test_qp_cross_term_is_a_structure_error(self):
        V = steady_state_cm(cooperativity_params(35, 15, 1, 2, 0.8, FIG_TAU))
        V[0, 3] = V[3, 0] = 1e-3
        with pytest.raises(StructureError):
            mechanical_block(V)

    def test_unequal_correlations_are_a_structure_error(self):
        V = steady_state_cm(cooperativity_params(35, 15, 1, 2, 0.8, FIG_TAU))
        V[1, 3] = V[3, 1] = -0.5 * V[0, 2]
        with pytest.raises(StructureError):
            mechanical_block(V)

    def test_fig3a_point(self):
        ref = tuple(float(x) for x in oracles.mechanical_cm(35, 25, 1, 0.1, 0.5, FIG_TAU))
        assert ref == pytest.approx(FIG3A_N1, rel=1e-16)
        cm = numeric_mechanical_cm(35, 25, 1, 0.1, 0.5, FIG_TAU)
        np.testing.assert_allclose(cm.as_tuple(), FIG3A_N1, rtol=1e-8)

    def test_sign_structure_on_random_draws(self):
        for point in random_model_points(300, seed=17):
            cm = numeric_mechanical_cm(*point)
            sf = cm.standard_form
            assert abs(sf.c_plus + sf.c_minus) <= 1e-8


class TestCrossValidate:
    @pytest.mark.parametrize("point", random_model_points(20, seed=23))
    def test_zero_squeezing(self, point):
        p = point[:4] + (0.0, point[5])
        report = cross_validate(cooperativity_params(*p))
        assert report.passed
        assert report.max_deviation <= 1e-12

    def test_random_draws_agree(self):
        for point in random_model_points(500, seed=29):
            report = cross_validate(cooperativity_params(*point))
            assert report.passed, (point, report.max_deviation)

    def test_lab_parameters_from_power(self):
        params = SystemParams(lab_cavity(laser_power=1e-6, n_th=1.0), lab_cavity(laser_power=2e-6), squeezing=0.3)
        assert cross_validate(params).passed

    def test_unequal_damping(self):
        params = SystemParams(lab_cavity(), lab_cavity(mech_damping=2 * math.pi * 150), squeezing=0.3)
        with pytest.raises(PreconditionError):
            cross_validate(params)

    def test_unequal_decay(self):
        params = SystemParams(lab_cavity(), lab_cavity(cavity_decay=2 * math.pi * 200e3), squeezing=0.3)
        with pytest.raises(PreconditionError):
            cross_validate(params)

    def test_unequal_rates_still_solvable_numerically(self):
        params = SystemParams(
            lab_cavity(cooperativity=3.0), lab_cavity(cavity_decay=2 * math.pi * 100e3, cooperativity=5.0), squeezing=0.4
        )
        cm = mechanical_block(steady_state_cm(params))
        assert cm.v12 > 0


def test_relative_deviation_with_zero_reference():
    ref = MechanicalCM(TwoModeStandardForm.squeezed_thermal(2.0, 1.0, 0.0), "analytic")
    num = MechanicalCM(TwoModeStandardForm.squeezed_thermal(2.0, 1.0, 1e-12), "numeric")
    assert relative_deviation(num, ref) == pytest.approx(5e-13)
