"""Steady-state covariance matrices of the optomechanical model.

Two independent routes lead to the mechanical two-mode state:

* numeric: solve ``A V + V A^T = -D`` for the full 8x8 covariance matrix
  and read off the mechanical block;
* analytic: closed-form variances ``v1, v2`` and cross-correlation ``v12``
  valid for equal dampings across the two cavities.

:func:`cross_validate` runs both and reports their disagreement.
"""

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import InvalidArgumentError, NumericDegenerateError, PreconditionError, StructureError
from .gaussian import TwoModeStandardForm, extract_modes
from .model import SystemParams, build_model, check_stability, cooperativity_params, derive_state

DEFAULT_TOL = 1e-10
STRUCTURE_TOL = 1e-8
CROSS_VALIDATION_TOL = 1e-8


def solve_lyapunov(A: np.ndarray, D: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Solve ``A V + V A^T = -D`` for symmetric ``V``.

    The equation is vectorized with the Kronecker sum,
    ``(A (x) I + I (x) A) vec(V) = -vec(D)``, and solved by dense LU with
    partial pivoting. For 8 modes this is a 64x64 system.

    Raises
    ------
    PreconditionError
        If ``A`` is not Hurwitz stable.
    NumericDegenerateError
        If the linear system is singular or the residual cannot be brought
        below ``tol * max|D|``.
    """
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n) or D.shape != (n, n):
        raise InvalidArgumentError(f"drift {A.shape} and diffusion {D.shape} must be square and equal")
    if not check_stability(A):
        raise PreconditionError("drift matrix is not stable; no steady state exists")

    eye = np.eye(n)
    K = np.kron(A, eye) + np.kron(eye, A)
    rhs = -D.reshape(-1)
    try:
        vec = np.linalg.solve(K, rhs)
    except np.linalg.LinAlgError as exc:
        raise NumericDegenerateError(f"Lyapunov system is singular: {exc}") from None

    scale = max(np.max(np.abs(D)), np.finfo(float).tiny)
    for _ in range(3):
        resid = rhs - K @ vec
        if np.max(np.abs(resid)) <= tol * scale:
            break
        vec = vec + np.linalg.solve(K, resid)
    V = vec.reshape(n, n)
    V = 0.5 * (V + V.T)
    if lyapunov_residual(A, V, D) > tol * scale:
        raise NumericDegenerateError("Lyapunov residual exceeds tolerance after refinement")
    return V


def lyapunov_residual(A: np.ndarray, V: np.ndarray, D: np.ndarray) -> float:
    """``max |A V + V A^T + D|``."""
    return float(np.max(np.abs(A @ V + V @ A.T + D)))


@dataclass(frozen=True)
class MechanicalCM:
    standard_form: TwoModeStandardForm
    provenance: Literal["analytic", "numeric"]

    @property
    def v1(self) -> float:
        return self.standard_form.a

    @property
    def v2(self) -> float:
        return self.standard_form.b

    @property
    def v12(self) -> float:
        return self.standard_form.c_plus

    def as_tuple(self):
        return (self.v1, self.v2, self.v12)


def analytic_mechanical_cm(c1, c2, n_th1, n_th2, r, tau) -> MechanicalCM:
    """Closed-form mechanical covariance matrix for equal dampings.

    ::

        v_j = [(1 + 2 n_j)(1 + tau + tau C_j) + C_j cosh 2r] / [2 (1 + tau)(1 + C_j)]
        v12 = sqrt(C1 C2) (1 + tau) sinh 2r
              / [(2 + C1 + C2)(1 + tau)^2 + (tau / 2)(C1 - C2)^2]

    with ``tau = gamma_m / kappa_c``. The cross block is ``diag(v12, -v12)``.
    """
    for name, value in (("c1", c1), ("c2", c2), ("n_th1", n_th1), ("n_th2", n_th2), ("r", r)):
        if not (math.isfinite(value) and value >= 0):
            raise InvalidArgumentError(f"{name} must be non-negative, got {value!r}")
    if not (math.isfinite(tau) and tau > 0):
        raise InvalidArgumentError(f"tau must be positive, got {tau!r}")

    ch, sh = math.cosh(2 * r), math.sinh(2 * r)

    def local(c, n):
        return ((1 + 2 * n) * (1 + tau + tau * c) + c * ch) / (2 * (1 + tau) * (1 + c))

    v12 = (
        math.sqrt(c1 * c2)
        * (1 + tau)
        * sh
        / ((2 + c1 + c2) * (1 + tau) ** 2 + tau / 2 * (c1 - c2) ** 2)
    )
    return MechanicalCM(
        TwoModeStandardForm.squeezed_thermal(local(c1, n_th1), local(c2, n_th2), v12),
        "analytic",
    )


def mechanical_block(V: np.ndarray, atol: float = STRUCTURE_TOL) -> MechanicalCM:
    """Mechanical two-mode state from a full 8x8 steady-state covariance matrix.

    Any departure from squeezed-thermal standard form beyond ``atol``
    (relative to the largest entry) means the model was assembled wrongly
    and raises :class:`StructureError`.
    """
    Vm = extract_modes(V, [0, 1])
    try:
        form = TwoModeStandardForm.from_matrix(Vm, atol=atol)
    except InvalidArgumentError as exc:
        raise StructureError(f"mechanical block is not in standard form: {exc}") from None
    scale = max(form.a, form.b)
    if abs(form.c_plus + form.c_minus) > atol * scale:
        raise StructureError(
            f"mechanical cross block is not diag(c, -c): c+ = {form.c_plus!r}, c- = {form.c_minus!r}"
        )
    return MechanicalCM(form, "numeric")


def steady_state_cm(params: SystemParams, tol: float = DEFAULT_TOL) -> np.ndarray:
    A, D = build_model(params)
    return solve_lyapunov(A, D, tol)


def numeric_mechanical_cm(c1, c2, n_th1, n_th2, r, tau) -> MechanicalCM:
    """Numeric counterpart of :func:`analytic_mechanical_cm` (same arguments)."""
    params = cooperativity_params(c1, c2, n_th1, n_th2, r, tau)
    return mechanical_block(steady_state_cm(params))


def relative_deviation(numeric: MechanicalCM, analytic: MechanicalCM) -> float:
    """Element-wise max relative deviation over ``(v1, v2, v12)``.

    A reference value of exactly zero (``v12`` of a product state) is
    compared relative to the larger local variance instead.
    """
    scale = max(analytic.v1, analytic.v2)
    worst = 0.0
    for x, ref in zip(numeric.as_tuple(), analytic.as_tuple()):
        denom = abs(ref) if ref != 0 else scale
        worst = max(worst, abs(x - ref) / denom)
    return worst


@dataclass(frozen=True)
class CrossValidationReport:
    max_deviation: float
    passed: bool
    analytic: MechanicalCM
    numeric: MechanicalCM


def cross_validate(params: SystemParams, tol: float = CROSS_VALIDATION_TOL) -> CrossValidationReport:
    """Compare the numeric and closed-form mechanical states at one point.

    The closed form assumes equal mechanical dampings and equal cavity decays;
    other inputs raise :class:`PreconditionError`.
    """
    p1, p2 = params.cavities
    if not (
        math.isclose(p1.mech_damping, p2.mech_damping, rel_tol=1e-12)
        and math.isclose(p1.cavity_decay, p2.cavity_decay, rel_tol=1e-12)
    ):
        raise PreconditionError("closed form needs equal mechanical dampings and cavity decays")
    state = derive_state(params)
    s1, s2 = state.cavities
    analytic = analytic_mechanical_cm(
        s1.cooperativity,
        s2.cooperativity,
        s1.thermal_occupation,
        s2.thermal_occupation,
        params.squeezing,
        state.damping_ratio,
    )
    numeric = mechanical_block(steady_state_cm(params))
    dev = relative_deviation(numeric, analytic)
    return CrossValidationReport(dev, dev <= tol, analytic, numeric)
