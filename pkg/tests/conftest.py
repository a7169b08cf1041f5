import numpy as np
import pytest
from hypothesis import strategies as st

from steerlab.gaussian import TwoModeStandardForm
from steerlab.model import LAB_DAMPING_RATIO

FIG_TAU = LAB_DAMPING_RATIO


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def random_model_points(n, seed=1234, zero_fraction=0.02):
    """Random (C1, C2, n1, n2, r, tau) draws.

    C and n_th are log-uniform on [1e-3, 1e3] and [1e-3, 1e2] with a small
    fraction of exact zeros; r is uniform on [0, 3]; tau is log-uniform on
    [1e-6, 1].
    """
    g = np.random.default_rng(seed)
    c = 10 ** g.uniform(-3, 3, size=(n, 2))
    nth = 10 ** g.uniform(-3, 2, size=(n, 2))
    c[g.random((n, 2)) < zero_fraction] = 0.0
    nth[g.random((n, 2)) < zero_fraction] = 0.0
    r = g.uniform(0, 3, size=n)
    tau = 10 ** g.uniform(-6, 0, size=n)
    return [
        (float(c[i, 0]), float(c[i, 1]), float(nth[i, 0]), float(nth[i, 1]), float(r[i]), float(tau[i]))
        for i in range(n)
    ]


@st.composite
def squeezed_thermal_states(draw):
    """Physical squeezed thermal states: two-mode squeezed vacuum plus local noise."""
    r = draw(st.floats(0.0, 3.0))
    x = draw(st.floats(0.0, 50.0))
    y = draw(st.floats(0.0, 50.0))
    ch, sh = np.cosh(2 * r) / 2, np.sinh(2 * r) / 2
    return TwoModeStandardForm.squeezed_thermal(ch + x, ch + y, sh)


@st.composite
def model_params(draw):
    c1 = draw(st.floats(0.0, 1e3))
    c2 = draw(st.floats(0.0, 1e3))
    n1 = draw(st.floats(0.0, 1e2))
    n2 = draw(st.floats(0.0, 1e2))
    r = draw(st.floats(0.0, 3.0))
    tau = draw(st.floats(1e-6, 1.0))
    return c1, c2, n1, n2, r, tau


# acceptance summary, filled by tests/test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
