"""Gaussian EPR steering and Renyi-2 entanglement of a two-mode state.

All quantities are in nats and use the vacuum-variance-1/2 convention of
:mod:`steerlab.gaussian`. In that convention the steering of B by
Gaussian measurements on A is

    G(A->B) = max(0, 1/2 ln(det V_A / (4 det V)))

which for a squeezed thermal state with ``g = a b - c^2`` reduces to
``max(0, ln(a / 2g))``. The Schur-complement form
``max(0, -ln(2 eta_B))``, ``eta_B = sqrt(det(V_B - C^T V_A^-1 C))``,
is the same number (the factor 2 converts from the unit-vacuum convention).
"""

import enum
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import DomainError, InvalidArgumentError, PreconditionError
from .gaussian import (
    PHYSICALITY_TOL,
    VACUUM_VARIANCE,
    TwoModeStandardForm,
    schur_complement,
    standard_form_symplectic_eigenvalues,
    symplectic_form,
)

CLASSIFY_EPS = 1e-10
# plot-resolution threshold for locating one-way windows in sweeps
FIGURE_EPS = 1e-6
LN2 = math.log(2.0)


class Direction(enum.Enum):
    NoWay = "NoWay"
    OneWayAtoB = "OneWayAtoB"
    OneWayBtoA = "OneWayBtoA"
    TwoWay = "TwoWay"

    def __str__(self):
        return self.value


def _direction_label(direction: str) -> str:
    key = direction.replace("->", "to").replace("_", "").replace(" ", "").lower()
    if key in ("atob", "ab"):
        return "AtoB"
    if key in ("btoa", "ba"):
        return "BtoA"
    raise InvalidArgumentError(f"direction must be 'AtoB' or 'BtoA', got {direction!r}")


def _require_physical(state: TwoModeStandardForm):
    nu = standard_form_symplectic_eigenvalues(state)
    if nu[0] < VACUUM_VARIANCE - PHYSICALITY_TOL:
        raise DomainError(f"state is unphysical: smallest symplectic eigenvalue {nu[0]!r} < 1/2")


def gaussian_steering(state: TwoModeStandardForm, direction: str = "AtoB") -> float:
    """Gaussian steerability G(A->B) or G(B->A) in nats."""
    label = _direction_label(direction)
    _require_physical(state)
    local = state.a if label == "AtoB" else state.b
    if state.is_squeezed_thermal:
        _, _, g = _sdg_clamped(state)
        return max(0.0, math.log(local / (2.0 * g)))
    det = state.det
    if det <= 0:
        raise DomainError("covariance matrix has non-positive determinant")
    return max(0.0, 0.5 * math.log(local * local / (4.0 * det)))


def steering_from_schur(state: TwoModeStandardForm, direction: str = "AtoB") -> float:
    """Same quantity as :func:`gaussian_steering`, via the conditional covariance."""
    label = _direction_label(direction)
    _require_physical(state)
    cond = schur_complement(state, "A" if label == "AtoB" else "B")
    eta = math.sqrt(np.linalg.det(cond))
    return max(0.0, -math.log(2.0 * eta))


def steering_asymmetry(state: TwoModeStandardForm) -> float:
    return abs(gaussian_steering(state, "AtoB") - gaussian_steering(state, "BtoA"))


def classify_direction(g_ab: float, g_ba: float, eps: float = CLASSIFY_EPS) -> Direction:
    if g_ab < 0 or g_ba < 0:
        raise InvalidArgumentError("steering values must be non-negative")
    ab, ba = g_ab > eps, g_ba > eps
    if ab and ba:
        return Direction.TwoWay
    if ab:
        return Direction.OneWayAtoB
    if ba:
        return Direction.OneWayBtoA
    return Direction.NoWay


def sdg(state: TwoModeStandardForm) -> Tuple[float, float, float]:
    """``(s, d, g)`` = mean local variance, half difference, ``a b - c^2``."""
    s = (state.a + state.b) / 2
    d = (state.a - state.b) / 2
    g = state.a * state.b - state.c_plus**2
    return s, d, g


def _sdg_clamped(state: TwoModeStandardForm) -> Tuple[float, float, float]:
    # rounding can push g a hair below its physical floor |d| + 1/4 on
    # near-pure states; snap it back so all measures see the same state
    s, d, g = sdg(state)
    return s, d, max(g, abs(d) + 0.25)


def renyi2_entanglement(state: TwoModeStandardForm) -> float:
    """Gaussian Renyi-2 entanglement of a squeezed thermal state, in nats.

    With ``(s, d, g)`` from :func:`sdg`, ``E2 = 1/2 ln h`` where ``h = 1``
    if ``4g >= 4s - 1`` (separable) and otherwise

        h = [((4g + 1) s - sqrt([(4g - 1)^2 - 16 d^2][s^2 - d^2 - g])) / (4 (d^2 + g))]^2

    The general mixed-state quantity needs a numerical optimization and is
    not provided; states with ``c_minus != -c_plus`` are rejected.
    """
    if not state.is_squeezed_thermal:
        raise PreconditionError("Renyi-2 closed form requires a squeezed thermal state (c- = -c+)")
    s, d, g = sdg(state)
    # 4g - (4s - 1) factored; exact for product states
    a, b, c = state.a, state.b, state.c_plus
    if c == 0 or (2 * a - 1) * (2 * b - 1) >= 4 * c * c:
        return 0.0
    if 4 * g < 4 * abs(d) + 1 - 4 * PHYSICALITY_TOL:
        raise DomainError(f"state violates the uncertainty bound: 4g = {4 * g!r} < 4|d| + 1")
    s, d, g = _sdg_clamped(state)
    radicand = ((4 * g - 1) ** 2 - 16 * d * d) * max(s * s - d * d - g, 0.0)
    root = ((4 * g + 1) * s - math.sqrt(radicand)) / (4 * (d * d + g))
    return max(0.0, 0.5 * math.log(root * root))


def entanglement_witness(state: TwoModeStandardForm) -> bool:
    """``det C < 0``: necessary (not sufficient) for two-mode entanglement."""
    return state.c_plus * state.c_minus < 0


def steering_condition_margin(state: TwoModeStandardForm, direction: str = "AtoB") -> float:
    """Smallest eigenvalue of ``V + (i/2)(0_A (+) Omega_B)`` (A->B) or its mirror.

    A negative margin means the Gaussian non-steerability condition is
    violated, i.e. the state is steerable in that direction.
    """
    label = _direction_label(direction)
    block = np.zeros((4, 4))
    om = symplectic_form(1)
    if label == "AtoB":
        block[2:, 2:] = om
    else:
        block[:2, :2] = om
    M = state.matrix() + 0.5j * block
    return float(np.linalg.eigvalsh(M)[0])


@dataclass(frozen=True)
class SteeringReport:
    g_ab: float
    g_ba: float
    asymmetry: float
    direction: Direction
    e2: float
    det_cross: float
    sdg: Tuple[float, float, float]

    def as_dict(self):
        s, d, g = self.sdg
        return {
            "g_ab": self.g_ab,
            "g_ba": self.g_ba,
            "g_delta": self.asymmetry,
            "direction": self.direction.value,
            "e2": self.e2,
            "det_cross": self.det_cross,
            "s": s,
            "d": d,
            "g": g,
        }


def steering_report(state: TwoModeStandardForm, eps: float = CLASSIFY_EPS) -> SteeringReport:
    g_ab = gaussian_steering(state, "AtoB")
    g_ba = gaussian_steering(state, "BtoA")
    return SteeringReport(
        g_ab=g_ab,
        g_ba=g_ba,
        asymmetry=abs(g_ab - g_ba),
        direction=classify_direction(g_ab, g_ba, eps),
        e2=renyi2_entanglement(state),
        det_cross=state.c_plus * state.c_minus,
        sdg=sdg(state),
    )
