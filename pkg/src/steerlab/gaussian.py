"""Covariance-matrix algebra for Gaussian states.

Conventions (fixed throughout the package):

* hbar = 1 and the vacuum has unit-free quadrature variance 1/2, i.e.
  ``V[k, l] = <u_k u_l + u_l u_k> / 2``.
* Quadratures are interleaved per mode: ``(q1, p1, q2, p2, ...)``.

A covariance matrix is a plain ``(2n, 2n)`` float ndarray. Two-mode states
in standard form get their own small value type, :class:`TwoModeStandardForm`.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, InvalidArgumentError, NumericDegenerateError

VACUUM_VARIANCE = 0.5
PHYSICALITY_TOL = 1e-9

_OMEGA_1 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def symplectic_form(n: int) -> np.ndarray:
    """Block-diagonal symplectic form ``Omega`` for ``n`` modes."""
    if n < 1:
        raise InvalidArgumentError(f"number of modes must be positive, got {n}")
    return np.kron(np.eye(n), _OMEGA_1)


def num_modes(V: np.ndarray) -> int:
    V = np.asarray(V)
    if V.ndim != 2 or V.shape[0] != V.shape[1] or V.shape[0] % 2:
        raise InvalidArgumentError(f"covariance matrix must be 2n x 2n, got shape {V.shape}")
    return V.shape[0] // 2


def is_symmetric(V: np.ndarray, rtol: float = 1e-12) -> bool:
    V = np.asarray(V, dtype=float)
    scale = max(np.max(np.abs(V)), np.finfo(float).tiny)
    return bool(np.max(np.abs(V - V.T)) <= rtol * scale)


def vacuum(n: int) -> np.ndarray:
    return VACUUM_VARIANCE * np.eye(2 * n)


def thermal(occupations: Sequence[float]) -> np.ndarray:
    """Product of thermal states with the given mean occupation numbers."""
    occ = np.asarray(occupations, dtype=float)
    return np.diag(np.repeat(occ + 0.5, 2))


def extract_modes(V: np.ndarray, indices: Sequence[int]) -> np.ndarray:
    """Reduced covariance matrix of the modes in ``indices`` (partial trace).

    The output follows the order of ``indices``, so ``[1, 0]`` also swaps
    the two modes.
    """
    n = num_modes(V)
    idx = [int(i) for i in indices]
    if not idx:
        raise InvalidArgumentError("at least one mode index is required")
    if len(set(idx)) != len(idx):
        raise InvalidArgumentError(f"mode indices must be distinct, got {idx}")
    for i in idx:
        if not 0 <= i < n:
            raise InvalidArgumentError(f"mode index {i} out of range for {n} modes")
    rows = np.array([[2 * i, 2 * i + 1] for i in idx]).ravel()
    return np.asarray(V, dtype=float)[np.ix_(rows, rows)].copy()


def symplectic_eigenvalues(V: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of ``V``, ascending.

    Computed as the moduli of the eigenvalues of ``i Omega V``, which come
    in ``+-nu`` pairs; one representative of each pair is returned.

    Raises
    ------
    DomainError
        If ``V`` is not symmetric positive definite.
    """
    V = np.asarray(V, dtype=float)
    n = num_modes(V)
    if not is_symmetric(V, rtol=1e-9):
        raise DomainError("covariance matrix is not symmetric")
    try:
        np.linalg.cholesky(V)
    except np.linalg.LinAlgError:
        raise DomainError("covariance matrix is not positive definite") from None
    ev = np.abs(np.linalg.eigvals(1j * symplectic_form(n) @ V))
    return np.sort(ev)[::2]


def is_physical(V: np.ndarray, tol: float = PHYSICALITY_TOL) -> bool:
    """True iff the smallest symplectic eigenvalue is at least ``1/2 - tol``."""
    try:
        nu = symplectic_eigenvalues(V)
    except DomainError:
        return False
    return bool(nu[0] >= VACUUM_VARIANCE - tol)


@dataclass(frozen=True)
class TwoModeStandardForm:
    """Two-mode covariance matrix ``[[a I, C], [C, b I]]``, ``C = diag(c_plus, c_minus)``.

    Mode A is the first mode, B the second. Squeezed thermal states, the
    only kind the optomechanical model produces, have ``c_minus = -c_plus``.
    """

    a: float
    b: float
    c_plus: float
    c_minus: float

    def __post_init__(self):
        for name in ("a", "b"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < VACUUM_VARIANCE - PHYSICALITY_TOL:
                raise DomainError(f"local variance {name}={v!r} is below the vacuum level 1/2")
        if not (np.isfinite(self.c_plus) and np.isfinite(self.c_minus)):
            raise DomainError("cross correlations must be finite")

    @classmethod
    def squeezed_thermal(cls, v1: float, v2: float, v12: float) -> "TwoModeStandardForm":
        return cls(float(v1), float(v2), float(v12), -float(v12))

    @classmethod
    def two_mode_squeezed_vacuum(cls, r: float) -> "TwoModeStandardForm":
        ch, sh = np.cosh(2 * r) / 2, np.sinh(2 * r) / 2
        return cls(ch, ch, sh, -sh)

    @classmethod
    def from_matrix(cls, V: np.ndarray, atol: float = 1e-8) -> "TwoModeStandardForm":
        """Read a 4x4 matrix already in standard form.

        Entries that must vanish, and the equal-diagonal constraints, are
        checked against ``atol`` relative to the largest entry.
        """
        V = np.asarray(V, dtype=float)
        if V.shape != (4, 4):
            raise InvalidArgumentError(f"expected a 4x4 matrix, got {V.shape}")
        scale = max(np.max(np.abs(V)), 1.0)
        expected_zero = [V[0, 1], V[1, 0], V[2, 3], V[3, 2], V[0, 3], V[3, 0], V[1, 2], V[2, 1]]
        off = max(
            max(abs(x) for x in expected_zero),
            abs(V[0, 0] - V[1, 1]),
            abs(V[2, 2] - V[3, 3]),
            abs(V[0, 2] - V[2, 0]),
            abs(V[1, 3] - V[3, 1]),
        )
        if off > atol * scale:
            raise InvalidArgumentError(f"matrix is not in two-mode standard form (defect {off:.3e})")
        entries = (
            0.5 * (V[0, 0] + V[1, 1]),
            0.5 * (V[2, 2] + V[3, 3]),
            0.5 * (V[0, 2] + V[2, 0]),
            0.5 * (V[1, 3] + V[3, 1]),
        )
        # "+ 0.0" turns a signed zero into +0.0
        return cls(*(float(x) + 0.0 for x in entries))

    def matrix(self) -> np.ndarray:
        a, b, cp, cm = self.a, self.b, self.c_plus, self.c_minus
        return np.array(
            [
                [a, 0.0, cp, 0.0],
                [0.0, a, 0.0, cm],
                [cp, 0.0, b, 0.0],
                [0.0, cm, 0.0, b],
            ]
        )

    def swapped(self) -> "TwoModeStandardForm":
        return TwoModeStandardForm(self.b, self.a, self.c_plus, self.c_minus)

    @property
    def det(self) -> float:
        return (self.a * self.b - self.c_plus**2) * (self.a * self.b - self.c_minus**2)

    @property
    def is_squeezed_thermal(self) -> bool:
        return bool(np.isclose(self.c_minus, -self.c_plus, rtol=1e-9, atol=1e-15))


def standard_form_symplectic_eigenvalues(state: TwoModeStandardForm) -> np.ndarray:
    """Closed-form roots of ``nu^4 - Delta nu^2 + det V = 0``, ascending.

    ``Delta = a^2 + b^2 + 2 c_plus c_minus``. Used as an independent check on
    :func:`symplectic_eigenvalues`.
    """
    a, b, cp, cm = state.a, state.b, state.c_plus, state.c_minus
    delta = a * a + b * b + 2 * cp * cm
    det = state.det
    # Delta^2 - 4 det rewritten to avoid cancellation near degenerate spectra
    disc2 = (a * a - b * b) ** 2 + 4 * (a * cp + b * cm) * (a * cm + b * cp)
    disc = np.sqrt(max(disc2, 0.0))
    hi = (delta + disc) / 2
    # the small root via det / hi avoids cancellation
    lo = det / hi if hi > 0 else 0.0
    return np.sqrt(np.array([max(lo, 0.0), hi]))


def schur_complement(state: TwoModeStandardForm, conditioned_on: str = "A") -> np.ndarray:
    """Schur complement of one local block: ``V_B - C^T V_A^{-1} C`` for ``"A"``.

    This is the conditional covariance of the other mode after a Gaussian
    measurement on ``conditioned_on``.
    """
    label = conditioned_on.upper()
    if label not in ("A", "B"):
        raise InvalidArgumentError(f"mode label must be 'A' or 'B', got {conditioned_on!r}")
    V = state.matrix()
    cond, other = (slice(0, 2), slice(2, 4)) if label == "A" else (slice(2, 4), slice(0, 2))
    block = V[cond, cond]
    if abs(np.linalg.det(block)) <= np.finfo(float).tiny:
        raise NumericDegenerateError(f"conditioning block of mode {label} is singular")
    cross = V[cond, other]
    return V[other, other] - cross.T @ np.linalg.solve(block, cross)
