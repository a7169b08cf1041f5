"""Linearized double-cavity optomechanical model in the red-sideband RWA.

Each cavity ``j`` holds an optical mode coupled by radiation pressure to one
movable mirror. The two cavities share a two-mode squeezed input field with
squeezing parameter ``r``. After linearization around the classical steady
state, with the effective detuning set to the red sideband
(``Delta'_j = -omega_mj``) and counter-rotating terms dropped, the
fluctuation quadratures

    u = (q_m1, p_m1, q_m2, p_m2, q_c1, p_c1, q_c2, p_c2)

obey ``du/dt = A u + noise`` with diffusion matrix ``D``. This module turns
laboratory parameters into ``A`` and ``D``.

SI units throughout: rates and frequencies in rad/s, masses in kg, lengths
in m, powers in W, temperatures in K.
"""

import math
import warnings
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import numpy as np

from .errors import InvalidArgumentError

# exact SI values (CODATA 2018 / 2019 SI redefinition)
PLANCK = 6.62607015e-34
HBAR = PLANCK / (2 * math.pi)
BOLTZMANN = 1.380649e-23

TWO_PI = 2 * math.pi


class ValidityWarning(UserWarning):
    """A parameter point sits outside the regime where the linear RWA model holds."""


def mean_thermal_occupation(mech_freq: float, temperature: float) -> float:
    """Bose-Einstein occupation ``1 / (exp(hbar w / kB T) - 1)``; zero at ``T = 0``."""
    if temperature < 0:
        raise InvalidArgumentError(f"temperature must be non-negative, got {temperature}")
    if mech_freq <= 0:
        raise InvalidArgumentError(f"mechanical frequency must be positive, got {mech_freq}")
    if temperature == 0:
        return 0.0
    x = HBAR * mech_freq / (BOLTZMANN * temperature)
    if x > 700:
        return 0.0
    return 1.0 / math.expm1(x)


@dataclass(frozen=True)
class CavityParams:
    """Physical parameters of one cavity plus its movable mirror.

    The thermal bath is given either as ``temperature`` or directly as
    ``n_th``. ``cooperativity`` optionally overrides the value implied by the
    laser power; the effective coupling is then ``sqrt(C gamma kappa) / 2``.
    """

    length: float
    cavity_freq: float
    cavity_decay: float
    laser_freq: float
    laser_power: float
    mirror_mass: float
    mech_freq: float
    mech_damping: float
    temperature: Optional[float] = None
    n_th: Optional[float] = None
    cooperativity: Optional[float] = None

    def __post_init__(self):
        positive = (
            "length",
            "cavity_freq",
            "cavity_decay",
            "laser_freq",
            "mirror_mass",
            "mech_freq",
            "mech_damping",
        )
        for name in positive:
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise InvalidArgumentError(f"{name} must be strictly positive, got {value!r}")
        if not (np.isfinite(self.laser_power) and self.laser_power >= 0):
            raise InvalidArgumentError(f"laser_power must be non-negative, got {self.laser_power!r}")
        if (self.temperature is None) == (self.n_th is None):
            raise InvalidArgumentError("give exactly one of temperature or n_th")
        for name in ("temperature", "n_th", "cooperativity"):
            value = getattr(self, name)
            if value is not None and not (np.isfinite(value) and value >= 0):
                raise InvalidArgumentError(f"{name} must be non-negative, got {value!r}")

    @property
    def thermal_occupation(self) -> float:
        if self.n_th is not None:
            return float(self.n_th)
        return mean_thermal_occupation(self.mech_freq, self.temperature)


@dataclass(frozen=True)
class SystemParams:
    cavity1: CavityParams
    cavity2: CavityParams
    squeezing: float = 0.0
    # resonance omega_s = omega_c is assumed; kept as metadata only
    squeezing_freq: Optional[float] = None

    def __post_init__(self):
        if not (np.isfinite(self.squeezing) and self.squeezing >= 0):
            raise InvalidArgumentError(f"squeezing must be non-negative, got {self.squeezing!r}")

    @property
    def cavities(self):
        return (self.cavity1, self.cavity2)

    def swapped(self) -> "SystemParams":
        return replace(self, cavity1=self.cavity2, cavity2=self.cavity1)


def lab_cavity(**overrides) -> CavityParams:
    """Cavity with the default laboratory parameter set.

    Defaults: 145 ng mirror at 2pi x 947 kHz damped at 2pi x 140 Hz, 25 mm
    cavity with decay 2pi x 215 kHz and resonance 2pi x 5.26e14 Hz, pumped at
    2pi x 2.82e14 Hz with 12 mW. Bath defaults to ``n_th = 0``.
    """
    base = dict(
        length=25e-3,
        cavity_freq=TWO_PI * 5.26e14,
        cavity_decay=TWO_PI * 215e3,
        laser_freq=TWO_PI * 2.82e14,
        laser_power=12e-3,
        mirror_mass=145e-12,
        mech_freq=TWO_PI * 947e3,
        mech_damping=TWO_PI * 140.0,
    )
    base.update(overrides)
    if base.get("temperature") is None and base.get("n_th") is None:
        base["n_th"] = 0.0
    return CavityParams(**base)


LAB_DAMPING_RATIO = (TWO_PI * 140.0) / (TWO_PI * 215e3)


def cooperativity_params(
    c1: float,
    c2: float,
    n_th1: float,
    n_th2: float,
    r: float,
    tau: float = LAB_DAMPING_RATIO,
    cavity_decay: float = TWO_PI * 215e3,
) -> SystemParams:
    """System with directly specified cooperativities and equal dampings.

    Both mirrors get ``mech_damping = tau * cavity_decay``; the other lab
    defaults only enter validity warnings.
    """
    if not tau > 0:
        raise InvalidArgumentError(f"damping ratio must be positive, got {tau!r}")
    common = dict(cavity_decay=cavity_decay, mech_damping=tau * cavity_decay)
    return SystemParams(
        lab_cavity(n_th=n_th1, cooperativity=c1, **common),
        lab_cavity(n_th=n_th2, cooperativity=c2, **common),
        squeezing=r,
    )


@dataclass(frozen=True)
class CavityState:
    """Steady-state classical quantities for one cavity at the red sideband."""

    drive_coupling: float
    effective_detuning: float
    bare_detuning: float
    phase: float
    mean_field_modulus: float
    mean_mirror_amplitude: complex
    single_photon_coupling: float
    effective_coupling: float
    cooperativity: float
    thermal_occupation: float


@dataclass(frozen=True)
class DerivedState:
    cavity1: CavityState
    cavity2: CavityState
    squeeze_N: float
    squeeze_M: float
    damping_ratio: Optional[float]

    @property
    def cavities(self):
        return (self.cavity1, self.cavity2)


def cooperativity_from_power(cav: CavityParams) -> float:
    """Closed-form cooperativity from laboratory parameters.

    ``C = 8 wc^2 P / (gamma mu wm wL l^2 [(kappa/2)^2 + wm^2])``
    """
    return (
        8
        * cav.cavity_freq**2
        * cav.laser_power
        / (
            cav.mech_damping
            * cav.mirror_mass
            * cav.mech_freq
            * cav.laser_freq
            * cav.length**2
            * ((cav.cavity_decay / 2) ** 2 + cav.mech_freq**2)
        )
    )


def _derive_cavity(cav: CavityParams) -> CavityState:
    wm, kappa, gamma = cav.mech_freq, cav.cavity_decay, cav.mech_damping
    detuning = -wm
    eps = math.sqrt(2 * kappa * cav.laser_power / (HBAR * cav.laser_freq))
    g0 = (cav.cavity_freq / cav.length) * math.sqrt(HBAR / (cav.mirror_mass * wm))
    if cav.cooperativity is None:
        a_mod = eps / math.sqrt((kappa / 2) ** 2 + wm**2)
        chi = g0 * a_mod
        coop = 4 * chi**2 / (gamma * kappa)
    else:
        coop = float(cav.cooperativity)
        chi = math.sqrt(coop * gamma * kappa) / 2
        a_mod = chi / g0
    # a_s = -i|a_s| fixes tan(phi) = -2 Delta' / kappa
    phase = math.atan2(-2 * detuning, kappa)
    b_s = -2j * g0 * a_mod**2 / (gamma + 2j * wm)
    bare = detuning + 2 * g0 * b_s.real
    return CavityState(
        drive_coupling=eps,
        effective_detuning=detuning,
        bare_detuning=bare,
        phase=phase,
        mean_field_modulus=a_mod,
        mean_mirror_amplitude=complex(b_s),
        single_photon_coupling=g0,
        effective_coupling=chi,
        cooperativity=coop,
        thermal_occupation=cav.thermal_occupation,
    )


def derive_state(params: SystemParams) -> DerivedState:
    c1, c2 = (_derive_cavity(c) for c in params.cavities)
    r = params.squeezing
    p1, p2 = params.cavities
    tau = None
    if math.isclose(p1.mech_damping, p2.mech_damping, rel_tol=1e-12) and math.isclose(
        p1.cavity_decay, p2.cavity_decay, rel_tol=1e-12
    ):
        tau = p1.mech_damping / p1.cavity_decay
    return DerivedState(c1, c2, math.sinh(r) ** 2, math.sinh(r) * math.cosh(r), tau)


class ModelMatrices(NamedTuple):
    drift: np.ndarray
    diffusion: np.ndarray


def build_drift(state: DerivedState, params: SystemParams) -> np.ndarray:
    """Drift matrix ``A = [[A_gamma, A_chi+], [A_chi-, A_kappa]]`` with 4x4 diagonal blocks."""
    gammas = np.repeat([c.mech_damping for c in params.cavities], 2)
    kappas = np.repeat([c.cavity_decay for c in params.cavities], 2)
    chis = np.repeat([c.effective_coupling for c in state.cavities], 2)
    A = np.zeros((8, 8))
    A[:4, :4] = np.diag(-gammas / 2)
    A[4:, 4:] = np.diag(-kappas / 2)
    A[:4, 4:] = np.diag(chis)
    A[4:, :4] = np.diag(-chis)
    return A


def build_diffusion(state: DerivedState, params: SystemParams) -> np.ndarray:
    """Diffusion matrix ``D = D_gamma (+) D_kappa``.

    The optical block carries the squeezed-input correlations: ``+sinh 2r``
    between the two q quadratures and ``-sinh 2r`` between the p quadratures.
    """
    r = params.squeezing
    g1, g2 = (c.mech_damping for c in params.cavities)
    k1, k2 = (c.cavity_decay for c in params.cavities)
    n1, n2 = (c.thermal_occupation for c in state.cavities)
    D = np.zeros((8, 8))
    D[:4, :4] = np.diag([g1 * (n1 + 0.5)] * 2 + [g2 * (n2 + 0.5)] * 2)
    ch, sh = math.cosh(2 * r), math.sinh(2 * r)
    cross = math.sqrt(k1 * k2) / 2 * sh
    D[4:, 4:] = np.array(
        [
            [k1 / 2 * ch, 0.0, cross, 0.0],
            [0.0, k1 / 2 * ch, 0.0, -cross],
            [cross, 0.0, k2 / 2 * ch, 0.0],
            [0.0, -cross, 0.0, k2 / 2 * ch],
        ]
    )
    return D


def build_model(params: SystemParams) -> ModelMatrices:
    state = derive_state(params)
    return ModelMatrices(build_drift(state, params), build_diffusion(state, params))


def check_stability(A: np.ndarray, tol: float = 0.0) -> bool:
    """True iff every eigenvalue of ``A`` has real part below ``-tol``."""
    ev = np.linalg.eigvals(np.asarray(A, dtype=float))
    return bool(np.all(ev.real < -tol))


def check_validity(
    params: SystemParams,
    state: Optional[DerivedState] = None,
    min_quality: float = 100.0,
    min_sideband_ratio: float = 2.0,
    min_mean_field: float = 100.0,
    emit: bool = True,
) -> list:
    """Messages for every cavity outside the high-Q, resolved-sideband, strong-drive regime.

    The list is returned; with ``emit`` each message is also raised as a
    :class:`ValidityWarning`. Nothing here is ever an error.
    """
    if state is None:
        state = derive_state(params)
    messages = []
    for j, (cav, st) in enumerate(zip(params.cavities, state.cavities), start=1):
        q = cav.mech_freq / cav.mech_damping
        if q < min_quality:
            messages.append(f"cavity {j}: mechanical quality factor {q:.3g} < {min_quality:g}")
        ratio = cav.mech_freq / cav.cavity_decay
        if ratio < min_sideband_ratio:
            messages.append(
                f"cavity {j}: omega_m / kappa_c = {ratio:.3g} < {min_sideband_ratio:g}, "
                "not resolved-sideband"
            )
        if st.mean_field_modulus < min_mean_field:
            messages.append(
                f"cavity {j}: weak drive, |a_s| = {st.mean_field_modulus:.3g} < {min_mean_field:g}"
            )
    if emit:
        for m in messages:
            warnings.warn(m, ValidityWarning, stacklevel=2)
    return messages
