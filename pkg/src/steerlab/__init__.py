"""Steady-state Gaussian EPR steering of two mirrors in a squeezed-light-driven double cavity."""

from .errors import (
    ConfigError,
    DomainError,
    InvalidArgumentError,
    NumericDegenerateError,
    PreconditionError,
    SteerlabError,
    StructureError,
)
from .gaussian import (
    TwoModeStandardForm,
    extract_modes,
    is_physical,
    schur_complement,
    symplectic_eigenvalues,
    symplectic_form,
)
from .measures import (
    Direction,
    SteeringReport,
    classify_direction,
    entanglement_witness,
    gaussian_steering,
    renyi2_entanglement,
    steering_asymmetry,
    steering_condition_margin,
    steering_report,
)
from .model import (
    CavityParams,
    DerivedState,
    SystemParams,
    build_diffusion,
    build_drift,
    check_stability,
    check_validity,
    cooperativity_params,
    derive_state,
    lab_cavity,
    mean_thermal_occupation,
)
from .steady import (
    MechanicalCM,
    analytic_mechanical_cm,
    cross_validate,
    mechanical_block,
    numeric_mechanical_cm,
    solve_lyapunov,
)
from .sweep import SweepSpec, figure_preset, parse_config, run_sweep

__version__ = "0.1.0"

__all__ = [
    "analytic_mechanical_cm",
    "build_diffusion",
    "build_drift",
    "CavityParams",
    "check_stability",
    "check_validity",
    "classify_direction",
    "ConfigError",
    "cooperativity_params",
    "cross_validate",
    "derive_state",
    "DerivedState",
    "Direction",
    "DomainError",
    "entanglement_witness",
    "extract_modes",
    "figure_preset",
    "gaussian_steering",
    "InvalidArgumentError",
    "is_physical",
    "lab_cavity",
    "mean_thermal_occupation",
    "mechanical_block",
    "MechanicalCM",
    "numeric_mechanical_cm",
    "NumericDegenerateError",
    "parse_config",
    "PreconditionError",
    "renyi2_entanglement",
    "run_sweep",
    "schur_complement",
    "solve_lyapunov",
    "steering_asymmetry",
    "steering_condition_margin",
    "steering_report",
    "SteeringReport",
    "SteerlabError",
    "StructureError",
    "SweepSpec",
    "symplectic_eigenvalues",
    "symplectic_form",
    "SystemParams",
    "TwoModeStandardForm",
]
