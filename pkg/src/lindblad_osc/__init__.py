"""Exact Gaussian dynamics, density operator and entropy of the damped quantum oscillator.

The closed-form evolution lives in :mod:`lindblad_osc.evolution` and
:mod:`lindblad_osc.thermo`; :mod:`lindblad_osc.oracle` holds independent
numerical checks (moment ODEs, number-basis master equation, Fokker-Planck
residuals, phase-space quadrature).
"""
from .errors import (
    ConfigError,
    ConstraintViolation,
    ConvergenceError,
    InvalidStateError,
    LindbladOscError,
    NumericalConsistencyError,
    ParameterError,
    TruncationError,
)
from .evolution import (
    AsymptoticCovariances,
    Covariances,
    GaussianState,
    PropagatorScalars,
    asymptotic_covariances,
    b_w_expanded,
    covariances,
    evolve,
    initial_wave_packet,
    mean_trajectory,
    phase_space_scales,
    propagator_scalars,
    wigner_value,
)
from .model import (
    ConstraintReport,
    DiffusionCoefficients,
    OscillatorParams,
    require_valid,
    thermal_coefficients,
    validate_constraints,
)
from .thermo import (
    DensityOperatorCoefficients,
    ThermoReport,
    asymptotic_nu,
    density_operator_coefficients,
    effective_temperature,
    entropy,
    entropy_from_temperature,
    expected_log_rho,
    nu_of_b_w,
    nu_of_delta,
    purity,
    thermo_report,
)

__version__ = "0.1.0"
