"""Entropy, effective temperature and the explicit Gaussian density operator.

For a single-mode Gaussian state the whole thermodynamic content sits in one
number, the effective occupation ``nu = sqrt(delta)/hbar - 1/2`` where
``delta`` is the covariance determinant.  ``nu = 0`` is a pure state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstraintViolation, InvalidStateError, ParameterError
from .evolution import GaussianState, _dissipation_constants
from .model import DiffusionCoefficients, OscillatorParams

__all__ = [
    "DELTA_RTOL",
    "ThermoReport",
    "DensityOperatorCoefficients",
    "nu_of_delta",
    "nu_of_b_w",
    "entropy",
    "entropy_from_temperature",
    "effective_temperature",
    "purity",
    "asymptotic_nu",
    "expected_log_rho",
    "log_ratio_via_arccosh",
    "density_operator_coefficients",
    "thermo_report",
]

# states with delta within this relative distance below hbar^2/4 are clamped to pure
DELTA_RTOL = 1e-12
# below this occupation the entropy switches to its leading-order series
_NU_SERIES = 1e-9


@dataclass(frozen=True)
class ThermoReport:
    t: float | np.ndarray
    nu: float | np.ndarray
    entropy: float | np.ndarray
    t_eff: float | np.ndarray
    purity: float | np.ndarray
    delta: float | np.ndarray


@dataclass(frozen=True)
class DensityOperatorCoefficients:
    """Gaussian density operator ``normalization * exp(-X)`` in symmetrized form.

    ``X = quad_qq (q-<q>)^2 + quad_pp (p-<p>)^2 + quad_cross {(q-<q>), (p-<p>)}``
    where ``{A, B} = AB + BA``.  ``xi`` is the complex determinant of the
    standard-ordered Wigner function and ``log_term = log(4 xi/(4 delta - hbar^2))/2``;
    the ``xi`` dependence cancels in ``normalization``.  For a pure state
    ``pure`` is set and the exponent coefficients are infinite.
    """

    normalization: float
    kappa: float
    quad_qq: float
    quad_pp: float
    quad_cross: float
    log_term: complex
    xi: complex
    mean_q: float
    mean_p: float
    pure: bool = False


def _clamp_delta(params: OscillatorParams, delta):
    bound = params.hbar**2 / 4
    delta = np.asarray(delta, dtype=float)
    if np.any(~np.isfinite(delta)):
        raise InvalidStateError("delta must be finite")
    if np.any(delta < bound * (1 - DELTA_RTOL)):
        raise InvalidStateError(
            f"delta = {np.min(delta)!r} is below the uncertainty bound hbar^2/4 = {bound!r}"
        )
    return np.maximum(delta, bound)


def _scalar(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


def nu_of_delta(params: OscillatorParams, delta):
    """Effective occupation from the covariance determinant."""
    delta = _clamp_delta(params, delta)
    return _scalar(np.maximum(np.sqrt(delta) / params.hbar - 0.5, 0.0))


def nu_of_b_w(params: OscillatorParams, b_w):
    """Effective occupation from ``B_w`` via ``delta = -(hbar omega / 2 Omega)^2 B_w``."""
    root = params.omega / (2 * params.big_omega) * np.sqrt(-np.asarray(b_w, dtype=float))
    if np.any(~np.isfinite(root)) or np.any(root < 0.5 * (1 - DELTA_RTOL)):
        raise InvalidStateError("B_w gives a state below the uncertainty bound")
    return _scalar(np.maximum(root - 0.5, 0.0))


def entropy(nu, boltzmann: float = 1.0):
    """Von Neumann entropy ``k[(nu+1) ln(nu+1) - nu ln nu]`` of a Gaussian state."""
    nu = np.asarray(nu, dtype=float)
    if np.any(nu < 0) or np.any(~np.isfinite(nu)):
        raise ParameterError("nu must be finite and non-negative")
    small = nu < _NU_SERIES
    safe = np.where(small, 1.0, nu)
    exact = (safe + 1) * np.log1p(safe) - safe * np.log(safe)
    tiny = np.where(nu > 0, nu * (1 - np.log(np.where(nu > 0, nu, 1.0))), 0.0)
    return _scalar(boltzmann * np.where(small, tiny, exact))


def effective_temperature(params: OscillatorParams, nu):
    """Temperature of the thermal state whose Bose occupation equals ``nu``; 0 at ``nu = 0``."""
    nu = np.asarray(nu, dtype=float)
    if np.any(nu < 0) or np.any(~np.isfinite(nu)):
        raise ParameterError("nu must be finite and non-negative")
    safe = np.where(nu > 0, nu, 1.0)
    t_eff = params.hbar * params.omega / (params.boltzmann * np.log1p(1 / safe))
    return _scalar(np.where(nu > 0, t_eff, 0.0))


def entropy_from_temperature(params: OscillatorParams, t_eff):
    """Thermal-oscillator entropy written through the effective temperature."""
    t_eff = np.asarray(t_eff, dtype=float)
    if np.any(t_eff < 0):
        raise ParameterError("t_eff must be non-negative")
    safe = np.where(t_eff > 0, t_eff, 1.0)
    x = params.hbar * params.omega / (params.boltzmann * safe)
    s = params.hbar * params.omega / (safe * np.expm1(x)) - params.boltzmann * np.log(-np.expm1(-x))
    return _scalar(np.where(t_eff > 0, s, 0.0))


def purity(nu):
    """``Tr rho^2 = 1/(2 nu + 1)``."""
    return _scalar(1 / (2 * np.asarray(nu, dtype=float) + 1))


def asymptotic_nu(params: OscillatorParams, d: DiffusionCoefficients) -> float:
    """Limit of the effective occupation for ``t -> infinity``."""
    params.require_damping()
    _, _, d1, d2 = _dissipation_constants(params, d)
    lam, big_om = params.lam, params.big_omega
    radicand = d2**2 / lam**2 - abs(d1) ** 2 / (lam**2 + big_om**2)
    if radicand < 0:
        raise ConstraintViolation(f"negative stationary radicand {radicand!r}")
    return max(params.omega * math.sqrt(radicand) / (2 * big_om) - 0.5, 0.0)


def log_ratio_via_arccosh(params: OscillatorParams, delta: float) -> float:
    """``arccosh(1 + 2 hbar^2/(4 delta - hbar^2))`` evaluated as ``ln(x + sqrt(x^2 - 1))``."""
    hb = params.hbar
    x = 1 + 2 * hb**2 / (4 * delta - hb**2)
    return math.log(x + math.sqrt(x * x - 1))


def expected_log_rho(params: OscillatorParams, delta: float) -> float:
    """``<ln rho>``; equals ``-S/k``.  Returns ``-inf`` on the pure-state boundary."""
    delta = float(_clamp_delta(params, delta))
    hb = params.hbar
    root = math.sqrt(delta)
    if root - hb / 2 <= DELTA_RTOL * hb:
        return -math.inf
    # delta - hbar^2/4 factored to avoid cancellation close to a pure state
    excess = (root - hb / 2) * (root + hb / 2)
    return (math.log(hb) - 0.5 * math.log(excess)
            - root / hb * math.log((2 * root + hb) / (2 * root - hb)))


def density_operator_coefficients(params: OscillatorParams, state: GaussianState) -> DensityOperatorCoefficients:
    """Coefficients of the Gaussian density operator reproducing ``state``."""
    hb = params.hbar
    phi, psi, chi = state.sigma_pp, state.sigma_qq, state.sigma_pq
    delta = float(_clamp_delta(params, state.delta))
    xi = complex(phi * psi - (chi - 0.5j * hb) ** 2)
    if math.sqrt(delta) - hb / 2 <= DELTA_RTOL * hb:
        return DensityOperatorCoefficients(
            normalization=math.inf, kappa=math.inf, quad_qq=math.inf, quad_pp=math.inf,
            quad_cross=math.copysign(math.inf, -chi) if chi else 0.0,
            log_term=complex(math.inf), xi=xi,
            mean_q=float(state.mean_q), mean_p=float(state.mean_p), pure=True,
        )
    kappa = log_ratio_via_arccosh(params, delta) / (2 * hb * math.sqrt(delta))
    log_term = 0.5 * np.log(4 * xi / (4 * delta - hb**2))
    normalization = hb / np.sqrt(xi) * np.exp(log_term)
    if abs(normalization.imag) > 1e-12 * abs(normalization.real):
        raise InvalidStateError("density-operator prefactor is not real")
    return DensityOperatorCoefficients(
        normalization=float(normalization.real),
        kappa=kappa,
        quad_qq=kappa * phi,
        quad_pp=kappa * psi,
        quad_cross=-kappa * chi,
        log_term=complex(log_term),
        xi=xi,
        mean_q=float(state.mean_q),
        mean_p=float(state.mean_p),
    )


def thermo_report(params: OscillatorParams, state: GaussianState, t) -> ThermoReport:
    """Occupation, entropy, effective temperature and purity of ``state``."""
    delta = state.delta
    nu = nu_of_delta(params, delta)
    return ThermoReport(
        t=_scalar(t),
        nu=nu,
        entropy=entropy(nu, params.boltzmann),
        t_eff=effective_temperature(params, nu),
        purity=purity(nu),
        delta=_scalar(delta),
    )
