"""Closed-form evolution of the Gaussian state of the damped oscillator.

The Wigner function stays Gaussian for all times when the initial state is a
minimum-uncertainty wave packet.  Its first moments follow damped
oscillations and its covariances are assembled from three propagator
functions ``g1``, ``g2 = conj(g1)`` and ``g3``.  Every function here accepts a
scalar or an array of times and broadcasts.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidStateError, NumericalConsistencyError, ParameterError
from .model import DiffusionCoefficients, OscillatorParams

__all__ = [
    "GaussianState",
    "PropagatorScalars",
    "Covariances",
    "AsymptoticCovariances",
    "IMAG_TOL",
    "phase_space_scales",
    "propagator_scalars",
    "b_w_expanded",
    "mean_trajectory",
    "covariances",
    "asymptotic_covariances",
    "initial_wave_packet",
    "evolve",
    "wigner_value",
]

# relative size of an imaginary residue tolerated before it is dropped
IMAG_TOL = 1e-12


@dataclass(frozen=True)
class GaussianState:
    """First and second moments of a Gaussian state; fields may be arrays."""

    mean_q: float | np.ndarray
    mean_p: float | np.ndarray
    sigma_qq: float | np.ndarray
    sigma_pp: float | np.ndarray
    sigma_pq: float | np.ndarray

    def __post_init__(self):
        if np.any(np.asarray(self.sigma_qq) <= 0) or np.any(np.asarray(self.sigma_pp) <= 0):
            raise InvalidStateError("variances must be positive")

    @property
    def delta(self):
        """Covariance determinant ``sigma_qq * sigma_pp - sigma_pq**2``."""
        return self.sigma_qq * self.sigma_pp - self.sigma_pq**2

    def check_uncertainty(self, hbar: float, rtol: float = 1e-12):
        """Raise if ``delta < hbar^2/4`` beyond a relative tolerance."""
        bound = hbar**2 / 4
        if np.any(self.delta < bound * (1 - rtol)):
            raise InvalidStateError(
                f"uncertainty relation violated: min delta = {np.min(self.delta)!r} < {bound!r}"
            )


@dataclass(frozen=True)
class PropagatorScalars:
    a: complex
    big_lambda: complex
    d1: complex
    d2: float
    g1: complex | np.ndarray
    g2: complex | np.ndarray
    g3: float | np.ndarray
    b_w: float | np.ndarray


@dataclass(frozen=True)
class Covariances:
    sigma_qq: float | np.ndarray
    sigma_pp: float | np.ndarray
    sigma_pq: float | np.ndarray
    delta: float | np.ndarray


@dataclass(frozen=True)
class AsymptoticCovariances:
    sigma_qq: float
    sigma_pp: float
    sigma_pq: float
    sigma: float


def phase_space_scales(params: OscillatorParams) -> tuple[float, float]:
    """Factors ``(s_q, s_p)`` with ``q = s_q x1`` and ``p = s_p x2``."""
    p = params
    return np.sqrt(2 * p.hbar / (p.m * p.omega)), np.sqrt(2 * p.hbar * p.m * p.omega)


def _times(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(t)) or np.any(t < 0):
        raise ParameterError("times must be finite and non-negative")
    return t


def _real(z, what: str):
    """Drop the imaginary part of ``z`` after checking it is roundoff."""
    z = np.asarray(z)
    scale = np.maximum(np.abs(z.real), np.finfo(float).tiny)
    if np.any(np.abs(z.imag) > IMAG_TOL * scale):
        raise NumericalConsistencyError(
            f"{what}: imaginary residue {np.max(np.abs(z.imag))!r} exceeds {IMAG_TOL} relative"
        )
    out = z.real
    return float(out) if out.ndim == 0 else out


def _relaxation(lam: float, t: np.ndarray) -> np.ndarray:
    """``(1 - exp(-2 lam t)) / lam``, continuous at ``lam = 0``."""
    if lam == 0:
        return 2 * t
    return -np.expm1(-2 * lam * t) / lam


def _dissipation_constants(params: OscillatorParams, d: DiffusionCoefficients):
    m, w, hb, mu = params.m, params.omega, params.hbar, params.mu
    big_om = params.big_omega
    a = (mu - 1j * big_om) / w
    big_lambda = -params.lam - 1j * big_om
    d1 = (a**2 * m * w * d.d_qq + 2 * a * d.d_pq + d.d_pp / (m * w)) / hb
    d2 = (m * w * d.d_qq + 2 * mu * d.d_pq / w + d.d_pp / (m * w)) / hb
    return a, big_lambda, d1, d2


def propagator_scalars(params: OscillatorParams, d: DiffusionCoefficients, t) -> PropagatorScalars:
    """Complex propagator scalars and the g-functions at time(s) ``t``.

    ``g2`` is computed from the conjugated formula rather than by conjugating
    ``g1``; ``b_w = g1 g2 - g3^2/4`` must then come out real.
    """
    t = _times(t)
    mu, w, lam = params.mu, params.omega, params.lam
    a, big_lambda, d1, d2 = _dissipation_constants(params, d)

    e1 = np.exp(2 * big_lambda * t)
    e2 = np.exp(2 * np.conj(big_lambda) * t)
    g1 = mu * a / w * e1 + d1 / big_lambda * (e1 - 1)
    g2 = mu * np.conj(a) / w * e2 + np.conj(d1) / np.conj(big_lambda) * (e2 - 1)
    g3 = 2 * (np.exp(-2 * lam * t) + d2 * _relaxation(lam, t))

    b_w = _real(g1 * g2 - g3**2 / 4, "B_w")
    if np.any(np.asarray(b_w) >= 0):
        raise NumericalConsistencyError("B_w must stay negative along a physical trajectory")
    return PropagatorScalars(a=a, big_lambda=big_lambda, d1=d1, d2=d2,
                             g1=g1, g2=g2, g3=g3, b_w=b_w)


def b_w_expanded(params: OscillatorParams, d: DiffusionCoefficients, t):
    """``B_w`` from its fully expanded time dependence.

    Independent of :func:`propagator_scalars`: the damping factors
    ``exp(-4 lam t)``, ``exp(-2 lam t)`` and the phase ``exp(2i Omega t)`` are
    kept explicit.  Requires ``lam > 0``.
    """
    params.require_damping()
    t = _times(t)
    mu, w, lam = params.mu, params.omega, params.lam
    big_om = params.big_omega
    a, big_lambda, d1, d2 = _dissipation_constants(params, d)
    r1 = abs(d1) ** 2 / abs(big_lambda) ** 2
    r2 = d2 / lam
    cross = mu / w * d1 * np.conj(a) / big_lambda
    first = np.exp(-4 * lam * t) * (2 * cross.real - big_om**2 / w**2 + r1 - r2**2 + 2 * r2)
    second = -2 * np.exp(-2 * lam * t) * (
        ((cross + r1) * np.exp(2j * big_om * t)).real - r2**2 + r2
    )
    return first + second + r1 - r2**2


def mean_trajectory(params: OscillatorParams, q0: float, p0: float, t):
    """Expectation values ``(<q>, <p>)`` at time(s) ``t`` from initial means ``(q0, p0)``."""
    t = _times(t)
    m, w, mu = params.m, params.omega, params.mu
    big_om = params.big_omega
    decay = np.exp(-params.lam * t)
    c, s = np.cos(big_om * t), np.sin(big_om * t)
    mean_q = decay * ((c + mu / big_om * s) * q0 + s / (m * big_om) * p0)
    mean_p = decay * (-m * w**2 / big_om * s * q0 + (c - mu / big_om * s) * p0)
    return mean_q, mean_p


def covariances(params: OscillatorParams, d: DiffusionCoefficients, t) -> Covariances:
    """Covariances of the state evolved from the minimum-uncertainty wave packet."""
    sc = propagator_scalars(params, d, t)
    m, w, hb = params.m, params.omega, params.hbar
    big_om2 = params.big_omega**2
    a, ac = sc.a, np.conj(sc.a)

    phi_w = sc.g1 * ac**2 + sc.g2 * a**2 - sc.g3
    psi_w = sc.g1 + sc.g2 - sc.g3
    chi_w = 2 * (sc.g1 * ac + sc.g2 * a) - sc.g3 * (a + ac)

    sigma_pp = _real(-(hb * m * w**3 / (4 * big_om2)) * phi_w, "sigma_pp")
    sigma_qq = _real(-(hb * w / (4 * m * big_om2)) * psi_w, "sigma_qq")
    # chi_w is often near zero, so its residue is judged on the sigma_pq scale
    # set by the diagonal entries rather than by its own magnitude
    chi = (hb * w**2 / (8 * big_om2)) * chi_w
    scale = np.sqrt(np.asarray(sigma_qq) * np.asarray(sigma_pp))
    if np.any(np.abs(np.imag(chi)) > IMAG_TOL * scale):
        raise NumericalConsistencyError("sigma_pq: imaginary residue exceeds tolerance")
    sigma_pq = np.real(chi)
    sigma_pq = float(sigma_pq) if np.ndim(sigma_pq) == 0 else sigma_pq
    delta = sigma_qq * sigma_pp - sigma_pq**2
    return Covariances(sigma_qq, sigma_pp, sigma_pq, delta)


def asymptotic_covariances(params: OscillatorParams, d: DiffusionCoefficients) -> AsymptoticCovariances:
    """Stationary covariances reached for ``t -> infinity`` (needs ``lam > 0``)."""
    params.require_damping()
    m, w, lam, mu = params.m, params.omega, params.lam, params.mu
    norm = lam**2 + params.big_omega**2
    sqq = (m**2 * w**2 * (2 * lam * (lam + mu) + w**2) * d.d_qq + w**2 * d.d_pp
           + 2 * m * w**2 * (lam + mu) * d.d_pq) / (2 * m**2 * w**2 * lam * norm)
    spp = (m**2 * w**4 * d.d_qq + (2 * lam * (lam - mu) + w**2) * d.d_pp
           - 2 * m * w**2 * (lam - mu) * d.d_pq) / (2 * lam * norm)
    spq = (-(m**2) * w**2 * (lam + mu) * d.d_qq + (lam - mu) * d.d_pp
           + 2 * m * (lam**2 - mu**2) * d.d_pq) / (2 * m * lam * norm)
    return AsymptoticCovariances(sqq, spp, spq, spp * sqq - spq**2)


def initial_wave_packet(params: OscillatorParams, x10: float, x20: float) -> GaussianState:
    """Minimum-uncertainty packet centred on the dimensionless point ``(x10, x20)``."""
    s_q, s_p = phase_space_scales(params)
    m, w, hb = params.m, params.omega, params.hbar
    return GaussianState(
        mean_q=float(x10 * s_q),
        mean_p=float(x20 * s_p),
        sigma_qq=hb / (2 * m * w),
        sigma_pp=hb * m * w / 2,
        sigma_pq=0.0,
    )


def evolve(params: OscillatorParams, d: DiffusionCoefficients, x10: float, x20: float, t) -> GaussianState:
    """Full Gaussian state at time(s) ``t`` starting from the wave packet at ``(x10, x20)``."""
    start = initial_wave_packet(params, x10, x20)
    mean_q, mean_p = mean_trajectory(params, start.mean_q, start.mean_p, t)
    cov = covariances(params, d, t)
    return GaussianState(mean_q, mean_p, cov.sigma_qq, cov.sigma_pp, cov.sigma_pq)


def wigner_value(state: GaussianState, q, p):
    """Gaussian Wigner function of ``state`` evaluated at ``(q, p)`` (broadcasts)."""
    delta = state.delta
    if np.any(np.asarray(delta) <= 0):
        raise InvalidStateError(f"covariance determinant must be positive, got {delta!r}")
    dq = np.asarray(q) - state.mean_q
    dp = np.asarray(p) - state.mean_p
    quad = state.sigma_pp * dq**2 + state.sigma_qq * dp**2 - 2 * state.sigma_pq * dq * dp
    return np.exp(-quad / (2 * delta)) / (2 * np.pi * np.sqrt(delta))
