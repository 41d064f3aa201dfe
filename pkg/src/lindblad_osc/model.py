"""Model parameters, diffusion coefficients and their physical validity.

The oscillator is characterised by ``H0 = p^2/2m + m omega^2 q^2/2`` plus the
squeezing-type term ``mu (qp + pq)/2``, a friction constant ``lam`` and three
environment diffusion coefficients.  All constants are explicit fields; the
natural-unit defaults only fill in values a caller leaves out.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConstraintViolation, ParameterError

__all__ = [
    "OscillatorParams",
    "DiffusionCoefficients",
    "ConstraintCheck",
    "ConstraintReport",
    "validate_constraints",
    "require_valid",
    "thermal_coefficients",
]


def _require_finite(**values):
    for name, value in values.items():
        if not math.isfinite(value):
            raise ParameterError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class OscillatorParams:
    """Constants of the damped oscillator.

    Parameters
    ----------
    lam : float
        Friction constant (1/time), ``lam >= 0``.
    mu : float
        Asymmetry parameter (1/time); underdamped motion needs ``|mu| < omega``.
    m, omega, hbar, boltzmann : float
        Mass, bare frequency, reduced Planck constant and Boltzmann constant.
    """

    lam: float
    mu: float = 0.0
    m: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0
    boltzmann: float = 1.0

    def __post_init__(self):
        for name in ("lam", "mu", "m", "omega", "hbar", "boltzmann"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _require_finite(lam=self.lam, mu=self.mu, m=self.m, omega=self.omega,
                        hbar=self.hbar, boltzmann=self.boltzmann)
        for name in ("m", "omega", "hbar", "boltzmann"):
            if getattr(self, name) <= 0:
                raise ParameterError(f"{name} must be positive, got {getattr(self, name)}")
        if self.lam < 0:
            raise ParameterError(f"lam must be non-negative, got {self.lam}")
        if abs(self.mu) >= self.omega:
            raise ParameterError(
                f"|mu| = {abs(self.mu)} >= omega = {self.omega}: only the underdamped "
                "regime |mu| < omega is supported"
            )

    @property
    def big_omega(self) -> float:
        """Damped frequency ``sqrt(omega^2 - mu^2)``."""
        return math.sqrt(self.omega**2 - self.mu**2)

    def require_damping(self):
        if self.lam <= 0:
            raise ParameterError(f"lam = {self.lam}: no stationary state without friction (lam > 0)")


@dataclass(frozen=True)
class DiffusionCoefficients:
    """Momentum, position and cross diffusion coefficients.

    Construction only checks finiteness; use :func:`validate_constraints` to
    decide whether a set is physically admissible for given parameters.
    """

    d_pp: float
    d_qq: float
    d_pq: float = 0.0

    def __post_init__(self):
        for name in ("d_pp", "d_qq", "d_pq"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _require_finite(d_pp=self.d_pp, d_qq=self.d_qq, d_pq=self.d_pq)


@dataclass(frozen=True)
class ConstraintCheck:
    name: str
    holds: bool
    margin: float


@dataclass(frozen=True)
class ConstraintReport:
    checks: tuple[ConstraintCheck, ...]

    @property
    def valid(self) -> bool:
        return all(c.holds for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "checks": [{"name": c.name, "holds": c.holds, "margin": c.margin} for c in self.checks],
        }


def validate_constraints(params: OscillatorParams, d: DiffusionCoefficients) -> ConstraintReport:
    """Check ``d_pp > 0``, ``d_qq > 0`` and ``d_pp d_qq - d_pq^2 >= (lam hbar)^2 / 4``.

    Margins are the plain differences of each inequality; no tolerance is
    applied, so a set sitting exactly on the boundary of the third
    inequality is valid.
    """
    _require_finite(d_pp=d.d_pp, d_qq=d.d_qq, d_pq=d.d_pq, lam=params.lam, hbar=params.hbar)
    det_margin = d.d_pp * d.d_qq - d.d_pq**2 - params.lam**2 * params.hbar**2 / 4
    return ConstraintReport((
        ConstraintCheck("d_pp > 0", d.d_pp > 0, d.d_pp),
        ConstraintCheck("d_qq > 0", d.d_qq > 0, d.d_qq),
        ConstraintCheck("d_pp*d_qq - d_pq^2 >= (lam*hbar)^2/4", det_margin >= 0, det_margin),
    ))


def require_valid(params: OscillatorParams, d: DiffusionCoefficients) -> ConstraintReport:
    """Like :func:`validate_constraints` but raise :class:`ConstraintViolation` on failure."""
    report = validate_constraints(params, d)
    if not report.valid:
        failed = ", ".join(c.name for c in report.checks if not c.holds)
        raise ConstraintViolation(f"diffusion coefficients violate: {failed}", report=report)
    return report


def thermal_coefficients(params: OscillatorParams, temperature: float) -> DiffusionCoefficients:
    """Diffusion coefficients whose stationary state is the Gibbs state at ``temperature``.

    Requires ``lam > |mu|``; otherwise the coefficients would violate the
    positivity constraints.
    """
    _require_finite(temperature=temperature)
    if temperature <= 0:
        raise ParameterError(f"temperature must be positive, got {temperature}")
    if params.lam <= abs(params.mu):
        raise ParameterError(
            f"thermal bath requires lam > |mu| (lam={params.lam}, mu={params.mu})"
        )
    m, w, hb = params.m, params.omega, params.hbar
    coth = 1.0 / math.tanh(hb * w / (2 * params.boltzmann * temperature))
    return DiffusionCoefficients(
        d_pp=(params.lam + params.mu) / 2 * hb * m * w * coth,
        d_qq=(params.lam - params.mu) / 2 * hb / (m * w) * coth,
        d_pq=0.0,
    )
