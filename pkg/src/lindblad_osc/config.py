"""Flat ``key = value`` run configuration.

One pair per line, ``#`` starts a comment.  Unknown and duplicate keys are
errors.  Defaults: ``hbar = boltzmann = m = omega = 1``, ``mu = 0``,
``x10 = 1``, ``x20 = 0``, ``dt_output = 0.1``, ``fock_dim = 60``, all oracle
flags on.  ``lambda`` and ``t_max`` are required, together with either the
three diffusion coefficients (``d_pq`` defaults to 0) or ``bath_temperature``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError, ConstraintViolation, ParameterError
from .model import DiffusionCoefficients, OscillatorParams, require_valid, thermal_coefficients

__all__ = ["RunConfig", "KEYS", "DEFAULTS", "parse_config", "config_help"]

_FLOAT_KEYS = {
    "m", "omega", "lambda", "mu", "hbar", "boltzmann", "d_pp", "d_qq", "d_pq",
    "bath_temperature", "x10", "x20", "t_max", "dt_output", "ode_dt", "fock_dt",
}
_INT_KEYS = {"fock_dim"}
_BOOL_KEYS = {"oracle_moments", "oracle_fock", "oracle_fp"}
_STR_KEYS = {"output_format", "output_path"}
KEYS = _FLOAT_KEYS | _INT_KEYS | _BOOL_KEYS | _STR_KEYS

DEFAULTS = {
    "m": 1.0, "omega": 1.0, "mu": 0.0, "hbar": 1.0, "boltzmann": 1.0,
    "x10": 1.0, "x20": 0.0, "dt_output": 0.1, "fock_dim": 60,
    "oracle_moments": True, "oracle_fock": True, "oracle_fp": True,
    "output_format": "csv",
}
_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


@dataclass(frozen=True)
class RunConfig:
    params: OscillatorParams
    diffusion: DiffusionCoefficients | None
    bath_temperature: float | None
    x10: float
    x20: float
    t_max: float
    dt_output: float
    oracle_moments: bool = True
    oracle_fock: bool = True
    oracle_fp: bool = True
    fock_dim: int = 60
    ode_dt: float | None = None
    fock_dt: float | None = None
    output_format: str = "csv"
    output_path: str | None = None

    @property
    def thermal(self) -> bool:
        return self.bath_temperature is not None

    def coefficients(self) -> DiffusionCoefficients:
        if self.diffusion is not None:
            return self.diffusion
        return thermal_coefficients(self.params, self.bath_temperature)

    def output_times(self):
        n = max(1, round(self.t_max / self.dt_output))
        times = [k * self.dt_output for k in range(n + 1)]
        return [t for t in times if t <= self.t_max * (1 + 1e-12)]


def _convert(key, raw, line):
    if key in _FLOAT_KEYS:
        try:
            value = float(raw)
        except ValueError:
            raise ConfigError(f"{key}: expected a number, got {raw!r}", line) from None
        if not math.isfinite(value):
            raise ConfigError(f"{key}: value must be finite", line)
        return value
    if key in _INT_KEYS:
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{key}: expected an integer, got {raw!r}", line) from None
    if key in _BOOL_KEYS:
        if raw.lower() in _TRUE:
            return True
        if raw.lower() in _FALSE:
            return False
        raise ConfigError(f"{key}: expected true/false, got {raw!r}", line)
    return raw


def _at(line, exc):
    return f"line {line}: {exc}" if line is not None else str(exc)


def _read_pairs(text):
    values, lines = {}, {}
    for number, raw_line in enumerate(text.splitlines(), start=1):
        content = raw_line.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ConfigError(f"expected 'key = value', got {content!r}", number)
        key, raw = (part.strip() for part in content.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"unknown key {key!r}", number)
        if key in values:
            raise ConfigError(f"duplicate key {key!r} (first set on line {lines[key]})", number)
        values[key] = _convert(key, raw, number)
        lines[key] = number
    return values, lines


def parse_config(text: str, overrides: dict | None = None, check_constraints: bool = True) -> RunConfig:
    """Parse and validate a configuration.

    ``overrides`` replaces parsed values (used by parameter sweeps).  With
    ``check_constraints`` the diffusion coefficients must satisfy the
    positivity constraints, otherwise :class:`ConstraintViolation` is raised.
    """
    values, lines = _read_pairs(text)
    for key, value in (overrides or {}).items():
        if key not in KEYS:
            raise ConfigError(f"unknown key {key!r}")
        raw = format(value, ".17g") if isinstance(value, float) else str(value)
        values[key] = _convert(key, raw, None)
    merged = {**DEFAULTS, **values}

    def line(*keys):
        found = [lines[k] for k in keys if k in lines]
        return max(found) if found else None

    if abs(merged["mu"]) >= merged["omega"]:
        raise ConfigError(
            f"overdamped or critical regime |mu| = {abs(merged['mu'])} >= omega = {merged['omega']}; "
            "only |mu| < omega is supported",
            line("mu", "omega"),
        )
    for key in ("lambda", "t_max"):
        if key not in merged:
            raise ConfigError(f"missing required key {key!r}")
    try:
        params = OscillatorParams(
            lam=merged["lambda"], mu=merged["mu"], m=merged["m"], omega=merged["omega"],
            hbar=merged["hbar"], boltzmann=merged["boltzmann"],
        )
    except ParameterError as exc:
        raise ConfigError(str(exc), line("lambda", "m", "omega", "hbar", "boltzmann")) from None

    explicit = [k for k in ("d_pp", "d_qq", "d_pq") if k in merged]
    temperature = merged.get("bath_temperature")
    if explicit and temperature is not None:
        raise ConfigError("ambiguous bath: set either d_pp/d_qq/d_pq or bath_temperature, not both",
                          line("bath_temperature", *explicit))
    diffusion = None
    if temperature is not None:
        n = line("bath_temperature", "lambda", "mu")
        try:
            coefficients = thermal_coefficients(params, temperature)
        except ParameterError as exc:
            raise ConstraintViolation(_at(n, exc), line=n) from None
        # lambda > |mu| is necessary but not sufficient: at low temperature
        # coth^2 must still exceed lambda^2 / (lambda^2 - mu^2)
        if check_constraints:
            try:
                require_valid(params, coefficients)
            except ConstraintViolation as exc:
                raise ConstraintViolation(_at(n, exc), report=exc.report, line=n) from None
    elif explicit:
        missing = {"d_pp", "d_qq"} - set(explicit)
        if missing:
            raise ConfigError(f"missing diffusion coefficient(s): {', '.join(sorted(missing))}", line(*explicit))
        diffusion = DiffusionCoefficients(merged["d_pp"], merged["d_qq"], merged.get("d_pq", 0.0))
        if check_constraints:
            try:
                require_valid(params, diffusion)
            except ConstraintViolation as exc:
                n = line(*explicit, "lambda", "hbar")
                raise ConstraintViolation(_at(n, exc), report=exc.report, line=n) from None
    else:
        raise ConfigError("no bath: set d_pp and d_qq (and optionally d_pq) or bath_temperature")

    for key in ("t_max", "dt_output"):
        if merged[key] <= 0:
            raise ConfigError(f"{key} must be positive", line(key))
    for key in ("ode_dt", "fock_dt"):
        if key in merged and merged[key] <= 0:
            raise ConfigError(f"{key} must be positive", line(key))
    if merged["fock_dim"] < 2:
        raise ConfigError("fock_dim must be at least 2", line("fock_dim"))
    if merged["output_format"] not in ("csv", "json"):
        raise ConfigError("output_format must be 'csv' or 'json'", line("output_format"))

    return RunConfig(
        params=params,
        diffusion=diffusion,
        bath_temperature=temperature,
        x10=merged["x10"],
        x20=merged["x20"],
        t_max=merged["t_max"],
        dt_output=merged["dt_output"],
        oracle_moments=merged["oracle_moments"],
        oracle_fock=merged["oracle_fock"],
        oracle_fp=merged["oracle_fp"],
        fock_dim=merged["fock_dim"],
        ode_dt=merged.get("ode_dt"),
        fock_dt=merged.get("fock_dt"),
        output_format=merged["output_format"],
        output_path=merged.get("output_path"),
    )


def config_help() -> str:
    defaults = ", ".join(f"{k} = {v}" for k, v in DEFAULTS.items())
    return (
        "configuration keys: " + ", ".join(sorted(KEYS)) + ".\n"
        "required: lambda, t_max and either d_pp + d_qq (+ d_pq) or bath_temperature.\n"
        "defaults: " + defaults + "."
    )
