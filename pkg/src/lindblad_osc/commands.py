"""Subcommand implementations returning serialized text or structured reports.

Time series are CSV with a fixed column order and floats written with 17
significant digits, so output is byte-stable for a fixed configuration.
Structured reports are JSON.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import thermo
from .config import RunConfig
from .errors import ConvergenceError, LindbladOscError, TruncationError
from .evolution import (
    asymptotic_covariances,
    b_w_expanded,
    evolve,
    initial_wave_packet,
    phase_space_scales,
    wigner_value,
)
from .model import validate_constraints
from .oracle.fock import (
    density_matrix_from_coefficients,
    fock_entropy,
    fock_moments,
    lindblad_fock_trajectory,
)
from .oracle.fokker_planck import fp_convergence, stationary_residual
from .oracle.moments import integrate_moments

__all__ = [
    "EVOLVE_COLUMNS",
    "WIGNER_COLUMNS",
    "format_float",
    "to_csv",
    "to_json",
    "evolve_table",
    "evolve_records",
    "evolve_command",
    "validate_command",
    "asymptote_command",
    "wigner_table",
    "wigner_command",
    "CheckResult",
    "OracleReport",
    "oracle_check_command",
]

EVOLVE_COLUMNS = ("t", "mean_q", "mean_p", "sigma_qq", "sigma_pp", "sigma_pq",
                  "delta", "nu", "entropy", "t_eff", "purity")
WIGNER_COLUMNS = ("q", "p", "w")


def format_float(x) -> str:
    return format(float(x), ".17g")


def to_csv(header, rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(format_float(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def evolve_table(config: RunConfig) -> np.ndarray:
    """Rows of :data:`EVOLVE_COLUMNS`, one per output time."""
    params, d = config.params, config.coefficients()
    times = np.array(config.output_times())
    state = evolve(params, d, config.x10, config.x20, times)
    state.check_uncertainty(params.hbar)
    report = thermo.thermo_report(params, state, times)
    columns = (times, state.mean_q, state.mean_p, state.sigma_qq, state.sigma_pp, state.sigma_pq,
               report.delta, report.nu, report.entropy, report.t_eff, report.purity)
    return np.column_stack([np.broadcast_to(c, times.shape) for c in columns])


def evolve_records(config: RunConfig) -> list[dict]:
    return [dict(zip(EVOLVE_COLUMNS, map(float, row))) for row in evolve_table(config)]


def evolve_command(config: RunConfig) -> str:
    if config.output_format == "json":
        return to_json(evolve_records(config))
    return to_csv(EVOLVE_COLUMNS, evolve_table(config))


def validate_command(config: RunConfig) -> tuple[dict, bool]:
    d = config.coefficients()
    report = validate_constraints(config.params, d)
    out = {
        "diffusion": {"d_pp": d.d_pp, "d_qq": d.d_qq, "d_pq": d.d_pq},
        "bath_temperature": config.bath_temperature,
        **report.as_dict(),
    }
    return out, report.valid


def asymptote_command(config: RunConfig) -> dict:
    params, d = config.params, config.coefficients()
    asym = asymptotic_covariances(params, d)
    s = thermo.asymptotic_nu(params, d)
    return {
        "sigma_qq": asym.sigma_qq,
        "sigma_pp": asym.sigma_pp,
        "sigma_pq": asym.sigma_pq,
        "sigma": asym.sigma,
        "s": s,
        "entropy": thermo.entropy(s, params.boltzmann),
        "t_eff": thermo.effective_temperature(params, s),
        "purity": thermo.purity(s),
    }


def wigner_table(config: RunConfig, t: float, grid: int, half_width: float = 6.0) -> np.ndarray:
    """Rows ``(q, p, w)`` on a ``grid x grid`` mesh spanning ``+-half_width`` standard deviations."""
    state = evolve(config.params, config.coefficients(), config.x10, config.x20, t)
    u = np.linspace(-half_width, half_width, grid)
    q = float(state.mean_q) + math.sqrt(state.sigma_qq) * u
    p = float(state.mean_p) + math.sqrt(state.sigma_pp) * u
    qq, pp = np.meshgrid(q, p, indexing="ij")
    w = wigner_value(state, qq, pp)
    return np.column_stack([qq.ravel(), pp.ravel(), w.ravel()])


def wigner_command(config: RunConfig, t: float, grid: int) -> str:
    return to_csv(WIGNER_COLUMNS, wigner_table(config, t, grid))


PASS, FAIL, TRUNCATION, CONVERGENCE = "PASS", "FAIL", "TRUNCATION", "CONVERGENCE"


@dataclass
class CheckResult:
    name: str
    status: str
    deviation: float
    tolerance: float
    detail: str = ""

    def as_dict(self):
        return {"name": self.name, "status": self.status, "deviation": self.deviation,
                "tolerance": self.tolerance, "detail": self.detail}


@dataclass
class OracleReport:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name, deviation, tolerance, detail=""):
        status = PASS if deviation <= tolerance else FAIL
        self.checks.append(CheckResult(name, status, float(deviation), tolerance, detail))

    @property
    def exit_code(self) -> int:
        statuses = {c.status for c in self.checks}
        if FAIL in statuses:
            return 3
        if statuses & {TRUNCATION, CONVERGENCE}:
            return 4
        return 0

    def text(self) -> str:
        width = max(len(c.name) for c in self.checks)
        lines = [f"{c.name:<{width}}  {c.deviation:11.3e}  tol {c.tolerance:9.1e}  {c.status}"
                 + (f"  ({c.detail})" if c.detail else "") for c in self.checks]
        return "\n".join(lines) + "\n"

    def as_dict(self):
        return {"exit_code": self.exit_code, "checks": [c.as_dict() for c in self.checks]}


def _guarded(report, name, tolerance, check):
    """Run one check, mapping truncation/convergence failures to their own statuses."""
    try:
        check()
    except TruncationError as exc:
        report.checks.append(CheckResult(name, TRUNCATION, float(exc.deviation or math.nan), tolerance, str(exc)))
    except ConvergenceError as exc:
        report.checks.append(CheckResult(name, CONVERGENCE, float(exc.deviation or math.nan), tolerance, str(exc)))
    except LindbladOscError as exc:
        report.checks.append(CheckResult(name, FAIL, math.nan, tolerance, str(exc)))


def oracle_check_command(config: RunConfig) -> OracleReport:
    """Cross-check the closed forms against every enabled oracle."""
    params, d = config.params, config.coefficients()
    hb = params.hbar
    x10, x20 = config.x10, config.x20
    report = OracleReport()
    damped = params.lam > 0

    def pure_start():
        st = evolve(params, d, x10, x20, 0.0)
        nu = thermo.nu_of_delta(params, st.delta)
        report.add("pure_start", max(nu, thermo.entropy(nu)), 1e-12)

    def two_route_nu():
        times = np.linspace(0, min(config.t_max, 20 / params.lam), 50)
        st = evolve(params, d, x10, x20, times)
        via_delta = np.sqrt(st.delta) / hb
        via_bw = params.omega / (2 * params.big_omega) * np.sqrt(-b_w_expanded(params, d, times))
        report.add("two_route_nu", np.max(np.abs(via_delta - via_bw) / via_bw), 1e-10)

    def asymptotics():
        s = thermo.asymptotic_nu(params, d)
        late = evolve(params, d, x10, x20, 40 / params.lam)
        report.add("asymptotic_nu", abs(s - thermo.nu_of_delta(params, late.delta)), 1e-8)
        if config.thermal:
            x = hb * params.omega / (params.boltzmann * config.bath_temperature)
            report.add("bose_occupation", abs(s - 1 / math.expm1(x)), 1e-10)
            gibbs = evolve(params, d, x10, x20, 30 / params.lam)
            coth = 1 / math.tanh(x / 2)
            dev = max(abs(gibbs.sigma_qq - hb / (2 * params.m * params.omega) * coth),
                      abs(gibbs.sigma_pp - hb * params.m * params.omega / 2 * coth),
                      abs(gibbs.sigma_pq))
            report.add("gibbs_covariances", dev, 1e-4)
            t_eff = thermo.effective_temperature(params, thermo.nu_of_delta(params, gibbs.delta))
            report.add("gibbs_temperature", abs(t_eff / config.bath_temperature - 1), 1e-3)

    def entropy_identities():
        dev = 0.0
        for nu in (0.1, 0.5, 1.0, 3.0):
            s = thermo.entropy(nu, params.boltzmann)
            delta = (hb * (nu + 0.5)) ** 2
            via_log = -params.boltzmann * thermo.expected_log_rho(params, delta)
            via_temp = thermo.entropy_from_temperature(params, thermo.effective_temperature(params, nu))
            dev = max(dev, abs(via_log - s) / s, abs(via_temp - s) / s)
        report.add("entropy_identities", dev, 1e-12)

    def moment_ode():
        start = initial_wave_packet(params, x10, x20)
        t_end = min(config.t_max, 20 / params.lam) if damped else config.t_max
        traj = integrate_moments(params, d, start, t_end, config.ode_dt)
        st = evolve(params, d, x10, x20, traj.times)
        analytic = np.column_stack([st.sigma_qq, st.sigma_pp, st.sigma_pq])
        scale = np.max(np.abs(analytic[:, :2]), axis=1)
        cov_dev = np.max(np.abs(traj.covariances - analytic).max(axis=1) / scale)
        report.add("moment_ode_covariances", cov_dev, 1e-8)
        s_q, s_p = phase_space_scales(params)
        mean_dev = max(np.max(np.abs(traj.means[:, 0] - st.mean_q)) / s_q,
                       np.max(np.abs(traj.means[:, 1] - st.mean_p)) / s_p)
        report.add("moment_ode_means", mean_dev, 1e-8)

    def fock():
        times = sorted({t for t in (1.0, 5.0, 20.0) if t <= config.t_max} or {config.t_max})
        snaps = lindblad_fock_trajectory(params, d, x10, x20, times, dt=config.fock_dt, dim=config.fock_dim)
        ent_dev = mom_dev = herm = 0.0
        for snap in snaps:
            st = evolve(params, d, x10, x20, snap.t)
            s_exact = thermo.entropy(thermo.nu_of_delta(params, st.delta), params.boltzmann)
            ent_dev = max(ent_dev, abs(fock_entropy(snap, params.boltzmann) - s_exact))
            fm = fock_moments(snap, params)
            mom_dev = max(mom_dev, *(abs(getattr(fm, k) - getattr(st, k)) for k in
                                     ("mean_q", "mean_p", "sigma_qq", "sigma_pp", "sigma_pq")))
            herm = max(herm, snap.hermiticity_error())
        report.add("fock_entropy", ent_dev, 1e-5, f"dim={config.fock_dim}, t={times}")
        report.add("fock_moments", mom_dev, 1e-5)
        report.add("fock_hermiticity", herm, 1e-10)

        snap = min(snaps, key=lambda s: abs(s.t - 5.0))
        st = evolve(params, d, x10, x20, snap.t)
        coeffs = thermo.density_operator_coefficients(params, st)
        if coeffs.pure:
            return
        rebuilt = density_matrix_from_coefficients(params, coeffs, config.fock_dim)
        report.add("density_operator_trace", abs(rebuilt.trace - 1), 1e-8)
        report.add("density_operator_vs_fock", float(np.max(np.abs(rebuilt.elements - snap.elements))),
                   1e-5, f"t={snap.t}")

    def fokker_planck():
        t = min(5.0, config.t_max)
        conv = fp_convergence(params, d, t, x10=x10, x20=x20)
        report.add("fp_convergence_ratio", abs(conv.ratio - 4.0), 0.5, f"ratio={conv.ratio:.4f}")
        if damped:
            report.add("fp_stationary_residual", stationary_residual(params, d).relative, 1e-6)

    _guarded(report, "pure_start", 1e-12, pure_start)
    _guarded(report, "entropy_identities", 1e-12, entropy_identities)
    if damped:
        _guarded(report, "two_route_nu", 1e-10, two_route_nu)
        _guarded(report, "asymptotics", 1e-8, asymptotics)
    if config.oracle_moments:
        _guarded(report, "moment_ode", 1e-8, moment_ode)
    if config.oracle_fp:
        _guarded(report, "fokker_planck", 0.5, fokker_planck)
    if config.oracle_fock:
        _guarded(report, "fock", 1e-5, fock)
    return report


def to_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"

