"""Fixed-step RK4 integration of the first- and second-moment equations.

The Fokker-Planck equation has linear drift and constant diffusion, so the
means and covariances of any Gaussian initial state obey a closed linear ODE:

    d<q>/dt    = -(lam - mu) <q> + <p>/m
    d<p>/dt    = -m omega^2 <q> - (lam + mu) <p>
    dsigma_qq/dt = -2(lam - mu) sigma_qq + 2 sigma_pq/m + 2 D_qq
    dsigma_pp/dt = -2(lam + mu) sigma_pp - 2 m omega^2 sigma_pq + 2 D_pp
    dsigma_pq/dt = -2 lam sigma_pq + sigma_pp/m - m omega^2 sigma_qq + 2 D_pq

Unlike the closed form, any Gaussian initial state is accepted here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConvergenceError, InvalidStateError, ParameterError
from ..evolution import GaussianState
from ..model import DiffusionCoefficients, OscillatorParams

__all__ = ["MomentTrajectory", "HALVING_TOL", "default_moment_dt", "moment_system", "integrate_moments"]

HALVING_TOL = 1e-6


@dataclass(frozen=True)
class MomentTrajectory:
    times: np.ndarray
    means: np.ndarray  # (n, 2): <q>, <p>
    covariances: np.ndarray  # (n, 3): sigma_qq, sigma_pp, sigma_pq
    halving_deviation: float = 0.0

    @property
    def delta(self) -> np.ndarray:
        c = self.covariances
        return c[:, 0] * c[:, 1] - c[:, 2] ** 2

    def state(self, index: int) -> GaussianState:
        return GaussianState(*self.means[index], *self.covariances[index])

    def check_uncertainty(self, hbar: float, rtol: float = 1e-9):
        bound = hbar**2 / 4
        if np.any(self.delta < bound * (1 - rtol)):
            raise InvalidStateError("moment trajectory violates the uncertainty relation")


def default_moment_dt(params: OscillatorParams) -> float:
    return 0.01 / max(params.lam, params.omega)


def moment_system(params: OscillatorParams, d: DiffusionCoefficients):
    """Matrix ``M`` and source ``b`` of ``y' = M y + b`` for ``y = (<q>, <p>, s_qq, s_pp, s_pq)``."""
    m, w2, lam, mu = params.m, params.omega**2, params.lam, params.mu
    M = np.array([
        [-(lam - mu), 1 / m, 0, 0, 0],
        [-m * w2, -(lam + mu), 0, 0, 0],
        [0, 0, -2 * (lam - mu), 0, 2 / m],
        [0, 0, 0, -2 * (lam + mu), -2 * m * w2],
        [0, 0, -m * w2, 1 / m, -2 * lam],
    ])
    b = np.array([0, 0, 2 * d.d_qq, 2 * d.d_pp, 2 * d.d_pq])
    return M, b


def _rk4(M, b, y0, n_steps, h):
    out = np.empty((n_steps + 1, y0.size))
    out[0] = y = y0
    for i in range(n_steps):
        k1 = M @ y + b
        k2 = M @ (y + 0.5 * h * k1) + b
        k3 = M @ (y + 0.5 * h * k2) + b
        k4 = M @ (y + h * k3) + b
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out[i + 1] = y
    return out


def integrate_moments(
    params: OscillatorParams,
    d: DiffusionCoefficients,
    state0: GaussianState,
    t_end: float,
    dt: float | None = None,
    halving_tol: float = HALVING_TOL,
) -> MomentTrajectory:
    """Integrate the moment equations from ``state0`` up to ``t_end``.

    The step is shrunk so that a whole number of steps fits into ``t_end``.
    The run is repeated with half the step; the finer solution is returned on
    the coarse grid and the largest disagreement, relative to the size of the
    covariances, is stored in ``halving_deviation``.  Disagreement above
    ``halving_tol`` raises :class:`ConvergenceError`.
    """
    if dt is None:
        dt = default_moment_dt(params)
    if not (dt > 0 and math.isfinite(dt)) or not (t_end >= 0 and math.isfinite(t_end)):
        raise ParameterError("need dt > 0 and finite t_end >= 0")
    n = max(1, math.ceil(t_end / dt - 1e-9))
    h = t_end / n
    M, b = moment_system(params, d)
    y0 = np.array([state0.mean_q, state0.mean_p, state0.sigma_qq, state0.sigma_pp, state0.sigma_pq],
                  dtype=float)
    coarse = _rk4(M, b, y0, n, h)
    fine = _rk4(M, b, y0, 2 * n, h / 2)[::2]

    scale = np.maximum(np.max(np.abs(fine[:, 2:4]), axis=1), np.abs(fine[:, :2]).max(axis=1))
    deviation = float(np.max(np.abs(fine - coarse).max(axis=1) / scale))
    if deviation > halving_tol:
        raise ConvergenceError(
            f"step halving changed the moments by {deviation:.3e} (> {halving_tol:g}); reduce dt",
            deviation=deviation,
        )
    times = h * np.arange(n + 1)
    return MomentTrajectory(times, fine[:, :2].copy(), fine[:, 2:].copy(), deviation)
