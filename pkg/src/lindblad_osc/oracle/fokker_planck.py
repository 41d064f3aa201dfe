"""Finite-difference residual of the Fokker-Planck equation for the analytic Wigner function.

Works in the dimensionless phase-space variables ``x1 = q/s_q``, ``x2 = p/s_p``
where the equation reads

    dW/dt = sum_ij A_ij d_i (x_j W) + 1/2 sum_ij Q_ij d_i d_j W

with ``A = [[lam - mu, -omega], [omega, lam + mu]]`` and
``Q = [[m omega D_qq, D_pq], [D_pq, D_pp/(m omega)]] / hbar``.  Spatial
derivatives use central differences of order 2 or 4; the time derivative is
a central difference of the analytic solution.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ParameterError
from ..evolution import GaussianState, asymptotic_covariances, evolve, phase_space_scales, wigner_value
from ..model import DiffusionCoefficients, OscillatorParams

__all__ = [
    "FPResidual",
    "FPConvergence",
    "drift_matrix",
    "diffusion_matrix",
    "fp_residual",
    "stationary_residual",
    "fp_convergence",
]


@dataclass(frozen=True)
class FPResidual:
    max_abs: float
    l2: float
    relative: float  # max_abs divided by the largest single term on the grid
    spacing: tuple[float, float]


@dataclass(frozen=True)
class FPConvergence:
    coarse: FPResidual
    fine: FPResidual
    ratio: float

    def converged(self, expected: float = 4.0, slack: float = 0.5) -> bool:
        return abs(self.ratio - expected) <= slack


def drift_matrix(params: OscillatorParams) -> np.ndarray:
    lam, mu, w = params.lam, params.mu, params.omega
    return np.array([[lam - mu, -w], [w, lam + mu]])


def diffusion_matrix(params: OscillatorParams, d: DiffusionCoefficients) -> np.ndarray:
    mw = params.m * params.omega
    return np.array([[mw * d.d_qq, d.d_pq], [d.d_pq, d.d_pp / mw]]) / params.hbar


def _first(f, axis, h, order):
    f = np.moveaxis(f, axis, 0)
    if order == 2:
        out = (f[2:] - f[:-2]) / (2 * h)
    else:
        out = (-f[4:] + 8 * f[3:-1] - 8 * f[1:-3] + f[:-4]) / (12 * h)
    return np.moveaxis(out, 0, axis)


def _second(f, axis, h, order):
    f = np.moveaxis(f, axis, 0)
    if order == 2:
        out = (f[2:] - 2 * f[1:-1] + f[:-2]) / h**2
    else:
        out = (-f[4:] + 16 * f[3:-1] - 30 * f[2:-2] + 16 * f[1:-3] - f[:-4]) / (12 * h**2)
    return np.moveaxis(out, 0, axis)


def _crop(f, axis, k):
    f = np.moveaxis(f, axis, 0)[k:-k]
    return np.moveaxis(f, 0, axis)


def _grid(params, state, half_width, points_per_sigma, pad):
    s_q, s_p = phase_space_scales(params)
    c1, c2 = float(state.mean_q) / s_q, float(state.mean_p) / s_p
    sd1, sd2 = np.sqrt(state.sigma_qq) / s_q, np.sqrt(state.sigma_pp) / s_p
    h1, h2 = sd1 / points_per_sigma, sd2 / points_per_sigma
    k = np.arange(-half_width * points_per_sigma - pad, half_width * points_per_sigma + pad + 1)
    x1, x2 = np.meshgrid(c1 + h1 * k, c2 + h2 * k, indexing="ij")
    return x1, x2, h1, h2


def _spatial_terms(params, d, w_grid, x1, x2, h1, h2, order):
    """Drift and diffusion parts on the interior of the padded grid."""
    k = order // 2
    A = drift_matrix(params)
    Q = diffusion_matrix(params, d)
    xs = (x1, x2)
    drift = 0.0
    for i, h in ((0, h1), (1, h2)):
        other = 1 - i
        for j in range(2):
            drift = drift + A[i, j] * _crop(_first(xs[j] * w_grid, i, h, order), other, k)
    diffusion = 0.5 * (
        Q[0, 0] * _crop(_second(w_grid, 0, h1, order), 1, k)
        + Q[1, 1] * _crop(_second(w_grid, 1, h2, order), 0, k)
        + 2 * Q[0, 1] * _first(_first(w_grid, 0, h1, order), 1, h2, order)
    )
    return drift, diffusion


def _wigner_x(params, state, x1, x2):
    s_q, s_p = phase_space_scales(params)
    return wigner_value(state, s_q * x1, s_p * x2)


def _summarise(terms, residual, h1, h2):
    scale = max(float(np.max(np.abs(t))) for t in terms)
    max_abs = float(np.max(np.abs(residual)))
    l2 = float(np.sqrt(np.sum(residual**2) * h1 * h2))
    return FPResidual(max_abs, l2, max_abs / scale, (h1, h2))


def fp_residual(
    params: OscillatorParams,
    d: DiffusionCoefficients,
    t: float,
    *,
    x10: float = 0.0,
    x20: float = 0.0,
    points_per_sigma: int = 16,
    half_width: float = 6.0,
    order: int = 2,
    time_step: float | None = None,
) -> FPResidual:
    """Residual of the analytic solution at time ``t`` on a ``+-half_width`` sigma grid.

    The grid spacing along each axis is the marginal standard deviation
    divided by ``points_per_sigma``.  The time derivative uses
    ``(W(t + time_step) - W(t - time_step)) / (2 time_step)`` with the default
    ``time_step = 1e-4/omega``.
    """
    if order not in (2, 4):
        raise ParameterError("order must be 2 or 4")
    if time_step is None:
        time_step = 1e-4 / params.omega
    if t <= time_step:
        raise ParameterError(f"t must exceed the time step {time_step}")
    state = evolve(params, d, x10, x20, t)
    x1, x2, h1, h2 = _grid(params, state, half_width, points_per_sigma, order // 2)
    drift, diffusion = _spatial_terms(params, d, _wigner_x(params, state, x1, x2), x1, x2, h1, h2, order)

    k = order // 2
    inner1, inner2 = x1[k:-k, k:-k], x2[k:-k, k:-k]
    later = evolve(params, d, x10, x20, t + time_step)
    earlier = evolve(params, d, x10, x20, t - time_step)
    dw_dt = (_wigner_x(params, later, inner1, inner2)
             - _wigner_x(params, earlier, inner1, inner2)) / (2 * time_step)
    residual = dw_dt - drift - diffusion
    return _summarise((dw_dt, drift, diffusion), residual, h1, h2)


def stationary_residual(
    params: OscillatorParams,
    d: DiffusionCoefficients,
    *,
    points_per_sigma: int = 32,
    half_width: float = 6.0,
    order: int = 4,
) -> FPResidual:
    """Residual of the stationary Wigner function, whose time derivative is zero."""
    asym = asymptotic_covariances(params, d)
    state = GaussianState(0.0, 0.0, asym.sigma_qq, asym.sigma_pp, asym.sigma_pq)
    x1, x2, h1, h2 = _grid(params, state, half_width, points_per_sigma, order // 2)
    drift, diffusion = _spatial_terms(params, d, _wigner_x(params, state, x1, x2), x1, x2, h1, h2, order)
    return _summarise((drift, diffusion), drift + diffusion, h1, h2)


def fp_convergence(params, d, t, *, points_per_sigma: int = 8, **kwargs) -> FPConvergence:
    """Compare second-order residuals at spacing ``h`` and ``h/2``."""
    coarse = fp_residual(params, d, t, points_per_sigma=points_per_sigma, order=2, **kwargs)
    fine = fp_residual(params, d, t, points_per_sigma=2 * points_per_sigma, order=2, **kwargs)
    return FPConvergence(coarse, fine, coarse.max_abs / fine.max_abs)
