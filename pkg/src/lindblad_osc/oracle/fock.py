"""Truncated number-basis representation of the master equation.

The density matrix is propagated with fixed-step RK4 directly on the full
operator master equation, with friction and diffusion double commutators
built from position and momentum matrices.  Quadratic operator products are
formed in a slightly larger basis before truncation so that their matrix
elements inside the basis are exact; as a consequence population leaking to
the basis edge shows up as trace drift.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh, expm
from scipy.special import gammaln
from scipy.stats import poisson

from ..errors import InvalidStateError, ParameterError, TruncationError
from ..evolution import GaussianState
from ..model import DiffusionCoefficients, OscillatorParams
from ..thermo import DensityOperatorCoefficients

__all__ = [
    "FockDensityMatrix",
    "TRACE_DRIFT_TOL",
    "EIGEN_CLAMP",
    "NEGATIVE_EIGEN_TOL",
    "annihilation",
    "quadratures",
    "coherent_state",
    "LindbladGenerator",
    "default_fock_dt",
    "lindblad_fock_trajectory",
    "integrate_lindblad_fock",
    "fock_entropy",
    "fock_moments",
    "gibbs_matrix",
    "density_matrix_from_coefficients",
]

TRACE_DRIFT_TOL = 1e-5
EIGEN_CLAMP = 1e-14
NEGATIVE_EIGEN_TOL = 1e-8
# the initial state must have negligible weight in the top levels of the basis
_EDGE_LEVELS = 10
_EDGE_WEIGHT = 1e-10


@dataclass(frozen=True)
class FockDensityMatrix:
    elements: np.ndarray
    t: float = 0.0

    @property
    def dim(self) -> int:
        return self.elements.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.elements).real)

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.elements - self.elements.conj().T)))

    def eigenvalues(self) -> np.ndarray:
        return eigvalsh(0.5 * (self.elements + self.elements.conj().T))

    def purity(self) -> float:
        return float(np.real(np.vdot(self.elements.conj().T, self.elements)))


def annihilation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def quadratures(params: OscillatorParams, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Position and momentum matrices in the number basis of ``H0``."""
    a = annihilation(dim)
    ad = a.conj().T
    q = math.sqrt(params.hbar / (2 * params.m * params.omega)) * (a + ad)
    p = 1j * math.sqrt(params.hbar * params.m * params.omega / 2) * (ad - a)
    return q, p


def _operator_set(params: OscillatorParams, dim: int):
    """``q, p`` and exact products ``q^2, p^2, qp, pq`` truncated to ``dim``."""
    big_q, big_p = quadratures(params, dim + 2)
    cut = (slice(0, dim), slice(0, dim))
    return {
        "q": big_q[cut], "p": big_p[cut],
        "qq": (big_q @ big_q)[cut], "pp": (big_p @ big_p)[cut],
        "qp": (big_q @ big_p)[cut], "pq": (big_p @ big_q)[cut],
    }


def coherent_state(alpha: complex, dim: int) -> np.ndarray:
    n = np.arange(dim)
    if alpha == 0:
        vec = np.zeros(dim, complex)
        vec[0] = 1.0
        return vec
    log_amp = -abs(alpha) ** 2 / 2 + n * np.log(abs(alpha)) - 0.5 * gammaln(n + 1)
    return np.exp(log_amp) * np.exp(1j * n * np.angle(alpha))


class LindbladGenerator:
    """Right-hand side of the master equation as ``A rho + rho B + sum c_xy X rho Y``.

    Expanding every commutator gives two one-sided terms and four sandwich
    terms with ``X, Y`` in ``{q, p}``; grouping the sandwiches as
    ``(c_qq q rho + c_pq p rho) q + (c_qp q rho + c_pp p rho) p`` keeps one
    evaluation at six matrix products.
    """

    def __init__(self, params: OscillatorParams, d: DiffusionCoefficients, dim: int):
        ops = _operator_set(params, dim)
        hb, m, w = params.hbar, params.m, params.omega
        lam, mu = params.lam, params.mu
        h0 = ops["pp"] / (2 * m) + m * w**2 / 2 * ops["qq"]
        c1 = -0.5j * (lam + mu) / hb  # [q, rho p + p rho]
        c2 = 0.5j * (lam - mu) / hb  # [p, rho q + q rho]
        dpp, dqq, dpq = d.d_pp / hb**2, d.d_qq / hb**2, d.d_pq / hb**2
        sym = ops["qp"] + ops["pq"]

        self.left = (-1j / hb * h0 + c1 * ops["qp"] + c2 * ops["pq"]
                     - dpp * ops["qq"] - dqq * ops["pp"] + dpq * sym)
        self.right = (1j / hb * h0 - c1 * ops["pq"] - c2 * ops["qp"]
                      - dpp * ops["qq"] - dqq * ops["pp"] + dpq * sym)
        self.c_qq = 2 * dpp
        self.c_pp = 2 * dqq
        self.c_qp = c1 - c2 - 2 * dpq  # coefficient of q rho p
        self.c_pq = -c1 + c2 - 2 * dpq  # coefficient of p rho q
        self.q, self.p = ops["q"], ops["p"]

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        q_rho = self.q @ rho
        p_rho = self.p @ rho
        return (self.left @ rho + rho @ self.right
                + (self.c_qq * q_rho + self.c_pq * p_rho) @ self.q
                + (self.c_qp * q_rho + self.c_pp * p_rho) @ self.p)


def default_fock_dt(params: OscillatorParams) -> float:
    return 1e-3 / params.omega


def _check_initial_weight(alpha: complex, dim: int):
    edge = max(dim - _EDGE_LEVELS, 0)
    weight = float(poisson.sf(edge - 1, abs(alpha) ** 2)) if edge > 0 else 1.0
    if weight > _EDGE_WEIGHT:
        raise TruncationError(
            f"coherent state |alpha|={abs(alpha):.3g} has weight {weight:.2e} in the top "
            f"{_EDGE_LEVELS} levels of a {dim}-level basis; increase fock_dim",
            deviation=weight, dim=dim,
        )


def lindblad_fock_trajectory(
    params: OscillatorParams,
    d: DiffusionCoefficients,
    x10: float,
    x20: float,
    times,
    dt: float | None = None,
    dim: int = 60,
) -> list[FockDensityMatrix]:
    """Density matrices at each of ``times``, starting from the coherent state ``x10 + i x20``.

    Raises :class:`TruncationError` if the initial state does not fit into
    the basis or the trace drifts by more than ``TRACE_DRIFT_TOL``.
    """
    if dt is None:
        dt = default_fock_dt(params)
    times = np.asarray(times, dtype=float)
    if dt <= 0 or np.any(times < 0) or np.any(np.diff(times) < 0):
        raise ParameterError("need dt > 0 and non-negative, non-decreasing times")
    alpha = complex(x10, x20)
    _check_initial_weight(alpha, dim)

    generator = LindbladGenerator(params, d, dim)
    psi = coherent_state(alpha, dim)
    rho = np.outer(psi, psi.conj())
    t = 0.0
    snapshots = []
    for target in times:
        n = math.ceil((target - t) / dt - 1e-9)
        if n > 0:
            h = (target - t) / n
            for step in range(n):
                k1 = generator(rho)
                k2 = generator(rho + 0.5 * h * k1)
                k3 = generator(rho + 0.5 * h * k2)
                k4 = generator(rho + h * k3)
                rho = rho + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
                if step % 200 == 0:
                    _check_trace(rho, dim, t + step * h)
            t = float(target)
        _check_trace(rho, dim, t)
        snapshots.append(FockDensityMatrix(rho.copy(), t))
    return snapshots


def _check_trace(rho: np.ndarray, dim: int, t: float):
    drift = abs(np.trace(rho).real - 1)
    if not math.isfinite(drift) or drift > TRACE_DRIFT_TOL:
        raise TruncationError(
            f"trace drifted by {drift:.2e} at t={t:.4g} in a {dim}-level basis; increase fock_dim",
            deviation=drift, dim=dim,
        )


def integrate_lindblad_fock(params, d, x10, x20, t_end, dt=None, dim=60) -> FockDensityMatrix:
    return lindblad_fock_trajectory(params, d, x10, x20, [t_end], dt=dt, dim=dim)[-1]


def fock_entropy(rho: FockDensityMatrix, boltzmann: float = 1.0) -> float:
    """``-k sum l ln l`` over the eigenvalues of ``rho``."""
    evals = rho.eigenvalues()
    if evals.min() < -NEGATIVE_EIGEN_TOL:
        raise InvalidStateError(f"density matrix has eigenvalue {evals.min():.3e}")
    evals = evals[evals > EIGEN_CLAMP]
    return float(-boltzmann * np.sum(evals * np.log(evals)))


def fock_moments(rho: FockDensityMatrix, params: OscillatorParams) -> GaussianState:
    """Means and covariances extracted as traces against ``rho``."""
    ops = _operator_set(params, rho.dim)

    def expect(op):
        return float(np.real(np.trace(rho.elements @ op)))

    mq, mp = expect(ops["q"]), expect(ops["p"])
    return GaussianState(
        mean_q=mq,
        mean_p=mp,
        sigma_qq=expect(ops["qq"]) - mq**2,
        sigma_pp=expect(ops["pp"]) - mp**2,
        sigma_pq=0.5 * expect(ops["qp"] + ops["pq"]) - mq * mp,
    )


def gibbs_matrix(params: OscillatorParams, temperature: float, dim: int) -> FockDensityMatrix:
    x = params.hbar * params.omega / (params.boltzmann * temperature)
    n = np.arange(dim)
    return FockDensityMatrix(np.diag(-np.expm1(-x) * np.exp(-n * x)).astype(complex))


def density_matrix_from_coefficients(
    params: OscillatorParams, coeffs: DensityOperatorCoefficients, dim: int, pad: int = 40
) -> FockDensityMatrix:
    """Matrix exponential of the Gaussian density operator, truncated to ``dim`` levels.

    The exponent is exponentiated in ``dim + pad`` levels so that the kept
    block is free of edge effects.
    """
    if coeffs.pure:
        raise InvalidStateError("pure-state coefficients have no finite exponent")
    big = dim + pad
    q, p = quadratures(params, big)
    eye = np.eye(big)
    dq = q - coeffs.mean_q * eye
    dp = p - coeffs.mean_p * eye
    exponent = (coeffs.quad_qq * dq @ dq + coeffs.quad_pp * dp @ dp
                + coeffs.quad_cross * (dq @ dp + dp @ dq))
    rho = coeffs.normalization * expm(-exponent)
    return FockDensityMatrix(rho[:dim, :dim])
