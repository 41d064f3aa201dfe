import math

import numpy as np
import pytest

from _systems import THERMAL_T
from conftest import FOCK_START, FOCK_TIMES
from lindblad_osc import (
    DiffusionCoefficients,
    InvalidStateError,
    OscillatorParams,
    TruncationError,
    entropy,
    evolve,
    nu_of_delta,
)
from lindblad_osc.oracle import (
    FockDensityMatrix,
    fock_entropy,
    fock_moments,
    gibbs_matrix,
    integrate_lindblad_fock,
    lindblad_fock_trajectory,
)
from lindblad_osc.oracle.fock import annihilation, coherent_state


def test_coherent_start(thermal):
    params, d = thermal
    x10, x20 = 1.2, -0.7
    rho = integrate_lindblad_fock(params, d, x10, x20, 0.0)
    a = annihilation(rho.dim)
    n_mean = np.trace(rho.elements @ a.conj().T @ a).real
    assert n_mean == pytest.approx(x10**2 + x20**2, rel=1e-10)
    assert fock_entropy(rho) < 1e-9


@pytest.mark.parametrize("t", FOCK_TIMES)
def test_entropy_matches_closed_form(thermal, thermal_fock_snapshots, t):
    params, d = thermal
    rho = thermal_fock_snapshots[t]
    closed = entropy(nu_of_delta(params, evolve(params, d, *FOCK_START, t).delta))
    assert abs(fock_entropy(rho) - closed) < 1e-5


@pytest.mark.parametrize("t", FOCK_TIMES)
def test_trace_and_hermiticity(thermal_fock_snapshots, t):
    rho = thermal_fock_snapshots[t]
    assert abs(rho.trace - 1) < 1e-5
    assert rho.hermiticity_error() < 1e-10
    assert rho.eigenvalues().min() > -1e-8


@pytest.mark.parametrize("t", FOCK_TIMES)
def test_moments_match_closed_form(thermal, thermal_fock_snapshots, t):
    params, d = thermal
    got = fock_moments(thermal_fock_snapshots[t], params)
    want = evolve(params, d, *FOCK_START, t)
    for field in ("mean_q", "mean_p", "sigma_qq", "sigma_pp", "sigma_pq"):
        assert getattr(got, field) == pytest.approx(getattr(want, field), abs=1e-5)


def test_gibbs_limit(thermal):
    params, d = thermal
    rho = integrate_lindblad_fock(params, d, 0.0, 0.0, 150.0, dt=0.01)
    gibbs = gibbs_matrix(params, THERMAL_T, rho.dim)
    assert np.max(np.abs(rho.elements - gibbs.elements)) < 1e-5


def test_generic_bath_short_run():
    params = OscillatorParams(lam=0.3, mu=0.1, m=1.2, omega=0.9, hbar=0.8)
    d = DiffusionCoefficients(0.4, 0.25, 0.05)
    rho = integrate_lindblad_fock(params, d, 0.5, 0.3, 2.0, dim=50)
    want = evolve(params, d, 0.5, 0.3, 2.0)
    got = fock_moments(rho, params)
    assert got.sigma_pq == pytest.approx(want.sigma_pq, abs=1e-6)
    assert got.sigma_qq == pytest.approx(want.sigma_qq, abs=1e-6)
    assert fock_entropy(rho) == pytest.approx(entropy(nu_of_delta(params, want.delta)), abs=1e-6)


def test_entropy_of_pure_and_thermal_states():
    psi = coherent_state(1.1 - 0.4j, 60)
    assert fock_entropy(FockDensityMatrix(np.outer(psi, psi.conj()))) < 1e-9
    thermal = gibbs_matrix(OscillatorParams(lam=0.1), THERMAL_T, 80)
    assert fock_entropy(thermal) == pytest.approx(1.5 * math.log(1.5) + 0.5 * math.log(2), abs=1e-12)


def test_negative_eigenvalue_is_rejected():
    rho = FockDensityMatrix(np.diag([1.1, -0.1]).astype(complex))
    with pytest.raises(InvalidStateError):
        fock_entropy(rho)


def test_initial_truncation_detected(thermal):
    params, d = thermal
    with pytest.raises(TruncationError) as info:
        lindblad_fock_trajectory(params, d, 2.0, 0.0, [0.1], dim=10)
    assert info.value.dim == 10


def test_trace_drift_detected():
    # a hot bath pushes population out of a small basis
    params = OscillatorParams(lam=0.5)
    d = DiffusionCoefficients(5.0, 5.0)
    with pytest.raises(TruncationError):
        integrate_lindblad_fock(params, d, 0.0, 0.0, 5.0, dim=12)
