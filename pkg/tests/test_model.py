import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lindblad_osc import (
    ConstraintViolation,
    DiffusionCoefficients,
    OscillatorParams,
    ParameterError,
    require_valid,
    thermal_coefficients,
    validate_constraints,
)

T_LN3 = 1 / math.log(3)


def test_margin_is_plain_arithmetic():
    report = validate_constraints(OscillatorParams(lam=0.2), DiffusionCoefficients(0.2, 0.2, 0.0))
    assert report.valid
    assert report.checks[2].margin == pytest.approx(0.04 - 0.01, abs=1e-15)
    assert [c.margin for c in report.checks[:2]] == [0.2, 0.2]


def test_third_constraint_fails():
    report = validate_constraints(OscillatorParams(lam=1.0), DiffusionCoefficients(0.1, 0.1, 0.0))
    assert not report.valid
    assert [c.holds for c in report.checks] == [True, True, False]
    assert report.checks[2].margin == pytest.approx(0.01 - 0.25)
    with pytest.raises(ConstraintViolation):
        require_valid(OscillatorParams(lam=1.0), DiffusionCoefficients(0.1, 0.1, 0.0))


def test_boundary_is_valid_without_tolerance():
    # d_pp d_qq = (lam hbar)^2 / 4 exactly in binary floating point
    report = validate_constraints(OscillatorParams(lam=1.0), DiffusionCoefficients(0.5, 0.5))
    assert report.checks[2].margin == 0.0 and report.valid


def test_negative_diffusion_reported():
    report = validate_constraints(OscillatorParams(lam=0.1), DiffusionCoefficients(-1.0, -1.0))
    assert [c.holds for c in report.checks] == [False, False, True]
    assert not report.valid


@pytest.mark.parametrize("bad", [math.nan, math.inf])
def test_non_finite_inputs_rejected(bad):
    with pytest.raises(ParameterError):
        DiffusionCoefficients(bad, 1.0)
    with pytest.raises(ParameterError):
        OscillatorParams(lam=bad)


@pytest.mark.parametrize("kwargs", [
    dict(lam=0.1, m=0.0), dict(lam=0.1, omega=-1.0), dict(lam=0.1, hbar=0.0),
    dict(lam=0.1, boltzmann=0.0), dict(lam=-0.1), dict(lam=0.1, mu=1.0), dict(lam=0.1, mu=-1.5),
])
def test_params_rejected(kwargs):
    with pytest.raises(ParameterError):
        OscillatorParams(**kwargs)


def test_big_omega():
    assert OscillatorParams(lam=0.1, mu=0.6, omega=1.0).big_omega == pytest.approx(0.8)


def test_thermal_example_coefficients():
    # coth(ln 3 / 2) = (sqrt3 + 1/sqrt3) / (sqrt3 - 1/sqrt3) = 2
    d = thermal_coefficients(OscillatorParams(lam=0.2), T_LN3)
    assert d.d_pp == pytest.approx(0.2, rel=1e-14)
    assert d.d_qq == pytest.approx(0.2, rel=1e-14)
    assert d.d_pq == 0.0


@given(st.floats(0.05, 50.0), st.floats(0.2, 3.0), st.floats(0.2, 3.0))
def test_symmetric_coefficients_at_zero_mu(temperature, m, omega):
    params = OscillatorParams(lam=0.3, m=m, omega=omega)
    d = thermal_coefficients(params, temperature)
    assert d.d_pp / (m * omega) ** 2 == pytest.approx(d.d_qq, rel=1e-13)


def test_high_temperature_limit():
    params = OscillatorParams(lam=0.3, mu=0.1, m=1.7)
    temperature = 1e6
    d = thermal_coefficients(params, temperature)
    assert d.d_pp / ((params.lam + params.mu) * params.m * temperature) == pytest.approx(1.0, rel=1e-9)


def test_thermal_preconditions():
    with pytest.raises(ParameterError):
        thermal_coefficients(OscillatorParams(lam=0.2), 0.0)
    with pytest.raises(ParameterError):
        thermal_coefficients(OscillatorParams(lam=0.2, mu=0.2), 1.0)
    with pytest.raises(ParameterError):
        thermal_coefficients(OscillatorParams(lam=0.2, mu=-0.3), 1.0)


@pytest.mark.parametrize("temperature", [0.1, 1.0, 10.0])
@pytest.mark.parametrize("lam", [0.05, 0.3, 1.0, 5.0])
def test_thermal_coefficients_admissible_without_mu(temperature, lam):
    params = OscillatorParams(lam=lam, m=1.3, omega=1.0, hbar=0.8, boltzmann=1.1)
    assert validate_constraints(params, thermal_coefficients(params, temperature)).valid


@given(st.floats(0.05, 20.0), st.floats(0.05, 5.0), st.floats(-0.95, 0.95))
def test_thermal_validity_condition(temperature, lam, mu_frac):
    # d_pp d_qq = (lam^2 - mu^2) hbar^2 coth^2 / 4, so lam > |mu| alone is not enough
    params = OscillatorParams(lam=lam, mu=mu_frac * min(lam, 0.99), omega=1.0)
    coth = 1 / math.tanh(1 / (2 * temperature))
    need = lam**2 / (lam**2 - params.mu**2)
    valid = validate_constraints(params, thermal_coefficients(params, temperature)).valid
    if abs(coth**2 / need - 1) > 1e-9:
        assert valid == (coth**2 > need)


def test_cold_bath_with_mu_violates_constraints():
    params = OscillatorParams(lam=0.3, mu=0.2)
    report = validate_constraints(params, thermal_coefficients(params, 0.1))
    assert [c.holds for c in report.checks] == [True, True, False]


@given(st.floats(0.01, 2.0), st.floats(0.01, 2.0), st.floats(-1.0, 1.0),
       st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_validity_monotone_in_diagonal(d_pp, d_qq, d_pq, extra_pp, extra_qq):
    params = OscillatorParams(lam=0.4, hbar=0.9)
    before = validate_constraints(params, DiffusionCoefficients(d_pp, d_qq, d_pq)).valid
    after = validate_constraints(params, DiffusionCoefficients(d_pp + extra_pp, d_qq + extra_qq, d_pq)).valid
    assert after or not before


def test_params_are_immutable():
    params = OscillatorParams(lam=0.1)
    with pytest.raises(AttributeError):
        params.lam = 0.2
    assert np.isclose(params.big_omega, 1.0)
