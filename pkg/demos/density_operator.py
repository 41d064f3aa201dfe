"""Building the density operator from the covariances.

The Gaussian density operator is an exponential of a quadratic form in
q and p.  Exponentiating it in the number basis gives a matrix whose
spectrum is geometric with ratio nu/(nu + 1).
"""
# %%
import numpy as np

from lindblad_osc import (
    DiffusionCoefficients,
    OscillatorParams,
    density_operator_coefficients,
    evolve,
    nu_of_delta,
)
from lindblad_osc.oracle import density_matrix_from_coefficients

params = OscillatorParams(lam=0.3, mu=0.1)
d = DiffusionCoefficients(0.4, 0.25, 0.05)
state = evolve(params, d, 0.5, -0.2, 3.0)
coeffs = density_operator_coefficients(params, state)
print(coeffs)

# %%
rho = density_matrix_from_coefficients(params, coeffs, 50)
nu = nu_of_delta(params, state.delta)
n = np.arange(6)
print("trace:", rho.trace)
print("eigenvalues:", rho.eigenvalues()[::-1][:6])
print("geometric  :", nu**n / (nu + 1) ** (n + 1))
