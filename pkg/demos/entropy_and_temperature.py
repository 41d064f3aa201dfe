"""Entropy, purity and effective temperature as functions of nu.

A Gaussian state with covariance determinant delta looks, entropically,
like a thermal state with Bose occupation nu = sqrt(delta)/hbar - 1/2.
"""
# %%
import numpy as np

from lindblad_osc import OscillatorParams, effective_temperature, entropy, entropy_from_temperature, purity
from lindblad_osc.thermo import expected_log_rho

params = OscillatorParams(lam=0.1)
nu = np.array([0.0, 1e-6, 0.1, 0.5, 1.0, 3.0, 10.0])

# %%
s = entropy(nu)
t_e = effective_temperature(params, nu)
for n, si, ti, pi in zip(nu, s, t_e, purity(nu)):
    print(f"nu={n:<8g} S={si:.6f}  T_e={ti:.6f}  purity={pi:.6f}")

# %% [markdown]
# The same entropy written three ways: from nu directly, as -<ln rho> from
# the covariance determinant, and through the thermal formula at T_e.

# %%
for n in nu[2:]:
    delta = (n + 0.5) ** 2
    print(f"nu={n:<5g}", entropy(n), -expected_log_rho(params, delta),
          entropy_from_temperature(params, effective_temperature(params, n)))
