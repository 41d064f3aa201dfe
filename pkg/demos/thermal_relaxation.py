"""Relaxation of a displaced wave packet in a thermal bath.

The oscillator (m = omega = hbar = k = 1) starts in a coherent state at
x1 = 1 and is coupled to a bath at T = 1/ln 3, where the mean occupation of
the bath mode is exactly 1/2.
"""
# %%
import math

import numpy as np

from lindblad_osc import OscillatorParams, evolve, thermal_coefficients, thermo_report

params = OscillatorParams(lam=0.2)
temperature = 1 / math.log(3)
d = thermal_coefficients(params, temperature)
print(d)

# %% [markdown]
# With mu = 0 and coth(1/2T) = 2 both diffusion coefficients equal lambda.
# The means spiral in with the damping envelope exp(-lambda t) while the
# covariances grow from the minimum-uncertainty value 1/2 towards coth/2 = 1.

# %%
t = np.linspace(0, 30, 7)
state = evolve(params, d, 1.0, 0.0, t)
report = thermo_report(params, state, t)
print(f"{'t':>5} {'<q>':>10} {'<p>':>10} {'s_qq':>8} {'nu':>8} {'S':>8} {'T_e':>8}")
for row in zip(t, state.mean_q, state.mean_p, state.sigma_qq, report.nu, report.entropy, report.t_eff):
    print("{:5.1f} {:10.5f} {:10.5f} {:8.5f} {:8.5f} {:8.5f} {:8.5f}".format(*row))

# %% [markdown]
# By t = 30 the effective temperature has nearly reached the bath value.

# %%
print("bath T =", temperature)
