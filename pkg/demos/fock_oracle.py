"""Cross-checking the closed form against the number-basis master equation.

The master equation is integrated with RK4 on a 40-level truncation and the
von Neumann entropy of the result is compared with the Gaussian formula.
Expect the run to take a few seconds.
"""
# %%
import math

from lindblad_osc import OscillatorParams, entropy, evolve, nu_of_delta, thermal_coefficients
from lindblad_osc.oracle import fock_entropy, fock_moments, lindblad_fock_trajectory

params = OscillatorParams(lam=0.2)
d = thermal_coefficients(params, 1 / math.log(3))
times = [0.5, 1.0, 2.0, 4.0]
snapshots = lindblad_fock_trajectory(params, d, 1.0, 0.0, times, dim=40)

# %%
for snap in snapshots:
    closed = evolve(params, d, 1.0, 0.0, snap.t)
    s_closed = entropy(nu_of_delta(params, closed.delta))
    moments = fock_moments(snap, params)
    print(f"t={snap.t:4.1f}  S_fock={fock_entropy(snap):.10f}  S_closed={s_closed:.10f}  "
          f"d<q>={moments.mean_q - closed.mean_q:+.1e}  trace-1={snap.trace - 1:+.1e}")
