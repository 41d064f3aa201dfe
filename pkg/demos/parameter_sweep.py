"""Stationary entropy across bath temperatures and damping strengths.

Runs the ``asymptote`` subcommand over a temperature sweep and then
repeats the calculation in-process for a small (lambda, T) table.
"""
# %%
import json
import subprocess
import tempfile
from pathlib import Path

from lindblad_osc import OscillatorParams, asymptotic_nu, entropy, thermal_coefficients

with tempfile.TemporaryDirectory() as tmp:
    cfg = Path(tmp) / "bath.cfg"
    cfg.write_text("lambda = 0.2\nbath_temperature = 1\nt_max = 10\n")
    out = subprocess.run(["lindblad-osc", "asymptote", "--config", str(cfg),
                          "--sweep", "bath_temperature=0.25:2:4"],
                         capture_output=True, text=True, check=True).stdout
for entry in json.loads(out):
    print(f"T={entry['bath_temperature']:<6.4g} s={entry['result']['s']:.6f} S={entry['result']['entropy']:.6f}")

# %% [markdown]
# The stationary occupation depends only on the temperature, not on how
# strongly the oscillator is damped.

# %%
for lam in (0.05, 0.2, 1.0):
    params = OscillatorParams(lam=lam)
    row = [asymptotic_nu(params, thermal_coefficients(params, t)) for t in (0.5, 1.0, 2.0)]
    print(f"lambda={lam:<5}", "  ".join(f"{s:.6f}" for s in row), " S(T=1) =", entropy(row[1]))
