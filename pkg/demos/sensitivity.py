"""Sensitivity tables for the seasonal OU models: strike and volatility for
the fixed-strike contract, correlation for the indexed strike."""

import numpy as np

from reliopt import Axis, RunConfig, SweepSpec, run_sweep

ou = RunConfig({"model.type": "ou"})
spec = SweepSpec((Axis(("contract.strike",), 20.0, 80.0, 4), Axis(("model.sigma",), 2.0, 10.0, 5)), ou)
values = np.array([r.value_per_unit for r in run_sweep(spec)]).reshape(4, 5)

print("OU, value per MW by strike (rows) and sigma (columns)")
print("K \\ sigma " + "".join(f"{s:>9.1f}" for s in spec.axes[1].values()))
for k, row in zip(spec.axes[0].values(), values):
    print(f"{k:>9.1f} " + "".join(f"{v:>9.2f}" for v in row))

# Matched legs: with equal dynamics the value falls as the strike tracks
# the spot more closely, reaching zero at perfect correlation.
matched = RunConfig({"model.type": "two_ou", "model.y0": 0.0})
spec = SweepSpec((Axis(("model.rho",), -1.0, 1.0, 5),), matched)
print("\ntwo-OU with matched legs")
for row in run_sweep(spec):
    print(f"rho {row.point[0]:+.1f}   value {row.value_per_unit:8.3f}")
