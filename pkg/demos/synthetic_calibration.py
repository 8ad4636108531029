"""Simulate a year of hourly seasonal-OU prices, write them as CSV, then
recover the seasonality and the OU parameters with the calibration pipeline."""

import tempfile
from pathlib import Path

import numpy as np

from reliopt import calibrate_pipeline, read_price_csv
from reliopt.seasonality import seasonal_values
from reliopt.presets import OU_LAMBDA, OU_SIGMA, PUN_2016_SEASONALITY

hours = 8784  # 2016 is a leap year
ts = np.datetime64("2016-01-01T00", "h") + np.arange(hours)
dt = 1.0 / 8760

rng = np.random.default_rng(7)
a = np.exp(-OU_LAMBDA * dt)
sd = OU_SIGMA * np.sqrt(-np.expm1(-2 * OU_LAMBDA * dt) / (2 * OU_LAMBDA))
x = np.zeros(hours)
for i in range(1, hours):
    x[i] = a * x[i - 1] + sd * rng.standard_normal()
prices = np.exp(seasonal_values(PUN_2016_SEASONALITY, ts) + x)

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "prices.csv"
    lines = ["timestamp,price"] + [f"{t}:00,{p:.6f}" for t, p in zip(ts, prices)]
    path.write_text("\n".join(lines) + "\n")
    report = calibrate_pipeline(read_price_csv(path))

print(f"lambda  true {OU_LAMBDA:8.2f}  fitted {report.ou.lambda_hat:8.2f}")
print(f"sigma   true {OU_SIGMA:8.4f}  fitted {report.ou.sigma_hat:8.4f}")

# Hourly residuals are strongly autocorrelated, so the AR(1)-corrected
# standard errors are the ones to judge the coefficients by.
seas = report.seasonality
true = PUN_2016_SEASONALITY.to_vector()
fit = seas.params.to_vector()
se = seas.ar1_standard_errors.to_vector()
z = (fit - true) / se
print(f"seasonality: {z.size} coefficients, largest |error| / AR(1) se = {np.abs(z).max():.2f}")
