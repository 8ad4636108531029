"""Estimating GBM and seasonal-OU parameters from hourly prices."""

from __future__ import annotations

import json
import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import CalibrationError, InputError
from .seasonality import HOURS_PER_YEAR, RegressionReport, fit_seasonality
from .timeseries import PriceSeries

__all__ = [
    "HOURLY_DT",
    "OuEstimate",
    "CalibrationReport",
    "estimate_gbm_sigma",
    "estimate_ou",
    "calibrate_pipeline",
]

log = logging.getLogger(__name__)

HOURLY_DT = 1.0 / HOURS_PER_YEAR


@dataclass(frozen=True)
class OuEstimate:
    lambda_hat: float
    sigma_hat: float
    ar_coefficient: float
    residual_sd: float


def estimate_gbm_sigma(series, dt: float = HOURLY_DT) -> float:
    """Sample standard deviation of log returns, annualised by ``1/sqrt(dt)``.

    ``series`` is a :class:`PriceSeries` or an array of prices.
    """
    if isinstance(series, PriceSeries):
        logs = series.log_prices()
    else:
        prices = np.asarray(series, dtype=float)
        if np.any(prices <= 0):
            raise InputError("GBM calibration needs strictly positive prices")
        logs = np.log(prices)
    if logs.size < 2:
        raise InputError("need at least 2 observations")
    returns = np.diff(logs)
    if returns.size == 1:
        return float(abs(returns[0]) / math.sqrt(dt))
    return float(np.std(returns, ddof=1) / math.sqrt(dt))


def estimate_ou(residuals, dt: float = HOURLY_DT) -> OuEstimate:
    """Fit ``X[t+1] = a X[t] + eps`` through the origin and map to (lambda, sigma).

    ``lambda = -ln(a) / dt`` and ``sigma = sd(eps) sqrt(-2 ln(a) / ((1 - a^2) dt))``,
    the exact discretisation of the OU process.
    """
    x = np.asarray(residuals, dtype=float)
    if x.size < 3:
        raise InputError("need at least 3 observations")
    lag, lead = x[:-1], x[1:]
    denom = float(lag @ lag)
    if denom == 0.0 or np.max(np.abs(x)) <= 1e-12:
        raise CalibrationError("no mean reversion detected: residuals are identically zero")
    a = float(lag @ lead) / denom
    if not 0.0 < a < 1.0:
        raise CalibrationError(f"no mean reversion detected: AR(1) coefficient {a:.6g} outside (0, 1)")
    eps = lead - a * lag
    sd = float(np.std(eps, ddof=1))
    lam = -math.log(a) / dt
    sigma = sd * math.sqrt(-2.0 * math.log(a) / ((1.0 - a * a) * dt))
    return OuEstimate(lambda_hat=lam, sigma_hat=sigma, ar_coefficient=a, residual_sd=sd)


@dataclass(frozen=True)
class CalibrationReport:
    seasonality: RegressionReport
    ou: OuEstimate
    gbm_sigma: float

    def to_dict(self) -> dict:
        return {
            "seasonality": self.seasonality.to_dict(),
            "ou": {
                "lambda": self.ou.lambda_hat,
                "sigma": self.ou.sigma_hat,
                "a": self.ou.ar_coefficient,
                "sd": self.ou.residual_sd,
            },
            "gbm": {"sigma": self.gbm_sigma},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def calibrate_pipeline(series: PriceSeries, dt: float = HOURLY_DT) -> CalibrationReport:
    """Seasonality regression, then OU on its residuals and GBM on raw log returns."""
    seasonal = fit_seasonality(series)
    ou = estimate_ou(seasonal.residuals, dt)
    if abs(dt - HOURLY_DT) < 1e-12 and not 0.9 < ou.ar_coefficient < 1.0:
        warnings.warn(
            f"hourly AR(1) coefficient {ou.ar_coefficient:.4f} is outside the usual (0.9, 1.0) range for power prices",
            stacklevel=2,
        )
    gbm_sigma = estimate_gbm_sigma(series, dt)
    log.info("calibrated lambda=%.4g sigma=%.4g gbm_sigma=%.4g", ou.lambda_hat, ou.sigma_hat, gbm_sigma)
    return CalibrationReport(seasonal, ou, gbm_sigma)
