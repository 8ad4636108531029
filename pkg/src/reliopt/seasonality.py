"""Deterministic log-price seasonality built from calendar dummies.

The seasonal level of the log price at an hour is

    alpha + beta[month] + delta[day category] + gamma[hour]

with January, Friday and hour 1 as base categories (coefficient 0).
Hour ``h`` (1..24) is the delivery hour starting at ``h - 1`` o'clock.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from datetime import date, datetime

import numpy as np
from scipy.signal import fftconvolve

from .errors import CalibrationError, InputError
from .timeseries import PriceSeries, as_hours

__all__ = [
    "HOURS_PER_YEAR",
    "DayCategory",
    "CalendarPoint",
    "SeasonalityParams",
    "RegressionReport",
    "SeasonalCurve",
    "ConstantLevel",
    "LinearTrend",
    "day_category",
    "seasonal_value",
    "seasonal_values",
    "calendar_indices",
    "design_matrix",
    "fit_seasonality",
    "COEFFICIENT_NAMES",
]

HOURS_PER_YEAR = 8760


class DayCategory(enum.IntEnum):
    FRIDAY = 0
    WEEKEND = 1
    MONDAY = 2
    OTHER_WORKING = 3


# Monday=0 .. Sunday=6
_WEEKDAY_TO_CATEGORY = np.array(
    [
        DayCategory.MONDAY,
        DayCategory.OTHER_WORKING,
        DayCategory.OTHER_WORKING,
        DayCategory.OTHER_WORKING,
        DayCategory.FRIDAY,
        DayCategory.WEEKEND,
        DayCategory.WEEKEND,
    ],
    dtype=np.int64,
)


def day_category(timestamp) -> DayCategory:
    """Day category of a civil date or datetime (ISO strings accepted)."""
    if isinstance(timestamp, str):
        try:
            timestamp = datetime.fromisoformat(timestamp)
        except ValueError:
            raise InputError(f"invalid date {timestamp!r}") from None
    if isinstance(timestamp, np.datetime64):
        timestamp = timestamp.astype("datetime64[D]").item()
    if not isinstance(timestamp, date):
        raise InputError(f"expected a date, got {type(timestamp).__name__}")
    return DayCategory(int(_WEEKDAY_TO_CATEGORY[timestamp.weekday()]))


@dataclass(frozen=True)
class CalendarPoint:
    month: int  # 1..12
    day_category: DayCategory
    hour: int  # 1..24

    def __post_init__(self):
        if not 1 <= self.month <= 12:
            raise InputError(f"month must be in 1..12, got {self.month}")
        if not 1 <= self.hour <= 24:
            raise InputError(f"hour must be in 1..24, got {self.hour}")
        object.__setattr__(self, "day_category", DayCategory(self.day_category))

    @classmethod
    def from_timestamp(cls, ts) -> CalendarPoint:
        if isinstance(ts, str):
            ts = datetime.fromisoformat(ts)
        if isinstance(ts, np.datetime64):
            ts = ts.astype("datetime64[s]").item()
        return cls(ts.month, day_category(ts), ts.hour + 1)


def calendar_indices(timestamps) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Zero-based (month, day category, hour) indices for an array of hours."""
    ts = as_hours(timestamps)
    month = ts.astype("datetime64[M]").astype(np.int64) % 12
    days = ts.astype("datetime64[D]")
    weekday = (days.astype(np.int64) + 3) % 7  # 1970-01-01 was a Thursday
    hour = (ts - days.astype("datetime64[h]")).astype(np.int64)
    return month, _WEEKDAY_TO_CATEGORY[weekday], hour


def _zero_based(values, size, name):
    arr = np.array(values, dtype=float).ravel()
    if arr.size == size - 1:
        arr = np.concatenate([[0.0], arr])
    if arr.size != size:
        raise InputError(f"{name} needs {size} entries (or {size - 1} without the base), got {arr.size}")
    if arr[0] != 0.0:
        raise InputError(f"{name}[base] must be exactly 0, got {arr[0]}")
    arr.setflags(write=False)
    return arr


_DAY_NAMES = {DayCategory.MONDAY: "Monday", DayCategory.WEEKEND: "Weekend", DayCategory.OTHER_WORKING: "Working_day"}

COEFFICIENT_NAMES: tuple[str, ...] = (
    ("intercept",)
    + tuple(f"month_{m}" for m in range(2, 13))
    + tuple(_DAY_NAMES.values())
    + tuple(f"hour_{h}" for h in range(2, 25))
)
_DAY_ORDER = tuple(_DAY_NAMES)  # delta index of each day column in the design


@dataclass(frozen=True)
class SeasonalityParams:
    """Dummy-regression coefficients of the log-price level.

    ``beta`` (12), ``delta`` (4, ordered as :class:`DayCategory`) and
    ``gamma`` (24) include their base entry, which must be 0. Passing
    11/3/23 values omits the base.
    """

    alpha: float = 0.0
    beta: np.ndarray = field(default_factory=lambda: np.zeros(12))
    delta: np.ndarray = field(default_factory=lambda: np.zeros(4))
    gamma: np.ndarray = field(default_factory=lambda: np.zeros(24))

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", _zero_based(self.beta, 12, "beta"))
        object.__setattr__(self, "delta", _zero_based(self.delta, 4, "delta"))
        object.__setattr__(self, "gamma", _zero_based(self.gamma, 24, "gamma"))

    def __eq__(self, other):
        if not isinstance(other, SeasonalityParams):
            return NotImplemented
        return np.array_equal(self.to_vector(), other.to_vector())

    __hash__ = None

    def to_vector(self) -> np.ndarray:
        """Coefficients in :data:`COEFFICIENT_NAMES` order."""
        days = [self.delta[d] for d in _DAY_ORDER]
        return np.concatenate([[self.alpha], self.beta[1:], days, self.gamma[1:]])

    @classmethod
    def from_vector(cls, vec) -> SeasonalityParams:
        vec = np.asarray(vec, dtype=float)
        if vec.size != len(COEFFICIENT_NAMES):
            raise InputError(f"expected {len(COEFFICIENT_NAMES)} coefficients, got {vec.size}")
        delta = np.zeros(4)
        for j, d in enumerate(_DAY_ORDER):
            delta[d] = vec[12 + j]
        return cls(vec[0], np.concatenate([[0.0], vec[1:12]]), delta, np.concatenate([[0.0], vec[15:]]))

    def as_dict(self) -> dict[str, float]:
        return dict(zip(COEFFICIENT_NAMES, map(float, self.to_vector())))

    @classmethod
    def from_dict(cls, coeffs: dict) -> SeasonalityParams:
        unknown = set(coeffs) - set(COEFFICIENT_NAMES)
        if unknown:
            raise InputError(f"unknown seasonality coefficients: {sorted(unknown)}")
        return cls.from_vector([float(coeffs.get(name, 0.0)) for name in COEFFICIENT_NAMES])


def seasonal_value(params: SeasonalityParams, point: CalendarPoint) -> float:
    return (
        params.alpha
        + params.beta[point.month - 1]
        + params.delta[point.day_category]
        + params.gamma[point.hour - 1]
    )


def seasonal_values(params: SeasonalityParams, timestamps) -> np.ndarray:
    """Vectorised :func:`seasonal_value` over an array of hour stamps."""
    month, day, hour = calendar_indices(timestamps)
    return params.alpha + params.beta[month] + params.delta[day] + params.gamma[hour]


class SeasonalCurve:
    """Seasonality as a function of time in years from a valuation origin.

    Time ``t`` falls in hour ``floor(t * 8760)`` after ``origin``; calendar
    effects follow the civil calendar of that hour.
    """

    def __init__(self, params: SeasonalityParams, origin="2017-01-01T00:00"):
        self.params = params
        self.origin = np.datetime64(origin, "h")

    def __repr__(self):
        return f"SeasonalCurve(origin={self.origin})"

    def hour_index(self, t) -> np.ndarray:
        # the small guard keeps grid nodes that sit on an hour boundary in that hour
        return np.floor(np.asarray(t, dtype=float) * HOURS_PER_YEAR + 1e-7).astype(np.int64)

    def __call__(self, t):
        idx = self.hour_index(t)
        out = seasonal_values(self.params, self.origin + idx.ravel())
        return out.reshape(idx.shape) if idx.ndim else float(out[0])

    def breakpoints(self, t1: float, t2: float) -> np.ndarray:
        """Hour boundaries strictly inside ``(t1, t2)``, with both ends."""
        lo = math.floor(t1 * HOURS_PER_YEAR) + 1
        hi = math.ceil(t2 * HOURS_PER_YEAR) - 1
        inner = np.arange(lo, hi + 1) / HOURS_PER_YEAR
        inner = inner[(inner > t1) & (inner < t2)]
        return np.concatenate([[t1], inner, [t2]])


@dataclass(frozen=True)
class ConstantLevel:
    """A flat log-price level."""

    level: float = 0.0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return np.full(t.shape, self.level) if t.ndim else self.level


@dataclass(frozen=True)
class LinearTrend:
    """``intercept + slope * t``; used to embed GBM dynamics in the OU model."""

    intercept: float = 0.0
    slope: float = 0.0

    def __call__(self, t):
        if np.ndim(t):
            return self.intercept + self.slope * np.asarray(t, dtype=float)
        return self.intercept + self.slope * float(t)


def design_matrix(timestamps) -> np.ndarray:
    """Intercept plus drop-one month, day-category and hour dummies."""
    month, day, hour = calendar_indices(timestamps)
    n = month.size
    X = np.zeros((n, len(COEFFICIENT_NAMES)))
    X[:, 0] = 1.0
    rows = np.arange(n)
    m = month > 0
    X[rows[m], month[m]] = 1.0  # month_2 is column 1
    for j, d in enumerate(_DAY_ORDER):
        X[day == d, 12 + j] = 1.0
    h = hour > 0
    X[rows[h], 14 + hour[h]] = 1.0  # hour_2 is column 15
    return X


@dataclass(frozen=True)
class RegressionReport:
    """OLS fit of log prices on the calendar dummies.

    ``standard_errors`` are the classical OLS errors, which assume
    uncorrelated residuals. ``ar1_standard_errors`` use the sandwich
    ``(X'X)^-1 X' Sigma X (X'X)^-1`` with ``Sigma`` the covariance of a
    stationary AR(1) fitted to the residuals; they remain valid when the
    residuals are a sampled OU process.
    """

    params: SeasonalityParams
    standard_errors: SeasonalityParams
    ar1_standard_errors: SeasonalityParams
    residuals: np.ndarray
    r_squared: float

    @property
    def n_obs(self) -> int:
        return self.residuals.size

    def to_dict(self) -> dict:
        est = self.params.to_vector()
        se = self.standard_errors.to_vector()
        ar1 = self.ar1_standard_errors.to_vector()
        return {
            name: {"estimate": float(e), "std_error": float(s), "ar1_std_error": float(a)}
            for name, e, s, a in zip(COEFFICIENT_NAMES, est, se, ar1)
        }


def _ar1_meat(X: np.ndarray, resid: np.ndarray) -> np.ndarray:
    """``X' Sigma X`` for stationary AR(1) errors fitted to ``resid``."""
    lag, lead = resid[:-1], resid[1:]
    denom = float(lag @ lag)
    a = float(lag @ lead) / denom if denom > 0 else 0.0
    a = min(max(a, 0.0), 0.9999)
    gamma0 = float(resid @ resid) / resid.size
    if a == 0.0:
        return gamma0 * (X.T @ X)
    reach = min(int(math.log(1e-12) / math.log(a)) + 1, resid.size - 1)
    kernel = gamma0 * a ** np.abs(np.arange(-reach, reach + 1))
    S = X.T @ fftconvolve(X, kernel[:, None], mode="same", axes=0)
    return 0.5 * (S + S.T)


def fit_seasonality(series: PriceSeries) -> RegressionReport:
    """Regress log prices on month, day-category and hour dummies.

    Solved by QR decomposition. Every category must occur in the sample,
    otherwise its coefficient is not identified.
    """
    y = series.log_prices()
    n_coef = len(COEFFICIENT_NAMES)
    if y.size <= 41:
        raise InputError(f"need more than 41 observations, got {y.size}")
    X = design_matrix(series.timestamps)
    missing = [name for name, col in zip(COEFFICIENT_NAMES[1:], X[:, 1:].T) if not col.any()]
    month, day, hour = calendar_indices(series.timestamps)
    if not (month == 0).any():
        missing.append("month_1 (base)")
    if not (day == DayCategory.FRIDAY).any():
        missing.append("Friday (base)")
    if not (hour == 0).any():
        missing.append("hour_1 (base)")
    if missing:
        raise CalibrationError(f"rank-deficient design: no observations for {', '.join(missing)}")

    Q, R = np.linalg.qr(X)
    diag = np.abs(np.diag(R))
    if diag.min() <= 1e-10 * diag.max():
        bad = COEFFICIENT_NAMES[int(np.argmin(diag))]
        raise CalibrationError(f"rank-deficient design near coefficient {bad}")
    coef = np.linalg.solve(R, Q.T @ y)
    fitted = X @ coef
    resid = y - fitted

    dof = y.size - n_coef
    s2 = float(resid @ resid) / dof
    R_inv = np.linalg.solve(R, np.eye(n_coef))
    xtx_inv = R_inv @ R_inv.T
    se = np.sqrt(s2 * np.diag(xtx_inv))

    ar1_cov = xtx_inv @ _ar1_meat(X, resid) @ xtx_inv
    ar1_se = np.sqrt(np.clip(np.diag(ar1_cov), 0.0, None))

    tss = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float(resid @ resid) / tss if tss > 0 else 1.0
    resid.setflags(write=False)
    return RegressionReport(
        params=SeasonalityParams.from_vector(coef),
        standard_errors=SeasonalityParams.from_vector(se),
        ar1_standard_errors=SeasonalityParams.from_vector(ar1_se),
        residuals=resid,
        r_squared=r2,
    )
