import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reliopt.errors import CalibrationError, InputError
from reliopt.presets import PUN_2016_SEASONALITY
from reliopt.seasonality import (
    COEFFICIENT_NAMES,
    CalendarPoint,
    DayCategory,
    SeasonalCurve,
    SeasonalityParams,
    day_category,
    design_matrix,
    fit_seasonality,
    seasonal_value,
    seasonal_values,
)
from reliopt.timeseries import PriceSeries

from conftest import hourly_index, seasonal_ou_series


@pytest.mark.parametrize(
    "day, expected",
    [
        ("2016-01-01", DayCategory.FRIDAY),
        ("2016-01-02", DayCategory.WEEKEND),
        ("2016-01-03", DayCategory.WEEKEND),
        ("2016-01-04", DayCategory.MONDAY),
        ("2016-01-05", DayCategory.OTHER_WORKING),
        ("2016-01-07", DayCategory.OTHER_WORKING),
    ],
)
def test_day_category(day, expected):
    assert day_category(day) is expected


def test_day_category_rejects_invalid_date():
    with pytest.raises(InputError):
        day_category("2016-02-30")


def test_zero_params_give_zero():
    zero = SeasonalityParams.from_vector(np.zeros(len(COEFFICIENT_NAMES)))
    assert seasonal_value(zero, CalendarPoint(7, DayCategory.MONDAY, 13)) == 0.0


def test_table_values():
    p = PUN_2016_SEASONALITY
    assert seasonal_value(p, CalendarPoint(1, DayCategory.FRIDAY, 20)) == pytest.approx(3.79 + 0.28)
    assert seasonal_value(p, CalendarPoint(4, DayCategory.WEEKEND, 1)) == pytest.approx(3.79 - 0.36 - 0.14)


def test_base_categories_must_be_zero():
    with pytest.raises(InputError):
        SeasonalityParams(alpha=1.0, beta=np.ones(12), delta=np.zeros(4), gamma=np.zeros(24))
    p = SeasonalityParams(alpha=1.0, beta=np.ones(11), delta=np.zeros(3), gamma=np.zeros(23))
    assert p.beta[0] == 0.0 and p.beta[5] == 1.0


def test_dict_round_trip():
    p = PUN_2016_SEASONALITY
    assert SeasonalityParams.from_dict(p.as_dict()) == p
    with pytest.raises(InputError):
        SeasonalityParams.from_dict({"month_13": 0.1})


def test_timestamp_hour_labelling():
    # the 00:00-01:00 delivery hour is hour 1
    assert CalendarPoint.from_timestamp("2016-03-08T00:00").hour == 1
    assert CalendarPoint.from_timestamp("2016-03-08T23:00").hour == 24


def test_vectorised_matches_scalar():
    ts = hourly_index(hours=24 * 40)
    vec = seasonal_values(PUN_2016_SEASONALITY, ts)
    for i in range(0, ts.size, 37):
        assert vec[i] == seasonal_value(PUN_2016_SEASONALITY, CalendarPoint.from_timestamp(ts[i]))


def test_design_selects_one_dummy_per_group():
    X = design_matrix(hourly_index(hours=8784))
    assert np.all(X[:, 0] == 1)
    assert np.all(X[:, 1:12].sum(axis=1) <= 1)
    assert np.all(X[:, 12:15].sum(axis=1) <= 1)
    assert np.all(X[:, 15:].sum(axis=1) <= 1)


def test_curve_piecewise_constant_within_hour():
    curve = SeasonalCurve(PUN_2016_SEASONALITY, "2017-01-01T00:00")
    h = 1.0 / 8760
    for k in (0, 5, 30_000):
        inside = np.linspace(k * h, (k + 1) * h, 7)[:-1] + 1e-12
        assert np.ptp(curve(inside)) == 0.0
    # 2017-01-01 is a Sunday: hour 20 of a weekend day in January
    assert curve(19.5 * h) == pytest.approx(3.79 - 0.14 + 0.28)


def test_noiseless_recovery():
    ts = hourly_index(hours=8784)
    series = PriceSeries(ts, np.exp(seasonal_values(PUN_2016_SEASONALITY, ts)))
    rep = fit_seasonality(series)
    np.testing.assert_allclose(rep.params.to_vector(), PUN_2016_SEASONALITY.to_vector(), atol=1e-8)
    assert np.max(np.abs(rep.residuals)) < 1e-8
    assert rep.n_obs == 8784


@pytest.fixture(scope="module")
def noisy_fit():
    series, _ = seasonal_ou_series(PUN_2016_SEASONALITY, 294.84, 6.5932, seed=7)
    return series, fit_seasonality(series)


def test_residuals_orthogonal(noisy_fit):
    _, rep = noisy_fit
    assert abs(rep.residuals.mean()) < 1e-10
    assert rep.residuals.size == 8784
    assert 0 < rep.r_squared < 1


def test_constant_shift_moves_only_intercept(noisy_fit):
    series, rep = noisy_fit
    shifted = fit_seasonality(PriceSeries(series.timestamps, series.prices * np.exp(0.7)))
    diff = shifted.params.to_vector() - rep.params.to_vector()
    assert diff[0] == pytest.approx(0.7, abs=1e-9)
    np.testing.assert_allclose(diff[1:], 0.0, atol=1e-9)


def test_sample_order_irrelevant(noisy_fit):
    series, rep = noisy_fit
    perm = np.random.default_rng(1).permutation(series.prices.size)
    ts, y = series.timestamps[perm], np.log(series.prices[perm])
    X = design_matrix(ts)
    coef = np.linalg.lstsq(X, y, rcond=None)[0]
    np.testing.assert_allclose(coef, rep.params.to_vector(), atol=1e-10)


def test_serializes_per_coefficient(noisy_fit):
    _, rep = noisy_fit
    d = rep.to_dict()
    assert list(d) == list(COEFFICIENT_NAMES)
    assert set(d["hour_20"]) == {"estimate", "std_error", "ar1_std_error"}
    # persistent errors inflate the variance of slow contrasts (months) and
    # shrink it for adjacent-hour contrasts
    assert d["month_7"]["ar1_std_error"] > 3 * d["month_7"]["std_error"]
    assert d["hour_2"]["ar1_std_error"] < d["hour_2"]["std_error"]


def test_missing_month_is_named():
    ts = hourly_index("2016-03-01T00", 24 * 200)
    with pytest.raises(CalibrationError, match="month_1"):
        fit_seasonality(PriceSeries(ts, np.full(ts.size, 40.0)))


def test_too_few_observations():
    ts = hourly_index(hours=41)
    with pytest.raises(InputError):
        fit_seasonality(PriceSeries(ts, np.full(41, 40.0)))


def test_non_positive_price_rejected():
    ts = hourly_index(hours=8784)
    prices = np.full(ts.size, 40.0)
    prices[100] = 0.0
    with pytest.raises(InputError):
        fit_seasonality(PriceSeries(ts, prices))


@given(st.integers(0, 10**6), st.integers(0, 365 * 24 * 60))
def test_curve_matches_calendar(hour_offset, start_minutes):
    origin = np.datetime64("2015-01-01T00", "h") + start_minutes // 60
    curve = SeasonalCurve(PUN_2016_SEASONALITY, origin)
    t = (hour_offset + 0.5) / 8760
    expected = seasonal_values(PUN_2016_SEASONALITY, np.array([origin + hour_offset]))[0]
    assert curve(t) == expected
