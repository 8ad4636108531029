import numpy as np
import pytest
from hypothesis import settings

from reliopt.seasonality import seasonal_values
from reliopt.timeseries import PriceSeries

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(label, ok, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
        assert ok, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def hourly_index(start="2016-01-01T00", hours=8784):
    return np.datetime64(start, "h") + np.arange(hours)


def seasonal_ou_series(params, lam, sigma, seed, start="2016-01-01T00", hours=8784, x0=0.0):
    """Hourly prices exp(mu(t) + X_t) with X an exactly sampled OU process."""
    rng = np.random.default_rng(seed)
    ts = hourly_index(start, hours)
    dt = 1.0 / 8760
    a = np.exp(-lam * dt)
    sd = sigma * np.sqrt(-np.expm1(-2 * lam * dt) / (2 * lam))
    x = np.empty(hours)
    prev = x0
    for i, e in enumerate(rng.standard_normal(hours)):
        prev = a * prev + sd * e
        x[i] = prev
    return PriceSeries(ts, np.exp(seasonal_values(params, ts) + x)), x


@pytest.fixture
def tmp_csv(tmp_path):
    def write(text, name="prices.csv"):
        path = tmp_path / name
        path.write_text(text)
        return path

    return write
