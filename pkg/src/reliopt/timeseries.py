"""Hourly spot-price series and their CSV representation."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path

import numpy as np

from .errors import InputError

__all__ = ["PriceSeries", "read_price_csv", "write_price_csv", "as_hours"]


def as_hours(timestamps) -> np.ndarray:
    """Coerce datetimes / ISO strings / datetime64 values to ``datetime64[h]``."""
    arr = np.asarray(timestamps)
    if arr.dtype.kind == "M":
        return arr.astype("datetime64[h]")
    return np.array([np.datetime64(ts, "h") for ts in arr.ravel()], dtype="datetime64[h]")


@dataclass(frozen=True)
class PriceSeries:
    """Hourly spot prices in EUR/MWh, stamped in local civil time.

    ``timestamps`` mark the start of each delivery hour.
    """

    timestamps: np.ndarray
    prices: np.ndarray

    def __post_init__(self):
        ts = as_hours(self.timestamps)
        px = np.asarray(self.prices, dtype=float).ravel()
        if ts.shape != px.shape:
            raise InputError(f"{ts.size} timestamps but {px.size} prices")
        if ts.size > 1 and np.any(np.diff(ts.astype(np.int64)) <= 0):
            raise InputError("timestamps must be strictly increasing")
        if not np.all(np.isfinite(px)):
            raise InputError("prices must be finite")
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "prices", px)

    def __len__(self):
        return self.prices.size

    def log_prices(self) -> np.ndarray:
        if np.any(self.prices <= 0):
            bad = int(np.argmax(self.prices <= 0))
            raise InputError(
                f"non-positive price {self.prices[bad]} at {self.timestamps[bad]}; "
                "log-price calibration needs strictly positive prices"
            )
        return np.log(self.prices)


def read_price_csv(path) -> PriceSeries:
    """Read a ``timestamp,price`` file.

    Line numbers in error messages count the header as line 1.
    """
    path = Path(path)
    stamps: list[np.datetime64] = []
    prices: list[float] = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise InputError(f"{path}: empty file")
        if [h.strip().lower() for h in header] != ["timestamp", "price"]:
            raise InputError(f"{path}: line 1: expected header 'timestamp,price', got {','.join(header)!r}")
        for row in reader:
            lineno = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise InputError(f"{path}: line {lineno}: expected 2 fields, got {len(row)}")
            raw_ts, raw_px = row[0].strip(), row[1].strip()
            try:
                ts = datetime.fromisoformat(raw_ts)
            except ValueError:
                raise InputError(f"{path}: line {lineno}: bad timestamp {raw_ts!r}") from None
            if ts.tzinfo is not None:
                ts = ts.replace(tzinfo=None)
            try:
                px = float(raw_px)
            except ValueError:
                raise InputError(f"{path}: line {lineno}: bad price {raw_px!r}") from None
            stamp = np.datetime64(ts, "h")
            if stamps and stamp <= stamps[-1]:
                raise InputError(f"{path}: line {lineno}: timestamp {raw_ts} is not after the previous row")
            stamps.append(stamp)
            prices.append(px)
    if not prices:
        raise InputError(f"{path}: no data rows")
    return PriceSeries(np.array(stamps, dtype="datetime64[h]"), np.array(prices))


def write_price_csv(series: PriceSeries, path) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["timestamp", "price"])
        for ts, px in zip(series.timestamps, series.prices):
            writer.writerow([str(ts.astype("datetime64[m]")), repr(float(px))])
