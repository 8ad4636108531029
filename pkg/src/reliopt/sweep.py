"""Sensitivity sweeps: price over a 1-D or 2-D grid of configuration values."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .config import SCHEMA, RunConfig
from .contract import PricingResult
from .errors import ParameterError
from .pricing import price

__all__ = ["Axis", "SweepSpec", "SweepRow", "run_sweep", "sweep_csv"]

_NUMERIC = {"contract.q", "contract.t1", "contract.t2", "contract.r", "contract.strike"} | {
    k for k, (parser, _) in SCHEMA.items() if parser is float and k.startswith("model.")
}


@dataclass(frozen=True)
class Axis:
    """Grid axis over one or more config keys that move together.

    ``keys`` tied with ``+`` (``model.sigma_x+model.sigma_y``) all take the
    same value at each point.
    """

    keys: tuple[str, ...]
    lo: float
    hi: float
    n: int
    log: bool = False

    def __post_init__(self):
        for key in self.keys:
            if key not in _NUMERIC:
                raise ParameterError(f"cannot sweep {key!r}: not a numeric contract or model key")
        if self.n < 2:
            raise ParameterError(f"axis {self.name}: needs at least 2 points, got {self.n}")
        if not self.lo < self.hi:
            raise ParameterError(f"axis {self.name}: min {self.lo} must be below max {self.hi}")
        if self.log and self.lo <= 0:
            raise ParameterError(f"axis {self.name}: log scale needs a positive min")

    @property
    def name(self) -> str:
        return "+".join(self.keys)

    def values(self) -> np.ndarray:
        if self.log:
            return np.geomspace(self.lo, self.hi, self.n)
        return np.linspace(self.lo, self.hi, self.n)

    @classmethod
    def parse(cls, text: str) -> Axis:
        """Parse ``name:min:max:n[:log]``."""
        parts = text.split(":")
        if len(parts) not in (4, 5) or (len(parts) == 5 and parts[4] not in ("log", "lin")):
            raise ParameterError(f"axis must look like name:min:max:n[:log], got {text!r}")
        try:
            lo, hi, n = float(parts[1]), float(parts[2]), int(parts[3])
        except ValueError:
            raise ParameterError(f"axis {text!r}: min/max must be numbers and n an integer") from None
        return cls(tuple(parts[0].split("+")), lo, hi, n, len(parts) == 5 and parts[4] == "log")


@dataclass(frozen=True)
class SweepSpec:
    axes: tuple[Axis, ...]
    config: RunConfig = field(default_factory=RunConfig)
    method: str = "cf"
    out: str | None = None

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise ParameterError(f"a sweep takes 1 or 2 axes, got {len(self.axes)}")
        keys = [k for a in self.axes for k in a.keys]
        if len(set(keys)) != len(keys):
            raise ParameterError("the same key appears on more than one axis")

    def points(self) -> list[tuple[float, ...]]:
        """Grid points in row-major order (last axis varies fastest)."""
        return [tuple(float(v) for v in p) for p in product(*(a.values() for a in self.axes))]

    def config_at(self, point) -> RunConfig:
        overrides = {k: v for axis, v in zip(self.axes, point) for k in axis.keys}
        return self.config.with_values(**overrides)


@dataclass(frozen=True)
class SweepRow:
    point: tuple[float, ...]
    result: PricingResult
    q: float

    @property
    def value_per_unit(self) -> float:
        return self.result.value / self.q


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """Price every grid point. All points are validated before any is priced."""
    jobs = []
    for point in spec.points():
        cfg = spec.config_at(point)
        contract = cfg.contract()
        jobs.append((point, cfg.model(), contract, cfg.quad(), cfg.mc()))

    def run(job):
        point, model, contract, quad, mc = job
        return SweepRow(point, price(model, contract, spec.method, quad, mc), contract.q)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, jobs))
    return [run(job) for job in jobs]


def sweep_csv(spec: SweepSpec, rows: list[SweepRow]) -> str:
    """Long-format CSV: one column per axis, then the value per unit of capacity."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([a.name for a in spec.axes] + ["value"])
    for row in rows:
        writer.writerow([repr(v) for v in row.point] + [repr(row.value_per_unit)])
    return buf.getvalue()
