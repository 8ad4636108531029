"""The reliability-option contract and priced results."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError

__all__ = ["RoContract", "PricingResult", "annuity"]


def annuity(r: float, t1: float, t2: float) -> float:
    """``integral of exp(-r t) over [t1, t2]``, i.e. ``(e^{-r t1} - e^{-r t2}) / r``."""
    span = t2 - t1
    x = r * span
    if abs(x) < 1e-8:  # series; also avoids 0/0 when r is subnormal
        return math.exp(-r * t1) * span * (1.0 - 0.5 * x)
    # -expm1 keeps precision for small r
    return math.exp(-r * t1) * -math.expm1(-x) / r


@dataclass(frozen=True)
class RoContract:
    """Capacity ``q`` (MW) committed over ``[t1, t2]`` (years from now).

    ``strike`` is a fixed strike in EUR/MWh, or ``None`` when the strike is
    stochastic and its dynamics are part of the price model.
    """

    q: float = 1.0
    t1: float = 4.0
    t2: float = 7.0
    r: float = 0.01
    strike: float | None = 40.0

    def __post_init__(self):
        if not self.q > 0:
            raise ParameterError(f"capacity q must be positive, got {self.q}")
        if not 0 < self.t1 < self.t2:
            raise ParameterError(f"need 0 < t1 < t2, got t1={self.t1}, t2={self.t2}")
        if not math.isfinite(self.r):
            raise ParameterError("r must be finite")
        if self.strike is not None and not self.strike >= 0:
            raise ParameterError(f"fixed strike must be >= 0, got {self.strike}")

    @property
    def fixed_strike(self) -> bool:
        return self.strike is not None

    @property
    def annuity(self) -> float:
        return annuity(self.r, self.t1, self.t2)


@dataclass(frozen=True)
class PricingResult:
    value: float
    method: str  # "closed_form" or "monte_carlo"
    lower: float
    upper: float
    within_bounds: bool
    std_error: float | None = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise ParameterError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        if self.method == "closed_form" and self.std_error is not None:
            raise ParameterError("closed-form results carry no standard error")

    @property
    def bounds(self) -> tuple[float, float]:
        return (self.lower, self.upper)

    def to_dict(self) -> dict:
        out = {"value": self.value, "method": self.method}
        if self.std_error is not None:
            out["std_error"] = self.std_error
        out["bounds"] = {"lower": self.lower, "upper": self.upper}
        out["within_bounds"] = self.within_bounds
        return out
