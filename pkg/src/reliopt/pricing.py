"""One entry point for pricing by either method, with bounds attached."""

from __future__ import annotations

from .closed_form import bounds_tolerance, check_pairing, model_bounds, price_closed_form
from .contract import PricingResult, RoContract
from .errors import ParameterError
from .models import ModelSpec, ShiftedTwoOuParams
from .montecarlo import McConfig, mc_price
from .quadrature import QuadratureConfig

__all__ = ["price", "has_closed_form"]

MC_BAND = 3.0  # standard errors allowed between an MC estimate and its bounds


def has_closed_form(model: ModelSpec) -> bool:
    return not isinstance(model, ShiftedTwoOuParams)


def price(
    model: ModelSpec,
    contract: RoContract,
    method: str = "cf",
    quad: QuadratureConfig | None = None,
    mc: McConfig | None = None,
    workers: int = 1,
) -> PricingResult:
    """Price ``contract`` under ``model`` by closed form (``"cf"``) or Monte Carlo (``"mc"``).

    An MC estimate counts as within bounds when its 3-standard-error band
    overlaps the no-arbitrage interval.
    """
    check_pairing(model, contract)
    if method == "cf":
        if not has_closed_form(model):
            raise ParameterError("no closed form for the shifted model; use Monte Carlo (--method mc)")
        return price_closed_form(model, contract, quad)
    if method != "mc":
        raise ParameterError(f"method must be 'cf' or 'mc', got {method!r}")
    est = mc_price(model, contract, mc, workers=workers)
    lower, upper = model_bounds(model, contract, quad)
    tol = bounds_tolerance(contract, quad, est.value)
    band = MC_BAND * est.std_error
    within = est.value + band >= lower - tol and est.value - band <= upper + tol
    return PricingResult(
        value=est.value,
        method="monte_carlo",
        lower=lower,
        upper=upper,
        within_bounds=bool(within),
        std_error=est.std_error,
    )
