"""Closed-form RO prices as maturity integrals of call / exchange options,
plus the model-free no-arbitrage bounds."""

from __future__ import annotations

import numpy as np
from scipy.special import ndtr

from .contract import PricingResult, RoContract
from .errors import ParameterError
from .models import (
    GbmParams,
    ModelSpec,
    OuParams,
    ShiftedTwoOuParams,
    TwoGbmParams,
    TwoOuParams,
    discounted_forwards,
    ou_covariance,
    ou_variance,
    strike_forward,
    swap_forward,
    window_breakpoints,
)
from .quadrature import QuadratureConfig, integrate_window

__all__ = [
    "norm_cdf",
    "exchange_value",
    "bs_call",
    "margrabe",
    "ro_integrand",
    "price_ro_gbm",
    "price_ro_two_gbm",
    "price_ro_ou",
    "price_ro_two_ou",
    "price_closed_form",
    "put_integral",
    "na_bounds",
    "model_bounds",
    "check_pairing",
]

norm_cdf = ndtr  # evaluated through erfc, accurate in both tails


def exchange_value(a, b, v, put=False):
    """``a N(d+) - b N(d-)`` with ``d+- = ln(a/b)/v +- v/2``.

    ``a`` and ``b`` are the present values of the two legs and ``v`` the
    total standard deviation of ``ln(a/b)``. With ``put=True`` returns
    ``b N(-d-) - a N(-d+)``. The limits ``v -> 0`` and ``b -> 0`` are taken
    analytically.
    """
    a, b, v = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (a, b, v)))
    degenerate = (v <= 0) | (b <= 0)
    safe_v = np.where(degenerate, 1.0, v)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        ratio = np.log(np.where(degenerate, 1.0, a) / np.where(degenerate, 1.0, b))
        # d1 may overflow to +-inf for tiny v; N() then returns the right limit
        d1 = ratio / safe_v + 0.5 * safe_v
        d2 = d1 - safe_v
    if put:
        val = b * ndtr(-d2) - a * ndtr(-d1)
        limit = np.maximum(b - a, 0.0)
    else:
        val = a * ndtr(d1) - b * ndtr(d2)
        limit = np.maximum(a - b, 0.0)
    out = np.where(degenerate, limit, val)
    return out if out.ndim else float(out)


def bs_call(p0, k, r, sigma, t, q=0.0):
    """Black-Scholes call on a spot paying a continuous yield ``q``."""
    if not np.all(np.asarray(t) > 0):
        raise ParameterError("maturity must be positive")
    t = np.asarray(t, dtype=float)
    return exchange_value(p0 * np.exp(-q * t), k * np.exp(-r * t), sigma * np.sqrt(t))


def margrabe(p0, k0, q_p, q_k, sigma_combined, t):
    """Option to exchange ``K`` for ``P`` at ``t``, both paying yields.

    ``p0 e^{-q_p t} N(a1) - k0 e^{-q_k t} N(a2)`` with
    ``a1 = [ln(p0/k0) + (q_k - q_p) t] / (sigma sqrt t) + sigma sqrt(t) / 2``.
    """
    if not np.all(np.asarray(t) > 0):
        raise ParameterError("maturity must be positive")
    t = np.asarray(t, dtype=float)
    return exchange_value(p0 * np.exp(-q_p * t), k0 * np.exp(-q_k * t), sigma_combined * np.sqrt(t))


def check_pairing(model: ModelSpec, contract: RoContract):
    if isinstance(model, (GbmParams, OuParams)):
        if not contract.fixed_strike:
            raise ParameterError(f"{type(model).__name__} prices a fixed strike; the contract has a stochastic one")
    elif isinstance(model, (TwoGbmParams, TwoOuParams, ShiftedTwoOuParams)):
        if contract.fixed_strike:
            raise ParameterError(
                f"{type(model).__name__} models a stochastic strike; set the contract strike to None"
            )
    else:
        raise ParameterError(f"unsupported model {type(model).__name__}")


def _two_ou_ratio_variance(model: TwoOuParams, t):
    x, y = model.x, model.y
    var = (
        ou_variance(x.lam, x.sigma, t)
        + ou_variance(y.lam, y.sigma, t)
        - 2.0 * ou_covariance(x.lam, y.lam, x.sigma, y.sigma, model.rho, t)
    )
    return np.maximum(var, 0.0)


def ro_integrand(model: ModelSpec, contract: RoContract, put: bool = False):
    """Per-unit present value of the option maturing at ``t``, as a function of ``t``."""
    check_pairing(model, contract)
    r = contract.r
    if isinstance(model, ShiftedTwoOuParams):
        raise ParameterError("no closed form for the shifted model; use Monte Carlo")

    if isinstance(model, GbmParams):
        def spread_std(t):
            return model.sigma * np.sqrt(t)
    elif isinstance(model, TwoGbmParams):
        def spread_std(t):
            return model.sigma_ratio * np.sqrt(t)
    elif isinstance(model, OuParams):
        def spread_std(t):
            return np.sqrt(ou_variance(model.lam, model.sigma, t))
    else:
        def spread_std(t):
            return np.sqrt(_two_ou_ratio_variance(model, t))

    def integrand(t):
        t = np.asarray(t, dtype=float)
        a, b = discounted_forwards(model, r, t)
        if b is None:
            b = contract.strike * np.exp(-r * t)
        return exchange_value(a, b, spread_std(t), put=put)

    return integrand


def _integrate(model, contract, quad, put=False):
    quad = quad or QuadratureConfig()
    tol = quad.tolerance_for(contract.q, contract.t1, contract.t2) / contract.q
    return integrate_window(
        ro_integrand(model, contract, put=put),
        contract.t1,
        contract.t2,
        quad,
        abs_tol=tol,
        breakpoints=window_breakpoints(model, contract.t1, contract.t2),
    )


def na_bounds(contract: RoContract, f_p: float, f_k_or_k: float, p_floor: float = 0.0) -> tuple[float, float]:
    """Model-free bounds on the RO value in EUR.

    For a fixed strike ``f_k_or_k`` is the strike ``K``; for a stochastic
    strike it is the strike flow forward ``F_K``.
    """
    ann = contract.annuity
    strike_leg = f_k_or_k * ann if contract.fixed_strike else f_k_or_k
    lower = contract.q * max(f_p - strike_leg, 0.0)
    upper = contract.q * f_p + contract.q * p_floor * ann
    return lower, upper


def model_bounds(model: ModelSpec, contract: RoContract, quad: QuadratureConfig | None = None):
    """:func:`na_bounds` with forwards computed from ``model``."""
    check_pairing(model, contract)
    f_p = swap_forward(model, contract, quad)
    p_floor = model.p_floor if isinstance(model, ShiftedTwoOuParams) else 0.0
    if contract.fixed_strike:
        return na_bounds(contract, f_p, contract.strike, p_floor)
    return na_bounds(contract, f_p, strike_forward(model, contract, quad), p_floor)


def bounds_tolerance(contract: RoContract, quad: QuadratureConfig | None, value: float) -> float:
    quad = quad or QuadratureConfig()
    return 2.0 * quad.tolerance_for(contract.q, contract.t1, contract.t2) + 1e-9 * abs(value)


def price_closed_form(model: ModelSpec, contract: RoContract, quad: QuadratureConfig | None = None) -> PricingResult:
    value = contract.q * _integrate(model, contract, quad)
    lower, upper = model_bounds(model, contract, quad)
    tol = bounds_tolerance(contract, quad, value)
    return PricingResult(
        value=value,
        method="closed_form",
        lower=lower,
        upper=upper,
        within_bounds=bool(lower - tol <= value <= upper + tol),
    )


def _require(params, cls):
    if not isinstance(params, cls):
        raise ParameterError(f"expected {cls.__name__}, got {type(params).__name__}")


def price_ro_gbm(params: GbmParams, contract: RoContract, quad: QuadratureConfig | None = None) -> PricingResult:
    """Spot GBM, fixed strike: integral of Black-Scholes calls over the window."""
    _require(params, GbmParams)
    return price_closed_form(params, contract, quad)


def price_ro_two_gbm(params: TwoGbmParams, contract: RoContract, quad: QuadratureConfig | None = None) -> PricingResult:
    """Spot and strike correlated GBMs: integral of Margrabe exchange options."""
    _require(params, TwoGbmParams)
    return price_closed_form(params, contract, quad)


def price_ro_ou(params: OuParams, contract: RoContract, quad: QuadratureConfig | None = None) -> PricingResult:
    _require(params, OuParams)
    return price_closed_form(params, contract, quad)


def price_ro_two_ou(params: TwoOuParams, contract: RoContract, quad: QuadratureConfig | None = None) -> PricingResult:
    """Both legs seasonal OU; the option is on the ratio P/K, whose log
    variance at ``t`` combines both OU variances and their covariance."""
    _require(params, TwoOuParams)
    return price_closed_form(params, contract, quad)


def put_integral(model: ModelSpec, contract: RoContract, quad: QuadratureConfig | None = None) -> float:
    """Per-unit ``E[integral of e^{-rt} (K_t - P_t)^+]`` over the window."""
    return _integrate(model, contract, quad, put=True)
