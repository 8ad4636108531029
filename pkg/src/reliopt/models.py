"""Price dynamics: parameter types, exact transitions and forward curves.

Five models are supported; :data:`ModelSpec` is their union.

* :class:`GbmParams`         spot is a GBM, strike fixed
* :class:`TwoGbmParams`      spot and strike are correlated GBMs
* :class:`OuParams`          log spot = seasonality + OU, strike fixed
* :class:`TwoOuParams`       spot and strike both seasonal-OU, correlated
* :class:`ShiftedTwoOuParams` as above, each shifted down by a price floor

Time is measured in years.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .contract import RoContract
from .errors import ParameterError
from .quadrature import QuadratureConfig, integrate_window
from .seasonality import ConstantLevel

__all__ = [
    "GbmParams",
    "TwoGbmParams",
    "OuParams",
    "TwoOuParams",
    "ShiftedTwoOuParams",
    "ModelSpec",
    "ou_exact_step",
    "ou_variance",
    "ou_covariance",
    "correlated_normals",
    "forward_ou",
    "discounted_forwards",
    "swap_forward",
    "strike_forward",
    "window_breakpoints",
]


def _check_rho(rho):
    if not -1.0 <= rho <= 1.0:
        raise ParameterError(f"correlation must lie in [-1, 1], got {rho}")


@dataclass(frozen=True)
class GbmParams:
    """Risk-neutral GBM spot ``dP = (r - q) P dt + sigma P dB``."""

    p0: float
    sigma: float
    q: float = 0.0

    def __post_init__(self):
        if not self.p0 > 0:
            raise ParameterError(f"p0 must be positive, got {self.p0}")
        if not self.sigma >= 0:
            raise ParameterError(f"sigma must be >= 0, got {self.sigma}")


@dataclass(frozen=True)
class TwoGbmParams:
    p0: float
    k0: float
    sigma_p: float
    sigma_k: float
    q_p: float = 0.0
    q_k: float = 0.0
    rho: float = 0.0

    def __post_init__(self):
        if not (self.p0 > 0 and self.k0 > 0):
            raise ParameterError("p0 and k0 must be positive")
        if not (self.sigma_p >= 0 and self.sigma_k >= 0):
            raise ParameterError("volatilities must be >= 0")
        _check_rho(self.rho)

    @property
    def sigma_ratio(self) -> float:
        """Volatility of the ratio P/K."""
        var = (self.sigma_k - self.sigma_p) ** 2 + 2.0 * (1.0 - self.rho) * self.sigma_k * self.sigma_p
        return math.sqrt(max(var, 0.0))


@dataclass(frozen=True)
class OuParams:
    """Log price ``seasonality(t) + X_t`` with ``dX = -lam X dt + sigma dW``.

    ``seasonality`` is any vectorised function of time in years, typically a
    :class:`~reliopt.seasonality.SeasonalCurve`.
    """

    x0: float
    lam: float
    sigma: float
    seasonality: Callable = field(default_factory=ConstantLevel)

    def __post_init__(self):
        if not self.lam > 0:
            raise ParameterError(f"mean-reversion speed must be positive, got {self.lam} (use a GBM model instead)")
        if not self.sigma >= 0:
            raise ParameterError(f"sigma must be >= 0, got {self.sigma}")

    @property
    def p0(self) -> float:
        return math.exp(float(self.seasonality(0.0)) + self.x0)


@dataclass(frozen=True)
class TwoOuParams:
    """``x`` drives the spot, ``y`` the strike; Brownian correlation ``rho``."""

    x: OuParams
    y: OuParams
    rho: float = 0.0

    def __post_init__(self):
        _check_rho(self.rho)


@dataclass(frozen=True)
class ShiftedTwoOuParams:
    """Spot ``e^{mu+X} - p_floor`` and strike ``e^{nu+Y} - k_floor``."""

    base: TwoOuParams
    p_floor: float = 0.0
    k_floor: float = 0.0

    def __post_init__(self):
        if not (self.p_floor >= 0 and self.k_floor >= 0):
            raise ParameterError("price floors must be >= 0")

    @property
    def c(self) -> float:
        return self.p_floor - self.k_floor


ModelSpec = Union[GbmParams, TwoGbmParams, OuParams, TwoOuParams, ShiftedTwoOuParams]
_MODEL_TYPES = (GbmParams, TwoGbmParams, OuParams, TwoOuParams, ShiftedTwoOuParams)


def ou_variance(lam, sigma, t):
    """Variance of ``X_t - X_0 e^{-lam t}``: ``sigma^2 (1 - e^{-2 lam t}) / (2 lam)``."""
    t = np.asarray(t, dtype=float)
    return sigma**2 * -np.expm1(-2.0 * lam * t) / (2.0 * lam)


def ou_covariance(lam_x, lam_y, sigma_x, sigma_y, rho, t):
    """Covariance of the noise parts of two correlated OU processes at ``t``."""
    t = np.asarray(t, dtype=float)
    s = lam_x + lam_y
    return rho * sigma_x * sigma_y * -np.expm1(-s * t) / s


def ou_exact_step(x, dt, lam, sigma, z):
    """Exact OU transition over ``dt`` driven by a standard normal ``z``."""
    if not lam > 0:
        raise ParameterError(f"mean-reversion speed must be positive, got {lam}")
    if not np.all(np.asarray(dt) > 0):
        raise ParameterError("dt must be positive")
    return x * np.exp(-lam * dt) + np.sqrt(ou_variance(lam, sigma, dt)) * z


def correlated_normals(z1, z2, rho):
    """Map independent normals to a pair with correlation ``rho``."""
    _check_rho(rho)
    return z1, rho * z1 + math.sqrt(max(1.0 - rho * rho, 0.0)) * z2


def forward_ou(params: OuParams, t):
    """``E[P_t]`` for the seasonal OU spot, as seen from time 0."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ParameterError("forward time must be >= 0")
    return np.exp(
        params.seasonality(t) + params.x0 * np.exp(-params.lam * t) + 0.5 * ou_variance(params.lam, params.sigma, t)
    )


def discounted_forwards(model: ModelSpec, r: float, t):
    """``(e^{-rt} E[P_t], e^{-rt} E[K_t])`` for the exponential parts.

    The strike leg is ``None`` for fixed-strike models. Shifted models report
    the unshifted exponentials; floors are handled by the callers.
    """
    t = np.asarray(t, dtype=float)
    if isinstance(model, GbmParams):
        return model.p0 * np.exp(-model.q * t), None
    if isinstance(model, TwoGbmParams):
        return model.p0 * np.exp(-model.q_p * t), model.k0 * np.exp(-model.q_k * t)
    disc = np.exp(-r * t)
    if isinstance(model, OuParams):
        return disc * forward_ou(model, t), None
    if isinstance(model, ShiftedTwoOuParams):
        model = model.base
    if isinstance(model, TwoOuParams):
        return disc * forward_ou(model.x, t), disc * forward_ou(model.y, t)
    raise ParameterError(f"unsupported model {type(model).__name__}")


def window_breakpoints(model: ModelSpec, t1: float, t2: float):
    """Union of the jump points of every seasonality curve in ``model``."""
    if isinstance(model, ShiftedTwoOuParams):
        model = model.base
    curves = []
    if isinstance(model, OuParams):
        curves = [model.seasonality]
    elif isinstance(model, TwoOuParams):
        curves = [model.x.seasonality, model.y.seasonality]
    pts = [c.breakpoints(t1, t2) for c in curves if hasattr(c, "breakpoints")]
    if not pts:
        return None
    return np.unique(np.concatenate(pts))


def _check_model(model):
    if not isinstance(model, _MODEL_TYPES):
        raise ParameterError(f"unsupported model {type(model).__name__}")


def swap_forward(model: ModelSpec, contract: RoContract, quad: QuadratureConfig | None = None) -> float:
    """Unit flow forward ``F_P = E[integral of e^{-rt} P_t over [t1, t2]]``."""
    _check_model(model)
    quad = quad or QuadratureConfig()
    tol = quad.tolerance_for(1.0, contract.t1, contract.t2)
    value = integrate_window(
        lambda t: discounted_forwards(model, contract.r, t)[0],
        contract.t1,
        contract.t2,
        quad,
        abs_tol=tol,
        breakpoints=window_breakpoints(model, contract.t1, contract.t2),
    )
    if isinstance(model, ShiftedTwoOuParams):
        value -= model.p_floor * contract.annuity
    return value


def strike_forward(model: ModelSpec, contract: RoContract, quad: QuadratureConfig | None = None) -> float:
    """Unit flow forward of the strike leg (``K * annuity`` for a fixed strike)."""
    _check_model(model)
    if isinstance(model, (GbmParams, OuParams)):
        if not contract.fixed_strike:
            raise ParameterError(f"{type(model).__name__} needs a fixed strike")
        return contract.strike * contract.annuity
    quad = quad or QuadratureConfig()
    tol = quad.tolerance_for(1.0, contract.t1, contract.t2)
    value = integrate_window(
        lambda t: discounted_forwards(model, contract.r, t)[1],
        contract.t1,
        contract.t2,
        quad,
        abs_tol=tol,
        breakpoints=window_breakpoints(model, contract.t1, contract.t2),
    )
    if isinstance(model, ShiftedTwoOuParams):
        value -= model.k_floor * contract.annuity
    return value
