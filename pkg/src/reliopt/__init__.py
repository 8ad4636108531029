"""Pricing, calibration and no-arbitrage bounds for electricity reliability options."""

from types import ModuleType as _ModuleType

from .calibration import CalibrationReport, OuEstimate, calibrate_pipeline, estimate_gbm_sigma, estimate_ou
from .closed_form import (
    bs_call,
    margrabe,
    model_bounds,
    na_bounds,
    price_closed_form,
    price_ro_gbm,
    price_ro_ou,
    price_ro_two_gbm,
    price_ro_two_ou,
    put_integral,
)
from .config import RunConfig
from .contract import PricingResult, RoContract, annuity
from .errors import CalibrationError, InputError, NumericalError, ParameterError, RelioptError
from .models import (
    GbmParams,
    OuParams,
    ShiftedTwoOuParams,
    TwoGbmParams,
    TwoOuParams,
    forward_ou,
    strike_forward,
    swap_forward,
)
from .montecarlo import McConfig, McEstimate, mc_price, mc_price_shifted
from .pricing import price
from .quadrature import QuadratureConfig, integrate_window
from .seasonality import (
    ConstantLevel,
    LinearTrend,
    RegressionReport,
    SeasonalCurve,
    SeasonalityParams,
    fit_seasonality,
)
from .sweep import Axis, SweepSpec, run_sweep, sweep_csv
from .timeseries import PriceSeries, read_price_csv, write_price_csv

__version__ = "0.1.0"

__all__ = sorted(n for n, v in globals().items() if not n.startswith("_") and not isinstance(v, _ModuleType))
