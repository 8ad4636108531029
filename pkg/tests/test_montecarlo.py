import math

import numpy as np
import pytest

from reliopt.closed_form import price_closed_form
from reliopt.contract import RoContract
from reliopt.errors import ParameterError
from reliopt.models import GbmParams, OuParams, ShiftedTwoOuParams, TwoGbmParams, TwoOuParams
from reliopt.montecarlo import McConfig, mc_price, mc_price_shifted, time_grid
from reliopt.pricing import price
from reliopt.seasonality import ConstantLevel

WINDOW = RoContract(q=1.0, t1=1.0, t2=2.0, r=0.02, strike=40.0)
VAR_WINDOW = RoContract(q=1.0, t1=1.0, t2=2.0, r=0.02, strike=None)
FAST = McConfig(n_paths=4000, steps_per_year=200, seed=1)


def _pair(lam=6.0, sigma=0.5, rho=0.5, y0=-0.1):
    return TwoOuParams(OuParams(0.0, lam, sigma, ConstantLevel(3.75)), OuParams(y0, lam, sigma, ConstantLevel(3.7)), rho)


def _agree(mc, cf, k=3.0):
    return abs(mc.value - cf) <= k * mc.std_error


def test_grid_layout():
    nodes, w = time_grid(RoContract(1, 4.0, 7.0, 0.01, 40.0), 8760)
    assert nodes.size == 3 * 8760 + 1
    assert nodes[0] == 4.0 and nodes[-1] == 7.0
    assert w.sum() == pytest.approx(3.0, rel=1e-12)
    with pytest.raises(ParameterError):
        time_grid(RoContract(1, 4.0, 4.5, 0.01, 40.0), 1)


def test_config_invariants():
    with pytest.raises(ParameterError):
        McConfig(n_paths=1)
    with pytest.raises(ParameterError):
        McConfig(steps_per_year=0)
    with pytest.raises(ParameterError):
        McConfig(n_paths=11, antithetic=True)
    with pytest.raises(ParameterError):
        mc_price(OuParams(0, 1, 1), WINDOW, McConfig(measure="share"))


def test_deterministic_model_has_zero_error():
    est = mc_price(GbmParams(50.0, 0.0), RoContract(1, 4, 7, 0.0, 40.0), McConfig(n_paths=8, steps_per_year=12))
    assert est.std_error == 0.0
    assert est.value == pytest.approx(30.0, rel=1e-12)
    # trapezoid on a deterministic curved integrand: error O(h^2)
    ou = OuParams(0.5, 2.0, 0.0, ConstantLevel(math.log(40)))
    est = mc_price(ou, WINDOW, McConfig(n_paths=4, steps_per_year=365))
    cf = price_closed_form(ou, WINDOW).value
    assert est.std_error == 0.0
    assert abs(est.value - cf) < 1e-5


@pytest.mark.parametrize(
    "model, contract",
    [
        (GbmParams(42.77, 0.4), WINDOW),
        (GbmParams(30.0, 1.2, 0.02), RoContract(2.0, 0.5, 1.5, 0.03, 25.0)),
        (TwoGbmParams(45.0, 40.0, 0.4, 0.4, 0.02, 0.02, 0.5), VAR_WINDOW),
        (TwoGbmParams(40.0, 42.0, 0.5, 0.2, 0.01, 0.08, -0.3), VAR_WINDOW),
        (OuParams(0.2, 8.0, 0.9, ConstantLevel(3.7)), WINDOW),
        (_pair(), VAR_WINDOW),
        (TwoOuParams(OuParams(0.3, 0.8, 0.6, ConstantLevel(3.7)), OuParams(-0.2, 2.5, 0.3, ConstantLevel(3.75)), 0.3),
         VAR_WINDOW),
    ],
)
def test_matches_closed_form(model, contract):
    est = mc_price(model, contract, FAST)
    assert _agree(est, price_closed_form(model, contract).value)


@pytest.mark.parametrize("model", [GbmParams(42.77, 0.8), TwoGbmParams(45.0, 40.0, 0.6, 0.3, 0.01, 0.03, 0.2)])
def test_share_measure_matches(model):
    contract = WINDOW if isinstance(model, GbmParams) else VAR_WINDOW
    est = mc_price(model, contract, McConfig(n_paths=4000, steps_per_year=200, seed=2, measure="share"))
    assert _agree(est, price_closed_form(model, contract).value)


def test_worker_count_does_not_change_bits():
    cfg = McConfig(n_paths=300, steps_per_year=100, seed=9)
    runs = [mc_price(_pair(), VAR_WINDOW, cfg, workers=w) for w in (1, 2, 8)]
    assert runs[0] == runs[1] == runs[2]


def test_seed_changes_estimate():
    a = mc_price(_pair(), VAR_WINDOW, McConfig(n_paths=200, steps_per_year=50, seed=1))
    b = mc_price(_pair(), VAR_WINDOW, McConfig(n_paths=200, steps_per_year=50, seed=2))
    assert a.value != b.value


def test_antithetic_unbiased():
    model = OuParams(0.2, 8.0, 0.9, ConstantLevel(3.7))
    plain = mc_price(model, WINDOW, McConfig(n_paths=4000, steps_per_year=100, seed=3))
    anti = mc_price(model, WINDOW, McConfig(n_paths=4000, steps_per_year=100, seed=4, antithetic=True))
    assert abs(plain.value - anti.value) <= 3 * math.hypot(plain.std_error, anti.std_error)


def test_grid_doubling_converges():
    model = OuParams(0.2, 8.0, 0.9, ConstantLevel(3.7))
    cf = price_closed_form(model, WINDOW).value
    coarse = mc_price(model, WINDOW, McConfig(n_paths=2000, steps_per_year=50, seed=5))
    fine = mc_price(model, WINDOW, McConfig(n_paths=2000, steps_per_year=100, seed=5))
    assert _agree(coarse, cf) and _agree(fine, cf)
    assert abs(fine.value - coarse.value) <= 3 * math.hypot(fine.std_error, coarse.std_error)


def test_shifted_without_floors_reproduces_two_ou():
    cfg = McConfig(n_paths=500, steps_per_year=100, seed=6)
    plain = mc_price(_pair(), VAR_WINDOW, cfg)
    shifted = mc_price_shifted(ShiftedTwoOuParams(_pair(), 0.0, 0.0), VAR_WINDOW, cfg)
    assert shifted == plain


def test_shifted_floor_lowers_value_pathwise():
    cfg = McConfig(n_paths=500, steps_per_year=100, seed=6)
    plain = mc_price(_pair(), VAR_WINDOW, cfg)
    shifted = mc_price_shifted(ShiftedTwoOuParams(_pair(), 20.0, 0.0), VAR_WINDOW, cfg)
    assert shifted.value < plain.value
    raised = mc_price_shifted(ShiftedTwoOuParams(_pair(), 0.0, 15.0), VAR_WINDOW, cfg)
    assert raised.value > plain.value


def test_shifted_deterministic_spread():
    base = TwoOuParams(OuParams(0.0, 1.0, 0.0, ConstantLevel(math.log(60))),
                       OuParams(0.0, 1.0, 0.0, ConstantLevel(math.log(30))), 0.0)
    est = mc_price_shifted(ShiftedTwoOuParams(base, 25.0, 5.0), RoContract(1, 1, 2, 0.0, None),
                           McConfig(n_paths=4, steps_per_year=10))
    assert est.std_error == 0.0
    assert est.value == pytest.approx(10.0, rel=1e-12)
    with pytest.raises(ParameterError):
        mc_price_shifted(base, VAR_WINDOW)


def test_priced_result_has_bounds():
    res = price(_pair(), VAR_WINDOW, "mc", mc=McConfig(n_paths=1000, steps_per_year=100))
    assert res.method == "monte_carlo" and res.std_error > 0
    assert res.within_bounds
    assert res.lower <= res.upper
    d = res.to_dict()
    assert set(d) == {"value", "method", "std_error", "bounds", "within_bounds"}
    with pytest.raises(ParameterError, match="no closed form"):
        price(ShiftedTwoOuParams(_pair(), 5.0, 0.0), VAR_WINDOW, "cf")
    shifted = price(ShiftedTwoOuParams(_pair(), 5.0, 0.0), VAR_WINDOW, "mc",
                    mc=McConfig(n_paths=1000, steps_per_year=100))
    assert shifted.within_bounds


def test_shifted_bounds_contain_estimate_across_floors():
    for p_floor, k_floor in [(0.0, 10.0), (10.0, 0.0), (30.0, 30.0)]:
        res = price(ShiftedTwoOuParams(_pair(sigma=1.0), p_floor, k_floor), VAR_WINDOW, "mc",
                    mc=McConfig(n_paths=1000, steps_per_year=100, seed=8))
        assert res.within_bounds, (p_floor, k_floor, res)
