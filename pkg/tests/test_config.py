import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reliopt.config import MODEL_TYPES, SCHEMA, RunConfig
from reliopt.errors import ParameterError
from reliopt.models import GbmParams, OuParams, ShiftedTwoOuParams, TwoGbmParams, TwoOuParams
from reliopt.presets import GBM_SIGMA, OU_LAMBDA, OU_SIGMA, STRIKE_Y0
from reliopt.seasonality import ConstantLevel, SeasonalCurve

FINITE = st.floats(allow_nan=False, allow_infinity=False)
SAFE_TEXT = st.text(st.characters(blacklist_characters="#\n\r", blacklist_categories=("Cs", "Zl", "Zp", "Cc")),
                    min_size=1).map(str.strip).filter(bool)


def _value_strategy(key):
    parser, _ = SCHEMA[key]
    if key == "contract.strike":
        return st.one_of(st.none(), FINITE)
    if key == "model.type":
        return st.sampled_from(MODEL_TYPES)
    if key == "mc.measure":
        return st.sampled_from(["risk_neutral", "share"])
    if key == "mc.antithetic":
        return st.booleans()
    if parser is int:
        return st.integers(-(2**63), 2**63)
    if parser is float:
        return FINITE
    return SAFE_TEXT


CONFIGS = st.dictionaries(st.sampled_from(sorted(SCHEMA)), st.none()).flatmap(
    lambda keys: st.fixed_dictionaries({k: _value_strategy(k) for k in keys})
)


@given(CONFIGS)
def test_text_round_trip(values):
    cfg = RunConfig(values)
    back = RunConfig.from_text(cfg.to_text())
    assert back == cfg
    assert back.to_text() == cfg.to_text()


def test_defaults_mirror_case_study():
    cfg = RunConfig()
    c = cfg.contract()
    assert (c.q, c.t1, c.t2, c.r, c.strike) == (1.0, 4.0, 7.0, 0.01, 40.0)
    m = cfg.model()
    assert isinstance(m, OuParams)
    assert (m.x0, m.lam, m.sigma) == (0.0, OU_LAMBDA, OU_SIGMA)
    assert isinstance(m.seasonality, SeasonalCurve)
    assert cfg.mc().n_paths == 10_000


def test_model_selection():
    gbm = RunConfig.from_text("model.type = gbm\n").model()
    assert gbm == GbmParams(42.77, GBM_SIGMA, 0.0)
    two = RunConfig.from_text("model.type = two_gbm\nmodel.rho = -0.2\n")
    assert isinstance(two.model(), TwoGbmParams) and two.contract().strike is None
    ou2 = RunConfig.from_text("model.type = two_ou\nseasonality.k = 3.5\n").model()
    assert isinstance(ou2, TwoOuParams) and ou2.y.x0 == STRIKE_Y0 and ou2.y.seasonality == ConstantLevel(3.5)
    sh = RunConfig.from_text("model.type = shifted_two_ou\nmodel.p_floor = 20\n").model()
    assert isinstance(sh, ShiftedTwoOuParams) and sh.c == 20.0


def test_comments_blank_lines_and_stochastic_strike():
    cfg = RunConfig.from_text("# case study\n\ncontract.strike = stochastic  # trailing\ncontract.t1=2\n")
    assert cfg["contract.strike"] is None and cfg["contract.t1"] == 2.0


@pytest.mark.parametrize(
    "text, match",
    [
        ("contract.tl = 4\n", "unknown key"),
        ("contract.t1 4\n", "expected 'key = value'"),
        ("contract.t1 = four\n", "bad value"),
        ("contract.t1 = 1\ncontract.t1 = 2\n", "duplicate"),
        ("model.type = heston\n", "bad value"),
        ("contract.r = nan\n", "finite"),
        ("mc.antithetic = maybe\n", "bad value"),
    ],
)
def test_rejects_bad_text(text, match):
    with pytest.raises(ParameterError, match=match):
        RunConfig.from_text(text)


def test_invariants_checked_on_build():
    with pytest.raises(ParameterError):
        RunConfig.from_text("model.type = two_ou\nmodel.rho = 1.5\n").model()
    with pytest.raises(ParameterError):
        RunConfig.from_text("contract.t1 = 8\n").contract()


def test_seasonality_from_calibration_report(tmp_path):
    report = {"seasonality": {"intercept": {"estimate": 3.5, "std_error": 0.1}, "hour_20": {"estimate": 0.2}}}
    path = tmp_path / "cal.json"
    path.write_text(json.dumps(report))
    m = RunConfig({"seasonality.p": str(path)}).model()
    assert m.seasonality(19.5 / 8760) == pytest.approx(3.7)
    with pytest.raises(ParameterError):
        RunConfig({"seasonality.p": str(tmp_path / "missing.json")}).model()


def test_overrides_from_text():
    cfg = RunConfig().with_text_values({"model.sigma": "2.5", "mc.seed": "7"})
    assert cfg["model.sigma"] == 2.5 and cfg["mc.seed"] == 7
    with pytest.raises(ParameterError):
        RunConfig().with_text_values({"model.sigmaa": "1"})
    assert math.isclose(cfg.model().sigma, 2.5)
