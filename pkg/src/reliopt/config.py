"""Run configuration: flat ``section.key = value`` text files.

Recognised keys (defaults reproduce the 2016 PUN case study):

    contract.q                 capacity in MW                       1.0
    contract.t1, contract.t2   delivery window in years             4.0, 7.0
    contract.r                 risk-free rate per year              0.01
    contract.strike            EUR/MWh, or "stochastic"             40.0
    model.type                 gbm | two_gbm | ou | two_ou | shifted_two_ou
    model.p0, model.k0         initial prices (GBM models)          42.77, 40.0
    model.sigma, model.q       GBM / OU volatility, GBM yield       (preset), 0.0
    model.sigma_p, model.sigma_k, model.q_p, model.q_k    two-GBM
    model.x0, model.lambda     OU initial level and speed           0.0, (preset)
    model.sigma_x, model.lambda_x, model.y0, model.sigma_y, model.lambda_y   two-OU
    model.rho                  correlation                          0.5
    model.p_floor, model.k_floor   price floors (shifted model)     0.0
    seasonality.p, seasonality.k   "pun2016", a constant log level, or a
                                   calibration-report JSON path     pun2016
    seasonality.origin         valuation time 0 (local civil time)  2017-01-01T00:00
    mc.n_paths, mc.steps_per_year, mc.seed, mc.antithetic, mc.measure, mc.workers
    quad.abs_tol, quad.max_subdivisions
    io.data, io.out            optional file paths

Volatilities and speeds left unset take the calibrated presets of the
chosen model. Unknown keys are errors.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from . import presets
from .contract import RoContract
from .errors import ParameterError
from .models import GbmParams, OuParams, ShiftedTwoOuParams, TwoGbmParams, TwoOuParams
from .montecarlo import McConfig
from .quadrature import QuadratureConfig
from .seasonality import ConstantLevel, SeasonalCurve, SeasonalityParams

__all__ = ["RunConfig", "SCHEMA", "MODEL_TYPES"]

MODEL_TYPES = ("gbm", "two_gbm", "ou", "two_ou", "shifted_two_ou")


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _strike(text: str):
    return None if text.strip().lower() == "stochastic" else float(text)


def _model_type(text: str) -> str:
    if text not in MODEL_TYPES:
        raise ValueError(f"must be one of {', '.join(MODEL_TYPES)}")
    return text


def _measure(text: str) -> str:
    if text not in ("risk_neutral", "share"):
        raise ValueError("must be risk_neutral or share")
    return text


# key -> (parser, default)
SCHEMA: dict[str, tuple] = {
    "contract.q": (float, 1.0),
    "contract.t1": (float, presets.T1),
    "contract.t2": (float, presets.T2),
    "contract.r": (float, presets.RISK_FREE_RATE),
    "contract.strike": (_strike, presets.STRIKE),
    "model.type": (_model_type, "ou"),
    "model.p0": (float, presets.PUN_MEAN_PRICE),
    "model.k0": (float, presets.STRIKE),
    "model.sigma": (float, None),
    "model.q": (float, 0.0),
    "model.sigma_p": (float, None),
    "model.sigma_k": (float, None),
    "model.q_p": (float, 0.0),
    "model.q_k": (float, 0.0),
    "model.x0": (float, 0.0),
    "model.lambda": (float, None),
    "model.sigma_x": (float, None),
    "model.lambda_x": (float, None),
    "model.y0": (float, presets.STRIKE_Y0),
    "model.sigma_y": (float, None),
    "model.lambda_y": (float, None),
    "model.rho": (float, 0.5),
    "model.p_floor": (float, 0.0),
    "model.k_floor": (float, 0.0),
    "seasonality.p": (str, "pun2016"),
    "seasonality.k": (str, "pun2016"),
    "seasonality.origin": (str, "2017-01-01T00:00"),
    "mc.n_paths": (int, 10_000),
    "mc.steps_per_year": (int, 8760),
    "mc.seed": (int, 0),
    "mc.antithetic": (_bool, False),
    "mc.measure": (_measure, "risk_neutral"),
    "mc.workers": (int, 1),
    "quad.abs_tol": (float, None),
    "quad.max_subdivisions": (int, 1_000_000),
    "io.data": (str, None),
    "io.out": (str, None),
}

def _format(value) -> str:
    if value is None:
        return "stochastic"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass(frozen=True)
class RunConfig:
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        unknown = sorted(set(self.values) - set(SCHEMA))
        if unknown:
            raise ParameterError(f"unknown configuration keys: {', '.join(unknown)}")
        # None means "use the default"; only the strike uses it as a value
        clean = {k: v for k, v in self.values.items() if v is not None or k == "contract.strike"}
        object.__setattr__(self, "values", clean)

    def __getitem__(self, key):
        if key not in SCHEMA:
            raise ParameterError(f"unknown configuration key {key!r}")
        return self.values.get(key, SCHEMA[key][1])

    def with_values(self, **overrides) -> RunConfig:
        """Copy with ``overrides`` (dotted keys, already typed)."""
        merged = dict(self.values)
        merged.update(overrides)
        return RunConfig(merged)

    def with_text_values(self, pairs: dict[str, str]) -> RunConfig:
        return self.with_values(**{k: _parse_value(k, v) for k, v in pairs.items()})

    # text form

    @classmethod
    def from_text(cls, text: str) -> RunConfig:
        values = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParameterError(f"config line {lineno}: expected 'key = value', got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in SCHEMA:
                raise ParameterError(f"config line {lineno}: unknown key {key!r}")
            if key in values:
                raise ParameterError(f"config line {lineno}: duplicate key {key!r}")
            values[key] = _parse_value(key, value, lineno)
        return cls(values)

    @classmethod
    def from_file(cls, path) -> RunConfig:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ParameterError(f"cannot read config {path}: {exc}") from None
        return cls.from_text(text)

    def to_text(self) -> str:
        lines = []
        for key in SCHEMA:
            if key in self.values:
                lines.append(f"{key} = {_format(self.values[key])}")
        return "\n".join(lines) + "\n"

    # builders

    def contract(self) -> RoContract:
        strike = self["contract.strike"]
        if self["model.type"] in ("two_gbm", "two_ou", "shifted_two_ou"):
            strike = None
        return RoContract(
            q=self["contract.q"], t1=self["contract.t1"], t2=self["contract.t2"], r=self["contract.r"], strike=strike
        )

    def _seasonality(self, key):
        spec = self[key]
        if spec == "pun2016":
            return SeasonalCurve(presets.PUN_2016_SEASONALITY, self["seasonality.origin"])
        try:
            return ConstantLevel(float(spec))
        except ValueError:
            pass
        try:
            data = json.loads(Path(spec).read_text())
        except (OSError, ValueError) as exc:
            raise ParameterError(f"{key}: cannot load seasonality from {spec!r}: {exc}") from None
        coeffs = data.get("seasonality", data)
        coeffs = {k: (v["estimate"] if isinstance(v, dict) else v) for k, v in coeffs.items()}
        return SeasonalCurve(SeasonalityParams.from_dict(coeffs), self["seasonality.origin"])

    def _or(self, key, default):
        value = self[key]
        return default if value is None else value

    def model(self):
        kind = self["model.type"]
        if kind == "gbm":
            return GbmParams(self["model.p0"], self._or("model.sigma", presets.GBM_SIGMA), self["model.q"])
        if kind == "two_gbm":
            return TwoGbmParams(
                p0=self["model.p0"],
                k0=self["model.k0"],
                sigma_p=self._or("model.sigma_p", presets.GBM_SIGMA),
                sigma_k=self._or("model.sigma_k", presets.GBM_SIGMA),
                q_p=self["model.q_p"],
                q_k=self["model.q_k"],
                rho=self["model.rho"],
            )
        if kind == "ou":
            return OuParams(
                self["model.x0"],
                self._or("model.lambda", presets.OU_LAMBDA),
                self._or("model.sigma", presets.OU_SIGMA),
                self._seasonality("seasonality.p"),
            )
        two = TwoOuParams(
            OuParams(
                self["model.x0"],
                self._or("model.lambda_x", presets.OU_LAMBDA),
                self._or("model.sigma_x", presets.OU_SIGMA),
                self._seasonality("seasonality.p"),
            ),
            OuParams(
                self["model.y0"],
                self._or("model.lambda_y", presets.OU_LAMBDA),
                self._or("model.sigma_y", presets.OU_SIGMA),
                self._seasonality("seasonality.k"),
            ),
            self["model.rho"],
        )
        if kind == "two_ou":
            return two
        return ShiftedTwoOuParams(two, self["model.p_floor"], self["model.k_floor"])

    def mc(self) -> McConfig:
        return McConfig(
            n_paths=self["mc.n_paths"],
            steps_per_year=self["mc.steps_per_year"],
            seed=self["mc.seed"],
            antithetic=self["mc.antithetic"],
            measure=self["mc.measure"],
        )

    def quad(self) -> QuadratureConfig:
        return QuadratureConfig(abs_tol=self["quad.abs_tol"], max_subdivisions=self["quad.max_subdivisions"])


def _parse_value(key: str, text, lineno: int | None = None):
    if key not in SCHEMA:
        raise ParameterError(f"unknown configuration key {key!r}")
    parser = SCHEMA[key][0]
    where = f"config line {lineno}: " if lineno else ""
    if not isinstance(text, str):
        return text
    try:
        value = parser(text.strip())
    except ValueError as exc:
        raise ParameterError(f"{where}bad value for {key}: {text!r} ({exc})") from None
    if isinstance(value, float) and not math.isfinite(value):
        raise ParameterError(f"{where}{key} must be finite")
    return value
