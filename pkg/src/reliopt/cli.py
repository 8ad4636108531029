"""Command-line interface: ``reliopt calibrate | price | bounds | sweep``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .calibration import calibrate_pipeline
from .closed_form import model_bounds
from .config import RunConfig
from .errors import ParameterError, RelioptError
from .models import strike_forward, swap_forward
from .pricing import price
from .sweep import Axis, SweepSpec, run_sweep, sweep_csv
from .timeseries import read_price_csv

__all__ = ["main", "build_parser"]

log = logging.getLogger("reliopt")


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_config(args) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    pairs = {}
    for item in args.set or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise ParameterError(f"--set expects key=value, got {item!r}")
        pairs[key.strip()] = value.strip()
    return cfg.with_text_values(pairs) if pairs else cfg


def cmd_calibrate(args) -> int:
    report = calibrate_pipeline(read_price_csv(args.data))
    Path(args.out).write_text(report.to_json() + "\n")
    seas = report.seasonality
    print(f"observations  {seas.n_obs}    R^2 {seas.r_squared:.4f}")
    print(f"{'coefficient':<14}{'estimate':>12}{'std err':>12}{'AR(1) se':>12}")
    for name, row in seas.to_dict().items():
        print(f"{name:<14}{row['estimate']:>12.4f}{row['std_error']:>12.4f}{row['ar1_std_error']:>12.4f}")
    print(f"OU     lambda {report.ou.lambda_hat:.4f}  sigma {report.ou.sigma_hat:.4f}  a {report.ou.ar_coefficient:.6f}")
    print(f"GBM    sigma {report.gbm_sigma:.4f}")
    return 0


def cmd_price(args) -> int:
    cfg = _load_config(args)
    if args.seed is not None:
        cfg = cfg.with_values(**{"mc.seed": args.seed})
    result = price(cfg.model(), cfg.contract(), args.method, cfg.quad(), cfg.mc(), workers=cfg["mc.workers"])
    _emit(json.dumps(result.to_dict(), indent=2) + "\n", args.out or cfg["io.out"])
    return 0


def cmd_bounds(args) -> int:
    cfg = _load_config(args)
    model, contract, quad = cfg.model(), cfg.contract(), cfg.quad()
    lower, upper = model_bounds(model, contract, quad)
    doc = {
        "forward_spot": swap_forward(model, contract, quad),
        "forward_strike": strike_forward(model, contract, quad),
        "bounds": {"lower": lower, "upper": upper},
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def cmd_sweep(args) -> int:
    cfg = _load_config(args)
    spec = SweepSpec(tuple(Axis.parse(a) for a in args.axis), cfg, args.method, args.out)
    rows = run_sweep(spec, workers=args.workers)
    outside = [r.point for r in rows if not r.result.within_bounds]
    if outside:
        log.warning("%d grid points fall outside the no-arbitrage bounds, first at %s", len(outside), outside[0])
    _emit(sweep_csv(spec, rows), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reliopt", description="Price and calibrate electricity reliability options.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("calibrate", help="fit seasonality, OU and GBM parameters to hourly prices")
    p.add_argument("--data", required=True, help="CSV with header timestamp,price")
    p.add_argument("--out", required=True, help="JSON report path")
    p.set_defaults(func=cmd_calibrate)

    def config_args(p):
        p.add_argument("--config", help="key = value config file (defaults if omitted)")
        p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override one config key")

    p = sub.add_parser("price", help="price the RO and check it against the no-arbitrage bounds")
    config_args(p)
    p.add_argument("--method", choices=("cf", "mc"), default="cf", help="closed form (default) or Monte Carlo")
    p.add_argument("--seed", type=int, help="Monte Carlo seed (overrides mc.seed)")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_price)

    p = sub.add_parser("bounds", help="model-free bounds from the model's forwards")
    config_args(p)
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sweep", help="price over a 1-D or 2-D parameter grid, long-format CSV")
    config_args(p)
    p.add_argument("--axis", action="append", required=True, metavar="NAME:MIN:MAX:N[:log]")
    p.add_argument("--method", choices=("cf", "mc"), default="cf")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except RelioptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
