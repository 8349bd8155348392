"""Command-line front end.

Subcommands: ``simulate``, ``select-order``, ``compare``, ``forecast``.
Every flag can also come from a JSON file passed with ``--config``; keys are
the flag names with dashes replaced by underscores, and flags given on the
command line win. A ``manifest.json`` written by ``compare`` is itself a
valid config file.

Exit codes: 0 success, 1 configuration error, 2 data error, 3 numerical
failure.
"""
from __future__ import annotations

import argparse
import json
import os
import platform
import sys
import time

import numpy as np
import scipy

from . import __version__
from .data_io import fmt, load_csv, write_columns_csv, write_series_csv
from .datasets import ar2_fixture_path
from .errors import ArswarmError, ConfigurationError
from .estimators import EstimatorKind, fit_estimator
from .metrics import CFPSO, METHODS, build_comparison
from .pso import PsoConfig, VelocityRule, fit_ar_cfpso
from .selection import select_order, write_aic_csv
from .series import ARModel, PredictionMode, forecast, simulate_ar

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ConfigurationError.exit_code, f"{self.prog}: error: {message}\n")


def _floats(text):
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    text = str(text).strip()
    if not text:
        return []
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise ConfigurationError(f"expected comma-separated numbers, got {text!r}")


def _order(text):
    if str(text).lower() == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError:
        raise ConfigurationError(f"order must be an integer or 'auto', got {text!r}")


def _add_input(p):
    p.add_argument("input", nargs="?", default=None,
                   help="CSV file with the series (default: bundled AR(2) fixture)")
    p.add_argument("--column", default="0", help="0-based column index or header name")
    p.add_argument("--config", help="JSON file with default option values")


def _add_pso(p):
    g = p.add_argument_group("swarm")
    g.add_argument("--swarm-size", type=int, default=30)
    g.add_argument("--c1", type=float, default=2.05)
    g.add_argument("--c2", type=float, default=2.05)
    g.add_argument("--inertia-weight", type=float, default=0.7)
    g.add_argument("--velocity-rule", choices=[r.value for r in VelocityRule], default="constriction")
    g.add_argument("--max-iterations", type=int, default=100)
    g.add_argument("--stall-tolerance", type=float, default=1e-3)
    g.add_argument("--stall-window", type=int, default=20)
    g.add_argument("--bounds", type=_floats, default=[-2.0, 2.0], help="lower,upper for every coefficient")
    g.add_argument("--runs", type=int, default=30)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--ls-seeding", action="store_true", help="inject the LS solution as one initial particle")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arswarm", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"arswarm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="write a synthetic AR series")
    p.add_argument("--config", help="JSON file with default option values")
    p.add_argument("--coefficients", type=_floats, default=[0.6, -0.3])
    p.add_argument("--intercept", type=float, default=0.0)
    p.add_argument("--noise-std", type=float, default=1.0)
    p.add_argument("-n", "--length", type=int, default=2048)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--warmup", type=int, default=200)
    p.add_argument("--init", type=_floats, default=None, help="pre-sample history, oldest first")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("select-order", help="AIC sweep over lag orders")
    _add_input(p)
    p.add_argument("--rho-max", type=int, default=10)
    p.add_argument("--estimator", default="YW", help="comma-separated subset of LS,FB,YW,GL")
    p.add_argument("--aic-scale", choices=["std", "variance"], default="std")
    p.add_argument("--output-dir", default=".")
    p.set_defaults(func=cmd_select_order)

    p = sub.add_parser("compare", help="five-method comparison table")
    _add_input(p)
    p.add_argument("--order", type=_order, default="auto")
    p.add_argument("--rho-max", type=int, default=10)
    p.add_argument("--order-estimator", default="YW")
    p.add_argument("--aic-scale", choices=["std", "variance"], default="std")
    p.add_argument("--mode", choices=[m.value for m in PredictionMode], default="one-step")
    p.add_argument("--methods", default=",".join(METHODS))
    p.add_argument("--output-dir", default="arswarm-out")
    p.add_argument("--formats", default="json,csv")
    _add_pso(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("forecast", help="free-run forecast past the end of the series")
    _add_input(p)
    p.add_argument("--horizon", type=int, required=False, default=None)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--method", default="LS", help="LS, FB, YW, GL or CF-PSO")
    p.add_argument("--coefficients", type=_floats, default=None,
                   help="use this model instead of fitting one")
    p.add_argument("--intercept", type=float, default=0.0)
    p.add_argument("-o", "--output", default=None)
    _add_pso(p)
    p.set_defaults(func=cmd_forecast)
    return parser


def _parse(parser, argv):
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"cannot read config {args.config}: {exc}")
        if "config" in cfg and isinstance(cfg["config"], dict):
            cfg = cfg["config"]
        subparser = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in subparser._actions}
        unknown = set(cfg) - known - {"command"}
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        cfg = {k: v for k, v in cfg.items() if k not in ("command", "config", "func")}
        subparser.set_defaults(**cfg)
        args = parser.parse_args(argv)
    return args


def _input_path(args):
    return args.input if args.input else ar2_fixture_path()


def _load(args):
    return load_csv(_input_path(args), args.column)


def _pso_config(args, order):
    bounds = _floats(args.bounds)
    if len(bounds) != 2:
        raise ConfigurationError("--bounds takes exactly two numbers")
    return PsoConfig(
        dimension=order,
        lower=bounds[0],
        upper=bounds[1],
        swarm_size=args.swarm_size,
        c1=args.c1,
        c2=args.c2,
        inertia_weight=args.inertia_weight,
        velocity_rule=VelocityRule(args.velocity_rule),
        max_iterations=args.max_iterations,
        stall_tolerance=args.stall_tolerance,
        stall_window=args.stall_window,
        rng_seed=args.seed,
    )


def _estimators(text):
    try:
        return [EstimatorKind.parse(k) for k in str(text).split(",") if k.strip()]
    except ValueError as exc:
        raise ConfigurationError(str(exc))


def cmd_simulate(args):
    coefficients = _floats(args.coefficients)
    if args.length < 1 or args.noise_std < 0 or args.warmup < 0:
        raise ConfigurationError("need length >= 1, noise-std >= 0 and warmup >= 0")
    init = _floats(args.init) if args.init is not None else None
    if init is not None and len(init) != len(coefficients):
        raise ConfigurationError("--init needs one value per coefficient")
    model = ARModel(len(coefficients), coefficients, args.intercept, args.noise_std ** 2)
    series = simulate_ar(model, args.length, args.noise_std, args.seed, args.warmup, init)
    write_series_csv(series.values, args.output)
    print(f"wrote {len(series)} samples to {args.output}")
    return 0


def cmd_select_order(args):
    if args.rho_max < 1:
        raise ConfigurationError("--rho-max must be at least 1")
    kinds = _estimators(args.estimator)
    series = _load(args)
    curves = [select_order(series, args.rho_max, kind, args.aic_scale) for kind in kinds]
    os.makedirs(args.output_dir, exist_ok=True)
    write_aic_csv(curves, os.path.join(args.output_dir, "aic_curve.csv"))
    for curve in curves:
        print(f"{curve.estimator.value}: chosen order {curve.chosen_order}")
    return 0


def _resolved_config(args):
    out = {k: v for k, v in vars(args).items() if k not in ("func", "config")}
    out["input"] = os.path.abspath(_input_path(args))
    return out


def _format_table(rows):
    def cell(v, digits=4):
        if v is None:
            return "-"
        return f"{v:+.{digits}f}" if isinstance(v, float) and digits == 3 else f"{v:.{digits}f}"

    lines = [f"{'Method':<8}{'MSE':>12}{'EMP_MSE(%)':>12}{'FPE':>12}{'EMP_FPE(%)':>12}{'NMSE':>10}"]
    for r in rows:
        if not r.ok:
            lines.append(f"{r.method:<8}  failed: {r.error}")
            continue
        lines.append(
            f"{r.method:<8}{r.mse:>12.4f}{cell(r.emp_mse_pct, 3):>12}"
            f"{r.fpe:>12.4f}{cell(r.emp_fpe_pct, 3):>12}{r.nmse:>10.4f}"
        )
    return "\n".join(lines)


def cmd_compare(args):
    if args.order == "auto" and args.rho_max < 1:
        raise ConfigurationError("--order auto needs --rho-max >= 1")
    if args.order != "auto" and args.order < 1:
        raise ConfigurationError("--order must be at least 1")
    if args.runs < 1:
        raise ConfigurationError("--runs must be at least 1")
    formats = {f.strip().lower() for f in str(args.formats).split(",") if f.strip()}
    if not formats <= {"json", "csv"}:
        raise ConfigurationError("--formats accepts json and/or csv")
    methods = [m.strip() for m in str(args.methods).split(",") if m.strip()]
    started = time.perf_counter()
    series = _load(args)

    curve = None
    if args.order == "auto":
        if len(series) <= 2 * args.rho_max:
            raise ConfigurationError("series too short for the AIC sweep")
        curve = select_order(series, args.rho_max, _estimators(args.order_estimator)[0], args.aic_scale)
    elif args.rho_max >= 1 and len(series) > 2 * args.rho_max:
        # the curve is only an extra artifact when the order is fixed
        try:
            curve = select_order(series, args.rho_max, _estimators(args.order_estimator)[0], args.aic_scale)
        except ArswarmError:
            curve = None
    order = curve.chosen_order if args.order == "auto" else args.order

    config = _pso_config(args, order)
    report = build_comparison(
        series, order, methods, PredictionMode(args.mode), config, args.runs, args.ls_seeding
    )

    os.makedirs(args.output_dir, exist_ok=True)
    payload = {
        "order": order,
        "mode": report.mode.value,
        "span_length": report.span_length,
        "rows": [r.to_dict() for r in report.rows],
    }
    if "json" in formats:
        with open(os.path.join(args.output_dir, "report.json"), "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=False)
            fh.write("\n")
    if "csv" in formats:
        with open(os.path.join(args.output_dir, "report.csv"), "w") as fh:
            fh.write(",".join(("Method", "MSE", "EMP_MSE", "FPE", "EMP_FPE", "NMSE", "runs", "std_mse")) + "\n")
            for r in report.rows:
                vals = [r.mse, r.emp_mse_pct, r.fpe, r.emp_fpe_pct, r.nmse, r.runs, r.std_mse]
                fh.write(",".join([r.method] + ["" if v is None else (str(v) if isinstance(v, int) else fmt(v)) for v in vals]) + "\n")
    if curve is not None:
        write_aic_csv(curve, os.path.join(args.output_dir, "aic_curve.csv"))
    if report.best_trace:
        write_columns_csv(
            os.path.join(args.output_dir, "convergence_trace.csv"),
            ["iteration", "gbest_rss"],
            [list(range(len(report.best_trace))), report.best_trace],
        )
    names = [m for m in METHODS if m in report.estimated]
    t = list(range(order + 1, order + 1 + report.span_length))
    write_columns_csv(
        os.path.join(args.output_dir, "estimated_vs_actual.csv"),
        ["t", "actual"] + names,
        [t, report.actual] + [report.estimated[m] for m in names],
    )
    manifest = {
        "command": "compare",
        "config": _resolved_config(args),
        "seeds": [args.seed + r for r in range(args.runs)] if any(r.method == CFPSO for r in report.rows) else [],
        "chosen_order": order,
        "versions": {
            "arswarm": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version(),
        },
        "platform": platform.platform(),
        "wall_clock_seconds": time.perf_counter() - started,
    }
    with open(os.path.join(args.output_dir, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")

    print(f"order {order}, {report.mode.value} prediction, span {report.span_length} samples")
    print(_format_table(report.rows))
    failed = [r for r in report.rows if not r.ok]
    if failed and len(failed) == len(report.rows):
        return 3
    return 0


def cmd_forecast(args):
    if args.horizon is None or args.horizon < 1:
        raise ConfigurationError("--horizon must be at least 1")
    series = _load(args)
    if args.coefficients is not None:
        coefficients = _floats(args.coefficients)
        model = ARModel(len(coefficients), coefficients, args.intercept)
    else:
        if args.order < 1:
            raise ConfigurationError("--order must be at least 1")
        method = args.method.strip().upper()
        if method in ("CF-PSO", "CFPSO", "PSO"):
            model = fit_ar_cfpso(series, args.order, _pso_config(args, args.order)).model
        else:
            try:
                kind = EstimatorKind.parse(method)
            except ValueError:
                raise ConfigurationError(f"unknown method {args.method!r}")
            model = fit_estimator(kind, series, args.order)
    values = forecast(model, series, args.horizon)
    rows = [list(range(1, args.horizon + 1)), values]
    if args.output:
        write_columns_csv(args.output, ["step", "forecast"], rows)
    else:
        print("step,forecast")
        for i, v in zip(*rows):
            print(f"{i},{fmt(v)}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = _parse(parser, argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except ArswarmError as exc:
        print(f"arswarm: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
