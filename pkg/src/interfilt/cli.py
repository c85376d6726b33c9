"""Command-line front end.

Subcommands: ``analyze`` (full report for one model), ``sweep`` (tabulate
the built-in family over an alpha grid), ``simulate`` (Monte Carlo vs
analytic comparison), ``thresholds`` (closed-form constants of the built-in
family). Exit codes are a stable contract: 0 success, 1 statistical
comparison failed, 2 invalid input, 3 degenerate model.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import __version__
from .config import ConfigError, dump_model, load_model, parse_number
from .errors import DegenerateDenominator, ModelValidationError, ParamsOutOfRange
from .montecarlo import MCConfig, compare, simulate
from .reference import DECOHERENCE_ALPHA, XI_MAX, sweep, thresholds
from .report import analyze

EXIT_OK = 0
EXIT_COMPARISON_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_DEGENERATE = 3

SWEEP_COLUMNS = [
    "alpha", "beta", "lambda0", "lambda1", "regime",
    "phase_kind", "theta0", "pi0", "pi1", "xi_asym",
]


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _load_config_file(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(path, f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(path, f"invalid JSON: {exc}") from None
    return load_model(doc)


def _report_rows(report, tol: float) -> list[tuple[str, object]]:
    rows: list[tuple[str, object]] = [("version", __version__), ("tol", repr(tol))]
    for name, vec in (("p_b", report.p_b), ("p_a", report.p_a),
                      ("delta", report.delta), ("lambda", report.lam)):
        for k, v in enumerate(vec):
            rows.append((f"{name}_{k}", repr(float(v))))
    for name, mat in (("p_joint", report.p_joint), ("p_cond", report.p_cond),
                      ("q_joint", report.q_joint), ("q_cond", report.q_cond),
                      ("xi", report.xi)):
        for i in (0, 1):
            for j in (0, 1):
                rows.append((f"{name}_{i}{j}", repr(float(mat[i, j]))))
    rows.append(("regime", str(report.regime)))
    for k, ph in enumerate(report.phases):
        rows.append((f"phase_kind_{k}", ph.kind))
        rows.append((f"theta_{k}", repr(ph.theta)))
        rows.append((f"phase_sign_{k}", ph.sign))
    return rows


def _cmd_analyze(args) -> int:
    model, resolved = _load_config_file(args.config)
    if args.dump_config:
        _emit_json(dump_model(model))
        return EXIT_OK
    report = analyze(model, tol=args.tol)
    if args.format == "json":
        _emit_json({
            "version": __version__,
            "command": "analyze",
            "tol": args.tol,
            "params": resolved,
            "report": report.to_dict(),
        })
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["quantity", "value"])
        writer.writerows(_report_rows(report, args.tol))
    return EXIT_OK


def _parse_grid(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError("--grid", f"expected start:stop:step, got {text!r}")
    return tuple(parse_number(p, "--grid") for p in parts)  # type: ignore[return-value]


def _cmd_sweep(args) -> int:
    start, stop, step = _parse_grid(args.grid)
    fixed_beta = parse_number(args.beta, "--beta") if args.beta is not None else None
    rows = sweep(start, stop, step, ds=args.ds, fixed_beta=fixed_beta, tol=args.tol)
    if args.format == "json":
        _emit_json({
            "version": __version__,
            "command": "sweep",
            "grid": {"start": start, "stop": stop, "step": step},
            "ds": args.ds,
            "fixed_beta": fixed_beta,
            "rows": [
                {**{c: getattr(r, c) for c in SWEEP_COLUMNS if c != "regime"},
                 "regime": str(r.regime)}
                for r in rows
            ],
        })
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for r in rows:
            writer.writerow([
                repr(r.alpha), repr(r.beta), repr(r.lambda0), repr(r.lambda1),
                str(r.regime), r.phase_kind, repr(r.theta0),
                repr(r.pi0), repr(r.pi1), repr(r.xi_asym),
            ])
    return EXIT_OK


def _cmd_simulate(args) -> int:
    model, resolved = _load_config_file(args.config)
    try:
        config = MCConfig(seed=args.seed, samples=args.samples, streams=args.streams)
    except ValueError as exc:
        raise ConfigError("simulate", str(exc)) from None
    analytic = analyze(model, tol=args.tol)
    result = simulate(model, config)
    comparison = compare(analytic, result, args.ksigma)
    _emit_json({
        "version": __version__,
        "command": "simulate",
        "params": {**resolved, "samples": config.samples, "seed": config.seed,
                   "streams": config.streams, "k_sigma": args.ksigma},
        "analytic": analytic.to_dict(),
        "empirical": result.to_dict(),
        "comparison": comparison.to_dict(),
    })
    return EXIT_OK if comparison.passed else EXIT_COMPARISON_FAILED


def _cmd_thresholds(_args) -> int:
    alpha_minus, alpha_plus = thresholds()
    _emit_json({
        "version": __version__,
        "alpha_minus": alpha_minus,
        "alpha_plus": alpha_plus,
        "xi_max": XI_MAX,
        "decoherence_alpha": DECOHERENCE_ALPHA,
    })
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interfilt",
        description="Interference of probabilities induced by preparation filters",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full analytic report for one model")
    p.add_argument("config", help="path to a model configuration (JSON)")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--tol", type=float, default=1e-9, help="regime classification tolerance")
    p.add_argument("--dump-config", action="store_true",
                   help="emit the resolved explicit configuration and exit")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("sweep", help="tabulate the built-in family over an alpha grid")
    p.add_argument("--grid", required=True, metavar="START:STOP:STEP")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--ds", action="store_true",
                       help="follow the double-stochastic line beta = 1/3 + 2 alpha")
    group.add_argument("--beta", help="fixed beta for every row")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("simulate", help="Monte Carlo run compared against the analytic report")
    p.add_argument("config", help="path to a model configuration (JSON)")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--streams", type=int, default=1)
    p.add_argument("--ksigma", type=float, default=4.0,
                   help="pass threshold in standard errors per quantity")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("thresholds", help="closed-form constants of the built-in family")
    p.set_defaults(func=_cmd_thresholds)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ModelValidationError, ParamsOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except DegenerateDenominator as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
