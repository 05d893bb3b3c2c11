"""Command line entry point: run, evaluate, compare, report, tables."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import ConfigError, builtin_profile, load_config
from .pipeline import (
    DegenerateStatisticsError,
    compare_pipelines,
    load_record,
    load_run,
    parse_pipelines,
    run_experiment,
)
from .report import evaluate_all, report_csv, tables_text
from .stats import DegenerateBaselineError, SampleSizeError, ZeroVarianceError

EXIT_OK, EXIT_CONFIG, EXIT_DEGENERATE = 0, 2, 3


def _cmd_run(args) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config = config.replace(master_seed=args.seed)
    try:
        names = parse_pipelines(args.pipelines)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    for rec in run_experiment(names, config, folding=args.folding, out_dir=args.out):
        print(f"{rec.pipeline}-{rec.spec.folding}: done", file=sys.stderr)
    return EXIT_OK


def _records(path: str):
    p = Path(path)
    if p.is_dir():
        return load_run(p)
    return [load_record(p)]


def _cmd_evaluate(args) -> int:
    evals = evaluate_all(_records(args.run), fits=[args.fit])
    payload = json.dumps([ev.to_dict() for ev in evals], indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(payload + "\n")
    else:
        print(payload)
    return EXIT_OK


def _cmd_compare(args) -> int:
    a, b = load_record(args.a), load_record(args.b)
    report = compare_pipelines(a, b, fit=args.fit, fit_b=args.fit_b)
    print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_report(args) -> int:
    if args.format != "csv":
        raise ConfigError(f"unsupported report format {args.format!r}")
    text = report_csv(evaluate_all(_records(args.runs)))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_tables(args) -> int:
    print(tables_text(load_config(args.config) if args.config else builtin_profile("desk")))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qemlab", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run pipelines and write one record per pipeline")
    p.add_argument("--config", required=True, help="config JSON path, or 'desk' / 'full'")
    p.add_argument("--pipelines", default="all", help="e.g. P1..P8,P1E..P8E or P3,P7E")
    p.add_argument("--folding", choices=("local", "global"), default="local")
    p.add_argument("--seed", type=int, default=None, help="override master_seed")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("evaluate", help="score records of a run directory")
    p.add_argument("--run", required=True)
    p.add_argument("--fit", choices=("linear", "quadratic"), default="linear")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("compare", help="two-sample test between two records")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--fit", choices=("linear", "quadratic"), default="linear")
    p.add_argument("--fit-b", choices=("linear", "quadratic"), default=None)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("report", help="CSV of T, S, R, REM bound, PSR and M for both fits")
    p.add_argument("--runs", required=True)
    p.add_argument("--format", default="csv")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("tables", help="print the RC table and parameter pairs")
    p.add_argument("--config")
    p.set_defaults(func=_cmd_tables)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ConfigError, FileExistsError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DegenerateStatisticsError, DegenerateBaselineError, ZeroVarianceError, SampleSizeError) as exc:
        print(f"degenerate statistics: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
