"""Command-line interface.

Subcommands::

    relgrowth analyze PANEL.csv --reference "N Italy" [--out DIR --format text,json,svg,csv]
    relgrowth simulate SCENARIO.json [--seed N] [--out DIR]
    relgrowth classify --b 0.793 --se 0.069 --n 23 [--alpha 0.05]
    relgrowth fit-curve PANEL.csv --family logistic|gompertz [--entity NAME]

Exit codes: 0 success, 1 input error, 2 analysis degeneracy (nothing could
be analyzed).
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .curves import LogisticCurve, capacity_sse, fit_curve
from .errors import DomainError, FitError, InputError
from .io import ingest_csv, write_panel_csv
from .report import OUTPUT_FORMATS, AnalysisConfig, analyze, emit_text, write_outputs
from .synthetic import generate, load_scenario, recovery_check
from .timeseries import PreprocessConfig
from .typology import classify_from_summary

log = logging.getLogger("relgrowth")

EXIT_OK, EXIT_INPUT, EXIT_DEGENERATE = 0, 1, 2

_RATE_FLAGS = {"pct": "percent-change", "logdiff": "log-difference"}


def _formats(value: str) -> tuple[str, ...]:
    items = tuple(v.strip() for v in value.split(",") if v.strip())
    bad = [v for v in items if v not in OUTPUT_FORMATS]
    if bad:
        raise argparse.ArgumentTypeError(
            f"unknown format(s) {', '.join(bad)}; choose from {', '.join(OUTPUT_FORMATS)}"
        )
    return items


def _odd_window(value: str) -> int:
    w = int(value)
    if w < 1 or w % 2 == 0:
        raise argparse.ArgumentTypeError("--ma-window must be an odd positive integer")
    return w


def _add_preprocess_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=0.05, help="significance level (default 0.05)")
    p.add_argument("--ma-window", type=_odd_window, default=3, help="centered moving-average window")
    p.add_argument("--rate", choices=sorted(_RATE_FLAGS), default="pct",
                   help="growth-rate formula: pct (percent change) or logdiff")
    p.add_argument("--rebase-year", type=int, default=None, help="divide levels by this year's value")
    p.add_argument("--smooth-order", choices=("rate-first", "level-first"), default="rate-first")
    p.add_argument("--out", type=Path, default=None, help="directory for report files")
    p.add_argument("--format", type=_formats, default=("text",), dest="formats",
                   help="comma-separated subset of text,json,svg,csv (default text)")


def _preprocess_config(args) -> PreprocessConfig:
    return PreprocessConfig(
        rate_method=_RATE_FLAGS[args.rate],
        ma_window=args.ma_window,
        rebase_year=args.rebase_year,
        smooth_order=args.smooth_order,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relgrowth",
        description="Measure relative growth of economic systems with allometric regression.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="regress every entity of a panel on a reference entity")
    p.add_argument("csv", type=Path, help="long-format panel: entity,year,value")
    p.add_argument("--reference", required=True, help="label of the reference entity")
    _add_preprocess_flags(p)

    p = sub.add_parser("simulate", help="generate a synthetic pair and check exponent recovery")
    p.add_argument("scenario", type=Path, help="JSON scenario file")
    p.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    _add_preprocess_flags(p)

    p = sub.add_parser("classify", help="classify a published (B, SE, N) triple")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--se", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.05)

    p = sub.add_parser("fit-curve", help="fit an S-curve to each entity's levels")
    p.add_argument("csv", type=Path)
    p.add_argument("--family", choices=("logistic", "gompertz"), default="logistic")
    p.add_argument("--entity", default=None, help="fit only this entity")
    return parser


def _emit(report, args) -> int:
    sys.stdout.write(emit_text(report))
    if args.out is not None:
        for path in write_outputs(report, args.out, args.formats):
            log.info("wrote %s", path)
    if report.all_skipped:
        log.error("no entity could be analyzed")
        return EXIT_DEGENERATE
    return EXIT_OK


def cmd_analyze(args) -> int:
    panel = ingest_csv(args.csv)
    config = AnalysisConfig(
        reference=args.reference,
        alpha=args.alpha,
        preprocess=_preprocess_config(args),
        output_formats=args.formats,
        output_dir=args.out,
    )
    return _emit(analyze(panel, config), args)


def cmd_simulate(args) -> int:
    spec = load_scenario(args.scenario)
    if args.seed is not None:
        spec = replace(spec, seed=args.seed)
    pre = _preprocess_config(args)
    try:
        rec = recovery_check(spec, pre, args.alpha)
    except (FitError, ValueError) as exc:
        log.error("recovery check failed: %s", exc)
        return EXIT_DEGENERATE
    print(f"true rate ratio  {rec.b_true_ratio:.6f}")
    print(f"estimated B      {rec.b_hat:.6f} (SE {rec.fit.se_slope:.6f}, N {rec.fit.n})")
    print(f"verdict          {rec.verdict.label.value}")
    if args.out is not None:
        target, reference = generate(spec)
        args.out.mkdir(parents=True, exist_ok=True)
        panel = {target.entity: target, reference.entity: reference}
        write_panel_csv(panel, args.out / "synthetic_panel.csv")
        config = AnalysisConfig(reference=reference.entity, alpha=args.alpha, preprocess=pre)
        return _emit(analyze(panel, config), args)
    return EXIT_OK


def cmd_classify(args) -> int:
    verdict = classify_from_summary(args.b, args.se, args.n, args.alpha)
    print(verdict.label.value)
    for line in verdict.rationale:
        print(f"  {line}")
    return EXIT_OK


def cmd_fit_curve(args) -> int:
    panel = ingest_csv(args.csv)
    if args.entity is not None:
        if args.entity not in panel:
            raise InputError(f"entity {args.entity!r} not found in panel")
        panel = {args.entity: panel[args.entity]}
    loc = "t1" if args.family == "logistic" else "I"
    print(f"{'entity':<24} {'capacity':>14} {'rate':>10} {loc:>10} {'sse':>12}")
    fitted = 0
    for name, series in panel.items():
        try:
            curve = fit_curve(series, args.family)
        except (FitError, DomainError, ValueError) as exc:
            print(f"{name:<24} failed: {exc}")
            continue
        fitted += 1
        location = curve.inflection_time if isinstance(curve, LogisticCurve) else curve.shape
        sse = capacity_sse(series, curve.capacity, args.family)
        print(f"{name:<24} {curve.capacity:>14.6g} {curve.rate:>10.6g} {location:>10.6g} {sse:>12.4g}")
    return EXIT_OK if fitted else EXIT_DEGENERATE


COMMANDS = {
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
    "classify": cmd_classify,
    "fit-curve": cmd_fit_curve,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except ValueError as exc:
        log.error("invalid input: %s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
