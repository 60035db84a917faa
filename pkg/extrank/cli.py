"""
Command-line surface for extrank.

Results go to stdout; progress and problems go to stderr as status lines.
Exit codes: 0 success, 1 a principle violation was found, 2 usage or parse
error, 3 a resource cap was hit.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import pandas as pd

from .apx import parse_apx, read_apx, write_apx
from .argument_ranking import GradualId, check_argument_ranking_principles, gradual_table, ne
from .config import configure_logging, get_settings, use_settings
from .corpus import TABLE_BUILDERS, TABLE_TITLES, reproduce_table
from .engine import explain
from .errors import ExtRankError
from .framework import parse_set
from .fuzzing import fuzz
from .lattice import materialize
from .principles import Outcome, Principle, check_principle
from .reports import emit_dot, principle_matrix, ranking_report, reports_frame
from .semantics import SemanticsId, enumerate_extensions
from .specs import parse_spec

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1


def status(message: str, ok: bool = True) -> None:
    print(f"{'✓' if ok else '⚠'} {message}", file=sys.stderr)


def _partition(text: Optional[str]) -> Optional[List[List[str]]]:
    if not text:
        return None
    return [[a.strip() for a in part.split(",") if a.strip()] for part in text.split("|")]


# commands --------------------------------------------------------------------------------

def cmd_extensions(args: argparse.Namespace) -> int:
    F = read_apx(args.file)
    family = enumerate_extensions(F, SemanticsId.parse(args.semantics))
    for mask in family:
        print(F.format_set(mask))
    status(f"{len(family)} {args.semantics} extension(s)")
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    F = read_apx(args.file)
    spec = parse_spec(args.spec)
    verdict, label = explain(F, spec, parse_set(F, args.left), parse_set(F, args.right))
    if args.explain and label:
        print(f"{verdict.value} ({label})")
    else:
        print(verdict.value)
    return EXIT_OK


def cmd_rank(args: argparse.Namespace) -> int:
    F = read_apx(args.file)
    spec = parse_spec(args.spec)
    ranking = materialize(F, spec)
    for line in ranking.describe():
        print(line)
    if args.dot:
        Path(args.dot).write_text(emit_dot(ranking), encoding="utf-8")
        status(f"DOT written to {args.dot}")
    if args.json:
        Path(args.json).write_text(ranking_report(ranking).to_json(), encoding="utf-8")
        status(f"JSON report written to {args.json}")
    status(f"{len(ranking.classes)} classes over {1 << F.n} sets")
    return EXIT_OK


def cmd_max(args: argparse.Namespace) -> int:
    F = read_apx(args.file)
    ranking = materialize(F, parse_spec(args.spec))
    for E in ranking.most_plausible():
        print(F.format_set(E.mask))
    return EXIT_OK


def cmd_gradual(args: argparse.Namespace) -> int:
    F = read_apx(args.file)
    rho = GradualId.parse(args.method)
    frame = gradual_table(F, rho)
    if args.semantics:
        sigma = SemanticsId.parse(args.semantics)
        frame[f"ne_{sigma.value}"] = ne(F, sigma).to_series().astype(int)
    with pd.option_context("display.float_format", "{:.4f}".format):
        print(frame.to_string())
    if args.principles:
        for result in check_argument_ranking_principles(rho, F, seed=get_settings().seed):
            detail = f" (witness {','.join(result.witness)})" if result.witness else ""
            status(f"{result.principle}{detail}", ok=result.holds)
    return EXIT_OK


def cmd_principles(args: argparse.Namespace) -> int:
    F = read_apx(args.file)
    spec = parse_spec(args.spec)
    reports = [
        check_principle(Principle.parse(p), F, spec, partition=_partition(args.partition))
        for p in args.principle
    ]
    print(reports_frame(reports).to_string(index=False))
    if args.json:
        Path(args.json).write_text(
            "[" + ",\n".join(r.model_dump_json(indent=2) for r in reports) + "]\n", encoding="utf-8"
        )
    violated = [r for r in reports if r.outcome is not Outcome.NO_VIOLATION]
    for report in violated:
        status(f"{report.principle}: {report.outcome.value}", ok=False)
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_fuzz(args: argparse.Namespace) -> int:
    spec = parse_spec(args.spec)
    principle = Principle.parse(args.principle)
    report = fuzz(spec, principle, trials=args.trials, size_range=(args.min_size, args.max_size),
                  density=args.density, seed=args.seed)
    print(report.model_dump_json(indent=2))
    if report.outcome is Outcome.NO_VIOLATION:
        status(f"no violation in {report.sample_size} trials")
        return EXIT_OK
    status(f"{report.outcome.value} after {report.sample_size} trial(s)", ok=False)
    if args.save and report.witness is not None:
        write_apx(parse_apx(report.witness.framework), args.save)
        status(f"witness framework saved to {args.save}")
    return EXIT_VIOLATION


def cmd_tables(args: argparse.Namespace) -> int:
    names = args.names or list(TABLE_BUILDERS)
    for name in names:
        cells = reproduce_table(name, trials=args.trials, seed=args.seed)
        print(f"# {name}: {TABLE_TITLES[name]}")
        print(principle_matrix(cells).to_string())
        print()
        disagreements = int((~cells["agrees"]).sum())
        if disagreements:
            status(f"{name}: {disagreements} cell(s) differ from the published table", ok=False)
        else:
            status(f"{name}: all {len(cells)} cells reproduced")
    return EXIT_OK


# parser ------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, help="argument cap for enumeration and materialization")
    common.add_argument("--seed", type=int, help="seed for sampling and fuzzing")
    common.add_argument("--log-level", default="", help="logging level (default from EXTRANK_LOG_LEVEL)")

    parser = argparse.ArgumentParser(prog="extrank", description="Extension rankings for abstract argumentation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extensions", parents=[common], help="enumerate sigma-extensions")
    p.add_argument("file")
    p.add_argument("--semantics", required=True)
    p.set_defaults(handler=cmd_extensions)

    p = sub.add_parser("compare", parents=[common], help="compare two sets under a ranking spec")
    p.add_argument("file")
    p.add_argument("--spec", required=True)
    p.add_argument("--left", required=True, help="comma-separated names, {} for the empty set")
    p.add_argument("--right", required=True)
    p.add_argument("--explain", action="store_true", help="also print what decided the verdict")
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("rank", parents=[common], help="materialize the ranking over all subsets")
    p.add_argument("file")
    p.add_argument("--spec", required=True)
    p.add_argument("--dot", metavar="OUT")
    p.add_argument("--json", metavar="OUT")
    p.set_defaults(handler=cmd_rank)

    p = sub.add_parser("max", parents=[common], help="most plausible sets")
    p.add_argument("file")
    p.add_argument("--spec", required=True)
    p.set_defaults(handler=cmd_max)

    p = sub.add_parser("gradual", parents=[common], help="argument scores, sv and tiers")
    p.add_argument("file")
    p.add_argument("--method", default="cat", choices=[g.value for g in GradualId])
    p.add_argument("--semantics", help="add an ne column for this semantics")
    p.add_argument("--principles", action="store_true", help="check argument-ranking principles")
    p.set_defaults(handler=cmd_gradual)

    p = sub.add_parser("principles", parents=[common], help="check principles on one framework")
    p.add_argument("file")
    p.add_argument("--spec", required=True)
    p.add_argument("--principle", action="append", required=True)
    p.add_argument("--partition", help="parts separated by '|', e.g. a,b|c,d (default: components)")
    p.add_argument("--json", metavar="OUT")
    p.set_defaults(handler=cmd_principles)

    p = sub.add_parser("fuzz", parents=[common], help="hunt for a principle violation on random frameworks")
    p.add_argument("--spec", required=True)
    p.add_argument("--principle", required=True)
    p.add_argument("--trials", type=int)
    p.add_argument("--min-size", type=int, default=3)
    p.add_argument("--max-size", type=int, default=6)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--save", metavar="OUT", help="write the shrunk witness framework as APX")
    p.set_defaults(handler=cmd_fuzz)

    p = sub.add_parser("tables", parents=[common], help="reproduce the principle tables")
    p.add_argument("names", nargs="*", metavar="TABLE", help=", ".join(TABLE_BUILDERS))
    p.add_argument("--trials", type=int)
    p.set_defaults(handler=cmd_tables)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = get_settings().with_overrides(
            enumeration_cap=args.cap,
            cope_cap=args.cap,
            seed=args.seed,
            fuzz_trials=getattr(args, "trials", None),
        )
        use_settings(settings)
        configure_logging(args.log_level)
        return args.handler(args)
    except ExtRankError as e:
        status(str(e), ok=False)
        return e.exit_code
    finally:
        use_settings(None)


if __name__ == "__main__":
    sys.exit(main())
