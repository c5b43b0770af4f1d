"""Command-line entry point.

Exit status: 0 success, 1 theorem mismatch or rainbow solution found,
2 usage/validation error, 3 search budget refused.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from typing import Optional, Sequence

from . import bounds, search
from .core import ContractError, DomainError, Problem, RangeError, family_from_json_obj
from .rainbow import find_rainbow

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

CSV_COLUMNS = [
    "n", "m", "k", "mode", "search_optimum", "closed_form",
    "match", "maximizers_match", "elapsed_ms",
]

PRODUCT_NOTE = (
    "printed: exponents m-(r+1) and n-m+(r+1), which sum to n rather than k; "
    "corrected: second exponent k-m+(r+1), the value of the extremal family "
    "with m-(r+1) sets [q,n] and the rest [q+1,n]"
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _emit(obj, args) -> None:
    indent = 2 if getattr(args, "pretty", False) else None
    print(json.dumps(obj, indent=indent, sort_keys=False))


def _problem(args) -> Problem:
    return Problem(args.n, args.m, args.k)


def _read_family(path: str):
    if path == "-":
        return family_from_json_obj(json.load(sys.stdin))
    with open(path) as fh:
        return family_from_json_obj(json.load(fh))


def cmd_bound(args) -> int:
    P = _problem(args)
    out = {"n": P.n, "m": P.m, "k": P.k, "q": P.q, "r": P.r, "objective": args.objective}
    if args.objective == search.SUM:
        out["bound"] = bounds.sum_bound(P)
    else:
        out["interpretation"] = args.interpretation
        out["bound"] = bounds.product_bound(P, args.interpretation)
        out["note"] = PRODUCT_NOTE
    _emit(out, args)
    return EXIT_OK


def _parse_class(args) -> bounds.ExtremalClass:
    if args.cls == "suffix":
        if not args.thresholds:
            raise DomainError("--class suffix needs --thresholds t1,..,tm")
        try:
            ts = tuple(int(t) for t in args.thresholds.split(","))
        except ValueError:
            raise DomainError(f"bad --thresholds {args.thresholds!r}") from None
        return bounds.SuffixIntervals(ts)
    if args.thresholds:
        raise DomainError("--thresholds only applies to --class suffix")
    return {
        "special": bounds.SpecialEven,
        "odd": bounds.OddsAll,
        "trivial": bounds.TrivialWithEmpty,
    }[args.cls]()


def cmd_construct(args) -> int:
    P = _problem(args)
    F = bounds.construct_extremal(P, _parse_class(args))
    _emit(F.to_json_obj(), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    F = _read_family(args.family)
    if args.m is not None and args.m != F.problem.m:
        obj = F.to_json_obj()
        obj["m"] = args.m
        F = family_from_json_obj(obj)
    w = find_rainbow(F)
    out = {"rainbow_free": w is None}
    if w is not None:
        out["witness"] = w.to_json_obj()
    _emit(out, args)
    return EXIT_OK if w is None else EXIT_MISMATCH


def cmd_classify(args) -> int:
    F = _read_family(args.family)
    _emit([c.to_json_obj() for c in bounds.classify(F)], args)
    return EXIT_OK


def cmd_search(args) -> int:
    report = search.search_max(
        _problem(args),
        objective=args.objective,
        mode=args.mode,
        allow_empty=args.allow_empty,
        enumerate_all=args.enumerate_all,
        workers=args.workers,
        budget=args.budget,
        prune=not args.no_prune,
        assume_theorem=args.assume_theorem,
    )
    _emit(report.to_json_obj(include_timing=args.timing), args)
    return EXIT_OK


def cmd_check_theorem(args) -> int:
    if args.n_from > args.n_to:
        raise DomainError("--n-from must not exceed --n-to")
    rows = search.check_theorem(
        args.m, args.k, range(args.n_from, args.n_to + 1),
        mode=args.mode, objective=args.objective, allow_empty=args.allow_empty,
        enumerate_all=args.enumerate_all, workers=args.workers, budget=args.budget,
    )
    if args.csv:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([getattr(row, col) for col in CSV_COLUMNS])
    else:
        for row in rows:
            obj = {col: getattr(row, col) for col in CSV_COLUMNS}
            obj["status"] = "match" if row.ok else "mismatch"
            if args.objective == search.PRODUCT:
                P = Problem(row.n, row.m, row.k)
                printed = bounds.product_bound(P, bounds.PRINTED)
                obj["closed_form_printed"] = printed
                obj["interpretation_matched"] = (
                    "corrected" if row.match else
                    "printed" if row.search_optimum == printed else "neither"
                )
            print(json.dumps(obj))
    return EXIT_OK if all(row.ok for row in rows) else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rainbow-schur", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def nmk(p, need_n=True):
        if need_n:
            p.add_argument("--n", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--k", type=int, required=True)

    def pretty(p):
        p.add_argument("--pretty", action="store_true", help="indented JSON")

    def runner(p):
        p.add_argument("--objective", choices=[search.SUM, search.PRODUCT], default=search.SUM)
        p.add_argument("--mode", choices=[search.FULL, search.NESTED], default=search.FULL)
        p.add_argument("--allow-empty", action="store_true")
        p.add_argument("--enumerate-all", action="store_true")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--budget", type=int, default=None,
                       help=f"max raw search-space size (default ${search.BUDGET_ENV} or {search.DEFAULT_BUDGET})")

    p = sub.add_parser("bound", help="closed-form optimum")
    nmk(p)
    p.add_argument("--objective", choices=[search.SUM, search.PRODUCT], default=search.SUM)
    p.add_argument("--interpretation", choices=[bounds.PRINTED, bounds.CORRECTED], default=bounds.CORRECTED)
    pretty(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("construct", help="build an extremal family")
    nmk(p)
    p.add_argument("--class", dest="cls", choices=["suffix", "special", "odd", "trivial"], required=True)
    p.add_argument("--thresholds", help="comma-separated t1,..,tm for --class suffix")
    pretty(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="look for a rainbow solution")
    p.add_argument("--family", required=True, help="family JSON file, '-' for stdin")
    p.add_argument("--m", type=int, help="override the file's m")
    pretty(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="name the extremal classes a family belongs to")
    p.add_argument("--family", required=True, help="family JSON file, '-' for stdin")
    pretty(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("search", help="exhaustive optimum")
    nmk(p)
    runner(p)
    p.add_argument("--no-prune", action="store_true", help="visit every family")
    p.add_argument("--assume-theorem", action="store_true",
                   help="start pruning from the closed-form value (not a verification)")
    p.add_argument("--timing", action="store_true", help="include elapsed_s in the report")
    pretty(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("check-theorem", help="compare search optima with closed forms over a range of n")
    nmk(p, need_n=False)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    runner(p)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_check_theorem)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except search.BudgetExceeded as exc:
        print(json.dumps({"error": "budget", "required": exc.required, "budget": exc.budget}),
              file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, RangeError, ContractError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
