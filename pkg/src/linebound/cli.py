"""Command-line entry point: ``linebound <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from . import checks
from .construction import DEFAULT_MATERIALIZE_THRESHOLD, ConstructionError, build_m_q_t, find_counterexample
from .gf import FieldError
from .geometry import DEFAULT_MAX_POINTS, GeometryError
from .linear_space import DEFAULT_MAX_ENUM_POINTS
from .partition_search import profile_tuples


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--materialize-threshold", type=int, default=DEFAULT_MATERIALIZE_THRESHOLD,
                        help="build M(q,t) explicitly when q is at most this")
    common.add_argument("--max-enum-points", type=int, default=DEFAULT_MAX_ENUM_POINTS)

    ap = argparse.ArgumentParser(prog="linebound", description="Line-count checks for U(2,q+2)-minor-free matroids.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("target", choices=["all", "k6", "lemma5", "bounds"])
    v.add_argument("--q", type=int, choices=[2, 3, 4, 5], help="field order for 'bounds'")
    v.add_argument("--tuple", type=int, dest="tuple_index", help="rerun one profile tuple of the search")
    v.add_argument("--search-report", help="write the partition-search report JSON here")

    c = sub.add_parser("construct", parents=[common], help="emit M(q,t) as linear-space JSON")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--out", help="output file (default stdout)")

    r = sub.add_parser("refute", parents=[common], help="emit a line-count witness for U(ell)")
    r.add_argument("--ell", type=int, required=True)

    g = sub.add_parser("pg", parents=[common], help="counts and identities for PG(r-1,q)")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    return ap


def _emit(report, as_json: bool):
    print(report.to_json() if as_json else report.text())
    return 0 if report.overall else 1


def _verify(args):
    if args.threads < 1:
        raise UsageError("--threads must be positive")
    sink = None
    if args.search_report:
        path = args.search_report

        def sink(outcome):
            with open(path, "w") as fh:
                json.dump(outcome.to_dict(), fh, indent=2)

    if args.target == "all":
        rep = checks.all_suite(args.threads, args.materialize_threshold, args.max_enum_points, sink)
    elif args.target == "k6":
        rep = checks.k6_suite()
    elif args.target == "lemma5":
        if args.tuple_index is not None and not 0 <= args.tuple_index < len(profile_tuples()):
            raise UsageError(f"--tuple must be in 0..{len(profile_tuples()) - 1}")
        rep = checks.lemma5_suite(args.threads, args.tuple_index, sink)
    else:
        if args.q is None:
            raise UsageError("'verify bounds' needs --q")
        rep = checks.bounds_suite(args.q, args.max_enum_points)
    return _emit(rep, args.json)


def _construct(args):
    try:
        ls, _ = build_m_q_t(args.q, args.t)
    except (ConstructionError, FieldError, GeometryError) as exc:
        raise UsageError(str(exc)) from exc
    text = ls.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _refute(args):
    try:
        w = find_counterexample(args.ell, args.materialize_threshold)
    except ConstructionError as exc:
        if args.ell < 7:
            raise UsageError(str(exc)) from exc
        print(json.dumps({"ell": args.ell, "error": str(exc)}))
        return 1
    print(json.dumps(w.to_dict()))
    return 0 if w.margin > 0 else 1


def _pg(args):
    if args.r < 2:
        raise UsageError("--r must be at least 2")
    from .geometry import qbinom1
    from .gf import is_prime_power

    if not is_prime_power(args.q):
        raise UsageError(f"{args.q} is not a prime power")
    if qbinom1(args.r, args.q) > DEFAULT_MAX_POINTS:
        raise UsageError(f"PG({args.r - 1},{args.q}) is too large to enumerate")
    return _emit(checks.pg_suite(args.q, args.r), args.json)


def main(argv=None) -> int:
    ap = _parser()
    args = ap.parse_args(argv)
    handler = {"verify": _verify, "construct": _construct, "refute": _refute, "pg": _pg}[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        ap.error(str(exc))  # exits with status 2


if __name__ == "__main__":
    sys.exit(main())
