#!/usr/bin/env python3
"""Tabulate the M(q,t) witness against the conjectured bound for a range of ell, as CSV."""

import argparse
import csv
import sys

from linebound.construction import DEFAULT_MATERIALIZE_THRESHOLD, find_counterexample


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=int, default=7)
    ap.add_argument("--hi", type=int, default=500)
    ap.add_argument("--materialize-threshold", type=int, default=DEFAULT_MATERIALIZE_THRESHOLD)
    args = ap.parse_args(argv)

    w = csv.writer(sys.stdout)
    w.writerow(["ell", "q", "t", "w2", "bound", "margin", "explicit"])
    worst = None
    for ell in range(args.lo, args.hi + 1):
        r = find_counterexample(ell, args.materialize_threshold)
        w.writerow([r.ell, r.q, r.t, r.w2, r.bound, r.margin, int(r.explicit)])
        if worst is None or r.margin < worst.margin:
            worst = r
    if worst is not None:
        print(f"smallest margin {worst.margin} at ell={worst.ell}", file=sys.stderr)
    return 0 if worst is None or worst.margin > 0 else 1


if __name__ == "__main__":
    sys.exit(main())
