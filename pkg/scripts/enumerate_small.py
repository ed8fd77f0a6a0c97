#!/usr/bin/env python3
"""Enumerate labelled rank-3 linear spaces with bounded line size and degree; print per-n counts and overall maxima."""

import argparse

from linebound.linear_space import enumerate_linear_spaces


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=7, help="largest number of points")
    ap.add_argument("--max-line", type=int, default=3)
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument("--guard", type=int, default=9, help="refuse n above this")
    args = ap.parse_args(argv)

    s = enumerate_linear_spaces(args.n, args.max_line, args.max_degree, guard=args.guard)
    print(f"{'n':>3} {'spaces':>10}")
    for n, count in sorted(s.by_n.items()):
        print(f"{n:>3} {count:>10}")
    print(f"total {s.visited} spaces, max W2 = {s.max_w2}, max W2^e = {s.max_w2_excl}")


if __name__ == "__main__":
    main()
