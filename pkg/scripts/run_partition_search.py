#!/usr/bin/env python3
"""Run the 12-point partition search over all 68 profile tuples and dump the per-tuple log as JSON.

    python3 scripts/run_partition_search.py --threads 2 --out search.json
    python3 scripts/run_partition_search.py --tuple 0 --tuple 5 --no-reduce
"""

import argparse
import json
import sys
import time

from linebound.partition_search import profile_tuples, search_lemma5


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--tuple", type=int, action="append", dest="indices",
                    help="tuple index in profile_tuples() order; repeatable")
    ap.add_argument("--no-reduce", action="store_true",
                    help="try every lead mask, not one per stabilizer orbit (control run)")
    ap.add_argument("--out", help="write the JSON log here instead of stdout")
    args = ap.parse_args(argv)

    n = len(profile_tuples())
    start = time.perf_counter()

    def progress(res):
        parts = " ".join(res.profiles)
        print(f"[{time.perf_counter() - start:7.1f}s] tuple {res.index:2d}/{n} {parts}: "
              f"{res.representatives_tried} leads, {res.nodes} nodes, {len(res.solutions)} solutions",
              file=sys.stderr)

    out = search_lemma5(threads=args.threads, indices=args.indices,
                        reduce_orbits=not args.no_reduce, progress=progress)
    doc = json.dumps(out.to_dict(), indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(doc + "\n")
    else:
        print(doc)
    print(f"total solutions: {out.total_solutions} in {out.elapsed:.1f} s", file=sys.stderr)
    return 0 if out.total_solutions == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
