#!/usr/bin/env python3
"""Time all eight solvers on growing random trees and emit the CSV.

The default sizes and repetition count reproduce the scaling table used by
the acceptance suite; pass --out to keep the CSV next to your notes.
"""

import argparse
import sys
from argparse import Namespace

from srdtree.cli import bench_cmd


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="1000,5000,10000,30000,50000",
                    help="comma separated node counts")
    ap.add_argument("--reps", type=int, default=5,
                    help="instances per size")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None,
                    help="write the CSV here instead of stdout")
    args = ap.parse_args()

    ns = Namespace(sizes=args.sizes, reps=args.reps, seed=args.seed)
    if args.out is None:
        return bench_cmd(ns)
    with open(args.out, "w", encoding="utf-8") as fh:
        rc = bench_cmd(ns, out=fh)
    print(f"wrote {args.out}")
    return rc


if __name__ == "__main__":
    sys.exit(main())
