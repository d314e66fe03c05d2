#!/usr/bin/env python3
"""Cross-check the fast solvers against the reference oracles.

Runs the seeded random campaign of the ``verify`` subcommand with
defaults sized like the acceptance suite; exits nonzero on any mismatch
and dumps the offending instance file next to the working directory.
"""

import argparse
import sys

from srdtree.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--max-n", type=int, default=8,
                    help="largest edge count to draw")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--problem", default=None,
                    choices=("sdipt", "sdiptc", "mcsdipt", "mcsdiptc"))
    ap.add_argument("--norm", default=None, choices=("linf", "bh"))
    args = ap.parse_args()

    argv = ["verify", "--trials", str(args.trials),
            "--max-n", str(args.max_n), "--seed", str(args.seed)]
    if args.problem:
        argv += ["--problem", args.problem]
    if args.norm:
        argv += ["--norm", args.norm]
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
