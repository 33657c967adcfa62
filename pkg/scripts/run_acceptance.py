#!/usr/bin/env python3
"""Run the full acceptance battery and print one pass/fail line per criterion.

Usage: python scripts/run_acceptance.py [--seed N] [--sweeps N]
"""

import argparse
import sys

from posetlab import corpus


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--sweeps", type=int, default=100,
                    help="random seeds per D application (criterion 7)")
    args = ap.parse_args()
    results = corpus.run_acceptance(seed=args.seed, sweeps=args.sweeps)
    for r in results:
        print(r.line())
    total = sum(r.seconds for r in results)
    print(f"{'OK' if all(r.passed for r in results) else 'FAILED'} "
          f"({total:.1f}s total)")
    sys.exit(0 if all(r.passed for r in results) else 1)


if __name__ == "__main__":
    main()
