#!/usr/bin/env python3
"""Run the acceptance battery and print one line per criterion.

    python scripts/run_acceptance.py            # all criteria
    python scripts/run_acceptance.py 2 3 --jobs 4
"""
import argparse
import json
import sys

from mtlkit.lab.acceptance import run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("criteria", nargs="*", type=int, help="criterion numbers (default: all)")
    ap.add_argument("--jobs", type=int, default=None)
    ap.add_argument("--details", action="store_true", help="dump per-criterion details as JSON")
    args = ap.parse_args()
    failed = 0
    for result in run_all(set(args.criteria) or None, args.jobs):
        print(result.line(), flush=True)
        if args.details or not result.ok:
            print(json.dumps(result.detail, indent=1, default=str))
        failed += not result.passed
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
