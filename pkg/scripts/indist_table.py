#!/usr/bin/env python3
"""Tabulate small state formulas on the truncated D_n and ND_n roots."""
import argparse

from mtlkit.lab import indist_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--max-size", type=int, default=4)
    ap.add_argument("--only-diff", action="store_true")
    args = ap.parse_args()
    report = indist_experiment(args.n, args.depth, args.max_size)
    rows = report.details["disagreements"] if args.only_diff else report.details["rows"]
    print(f"{'size':>4}  {'D':>5}  {'ND':>5}  formula")
    for row in rows:
        print(f"{row['size']:>4}  {str(row['d']):>5}  {str(row['nd']):>5}  {row['formula']}")
    print(f"# {len(report.details['rows'])} formulas, "
          f"{len(report.details['disagreements'])} disagreements, "
          f"{len(report.details['below_size_n'])} below size n; {report.elapsed_ms:.0f} ms")


if __name__ == "__main__":
    main()
