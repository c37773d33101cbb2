#!/usr/bin/env python3
"""h-compatibility experiment over several seeds and horizons."""
import argparse

from mtlkit.lab import hcompat_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--depth", type=int, default=8)
    ap.add_argument("--pairs", type=int, default=100)
    ap.add_argument("--seeds", type=int, default=5)
    args = ap.parse_args()
    for h in range(1, args.n + 1):
        for seed in range(args.seeds):
            report = hcompat_experiment(args.n, args.depth, h, h, args.pairs, seed)
            d = report.details
            print(f"h={h} seed={seed} status={report.status} pairs={d['pairs']} "
                  f"formulas={d['formulas']} classes={d['classes']} "
                  f"violations={d['violations']} {report.elapsed_ms:.0f}ms")


if __name__ == "__main__":
    main()
