#!/usr/bin/env python3
"""Concentration of the sampled digit-sum ratio as the construction
length grows: for each k, draw members and report how tightly s_b/s_a
clusters around the target tau.

Example:
    python scripts/ratio_convergence.py --a 2 --b 3 --tau 1 \
        --k 500 --k 1000 --k 2000 --k 5000 --samples 200 --seed 42
"""

import argparse
import sys

from dualbase import ratio_experiment


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=int, default=2)
    ap.add_argument("--b", type=int, default=3)
    ap.add_argument("--tau", type=float, default=1.0)
    ap.add_argument("--k", type=int, action="append", required=True)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    print("k,mean_ratio,median_ratio,median_abs_dev,dev_q10,dev_q50,dev_q90")
    for k in sorted(args.k):
        exp = ratio_experiment(args.a, args.b, args.tau, k, args.samples, args.seed)
        q = exp.abs_dev_deciles
        print(
            f"{k},{exp.mean_ratio:.10g},{exp.median_ratio:.10g},"
            f"{exp.median_abs_dev:.10g},{q[0]:.10g},{q[4]:.10g},{q[8]:.10g}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
