#!/usr/bin/env python3
"""Growth exponent of the digit-sum coincidence count.

Scans 1..max exactly, snapshots the joint (s_a, s_b) histogram at
decades, and fits the slope of log count against log x for the
predicate |s_b - tau s_a| <= eps s_a.

Example:
    python scripts/coincidence_slope.py --max 1e7 --threads 2
"""

import argparse
import sys
from decimal import Decimal

from dualbase import scan_series


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=int, default=2)
    ap.add_argument("--b", type=int, default=3)
    ap.add_argument("--tau", type=float, default=1.0)
    ap.add_argument("--eps", type=float, default=0.0)
    ap.add_argument("--max", type=lambda s: int(Decimal(s)), default=10**7)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    cps = []
    c = 1000
    while c < args.max:
        cps.append(c)
        c *= 10
    cps.append(args.max)
    series = scan_series(args.a, args.b, cps, threads=args.threads)
    counts = series.counts(args.tau, args.eps)
    print("x,count,proportion")
    for x, n in zip(series.checkpoints, counts):
        print(f"{x},{n},{n / x:.8g}")
    print(f"# fitted slope: {series.slope(args.tau, args.eps):.6f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
