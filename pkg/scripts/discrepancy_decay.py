#!/usr/bin/env python3
"""Decay of the star discrepancy of the orbit <nu log(a)/log(b)> against
the n^(-1/gamma) reference and the continued-fraction bound.

Example:
    python scripts/discrepancy_decay.py --a 2 --b 3 --gamma 5.117
"""

import argparse
import sys

from dualbase import (
    continued_fraction_theta,
    discrepancy_bound_cf,
    star_discrepancy,
    theta_multiples,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=int, default=2)
    ap.add_argument("--b", type=int, default=3)
    ap.add_argument("--gamma", type=float, default=5.117)
    ap.add_argument("--decades", type=int, default=5, help="n = 10^2 .. 10^(decades+1)")
    args = ap.parse_args()

    table = continued_fraction_theta(args.a, args.b)
    print("n,d_star,cf_bound,gamma_ref")
    for e in range(2, args.decades + 2):
        n = 10**e
        d = star_discrepancy(theta_multiples(args.a, args.b, n))
        bound = discrepancy_bound_cf(table, n)
        print(f"{n},{d:.8g},{bound:.8g},{n ** (-1.0 / args.gamma):.8g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
