"""Bundled oracle cross-checks behind the `verify` CLI subcommand.

Each check pits a production code path against an independent exact
oracle (full enumeration, brute-force discrepancy, digit DP, naive
rescans, closed forms); CI and reviewers get all of them from one entry
point.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import construction, digits, diophantine, exponents, scan, weyl


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check(results: list[CheckResult], name: str, passed: bool, detail: str = "") -> None:
    results.append(CheckResult(name=name, passed=bool(passed), detail=detail))


def run_checks(fast: bool = False) -> list[CheckResult]:
    out: list[CheckResult] = []
    rnd = random.Random(20260810)

    # --- enumeration: masses, moments, binomial layer probabilities
    k_enum = 8 if fast else 12
    for rho in (0.2, 0.5, 0.63):
        law = construction.make_law(3, k_enum, rho)
        members = list(construction.enumerate_members(law))
        total = math.fsum(p for _, p in members)
        mean = math.fsum(p * digits.digit_sum(m, 3) for m, p in members)
        var = math.fsum(p * (digits.digit_sum(m, 3) - law.mean_sb) ** 2 for m, p in members)
        _check(out, f"enumeration mass rho={rho}", abs(total - 1.0) < 1e-12,
               f"sum={total!r}")
        _check(out, f"enumeration moments rho={rho}",
               abs(mean - law.mean_sb) < 1e-10 and abs(var - law.var_sb) < 1e-10,
               f"mean={mean:.3g} var={var:.3g}")

    # --- exhaustive tail mass vs variance bound
    law = construction.make_law(3, 8 if fast else 12, 0.4)
    members = list(construction.enumerate_members(law))
    ok = True
    for T in (1.0, 2.0, 3.0):
        cut = T * math.sqrt(law.k)
        tail = math.fsum(
            p for m, p in members if abs(digits.digit_sum(m, 3) - law.mean_sb) > cut
        )
        ok = ok and tail <= construction.chebyshev_tail(law, T) + 1e-15
    _check(out, "variance tail bound vs exhaustive tails", ok)

    # --- pair products vs enumeration
    law = construction.make_law(3, 6 if fast else 10, 0.5)
    members = list(construction.enumerate_members(law))
    ok = True
    for (h, mu, nu) in ((1, 1, 2), (2, 3, 1), (3, 2, 4)):
        direct = sum(
            p * weyl._phase((h * m * (2**mu - 2**nu)) % 2 ** (mu + nu), 2 ** (mu + nu))
            for m, p in members
        )
        prod = weyl.v_product(h, mu, nu, law, 2)
        ok = ok and abs(direct - prod) < 1e-10
    _check(out, "pair product vs enumeration", ok)

    e_direct = weyl.expected_weyl_sq_bruteforce(law, 2, 4, 1)
    e_pairs = weyl.expected_weyl_sq(law, 2, 4, 1)
    _check(out, "mean square sum vs enumeration", abs(e_direct - e_pairs) < 1e-10,
           f"|diff|={abs(e_direct - e_pairs):.2e}")

    # --- star discrepancy vs quadratic brute force
    n_pts = 120 if fast else 400
    pts = [rnd.random() for _ in range(n_pts)]
    _check(out, "star discrepancy vs brute force",
           abs(diophantine.star_discrepancy(pts) - _brute_star(pts)) < 1e-14)

    # --- digit DP vs naive rescan
    x_dp = 2000 if fast else 10000
    ok = True
    for base in (2, 3, 7):
        dp = scan.digit_sum_counts(x_dp, base)
        naive = [0] * len(dp)
        for n in range(1, x_dp + 1):
            naive[digits.digit_sum(n, base)] += 1
        ok = ok and dp == naive
    _check(out, "digit DP vs naive counts", ok, f"x={x_dp}")

    # --- joint histogram marginals vs digit DP
    x_h = 10**5 if fast else 10**6
    hist = scan.joint_histogram(2, 3, x_h)
    ma, mb = hist.marginal_a(), hist.marginal_b()
    dpa, dpb = scan.digit_sum_counts(x_h, 2), scan.digit_sum_counts(x_h, 3)
    _check(out, "histogram marginals vs digit DP",
           ma[: len(dpa)] == dpa and mb[: len(dpb)] == dpb
           and sum(ma) == x_h, f"x={x_h}")

    # --- chunking determinism
    x_c = 10**5
    base_hist = scan.joint_histogram(2, 3, x_c, n_chunks=1)
    ok = all(
        (scan.joint_histogram(2, 3, x_c, n_chunks=nc).counts == base_hist.counts).all()
        for nc in (4, 16)
    )
    _check(out, "chunk-count determinism", ok, f"x={x_c}")

    # --- saddle-point roots vs closed forms
    ok = True
    for lam in (1.05, 1.1, 1.2, 1.25):
        ok = ok and abs(exponents.solve_v(lam, 2) - math.log(1.0 / (2.0 / lam - 1.0))) < 1e-10
        cf = exponents.closed_forms_23(lam)
        ok = ok and abs(exponents.solve_w(lam / exponents.tau0(2, 3), 3) - cf.w) < 1e-10
    _check(out, "saddle-point roots vs closed forms", ok)

    # --- continued fraction: determinant identity and precision doubling
    t1 = diophantine.continued_fraction_theta(2, 3, max_terms=30, precision_bits=256)
    t2 = diophantine.continued_fraction_theta(2, 3, max_terms=30, precision_bits=512)
    conv = t1.convergents
    det_ok = all(
        conv[i][0] * conv[i - 1][1] - conv[i - 1][0] * conv[i][1] in (1, -1)
        for i in range(1, len(conv))
    )
    _check(out, "continued fraction identities + stability",
           det_ok and t1.partial_quotients == t2.partial_quotients[: len(t1.partial_quotients)])

    return out


def _brute_star(points) -> float:
    """O(n^2) star discrepancy: scan every anchored interval endpoint."""
    xs = sorted(points)
    n = len(xs)
    best = 0.0
    for j, t in enumerate(xs):
        below = sum(1 for x in xs if x < t)
        best = max(best, abs(below / n - t), abs((j + 1) / n - t))
    return best
