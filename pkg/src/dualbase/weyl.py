"""Exponential-sum diagnostics with exact integer phase arithmetic.

The central object is the shift-averaged sum
sigma_h(m, n) = (1/n) sum_{nu=1..n} e(h m / a^nu): its smallness
certifies that the fractional parts <m / a^nu> equidistribute, which is
what forces the base-a digits of m to be balanced.  All fractional parts
are reduced in big integers (h m mod a^nu) before a single float
division, never through floating exponentials: a^nu leaves double range
at tiny nu and exactness of the phases is the whole point.

The companion quantities: the harmonic majorant Delta_n controlling
interval-counting deviations, the pair sums S_h / products V_h entering
the second-moment bound, and the exact binomial tail inequality used to
bound exceptional digit patterns.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Union

from .construction import ConstructionLaw, enumerate_members

TWO_PI = 2.0 * math.pi

Rational = Union[int, float, Fraction]


def _phase(num_mod: int, den: int) -> complex:
    """e(num_mod/den) with 0 <= num_mod < den as exact ints."""
    return cmath.exp(complex(0.0, TWO_PI * (num_mod / den)))


def weyl_sum(m: int, a: int, n: int, h: int) -> complex:
    """Shift-averaged exponential sum (1/n) sum_{nu<=n} e(h m / a^nu)."""
    if n < 1 or h < 1:
        raise ValueError(f"need n >= 1 and h >= 1, got n={n}, h={h}")
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    hm = h * m
    acc = 0.0 + 0.0j
    apow = a
    for _ in range(n):
        acc += _phase(hm % apow, apow)
        apow *= a
    return acc / n


def delta_n(m: int, a: int, n: int, H: int) -> float:
    """Harmonic majorant 1/(H+1) + sum_{h<=H} |sigma_h(m,n)|/h."""
    if H < 1:
        raise ValueError(f"need H >= 1, got {H}")
    return 1.0 / (H + 1) + sum(abs(weyl_sum(m, a, n, h)) / h for h in range(1, H + 1))


def digit_frequency_deviation(
    m: int, a: int, n: int, interval: tuple[Rational, Rational]
) -> float:
    """|#{1<=nu<=n : <m/a^nu> in [alpha, beta)}/n - (beta-alpha)|.

    Membership is decided exactly: the fractional part is the rational
    (m mod a^nu)/a^nu, compared against the endpoints as Fractions.
    """
    alpha, beta = Fraction(interval[0]), Fraction(interval[1])
    if not 0 <= alpha < beta <= 1:
        raise ValueError(f"need 0 <= alpha < beta <= 1, got [{alpha}, {beta})")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    count = 0
    apow = a
    for _ in range(n):
        frac = Fraction(m % apow, apow)
        if alpha <= frac < beta:
            count += 1
        apow *= a
    return abs(count / n - float(beta - alpha))


def s_quadratic(h: int, mu: int, nu: int, a: int, b: int, k: int) -> float:
    """sum_{j=0..k} ||h (b-1) b^j (1/a^nu - 1/a^mu)||^2 with || .  || the
    distance to the nearest integer, each term reduced exactly.

    The index j runs inclusively up to k (k+1 terms).  When pairing with
    v_product over a law of length L, pass k = L - 1 so both range over
    the same digit positions and the exponential bound
    |V| <= exp(-8 rho (1-rho) S) holds factor by factor.
    """
    if min(h, mu, nu) < 1 or k < 0:
        raise ValueError("need h, mu, nu >= 1 and k >= 0")
    den = a ** (mu + nu)
    residue = (h * (b - 1) * (a**mu - a**nu)) % den
    total = 0.0
    for _ in range(k + 1):
        dist = min(residue, den - residue)
        total += (dist / den) ** 2
        residue = (residue * b) % den
    return total


def v_product(h: int, mu: int, nu: int, law: ConstructionLaw, a: int) -> complex:
    """prod_j {1 - rho + rho e(h (b-1) b^j (1/a^nu - 1/a^mu))} over the
    law's k digit positions (j = 0..k-1).

    Equals the expectation of e(h m (1/a^nu - 1/a^mu)) under the law,
    each digit position contributing one independent factor.
    """
    if min(h, mu, nu) < 1:
        raise ValueError("need h, mu, nu >= 1")
    b, rho = law.b, law.rho
    den = a ** (mu + nu)
    residue = (h * (b - 1) * (a**mu - a**nu)) % den
    acc = 1.0 + 0.0j
    base = 1.0 - rho
    for _ in range(law.k):
        acc *= base + rho * _phase(residue, den)
        residue = (residue * b) % den
    return acc


def expected_weyl_sq(law: ConstructionLaw, a: int, n: int, h: int) -> float:
    """E|sigma_h(., n)|^2 under the law: (1/n^2) sum_{mu,nu<=n} V_h(mu,nu).

    The double sum is Hermitian so the result is real; the imaginary
    residue is checked below 1e-12 before being discarded.
    """
    if n < 1 or h < 1:
        raise ValueError(f"need n >= 1 and h >= 1, got n={n}, h={h}")
    acc = 0.0 + 0.0j
    for mu in range(1, n + 1):
        for nu in range(1, n + 1):
            if mu == nu:
                acc += 1.0
            else:
                acc += v_product(h, mu, nu, law, a)
    acc /= n * n
    if abs(acc.imag) >= 1e-12:
        raise ArithmeticError(f"non-real pair sum, imaginary residue {acc.imag}")
    return min(max(acc.real, 0.0), 1.0)


def expected_weyl_sq_bruteforce(law: ConstructionLaw, a: int, n: int, h: int) -> float:
    """Oracle: sum_m mass(m) |sigma_h(m, n)|^2 by full enumeration."""
    return math.fsum(p * abs(weyl_sum(m, a, n, h)) ** 2 for m, p in enumerate_members(law))


def binomial_tail_bound(
    kappa: int, s: Rational, v: Rational, b: int
) -> tuple[int, Rational]:
    """Both sides of sum_{j<=s} C(kappa,j)(b-1)^(kappa-j) <= (b-1+v)^kappa v^(-s).

    The left side is an exact integer.  With v a Fraction and s an
    integer the right side is an exact Fraction too, so the comparison
    can be made with no rounding; otherwise it is a float.
    """
    if kappa < 0 or not 0 <= s <= kappa:
        raise ValueError(f"need 0 <= s <= kappa, got s={s}, kappa={kappa}")
    if not 0 < v <= 1:
        raise ValueError(f"need v in (0, 1], got {v}")
    if b < 2:
        raise ValueError(f"need b >= 2, got {b}")
    smax = math.floor(s)
    lhs = sum(math.comb(kappa, j) * (b - 1) ** (kappa - j) for j in range(smax + 1))
    if isinstance(v, Fraction) and isinstance(s, int):
        rhs = (b - 1 + v) ** kappa * v ** (-s)
    else:
        rhs = float(b - 1 + v) ** kappa * float(v) ** (-float(s))
    return lhs, rhs


def tail_parameter_choice(kappa: int, b: int) -> tuple[Fraction, Fraction]:
    """The tuned split s = kappa/(2b), v = (b-1)/(2b-1), under which the
    right side of the tail bound stays below b^kappa e^(-kappa/(7b))."""
    if b < 2 or kappa < 0:
        raise ValueError("need b >= 2 and kappa >= 0")
    return Fraction(kappa, 2 * b), Fraction(b - 1, 2 * b - 1)


def binary_pair_tail(kappa: int) -> int:
    """Exact 2^(kappa/2) sum_{j<=kappa/8} C(kappa/2, j), the base-2
    variant counting digit pairs; kappa must be even.  Bounded by
    2^(11 kappa/12) (compare twelfth powers for an exact check)."""
    if kappa < 0 or kappa % 2:
        raise ValueError(f"kappa must be even and >= 0, got {kappa}")
    half = kappa // 2
    smax = kappa // 8
    return (1 << half) * sum(math.comb(half, j) for j in range(smax + 1))
