"""Certified rational approximation of theta = log a / log b.

The ratio of logarithms drives everything quantitative about mixing two
bases: its continued-fraction convergents give the Dirichlet denominators
that bound the discrepancy of the orbit {<nu theta>}, and its effective
irrationality exponent controls how fast that discrepancy decays.

theta is enclosed in a dyadic interval with outward rounding (mpmath
interval arithmetic), converted to exact Fractions, and every partial
quotient is extracted by running the Euclidean step on both endpoints in
exact integer arithmetic; a quotient is emitted only when the two floors
agree, so every emitted convergent is certified.  Star discrepancy is
computed exactly by the sorted-points formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath
import numpy as np

Rational = Union[int, float, Fraction]

DEFAULT_PRECISION_BITS = 4096


# ---------------------------------------------------------------------------
# exact integer helpers


def integer_nthroot(n: int, e: int) -> tuple[int, bool]:
    """Floor of the e-th root of n >= 0 plus exactness flag, all-integer
    Newton iteration (no float anywhere, safe for huge n)."""
    if n < 0 or e < 1:
        raise ValueError(f"need n >= 0 and e >= 1, got n={n}, e={e}")
    if n in (0, 1) or e == 1:
        return n, True
    x = 1 << -(-n.bit_length() // e)  # 2^ceil(bits/e) >= root
    while True:
        y = ((e - 1) * x + n // x ** (e - 1)) // e
        if y >= x:
            break
        x = y
    return x, x**e == n


def primitive_power_base(n: int) -> tuple[int, int]:
    """Smallest g with g**e == n (e maximal); (n, 1) when n is not a
    perfect power."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    for e in range(n.bit_length(), 1, -1):
        root, exact = integer_nthroot(n, e)
        if exact and root >= 2:
            return root, e
    return n, 1


def multiplicatively_independent(a: int, b: int) -> bool:
    """True unless a and b are powers of a common integer (equivalently,
    log a / log b is irrational).  Exact integer root extraction, no
    floating comparison."""
    if a < 2 or b < 2:
        raise ValueError(f"need a, b >= 2, got a={a}, b={b}")
    return primitive_power_base(a)[0] != primitive_power_base(b)[0]


# ---------------------------------------------------------------------------
# certified enclosure of theta


@dataclass(frozen=True)
class CertifiedReal:
    """Dyadic interval [center - radius, center + radius], exact Fractions."""

    center: Fraction
    radius: Fraction
    precision_bits: int

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be non-negative")

    @property
    def lo(self) -> Fraction:
        return self.center - self.radius

    @property
    def hi(self) -> Fraction:
        return self.center + self.radius

    @property
    def is_exact(self) -> bool:
        return self.radius == 0


def _mpf_tuple_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    if man == 0:
        return Fraction(0)
    val = Fraction(int(man)) * Fraction(2) ** exp
    return -val if sign else val


def theta_interval(a: int, b: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> CertifiedReal:
    """Enclosure of log(a)/log(b) of width <= 2^(1-precision_bits).

    Multiplicatively dependent bases are detected exactly and produce a
    zero-width rational result.
    """
    if a < 2 or b < 2:
        raise ValueError(f"need a, b >= 2, got a={a}, b={b}")
    if precision_bits < 64:
        raise ValueError(f"need precision_bits >= 64, got {precision_bits}")
    ga, ea = primitive_power_base(a)
    gb, eb = primitive_power_base(b)
    if ga == gb:
        return CertifiedReal(Fraction(ea, eb), Fraction(0), precision_bits)
    bits = precision_bits + 16
    while True:
        ctx = mpmath.ctx_iv.MPIntervalContext()
        ctx.prec = bits
        enclosure = ctx.log(a) / ctx.log(b)
        lo_t, hi_t = enclosure._mpi_
        lo = _mpf_tuple_to_fraction(lo_t)
        hi = _mpf_tuple_to_fraction(hi_t)
        center = (lo + hi) / 2
        radius = (hi - lo) / 2
        if radius <= Fraction(2) ** (1 - precision_bits) * abs(center):
            return CertifiedReal(center, radius, precision_bits)
        bits *= 2


# ---------------------------------------------------------------------------
# certified continued fraction


@dataclass
class ConvergentTable:
    """Certified continued-fraction prefix with convergents and enclosed
    approximation errors |theta - p/q| (exact Fraction bounds)."""

    theta: CertifiedReal
    partial_quotients: list[int] = field(default_factory=list)
    convergents: list[tuple[int, int]] = field(default_factory=list)
    error_bounds: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    truncated: bool = False  # stopped by certification failure, not by max_terms
    rational: bool = False


def continued_fraction(x: CertifiedReal, max_terms: int = 64) -> ConvergentTable:
    """Partial quotients of x certified against its enclosure.

    Each step compares the integer floors of both interval endpoints and
    stops as soon as they disagree (the enclosure no longer pins the
    quotient down); the returned table then carries ``truncated=True``.
    """
    if max_terms < 1:
        raise ValueError(f"need max_terms >= 1, got {max_terms}")
    table = ConvergentTable(theta=x, rational=x.is_exact)
    lo, hi = x.lo, x.hi
    if lo < 0:
        raise ValueError("only non-negative reals are supported here")
    p1, q1 = lo.numerator, lo.denominator
    p2, q2 = hi.numerator, hi.denominator
    h_prev, h_cur = 0, 1  # convergent numerators (indices -2, -1)
    k_prev, k_cur = 1, 0  # convergent denominators
    while len(table.partial_quotients) < max_terms:
        a1 = p1 // q1
        a2 = p2 // q2
        if a1 != a2:
            table.truncated = True
            break
        h_prev, h_cur = h_cur, a1 * h_cur + h_prev
        k_prev, k_cur = k_cur, a1 * k_cur + k_prev
        table.partial_quotients.append(a1)
        table.convergents.append((h_cur, k_cur))
        table.error_bounds.append(_error_enclosure(x, h_cur, k_cur))
        r1 = p1 - a1 * q1
        r2 = p2 - a2 * q2
        if r1 == 0 and r2 == 0:
            break  # exactly rational, expansion complete
        if r1 == 0 or r2 == 0:
            table.truncated = True  # an endpoint sits on the quotient boundary
            break
        # reciprocal of (x - a) swaps the endpoints
        p1, q1, p2, q2 = q2, r2, q1, r1
    return table


def _error_enclosure(x: CertifiedReal, p: int, q: int) -> tuple[Fraction, Fraction]:
    approx = Fraction(p, q)
    d_lo = abs(x.lo - approx)
    d_hi = abs(x.hi - approx)
    if x.lo <= approx <= x.hi:
        return Fraction(0), max(d_lo, d_hi)
    return min(d_lo, d_hi), max(d_lo, d_hi)


def continued_fraction_theta(
    a: int,
    b: int,
    max_terms: int = 64,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    max_bits: int = 1 << 20,
) -> ConvergentTable:
    """Continued fraction of log(a)/log(b) with doubling-on-ambiguity:
    whenever certification fails before max_terms, the enclosure is
    recomputed at twice the precision.  Gives up (returning the partial
    table, truncated flag set) once max_bits is exceeded."""
    bits = precision_bits
    while True:
        table = continued_fraction(theta_interval(a, b, bits), max_terms)
        if not table.truncated or len(table.partial_quotients) >= max_terms:
            return table
        if table.rational:
            return table
        if bits >= max_bits:
            return table
        bits = min(2 * bits, max_bits)


class ApproximationNotFoundError(ValueError):
    """No convergent meets the Dirichlet constraints (cannot happen for
    1 <= R <= n with a long enough table)."""


def dirichlet_approx(table: ConvergentTable, n: int, R: Rational) -> tuple[int, int]:
    """Coprime (r, q) with q <= n/R and |theta - r/q| <= R/(q n).

    Picks the largest convergent denominator <= n/R and verifies the
    error bound from the certified enclosure, falling back to the
    smallest convergent satisfying it.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    R = Fraction(R)
    if not 1 <= R <= n:
        raise ValueError(f"need 1 <= R <= n, got R={R}, n={n}")
    limit = Fraction(n) / R
    eligible = [
        (p, q, hi)
        for (p, q), (_, hi) in zip(table.convergents, table.error_bounds)
        if q <= limit
    ]
    if eligible:
        p, q, err_hi = eligible[-1]
        if err_hi <= R / (q * n):
            return p, q
        for p, q, err_hi in eligible:
            if err_hi <= R / (q * n):
                return p, q
    raise ApproximationNotFoundError(
        f"no certified convergent with q <= {limit} and error <= R/(qn); "
        "extend the table or raise precision"
    )


# ---------------------------------------------------------------------------
# discrepancy


def star_discrepancy(points: Sequence[float]) -> float:
    """Exact star discrepancy D*_n = max_i max(i/n - x_(i), x_(i) - (i-1)/n)
    over the sorted points, O(n log n)."""
    xs = np.asarray(points, dtype=float)
    if xs.size == 0:
        raise ValueError("need at least one point")
    if ((xs < 0.0) | (xs >= 1.0)).any():
        raise ValueError("points must lie in [0, 1)")
    xs = np.sort(xs)
    n = xs.size
    up = np.arange(1, n + 1) / n - xs
    down = xs - np.arange(0, n) / n
    return float(max(up.max(), down.max()))


def discrepancy_bound_cf(table: ConvergentTable, n: int, c_d: float = 2.0) -> float:
    """min over certified convergents q of c_d (1/q + q/n), the
    convergent-denominator discrepancy bound for {<nu theta>}."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not table.convergents:
        raise ValueError("empty convergent table")
    return min(c_d * (1.0 / q + q / n) for _, q in table.convergents if q >= 1)


def theta_multiples(
    a: int, b: int, count: int, precision_bits: int = 256
) -> np.ndarray:
    """Fractional parts <nu * theta> for nu = 1..count as floats.

    Multiples are accumulated on a 2^precision_bits integer grid so the
    error per point stays below count * 2^(1-precision_bits) regardless
    of count; only the final division rounds to double.
    """
    if count < 1:
        raise ValueError(f"need count >= 1, got {count}")
    x = theta_interval(a, b, precision_bits)
    den = 1 << precision_bits
    step = (x.center.numerator * den) // x.center.denominator
    step %= den
    out = np.empty(count, dtype=float)
    acc = 0
    for i in range(count):
        acc += step
        if acc >= den:
            acc -= den
        out[i] = acc / den
    return out


# ---------------------------------------------------------------------------
# effective irrationality exponents


def _frac_log(fr: Fraction) -> float:
    return math.log(fr.numerator) - math.log(fr.denominator)


def effective_irrationality(
    table: ConvergentTable, q_max: int
) -> list[tuple[int, float]]:
    """(q, lambda_eff) for certified convergents with 2 <= q <= q_max,
    where lambda_eff = -log|theta - p/q| / log q evaluated at the
    certified minimum distance (outward rounding: the reported exponent
    is an upper bound)."""
    out = []
    for (_, q), (err_lo, _) in zip(table.convergents, table.error_bounds):
        if q < 2 or q > q_max or err_lo == 0:
            continue
        out.append((q, -_frac_log(err_lo) / math.log(q)))
    return out
