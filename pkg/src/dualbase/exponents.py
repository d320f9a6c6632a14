"""Closed-form constants and scalar optimizations for the two-base
digit-sum problem.

For bases a, b and a target ratio tau, this module computes

* the balanced ratio tau0 = (b-1) log a / ((a-1) log b) at which the
  typical digit sums of the two bases already line up,
* the recentering parameters rho1 = tau/(2 tau0), rho2 = tau0/(2 tau)
  and the entropy exponents c1, c2, c0 governing how many integers the
  digit-recentering construction produces,
* the exponential-moment (Chernoff) exponents g, h with their
  saddle-point equations, and the resulting counting upper bound
  d0 = inf_lambda max(d1, d2) < 1,
* the independence-model exponent t from a Legendre transform of the
  uniform-digit cumulant.

Everything is double precision with bisection / golden-section searches;
a 50-digit recomputation of the headline constants is provided as a
cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import mpmath

ln = math.log

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _check_bases(a: int, b: int) -> None:
    if not isinstance(a, int) or not isinstance(b, int) or a < 2 or b < 2:
        raise ValueError(f"bases must be integers >= 2, got a={a!r}, b={b!r}")


def tau0(a: int, b: int) -> float:
    """Balanced digit-sum ratio (b-1) log a / ((a-1) log b)."""
    _check_bases(a, b)
    return (b - 1) * ln(a) / ((a - 1) * ln(b))


def tau_base(a: int) -> float:
    """Typical digit-sum density (a-1) / (2 log a) of base a."""
    _check_bases(a, a)
    return 0.5 * (a - 1) / ln(a)


@dataclass(frozen=True)
class RhoPair:
    rho1: float
    rho2: float
    rho1_valid: bool  # tau < 2*tau0, i.e. rho1 in (0,1)
    rho2_valid: bool  # tau > tau0/2, i.e. rho2 in (0,1)


def rhos(a: int, b: int, tau: float) -> RhoPair:
    """Both recentering parameters with their validity flags."""
    _check_bases(a, b)
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    t0 = tau0(a, b)
    return RhoPair(
        rho1=tau / (2.0 * t0),
        rho2=t0 / (2.0 * tau),
        rho1_valid=tau < 2.0 * t0,
        rho2_valid=tau > 0.5 * t0,
    )


def entropy_exponent(rho: float, base: int) -> float:
    """Binary-entropy exponent H(rho)/log(base) of the recentered law."""
    if not 0.0 < rho < 1.0:
        raise ValueError(f"rho must lie in (0,1), got {rho}")
    return (rho * ln(1.0 / rho) + (1.0 - rho) * ln(1.0 / (1.0 - rho))) / ln(base)


@dataclass(frozen=True)
class ExponentReport:
    """All lower-bound constants for one (a, b, tau)."""

    a: int
    b: int
    tau: float
    tau0: float
    rho1: float
    rho2: float
    c1: Optional[float]  # defined iff tau < 2*tau0
    c2: Optional[float]  # defined iff tau > tau0/2
    c0: float
    Lambda: float
    M: int
    sigma_max: float  # Lambda / (6 M^3 log M)
    sigma1_b: Optional[float]  # rho1(1-rho1)/(6 b^3 log b), host-b branch
    sigma1_a: Optional[float]  # rho2(1-rho2)/(6 a^3 log a), host-a branch


def lower_exponents(a: int, b: int, tau: float) -> ExponentReport:
    """Entropy exponents c1, c2, c0 and the variance constants Lambda,
    sigma for the digit-recentering construction."""
    pair = rhos(a, b, tau)
    t0 = tau0(a, b)
    c1 = entropy_exponent(pair.rho1, b) if pair.rho1_valid else None
    c2 = entropy_exponent(pair.rho2, a) if pair.rho2_valid else None
    if tau <= 0.5 * t0:
        c0 = c1
    elif tau >= 2.0 * t0:
        c0 = c2
    else:
        c0 = max(c1, c2)
    Lambda = pair.rho1 * (1.0 - pair.rho1) if tau <= t0 else pair.rho2 * (1.0 - pair.rho2)
    M = max(a, b)
    sigma_max = Lambda / (6.0 * M**3 * ln(M))
    sigma1_b = (
        pair.rho1 * (1.0 - pair.rho1) / (6.0 * b**3 * ln(b)) if pair.rho1_valid else None
    )
    sigma1_a = (
        pair.rho2 * (1.0 - pair.rho2) / (6.0 * a**3 * ln(a)) if pair.rho2_valid else None
    )
    return ExponentReport(
        a=a,
        b=b,
        tau=tau,
        tau0=t0,
        rho1=pair.rho1,
        rho2=pair.rho2,
        c1=c1,
        c2=c2,
        c0=c0,
        Lambda=Lambda,
        M=M,
        sigma_max=sigma_max,
        sigma1_b=sigma1_b,
        sigma1_a=sigma1_a,
    )


def _log_expm1(x: float) -> float:
    """log(e^x - 1) for x > 0, stable at both ends."""
    if x > 33.0:
        return x + math.log1p(-math.exp(-x))
    return math.log(math.expm1(x))


def g_exponent(v: float, a: int, lam: float) -> float:
    """Upper-tail exponent -lam(a-1)v/2 + log(e^{av}-1) - log(e^v-1)."""
    if v <= 0.0:
        raise ValueError(f"v must be positive, got {v}")
    return -0.5 * lam * (a - 1) * v + _log_expm1(a * v) - _log_expm1(v)


def h_exponent(w: float, b: int, mu: float) -> float:
    """Lower-tail exponent w mu (b-1)/2 + log(1-e^{-wb}) - log(1-e^{-w})."""
    if w <= 0.0:
        raise ValueError(f"w must be positive, got {w}")
    # log(1 - e^{-wx}) = -wx + log(e^{wx} - 1)
    return 0.5 * w * mu * (b - 1) - w * (b - 1) + _log_expm1(w * b) - _log_expm1(w)


def _upper_mean(v: float, a: int) -> float:
    """a e^{av}/(e^{av}-1) - e^v/(e^v-1); increasing from (a-1)/2 to a-1."""
    if v < 1e-6:
        return 0.5 * (a - 1) + v * (a * a - 1) / 12.0
    return a / (-math.expm1(-a * v)) - 1.0 / (-math.expm1(-v))


def _lower_mean(w: float, b: int) -> float:
    """1/(e^w-1) - b/(e^{wb}-1); decreasing from (b-1)/2 to 0."""
    if w < 1e-6:
        return 0.5 * (b - 1) - w * (b * b - 1) / 12.0
    return 1.0 / math.expm1(w) - b / math.expm1(w * b)


def _bisect(f, lo: float, hi: float, iterations: int = 200) -> float:
    """Root of f on [lo, hi] with f(lo) <= 0 <= f(hi)."""
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class NoSolutionError(ValueError):
    """Saddle-point equation has no root for these parameters."""


def solve_v(lam: float, a: int) -> float:
    """Root v of the upper-tail saddle-point equation
    lam(a-1)/2 = a e^{av}/(e^{av}-1) - e^v/(e^v-1); needs 1 < lam < 2."""
    _check_bases(a, a)
    if not 1.0 < lam < 2.0:
        raise NoSolutionError(f"upper-tail equation needs 1 < lambda < 2, got {lam}")
    target = 0.5 * lam * (a - 1)
    hi = 1.0
    while _upper_mean(hi, a) < target:
        hi *= 2.0
    return _bisect(lambda v: _upper_mean(v, a) - target, 0.0, hi)


def solve_w(mu: float, b: int) -> float:
    """Root w of the lower-tail saddle-point equation
    mu(b-1)/2 = 1/(e^w-1) - b/(e^{wb}-1); needs 0 < mu < 1."""
    _check_bases(b, b)
    if not 0.0 < mu < 1.0:
        raise NoSolutionError(f"lower-tail equation needs 0 < mu < 1, got {mu}")
    target = 0.5 * mu * (b - 1)
    hi = 1.0
    while _lower_mean(hi, b) > target:
        hi *= 2.0
    # _lower_mean is decreasing: negate for the ascending-bisection helper
    return _bisect(lambda w: target - _lower_mean(w, b), 0.0, hi)


class ExcludedParameterError(ValueError):
    """tau equals the balanced ratio tau0, where no upper bound < 1 exists."""


@dataclass(frozen=True)
class UpperBoundReport:
    """Counting upper-bound exponent d0(tau) and its optimizer.

    For tau > tau0 the computation runs on the mirrored instance
    (b, a, 1/tau) and `swapped` is set; the reported exponent applies to
    the original problem unchanged.

    For (a, b) = (2, 3) the published closed-form displays (which differ
    from the defining equations, see printed_forms_23) admit their own
    crossing; both candidates are reported.
    """

    a: int
    b: int
    tau: float
    swapped: bool
    tau_a: float
    tau_b: float
    domain: tuple[float, float]
    lambda_star: float
    mu_star: float
    v_star: float
    w_star: float
    d1: float
    d2: float
    d0: float
    lambda_star_printed: Optional[float] = None
    d0_printed: Optional[float] = None


def _d1(lam: float, a: int) -> float:
    return g_exponent(solve_v(lam, a), a, lam) / ln(a)


def _d2(lam: float, b: int, tau: float, t0: float) -> float:
    mu = lam * tau / t0
    return h_exponent(solve_w(mu, b), b, mu) / ln(b)


def _grid_crossing(f, lo: float, hi: float, cells: int = 512) -> Optional[float]:
    """Root of f located by sign change on a grid, then bisection.
    Returns None when no sign change is found."""
    xs = [lo + (hi - lo) * i / cells for i in range(cells + 1)]
    prev_x, prev_f = xs[0], f(xs[0])
    for x in xs[1:]:
        fx = f(x)
        if prev_f == 0.0:
            return prev_x
        if prev_f * fx < 0.0:
            if prev_f < 0.0:
                return _bisect(f, prev_x, x)
            return _bisect(lambda t: -f(t), prev_x, x)
        prev_x, prev_f = x, fx
    return None


def upper_exponent(a: int, b: int, tau: float) -> UpperBoundReport:
    """Optimized counting exponent d0(tau; a, b) < 1 for tau != tau0.

    d1(lambda) = g(v_lambda)/log a decreases and d2(lambda) =
    h(w_lambda)/log b increases over 1 < lambda < min(tau0/tau, 2), so
    the inf of max(d1, d2) sits at their crossing when one exists and at
    a domain endpoint otherwise.
    """
    _check_bases(a, b)
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    t0 = tau0(a, b)
    if tau == t0:
        raise ExcludedParameterError(f"tau = tau0(a, b) = {t0} is excluded")
    if tau > t0:
        inner = upper_exponent(b, a, 1.0 / tau)
        return UpperBoundReport(
            a=a,
            b=b,
            tau=tau,
            swapped=True,
            tau_a=tau_base(a),
            tau_b=tau_base(b),
            domain=inner.domain,
            lambda_star=inner.lambda_star,
            mu_star=inner.mu_star,
            v_star=inner.v_star,
            w_star=inner.w_star,
            d1=inner.d1,
            d2=inner.d2,
            d0=inner.d0,
            lambda_star_printed=inner.lambda_star_printed,
            d0_printed=inner.d0_printed,
        )

    right = min(t0 / tau, 2.0)
    eps = 1e-9 * (right - 1.0)
    lo, hi = 1.0 + eps, right - eps

    def gap(lam: float) -> float:
        return _d1(lam, a) - _d2(lam, b, tau, t0)

    if gap(lo) > 0.0 > gap(hi):
        lam_star = _bisect(lambda x: -gap(x), lo, hi)
    elif gap(lo) <= 0.0:
        # d2 dominates everywhere: max(d1, d2) = d2 increasing, inf at left
        lam_star = lo
    else:
        # d1 dominates everywhere: max(d1, d2) = d1 decreasing, inf at right
        lam_star = hi

    mu_star = lam_star * tau / t0
    v_star = solve_v(lam_star, a)
    w_star = solve_w(mu_star, b)
    d1 = g_exponent(v_star, a, lam_star) / ln(a)
    d2 = h_exponent(w_star, b, mu_star) / ln(b)

    lam_printed = d_printed = None
    if (a, b) == (2, 3):
        lam_printed = _grid_crossing(
            lambda lam: _d1(lam, a) - printed_forms_23(lam, tau).d2, lo, hi
        )
        if lam_printed is not None:
            d_printed = _d1(lam_printed, a)

    return UpperBoundReport(
        a=a,
        b=b,
        tau=tau,
        swapped=False,
        tau_a=tau_base(a),
        tau_b=tau_base(b),
        domain=(1.0, right),
        lambda_star=lam_star,
        mu_star=mu_star,
        v_star=v_star,
        w_star=w_star,
        d1=d1,
        d2=d2,
        d0=max(d1, d2),
        lambda_star_printed=lam_printed,
        d0_printed=d_printed,
    )


@dataclass(frozen=True)
class ClosedForm23:
    """Closed-form quantities at one lambda for (a, b, tau) = (2, 3, 1)."""

    v: float
    y: float  # e^w as the quadratic root (1 - mu + sqrt(D)) / (2 mu)
    w: float
    d1: float
    d2: float


def closed_forms_23(lam: float) -> ClosedForm23:
    """Closed forms for (a, b, tau) = (2, 3, 1): v from the a = 2
    logarithm, e^w from the b = 3 quadratic (D = 1 + 6 mu - 3 mu^2), d1
    from the explicit display and d2 = h(w)/log 3."""
    t0 = tau0(2, 3)
    if not 1.0 < lam < min(t0, 2.0):
        raise ValueError(f"lambda must lie in (1, {min(t0, 2.0)}), got {lam}")
    v = ln(1.0 / (2.0 / lam - 1.0))
    mu = lam / t0
    disc = 1.0 + 6.0 * mu - 3.0 * mu * mu
    y = (1.0 - mu + math.sqrt(disc)) / (2.0 * mu)
    w = ln(y)
    d1 = -lam / ln(4.0) * ln(1.0 / (2.0 / lam - 1.0)) + ln(2.0 / (2.0 - lam)) / ln(2.0)
    d2 = h_exponent(w, 3, mu) / ln(3.0)
    return ClosedForm23(v=v, y=y, w=w, d1=d1, d2=d2)


@dataclass(frozen=True)
class PrintedForm23:
    """The published display variants for (2, 3): w from
    log((sqrt(D)+mu-1)/6) and d2 with the alternating-sign logarithm.
    They differ from the defining equations (the quadratic root above is
    (1-mu+sqrt(D))/(2 mu) and the expansion of h gives 1+e^{-w}+e^{-2w});
    kept verbatim for comparison because their crossing with d1
    reproduces the published optimum."""

    w: float
    d2: float


def printed_forms_23(lam: float, tau: float = 1.0) -> PrintedForm23:
    t0 = tau0(2, 3)
    mu = lam * tau / t0
    disc = 1.0 + 6.0 * mu - 3.0 * mu * mu
    w = ln((math.sqrt(disc) + mu - 1.0) / 6.0)
    d2 = mu * w / ln(3.0) + ln(1.0 - math.exp(-w) + math.exp(-2.0 * w)) / ln(3.0)
    return PrintedForm23(w=w, d2=d2)


# ---------------------------------------------------------------------------
# independence-model exponent


def _digit_cumulant(t: float, c: int) -> float:
    """log of the moment generating function of a uniform digit on
    {0..c-1}: log((e^{tc}-1)/(c(e^t-1)))."""
    if t == 0.0:
        return 0.0
    if abs(t) < 1e-9:
        return t * (c - 1) / 2.0 + t * t * (c * c - 1) / 24.0
    if t > 0:
        return _log_expm1(t * c) - _log_expm1(t) - ln(c)
    return math.log(-math.expm1(t * c)) - math.log(-math.expm1(t)) - ln(c)


def _digit_mean(t: float, c: int) -> float:
    """Derivative of the cumulant: tilted mean, increasing in t."""
    if abs(t) < 1e-6:
        return 0.5 * (c - 1) + t * (c * c - 1) / 12.0
    return c / (-math.expm1(-t * c)) - 1.0 / (-math.expm1(-t))


def digit_rate(x: float, c: int) -> float:
    """Legendre transform of the uniform-digit cumulant at mean x in
    (0, c-1): the large-deviation cost of digit sums drifting to x per
    digit."""
    if not 0.0 < x < c - 1:
        raise ValueError(f"mean must lie in (0, {c - 1}), got {x}")
    lo, hi = -1.0, 1.0
    while _digit_mean(lo, c) > x:
        lo *= 2.0
    while _digit_mean(hi, c) < x:
        hi *= 2.0
    t = _bisect(lambda u: _digit_mean(u, c) - x, lo, hi)
    return t * x - _digit_cumulant(t, c)


def _density_exponent(theta: float, c: int) -> float:
    """F_c(theta) = 1 - I_c(theta log c)/log c: exponent of the count of
    n <= x with s_c(n) ~ theta log x."""
    return 1.0 - digit_rate(theta * ln(c), c) / ln(c)


def independence_heuristic(a: int, b: int) -> tuple[float, float]:
    """Exponent t of the coincidence count predicted by modelling the two
    digit expansions as independent.

    Counts n <= x with s_a(n) = s_b(n) = theta log x as
    x^(F_a(theta) + F_b(theta) - 1) and maximizes over theta by
    golden-section (the objective is concave).  Returns (t, theta_star).
    """
    _check_bases(a, b)
    lo = 1e-9
    hi = min((a - 1) / ln(a), (b - 1) / ln(b)) - 1e-9

    def objective(theta: float) -> float:
        return _density_exponent(theta, a) + _density_exponent(theta, b) - 1.0

    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = objective(x1), objective(x2)
    while hi - lo > 1e-12:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = objective(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = objective(x1)
    theta = 0.5 * (lo + hi)
    return objective(theta), theta


# ---------------------------------------------------------------------------
# high-precision cross-check


def lower_exponents_mp(a: int, b: int, tau: float, dps: int = 50) -> dict:
    """c0, Lambda, sigma_max recomputed with mpmath at `dps` digits;
    returned as floats for direct comparison with lower_exponents."""
    _check_bases(a, b)
    with mpmath.workdps(dps):
        mt = mpmath.mpf(tau)
        t0 = (b - 1) * mpmath.log(a) / ((a - 1) * mpmath.log(b))
        rho1 = mt / (2 * t0)
        rho2 = t0 / (2 * mt)

        def ent(rho, base):
            return (rho * mpmath.log(1 / rho) + (1 - rho) * mpmath.log(1 / (1 - rho))) / mpmath.log(base)

        c1 = ent(rho1, b) if rho1 < 1 else None
        c2 = ent(rho2, a) if rho2 < 1 else None
        if mt <= t0 / 2:
            c0 = c1
        elif mt >= 2 * t0:
            c0 = c2
        else:
            c0 = max(c1, c2)
        Lambda = rho1 * (1 - rho1) if mt <= t0 else rho2 * (1 - rho2)
        M = max(a, b)
        sigma_max = Lambda / (6 * M**3 * mpmath.log(M))
        return {
            "tau0": float(t0),
            "c0": float(c0),
            "Lambda": float(Lambda),
            "sigma_max": float(sigma_max),
        }
