"""Random and exhaustive study of integers whose host-base digits all lie
in {0, b-1}.

The support is the set of integers below b**k whose base-b expansion uses
only the digits 0 and b-1 (2**k members).  Drawing each digit position
independently equal to b-1 with probability rho makes the host digit sum
a scaled binomial with mean rho(b-1)k and variance rho(1-rho)k(b-1)^2,
while the digit sum in any multiplicatively independent base
concentrates on its typical value; tuning rho steers the ratio of the
two digit sums to a prescribed target tau.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .digits import DigitString, check_base, digit_sum, from_digits, to_digits
from .errors import ResourceLimitError
from .exponents import lower_exponents
from .rng import Xoshiro256StarStar

#: hard guard for exhaustive enumeration (2**24 ~ 16.8M members)
MAX_ENUM_LENGTH = 24


class NotInSupportError(ValueError):
    """Integer is not a member of the two-digit support."""


@dataclass(frozen=True)
class ConstructionLaw:
    """Product law on k digit positions over {0, b-1}, digit = b-1 with
    probability rho."""

    b: int
    k: int
    rho: float

    def __post_init__(self):
        check_base(self.b)
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        if not 0.0 < self.rho < 1.0:
            raise ValueError(f"rho must lie in the open interval (0,1), got {self.rho}")

    @property
    def n_max(self) -> int:
        """Largest member, b**k - 1."""
        return self.b**self.k - 1

    @property
    def mean_sb(self) -> float:
        return self.rho * (self.b - 1) * self.k

    @property
    def var_sb(self) -> float:
        return self.rho * (1.0 - self.rho) * self.k * (self.b - 1) ** 2


def make_law(b: int, k: int, rho: float) -> ConstructionLaw:
    return ConstructionLaw(b=b, k=k, rho=rho)


def member_ones(law: ConstructionLaw, m: int) -> int:
    """Number of digits equal to b-1 in the base-b expansion of a member;
    raises NotInSupportError otherwise."""
    if m < 0:
        raise NotInSupportError(f"{m} is negative")
    ds = to_digits(m, law.b)
    if len(ds.digits) > law.k:
        raise NotInSupportError(f"{m} needs more than k={law.k} digits in base {law.b}")
    top = law.b - 1
    ones = 0
    for d in ds.digits:
        if d == top:
            ones += 1
        elif d != 0:
            raise NotInSupportError(f"{m} has base-{law.b} digit {d} not in {{0, {top}}}")
    return ones


def mass(law: ConstructionLaw, m: int) -> float:
    """Probability rho^j (1-rho)^(k-j) of a member with j top digits."""
    j = member_ones(law, m)
    return law.rho**j * (1.0 - law.rho) ** (law.k - j)


def enumerate_members(law: ConstructionLaw) -> Iterator[tuple[int, float]]:
    """All 2**k members with their masses, walked in Gray-code order so
    each step flips a single digit position (O(1) memory)."""
    if law.k > MAX_ENUM_LENGTH:
        raise ResourceLimitError(
            f"enumeration refused for k={law.k} > {MAX_ENUM_LENGTH} (2^k blowup)"
        )
    return _walk_members(law)


def _walk_members(law: ConstructionLaw) -> Iterator[tuple[int, float]]:
    b, k, rho = law.b, law.k, law.rho
    place = [(b - 1) * b**i for i in range(k)]
    mass_by_ones = [rho**j * (1.0 - rho) ** (k - j) for j in range(k + 1)]
    m = 0
    ones = 0
    prev = 0
    yield 0, mass_by_ones[0]
    for idx in range(1, 1 << k):
        gray = idx ^ (idx >> 1)
        flips = gray ^ prev
        i = flips.bit_length() - 1
        if gray & flips:
            m += place[i]
            ones += 1
        else:
            m -= place[i]
            ones -= 1
        prev = gray
        yield m, mass_by_ones[ones]


def sample(law: ConstructionLaw, seed: int, count: int) -> list[DigitString]:
    """`count` fixed-width draws from the law, deterministic in `seed`.

    Digits come from comparing xoshiro256** words against
    floor(rho * 2^64); each output keeps exactly k positions (trailing
    zeros are not trimmed).
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rng = Xoshiro256StarStar(seed)
    threshold = math.floor(Fraction(law.rho) * (1 << 64))
    top = law.b - 1
    out = []
    for _ in range(count):
        words = rng.block(law.k)
        out.append(DigitString(law.b, tuple(top if w < threshold else 0 for w in words)))
    return out


def chebyshev_tail(law: ConstructionLaw, T: float) -> float:
    """Variance bound rho(1-rho)(b-1)^2 / T^2 on the probability that the
    host digit sum strays more than T sqrt(k) from its mean."""
    if T < 1.0:
        raise ValueError(f"T must be >= 1, got {T}")
    return law.rho * (1.0 - law.rho) * (law.b - 1) ** 2 / (T * T)


@dataclass(frozen=True)
class StrategyChoice:
    """Which base hosts the two-digit construction for a target ratio."""

    a: int
    b: int
    tau: float
    tau0: float
    host_base: int
    rho: float
    c: float
    Lambda: float
    dependent_bases: bool  # warning: log a / log b rational


def choose_strategy(a: int, b: int, tau: float) -> StrategyChoice:
    """Pick the host base and recentering parameter for the target tau.

    Host b with rho = tau/(2 tau0) covers tau <= tau0/2; host a with
    rho = tau0/(2 tau) covers tau >= 2 tau0; in the overlap the branch
    with the larger entropy exponent wins (ties to host a).
    """
    rep = lower_exponents(a, b, tau)
    dependent = not _multiplicatively_independent(a, b)
    if tau <= 0.5 * rep.tau0:
        host, rho, c = b, rep.rho1, rep.c1
    elif tau >= 2.0 * rep.tau0:
        host, rho, c = a, rep.rho2, rep.c2
    elif rep.c1 > rep.c2:
        host, rho, c = b, rep.rho1, rep.c1
    else:
        host, rho, c = a, rep.rho2, rep.c2
    return StrategyChoice(
        a=a,
        b=b,
        tau=tau,
        tau0=rep.tau0,
        host_base=host,
        rho=rho,
        c=c,
        Lambda=rep.Lambda,
        dependent_bases=dependent,
    )


def _multiplicatively_independent(a: int, b: int) -> bool:
    # deferred import: diophantine pulls mpmath, not needed otherwise
    from .diophantine import multiplicatively_independent

    return multiplicatively_independent(a, b)


@dataclass(frozen=True)
class RatioExperiment:
    """Sampled digit-sum ratios s_b/s_a over the chosen construction."""

    a: int
    b: int
    tau: float
    k: int
    host_base: int
    rho: float
    seed: int
    requested: int
    used: int  # zero members (all digits 0) are skipped
    s_a: tuple[int, ...]
    s_b: tuple[int, ...]
    ratios: tuple[float, ...]
    mean_ratio: float
    median_ratio: float
    median_abs_dev: float  # median of |ratio - tau|
    abs_dev_deciles: tuple[float, ...]  # 10%..90% quantiles of |ratio - tau|


def ratio_experiment(
    a: int, b: int, tau: float, k: int, samples: int, seed: int
) -> RatioExperiment:
    """Draw members of the chosen construction and compare s_b against
    tau * s_a sample by sample."""
    strat = choose_strategy(a, b, tau)
    host = strat.host_base
    other = b if host == a else a
    law = make_law(host, k, strat.rho)
    s_a: list[int] = []
    s_b: list[int] = []
    ratios: list[float] = []
    for ds in sample(law, seed, samples):
        s_host = sum(ds.digits)
        if s_host == 0:
            continue
        s_other = digit_sum(from_digits(ds), other)
        sa, sb = (s_host, s_other) if host == a else (s_other, s_host)
        s_a.append(sa)
        s_b.append(sb)
        ratios.append(sb / sa)
    if not ratios:
        raise ValueError("all samples were zero; increase k or samples")
    devs = np.abs(np.array(ratios) - tau)
    deciles = np.quantile(devs, np.linspace(0.1, 0.9, 9))
    return RatioExperiment(
        a=a,
        b=b,
        tau=tau,
        k=k,
        host_base=host,
        rho=strat.rho,
        seed=seed,
        requested=samples,
        used=len(ratios),
        s_a=tuple(s_a),
        s_b=tuple(s_b),
        ratios=tuple(ratios),
        mean_ratio=float(np.mean(ratios)),
        median_ratio=float(statistics.median(ratios)),
        median_abs_dev=float(np.median(devs)),
        abs_dev_deciles=tuple(float(q) for q in deciles),
    )
