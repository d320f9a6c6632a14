"""Exact digit arithmetic in integer bases 2..64.

Naturals are plain Python ints (arbitrary precision, >= 0).  A
DigitString pairs a base with a little-endian digit sequence, so
``digits[i]`` is the coefficient of ``base**i``; that convention makes
carry propagation and per-position frequency counts index-aligned with
exponents.  Radix conversion switches to divide-and-conquer splitting at
``base**(width//2)`` above a threshold, which keeps numbers with ~1e5
digits practical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

MIN_BASE = 2
MAX_BASE = 64

#: below this many digits plain repeated division beats splitting
DC_THRESHOLD = 512

_WORD = 1 << 64
_POP16 = bytes(bin(i).count("1") for i in range(1 << 16))


class InvalidBaseError(ValueError):
    """Base outside the supported range 2..64."""


class InvalidDigitError(ValueError):
    """Digit outside [0, base)."""


def check_base(base: int) -> None:
    if not isinstance(base, int) or isinstance(base, bool) or not MIN_BASE <= base <= MAX_BASE:
        raise InvalidBaseError(
            f"base must be an integer in [{MIN_BASE}, {MAX_BASE}], got {base!r}"
        )


@dataclass(frozen=True)
class DigitString:
    """Little-endian digits of a non-negative integer in one base.

    Canonical strings carry no trailing zeros (zero is the empty
    string).  Fixed-width strings, e.g. sampler output padded to a
    prescribed number of positions, may keep trailing zeros; value and
    digit sum are unaffected.
    """

    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        check_base(self.base)
        b = self.base
        for d in self.digits:
            if not isinstance(d, int) or not 0 <= d < b:
                raise InvalidDigitError(f"digit {d!r} out of range for base {b}")

    @property
    def is_canonical(self) -> bool:
        return not self.digits or self.digits[-1] != 0

    def canonical(self) -> "DigitString":
        """Copy with trailing zeros removed."""
        ds = self.digits
        n = len(ds)
        while n and ds[n - 1] == 0:
            n -= 1
        return self if n == len(ds) else DigitString(self.base, ds[:n])

    def digit_sum(self) -> int:
        return sum(self.digits)

    def __int__(self) -> int:
        return from_digits(self)


@lru_cache(maxsize=None)
def _base_power(base: int, e: int) -> int:
    return base**e


def _digits_of(n: int, base: int) -> list[int]:
    """Little-endian digit list of n, canonical (no trailing zeros)."""
    if n == 0:
        return []
    if base == 2:
        return [int(c) for c in bin(n)[:1:-1]]
    # overestimate the width, split, trim
    width = int(n.bit_length() / math.log2(base)) + 2
    out = _split_digits(n, base, width)
    while out and out[-1] == 0:
        out.pop()
    return out


def _split_digits(n: int, base: int, width: int) -> list[int]:
    """Exactly `width` little-endian digits of n (requires n < base**width)."""
    if width <= DC_THRESHOLD:
        out = []
        for _ in range(width):
            n, d = divmod(n, base)
            out.append(d)
        return out
    half = width >> 1
    hi, lo = divmod(n, _base_power(base, half))
    out = _split_digits(lo, base, half)
    out += _split_digits(hi, base, width - half)
    return out


def _eval_digits(digits, base: int) -> int:
    """Value of a little-endian digit slice."""
    k = len(digits)
    if k <= DC_THRESHOLD:
        v = 0
        for d in reversed(digits):
            v = v * base + d
        return v
    half = k >> 1
    return _eval_digits(digits[:half], base) + _base_power(base, half) * _eval_digits(
        digits[half:], base
    )


def to_digits(n: int, base: int) -> DigitString:
    """Canonical base-`base` digit string of n >= 0."""
    check_base(base)
    if n < 0:
        raise ValueError(f"expected a non-negative integer, got {n}")
    return DigitString(base, tuple(_digits_of(n, base)))


def from_digits(d: DigitString) -> int:
    """Integer value of a digit string (trailing zeros allowed)."""
    if not isinstance(d, DigitString):
        raise TypeError(f"expected DigitString, got {type(d).__name__}")
    return _eval_digits(d.digits, d.base)


def digit_sum_word(n: int, base: int) -> int:
    """Digit sum for machine-word sized n: 16-bit popcount table for base
    2, repeated division otherwise."""
    if base == 2:
        s = 0
        while n:
            s += _POP16[n & 0xFFFF]
            n >>= 16
        return s
    s = 0
    while n:
        n, r = divmod(n, base)
        s += r
    return s


def digit_sum_big(n: int, base: int) -> int:
    """Digit sum via the big-number route: native popcount for base 2,
    divide-and-conquer conversion otherwise."""
    if base == 2:
        return n.bit_count()
    return sum(_digits_of(n, base))


def digit_sum(n: int, base: int) -> int:
    """Sum of the base-`base` digits of n >= 0.

    Dispatches between the word-size and big-number paths; the two must
    agree (tested exhaustively on random words).
    """
    check_base(base)
    if n < 0:
        raise ValueError(f"expected a non-negative integer, got {n}")
    if n < _WORD:
        return digit_sum_word(n, base)
    return digit_sum_big(n, base)


def convert_base(d: DigitString, new_base: int) -> DigitString:
    """Value-preserving radix conversion."""
    check_base(new_base)
    if not isinstance(d, DigitString):
        raise TypeError(f"expected DigitString, got {type(d).__name__}")
    if new_base == d.base:
        return d
    return to_digits(from_digits(d), new_base)
