"""Pinned 64-bit generator: xoshiro256** seeded through splitmix64.

Sampling sessions must reproduce bit-for-bit across platforms and Python
versions, so the generator is spelled out here instead of relying on the
stdlib Mersenne Twister.  All arithmetic is on masked Python ints.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


def splitmix64(seed: int):
    """Infinite stream of splitmix64 outputs from a 64-bit seed."""
    x = seed & _MASK
    while True:
        x = (x + 0x9E3779B97F4A7C15) & _MASK
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        yield z ^ (z >> 31)


class Xoshiro256StarStar:
    """xoshiro256** with the four state words drawn from splitmix64(seed)."""

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed: int):
        g = splitmix64(seed)
        self.s0 = next(g)
        self.s1 = next(g)
        self.s2 = next(g)
        self.s3 = next(g)

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        r = (s1 * 5) & _MASK
        r = ((r << 7) | (r >> 57)) & _MASK
        r = (r * 9) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return r

    def block(self, count: int) -> list[int]:
        """`count` successive outputs; same stream as repeated next_u64."""
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        out = []
        append = out.append
        for _ in range(count):
            r = (s1 * 5) & _MASK
            r = ((r << 7) | (r >> 57)) & _MASK
            append((r * 9) & _MASK)
            t = (s1 << 17) & _MASK
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = ((s3 << 45) | (s3 >> 19)) & _MASK
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return out
