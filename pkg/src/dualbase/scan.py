"""Exact counting of integers by their digit sums in two bases.

The primitive is the joint histogram of (s_a(n), s_b(n)) over 1..x:
every ratio predicate is a function of that pair, so one scan answers
all (tau, eps) queries.  The range is partitioned into contiguous
chunks; each chunk yields a partial matrix and the partials are merged
in chunk order, so the result is bit-identical for any chunk count or
thread count.

Two engines compute chunks: a vectorized one (numpy digit extraction,
the default) and an incremental one built on RadixCounter, the
amortized-O(1) dual-counter loop; they must agree exactly.  Digit
dynamic programming over the representation of x provides the
independent per-base marginal oracle.
"""

from __future__ import annotations

import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .digits import check_base, digit_sum, to_digits
from .errors import ResourceLimitError

_CHECKPOINT_MAGIC = b"DBJH"
_CHECKPOINT_VERSION = 1

DEFAULT_CHUNK_SIZE = 1 << 22


@dataclass
class RadixCounter:
    """Little-endian digit register of a running integer in one base;
    digit_sum tracks the digit sequence at all times."""

    base: int
    digits: list[int]
    digit_sum: int

    @classmethod
    def from_value(cls, n: int, base: int) -> "RadixCounter":
        ds = to_digits(n, base)
        return cls(base=base, digits=list(ds.digits), digit_sum=sum(ds.digits))

    @property
    def value(self) -> int:
        v = 0
        for d in reversed(self.digits):
            v = v * self.base + d
        return v

    def increment(self) -> "RadixCounter":
        """Advance by one: trailing base-1 digits roll to zero, the next
        digit bumps; amortized O(1)."""
        top = self.base - 1
        d = self.digits
        i = 0
        while i < len(d) and d[i] == top:
            d[i] = 0
            i += 1
        if i == len(d):
            d.append(1)
        else:
            d[i] += 1
        self.digit_sum += 1 - i * top
        return self


def counter_increment(c: RadixCounter) -> RadixCounter:
    return c.increment()


@dataclass
class JointHistogram:
    """Exact counts of 1..x by the digit-sum pair (s_a, s_b)."""

    a: int
    b: int
    x: int
    counts: np.ndarray  # int64, shape (max s_a + 1, max s_b + 1)

    def total(self) -> int:
        return int(self.counts.sum())

    def marginal_a(self) -> list[int]:
        return [int(v) for v in self.counts.sum(axis=1)]

    def marginal_b(self) -> list[int]:
        return [int(v) for v in self.counts.sum(axis=0)]


def _max_digit_sum(x: int, base: int) -> int:
    return (base - 1) * len(to_digits(x, base).digits)


def _digit_sums_block(lo: int, hi: int, base: int) -> np.ndarray:
    """Digit sums of lo..hi inclusive (vectorized)."""
    ns = np.arange(lo, hi + 1, dtype=np.uint64)
    if base == 2:
        return np.bitwise_count(ns).astype(np.int64)
    s = np.zeros(ns.shape, dtype=np.int64)
    m = ns.copy()
    b = np.uint64(base)
    while m.any():
        s += (m % b).astype(np.int64)
        m //= b
    return s


def _chunk_bounds(x: int, start: int, n_chunks: Optional[int], chunk_size: int) -> list[tuple[int, int]]:
    lo = start + 1
    if lo > x:
        return []
    span = x - start
    if n_chunks is not None:
        if n_chunks < 1:
            raise ValueError(f"need n_chunks >= 1, got {n_chunks}")
        size = -(-span // n_chunks)
    else:
        size = chunk_size
    bounds = []
    while lo <= x:
        hi = min(lo + size - 1, x)
        bounds.append((lo, hi))
        lo = hi + 1
    return bounds


def _chunk_matrix_vectorized(a: int, b: int, lo: int, hi: int, rows: int, cols: int) -> np.ndarray:
    sa = _digit_sums_block(lo, hi, a)
    sb = _digit_sums_block(lo, hi, b)
    idx = sa * cols + sb
    return np.bincount(idx, minlength=rows * cols).reshape(rows, cols)


def _chunk_matrix_counter(a: int, b: int, lo: int, hi: int, rows: int, cols: int) -> np.ndarray:
    counts = [[0] * cols for _ in range(rows)]
    ca = RadixCounter.from_value(lo, a)
    cb = RadixCounter.from_value(lo, b)
    counts[ca.digit_sum][cb.digit_sum] += 1
    for _ in range(hi - lo):
        ca.increment()
        cb.increment()
        counts[ca.digit_sum][cb.digit_sum] += 1
    return np.array(counts, dtype=np.int64)


def joint_histogram(
    a: int,
    b: int,
    x: int,
    *,
    n_chunks: Optional[int] = None,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    engine: str = "vectorized",
    threads: int = 1,
    start: int = 0,
    initial: Optional[np.ndarray] = None,
    dims: Optional[tuple[int, int]] = None,
) -> JointHistogram:
    """Joint (s_a, s_b) histogram of the integers start+1 .. x.

    `start`/`initial` support resuming: the initial matrix (counts of
    1..start) is merged into the result.  Chunking and thread count
    never change any output bit.
    """
    check_base(a)
    check_base(b)
    if x < 1:
        raise ValueError(f"need x >= 1, got {x}")
    if start < 0 or start > x:
        raise ValueError(f"need 0 <= start <= x, got start={start}")
    if engine not in ("vectorized", "counter"):
        raise ValueError(f"unknown engine {engine!r}")
    rows = _max_digit_sum(x, a) + 1
    cols = _max_digit_sum(x, b) + 1
    if dims is not None:
        if dims[0] < rows or dims[1] < cols:
            raise ValueError(f"dims {dims} too small for x={x}")
        rows, cols = dims
    if rows * cols > (1 << 28):
        raise ResourceLimitError(f"histogram of {rows}x{cols} cells refused")
    total = np.zeros((rows, cols), dtype=np.int64)
    if initial is not None:
        total[: initial.shape[0], : initial.shape[1]] += initial
    bounds = _chunk_bounds(x, start, n_chunks, chunk_size)
    worker = _chunk_matrix_vectorized if engine == "vectorized" else _chunk_matrix_counter
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(
                pool.map(lambda lh: worker(a, b, lh[0], lh[1], rows, cols), bounds)
            )
        for mat in partials:  # merge in chunk order
            total += mat
    else:
        for lo, hi in bounds:
            total += worker(a, b, lo, hi, rows, cols)
    return JointHistogram(a=a, b=b, x=x, counts=total)


# ---------------------------------------------------------------------------
# digit dynamic programming (independent marginal oracle)


def digit_sum_counts(x: int, base: int) -> list[int]:
    """#{1 <= n <= x : digit sum of n in `base` equals s} for every s.

    Classic digit DP over the most-significant-first expansion of x:
    place a smaller digit at one position, the remaining positions are
    free, and free-position digit-sum counts come from an iterated
    convolution table.  Exact integers throughout; total equals x.
    """
    check_base(base)
    if x < 1:
        raise ValueError(f"need x >= 1, got {x}")
    digits_msf = list(reversed(to_digits(x, base).digits))
    width = len(digits_msf)
    smax = (base - 1) * width
    # ways[r][s]: r free digits summing to s
    ways = [[1]]
    for _ in range(width):
        prev = ways[-1]
        nxt = [0] * (len(prev) + base - 1)
        for s, c in enumerate(prev):
            if c:
                for d in range(base):
                    nxt[s + d] += c
        ways.append(nxt)
    counts = [0] * (smax + 1)
    prefix = 0
    for pos, dig in enumerate(digits_msf):
        free = width - pos - 1
        table = ways[free]
        for d in range(dig):
            base_sum = prefix + d
            for s, c in enumerate(table):
                if c:
                    counts[base_sum + s] += c
        prefix += dig
    counts[prefix] += 1  # n = x itself
    counts[0] -= 1  # exclude n = 0
    return counts


# ---------------------------------------------------------------------------
# predicates, series, fits


def predicate_counts(hist: JointHistogram, tau: float, eps: float) -> int:
    """#{n <= x : |s_b(n) - tau s_a(n)| <= eps s_a(n)} from the histogram."""
    if eps < 0:
        raise ValueError(f"need eps >= 0, got {eps}")
    rows, cols = hist.counts.shape
    sa = np.arange(rows, dtype=float)[:, None]
    sb = np.arange(cols, dtype=float)[None, :]
    mask = np.abs(sb - tau * sa) <= eps * sa
    return int(hist.counts[mask].sum())


def exponent_fit(series: Sequence[tuple[int, int]]) -> float:
    """Least-squares slope of log(count) against log(x)."""
    if len(series) < 2:
        raise ValueError("need at least two points")
    xs = np.array([p[0] for p in series], dtype=float)
    cs = np.array([p[1] for p in series], dtype=float)
    if (xs <= 0).any() or (cs <= 0).any():
        raise ValueError("x values and counts must be positive")
    return float(np.polyfit(np.log(xs), np.log(cs), 1)[0])


@dataclass
class ScanSeries:
    """Histogram snapshots at increasing checkpoints from a single scan."""

    a: int
    b: int
    checkpoints: list[int]
    histograms: list[JointHistogram] = field(default_factory=list)

    def counts(self, tau: float, eps: float) -> list[int]:
        return [predicate_counts(h, tau, eps) for h in self.histograms]

    def slope(self, tau: float, eps: float) -> float:
        return exponent_fit(list(zip(self.checkpoints, self.counts(tau, eps))))


def scan_series(
    a: int,
    b: int,
    checkpoints: Iterable[int],
    *,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    engine: str = "vectorized",
    threads: int = 1,
) -> ScanSeries:
    """One cumulative scan with exact snapshots at each checkpoint
    (chunks are aligned to checkpoint boundaries, nothing interpolated)."""
    cps = sorted(set(int(c) for c in checkpoints))
    if not cps or cps[0] < 1:
        raise ValueError("checkpoints must be positive integers")
    xmax = cps[-1]
    rows = _max_digit_sum(xmax, a) + 1
    cols = _max_digit_sum(xmax, b) + 1
    series = ScanSeries(a=a, b=b, checkpoints=cps)
    prev = 0
    acc: Optional[np.ndarray] = None
    for cp in cps:
        hist = joint_histogram(
            a,
            b,
            cp,
            chunk_size=chunk_size,
            engine=engine,
            threads=threads,
            start=prev,
            initial=acc,
            dims=(rows, cols),
        )
        series.histograms.append(hist)
        acc = hist.counts
        prev = cp
    return series


# ---------------------------------------------------------------------------
# checkpoint persistence

# Layout (little-endian):
#   magic   4 bytes  b"DBJH"
#   version u32
#   a       u32
#   b       u32
#   x       u64      scan position (counts cover 1..x)
#   rows    u32
#   cols    u32
#   counts  rows*cols i64
#   crc32   u32      of all preceding bytes


def save_checkpoint(hist: JointHistogram, path: str) -> None:
    rows, cols = hist.counts.shape
    head = _CHECKPOINT_MAGIC
    head += _CHECKPOINT_VERSION.to_bytes(4, "little")
    head += hist.a.to_bytes(4, "little")
    head += hist.b.to_bytes(4, "little")
    head += hist.x.to_bytes(8, "little")
    head += rows.to_bytes(4, "little")
    head += cols.to_bytes(4, "little")
    payload = np.ascontiguousarray(hist.counts, dtype="<i8").tobytes()
    crc = zlib.crc32(head + payload)
    with open(path, "wb") as fh:
        fh.write(head)
        fh.write(payload)
        fh.write(crc.to_bytes(4, "little"))


class CheckpointFormatError(ValueError):
    """Checkpoint file is malformed or fails its integrity checksum."""


def load_checkpoint(path: str) -> JointHistogram:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 32 or blob[:4] != _CHECKPOINT_MAGIC:
        raise CheckpointFormatError(f"{path}: not a scan checkpoint")
    if zlib.crc32(blob[:-4]) != int.from_bytes(blob[-4:], "little"):
        raise CheckpointFormatError(f"{path}: checksum mismatch")
    version = int.from_bytes(blob[4:8], "little")
    if version != _CHECKPOINT_VERSION:
        raise CheckpointFormatError(f"{path}: unsupported version {version}")
    a = int.from_bytes(blob[8:12], "little")
    b = int.from_bytes(blob[12:16], "little")
    x = int.from_bytes(blob[16:24], "little")
    rows = int.from_bytes(blob[24:28], "little")
    cols = int.from_bytes(blob[28:32], "little")
    expected = 32 + rows * cols * 8 + 4
    if len(blob) != expected:
        raise CheckpointFormatError(f"{path}: size {len(blob)} != expected {expected}")
    counts = np.frombuffer(blob[32:-4], dtype="<i8").reshape(rows, cols).astype(np.int64)
    return JointHistogram(a=a, b=b, x=x, counts=counts)


def extend_histogram(
    hist: JointHistogram,
    new_x: int,
    *,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    engine: str = "vectorized",
    threads: int = 1,
) -> JointHistogram:
    """Continue a scan from a loaded histogram up to new_x >= hist.x."""
    if new_x < hist.x:
        raise ValueError(f"new_x={new_x} is below the checkpoint position {hist.x}")
    if new_x == hist.x:
        return hist
    return joint_histogram(
        hist.a,
        hist.b,
        new_x,
        chunk_size=chunk_size,
        engine=engine,
        threads=threads,
        start=hist.x,
        initial=hist.counts,
    )
