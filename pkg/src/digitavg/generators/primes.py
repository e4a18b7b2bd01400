"""Segmented sieve of Eratosthenes, prime counting and the prime-indicator stream."""

from __future__ import annotations

import math

import numpy as np

from ..digit_core import DIGIT_DTYPE, DigitStream, make_base

DEFAULT_SEGMENT = 1 << 20


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


class SegmentedSieve:
    """Yields primality flags for consecutive windows [lo, lo + size).

    Base primes are extended on demand, so memory stays O(segment + sqrt(hi)).
    """

    def __init__(self, start: int = 0, segment_size: int = DEFAULT_SEGMENT):
        if segment_size < 1:
            raise ValueError("segment size must be positive")
        self.lo = max(0, start)
        self.segment_size = segment_size
        self._base_limit = 0
        self._base = np.empty(0, dtype=np.int64)

    def _ensure_base(self, hi: int) -> None:
        need = math.isqrt(hi - 1) + 1
        if need > self._base_limit:
            self._base_limit = max(need, 2 * self._base_limit)
            self._base = simple_sieve(self._base_limit)

    def segment(self, lo: int, hi: int) -> np.ndarray:
        """Boolean flags for lo <= n < hi."""
        flags = np.ones(hi - lo, dtype=bool)
        if hi <= lo:
            return flags
        self._ensure_base(hi)
        if lo < 2:
            flags[: 2 - lo] = False
        for p in self._base:
            p = int(p)
            pp = p * p
            if pp >= hi:
                break
            first = max(pp, -(-lo // p) * p)
            flags[first - lo :: p] = False
        return flags

    def __iter__(self):
        while True:
            hi = self.lo + self.segment_size
            flags = self.segment(self.lo, hi)
            yield self.lo, flags
            self.lo = hi


def pi_count(n: int, segment_size: int = DEFAULT_SEGMENT) -> int:
    """Number of primes <= n."""
    if n < 2:
        return 0
    sieve = SegmentedSieve(0, segment_size)
    total = 0
    lo = 0
    while lo <= n:
        hi = min(lo + segment_size, n + 1)
        total += int(np.count_nonzero(sieve.segment(lo, hi)))
        lo = hi
    return total


def _indicator_chunks(start: int, segment_size: int):
    for _, flags in SegmentedSieve(start, segment_size):
        yield flags.view(np.uint8).astype(DIGIT_DTYPE, copy=False)


def prime_indicator(start: int = 1, segment_size: int = DEFAULT_SEGMENT, base=10) -> DigitStream:
    """Stream whose digit at 1-based position n is 1 iff n is prime."""
    if start < 1:
        raise ValueError("start position is 1-based")
    return DigitStream(make_base(base), _indicator_chunks(start, segment_size), label="prime_indicator")
