"""Sums of b_n * 10**(-a_n) over a strictly increasing position sequence a_n."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..digit_core import DIGIT_DTYPE, DigitStream
from ..errors import SpecError

SPARSE_BASE = 10


@dataclass(frozen=True)
class Factorial:
    def term(self, n: int) -> int:
        return math.factorial(n)

    def limit_ratio(self) -> Fraction:
        return Fraction(0)

    def __str__(self):
        return "factorial"


@dataclass(frozen=True)
class Exponential:
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise SpecError(f"exponential family needs k >= 2, got {self.k}")

    def term(self, n: int) -> int:
        return self.k**n

    def limit_ratio(self) -> Fraction:
        return Fraction(0)

    def __str__(self):
        return f"exp:{self.k}"


@dataclass(frozen=True)
class Polynomial:
    c: int
    j: int

    def __post_init__(self):
        if self.c < 1 or self.j < 1:
            raise SpecError(f"polynomial family needs c >= 1 and j >= 1, got c={self.c}, j={self.j}")

    def term(self, n: int) -> int:
        return self.c * n**self.j

    def limit_ratio(self) -> Fraction:
        # n / (c n^j) -> 1/c when j = 1, else 0
        return Fraction(1, self.c) if self.j == 1 else Fraction(0)

    def __str__(self):
        return f"poly:{self.c}:{self.j}"


@dataclass(frozen=True)
class SparseSeriesSpec:
    """``family`` gives a_n; ``head`` optionally overrides the first terms.

    Coefficients cycle: b_n = coefficients[(n - 1) % len(coefficients)].
    """

    family: object = field(default_factory=Factorial)
    coefficients: tuple = (1,)
    head: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        object.__setattr__(self, "head", tuple(int(a) for a in self.head))
        if not self.coefficients:
            raise SpecError("coefficient list must be nonempty")
        for c in self.coefficients:
            if not 1 <= c <= 9:
                raise SpecError(f"coefficient {c} outside 1..9")
        prev = 0
        for a in self.head:
            if a <= prev:
                raise SpecError(f"positions must be strictly increasing positive integers; got {a} after {prev}")
            prev = a
        first_tail = self.family.term(len(self.head) + 1)
        if first_tail <= prev:
            raise SpecError(f"family tail starts at {first_tail}, not above last head position {prev}")

    def position(self, n: int) -> int:
        """a_n for n >= 1."""
        if n <= len(self.head):
            return self.head[n - 1]
        return self.family.term(n)

    def coefficient(self, n: int) -> int:
        return self.coefficients[(n - 1) % len(self.coefficients)]

    def first_index_at_least(self, pos: int) -> int:
        """Smallest n with a_n >= pos."""
        for i, a in enumerate(self.head):
            if a >= pos:
                return i + 1
        lo = len(self.head) + 1
        if self.family.term(lo) >= pos:
            return lo
        hi = lo + 1
        while self.family.term(hi) < pos:
            lo, hi = hi, 2 * hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.family.term(mid) >= pos:
                hi = mid
            else:
                lo = mid
        return hi

    def describe(self) -> str:
        parts = []
        if self.head:
            parts.append(",".join(map(str, self.head)) + "+")
        parts.append(str(self.family))
        return "".join(parts)


LIOUVILLE = SparseSeriesSpec(Factorial(), (1,))


def _chunks(spec: SparseSeriesSpec, start: int, chunk_size: int):
    n = spec.first_index_at_least(start)
    nxt = spec.position(n)
    lo = start
    while True:
        hi = lo + chunk_size
        out = np.zeros(chunk_size, dtype=DIGIT_DTYPE)
        while nxt < hi:
            out[nxt - lo] = spec.coefficient(n)
            n += 1
            nxt = spec.position(n)
        yield out
        lo = hi


def sparse_series(spec: SparseSeriesSpec = LIOUVILLE, start: int = 1, chunk_size: int = 1 << 16) -> DigitStream:
    """Digits of sum b_n 10^(-a_n), beginning at 1-based position ``start``."""
    if start < 1:
        raise ValueError("start position is 1-based")
    return DigitStream(SPARSE_BASE, _chunks(spec, start, chunk_size), label=f"sparse[{spec.describe()}]")
