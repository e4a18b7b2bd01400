"""Streaming digit sums, running averages and per-digit frequency profiles.

Digit sums and digit counts are accumulated along two separate paths (a
plain sum of the chunk and a bincount), so the identity
``sum_d d * counts[d] == digit_sum`` is a genuine cross-check rather than a
tautology.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .digit_core import Base, DigitStream, make_base
from .errors import DigitAvgError, InvalidBaseError, PartialResultError, UndefinedAverageError

CHUNK = 1 << 20


@dataclass
class FrequencyProfile:
    base: Base
    counts: list = None
    n: int = 0

    def __post_init__(self):
        self.base = make_base(self.base)
        if self.counts is None:
            self.counts = [0] * self.base.value
        if len(self.counts) != self.base.value:
            raise ValueError(f"expected {self.base.value} counts, got {len(self.counts)}")

    def omega(self, d: int) -> Fraction:
        if self.n == 0:
            raise UndefinedAverageError("empty profile has no frequencies")
        return Fraction(self.counts[d], self.n)

    def omegas(self) -> list:
        return [self.omega(d) for d in range(self.base.value)]


@dataclass(frozen=True)
class Checkpoint:
    n: int
    digit_sum: int
    counts: tuple

    @property
    def average(self) -> Fraction:
        return Fraction(self.digit_sum, self.n)

    @property
    def omegas(self) -> tuple:
        return tuple(Fraction(c, self.n) for c in self.counts)

    def identity_holds(self) -> bool:
        return (
            sum(self.counts) == self.n
            and sum(d * c for d, c in enumerate(self.counts)) == self.digit_sum
        )


@dataclass
class RunningStats:
    n: int = 0
    digit_sum: int = 0
    checkpoints: list = field(default_factory=list)

    @property
    def average(self) -> Fraction:
        if self.n == 0:
            raise UndefinedAverageError("average of zero digits")
        return Fraction(self.digit_sum, self.n)


@dataclass
class DigitStats:
    """Frequency profile and running sums over one contiguous digit block."""

    profile: FrequencyProfile
    running: RunningStats

    @classmethod
    def empty(cls, base) -> "DigitStats":
        return cls(FrequencyProfile(make_base(base)), RunningStats())

    @property
    def base(self) -> Base:
        return self.profile.base

    @property
    def n(self) -> int:
        return self.running.n

    @property
    def checkpoints(self) -> list:
        return self.running.checkpoints

    def snapshot(self) -> Checkpoint:
        return Checkpoint(self.running.n, self.running.digit_sum, tuple(self.profile.counts))

    def add_digits(self, digits: np.ndarray) -> None:
        if digits.size == 0:
            return
        b = self.base.value
        counts = np.bincount(digits, minlength=b)
        if counts.size > b:
            raise DigitAvgError(f"digit {counts.size - 1} out of range for base {b}")
        for d in np.flatnonzero(counts):
            self.profile.counts[d] += int(counts[d])
        self.profile.n += int(digits.size)
        self.running.n += int(digits.size)
        self.running.digit_sum += int(digits.sum(dtype=np.int64))


def checkpoint_schedule(kind, prefix: int) -> list:
    """``pow10`` / ``pow2`` (plus the final n), or an explicit list of positions."""
    if prefix < 1:
        raise ValueError("prefix length must be >= 1")
    if isinstance(kind, str):
        if kind in ("pow10", "pow2"):
            step = 10 if kind == "pow10" else 2
            points = []
            p = 1
            while p <= prefix:
                points.append(p)
                p *= step
            if points[-1] != prefix:
                points.append(prefix)
            return points
        kind = [int(float(x)) for x in kind.split(",") if x.strip()]
    points = sorted(set(int(x) for x in kind))
    if points and (points[0] < 1 or points[-1] > prefix):
        raise ValueError(f"checkpoints must lie in [1, {prefix}]")
    return points


def _check_schedule(schedule: Sequence[int]) -> None:
    for a, b in zip(schedule, schedule[1:]):
        if b <= a:
            raise ValueError("checkpoint schedule must be strictly increasing")


def consume(
    stats: DigitStats,
    stream: DigitStream,
    up_to: int,
    schedule: Optional[Iterable[int]] = None,
) -> DigitStats:
    """Advance ``stats`` until it covers the first ``up_to`` digits of ``stream``.

    A checkpoint is recorded at every scheduled position crossed. Stream
    failures raise :class:`PartialResultError` carrying the stats so far.
    """
    if stream.base != stats.base:
        raise InvalidBaseError(f"stream base {stream.base} != stats base {stats.base}")
    if up_to < stats.n:
        raise ValueError(f"up_to={up_to} is behind current n={stats.n}")
    schedule = list(schedule) if schedule is not None else []
    _check_schedule(schedule)
    targets = [p for p in schedule if stats.n < p <= up_to]
    marks = set(targets)
    if not targets or targets[-1] != up_to:
        targets.append(up_to)
    for target in targets:
        while stats.n < target:
            try:
                digits = stream.pull_available(min(CHUNK, target - stats.n))
            except DigitAvgError as exc:
                raise PartialResultError(
                    f"stream {stream.label!r} failed after {stats.n} digits: {exc}", stats, exc
                ) from exc
            stats.add_digits(digits)
        if target in marks:
            stats.running.checkpoints.append(stats.snapshot())
    return stats


def weighted_average(profile: FrequencyProfile) -> Fraction:
    """sum_{d>=1} d * omega_d, computed from counts alone."""
    if profile.n == 0:
        raise UndefinedAverageError("weighted average of an empty profile")
    return Fraction(sum(d * c for d, c in enumerate(profile.counts)), profile.n)


def _shift(cp: Checkpoint, by: DigitStats) -> Checkpoint:
    return Checkpoint(
        cp.n + by.running.n,
        cp.digit_sum + by.running.digit_sum,
        tuple(a + b for a, b in zip(cp.counts, by.profile.counts)),
    )


def merge(s1: DigitStats, s2: DigitStats) -> DigitStats:
    """Stats of s1's block followed immediately by s2's block."""
    if s1.base != s2.base:
        raise InvalidBaseError(f"cannot merge base {s1.base} with base {s2.base}")
    counts = [a + b for a, b in zip(s1.profile.counts, s2.profile.counts)]
    n = s1.n + s2.n
    cps = list(s1.checkpoints) + [_shift(cp, s1) for cp in s2.checkpoints]
    return DigitStats(
        FrequencyProfile(s1.base, counts, n),
        RunningStats(n, s1.running.digit_sum + s2.running.digit_sum, cps),
    )


def chunked_consume(
    factory: Callable[[int], DigitStream],
    base,
    up_to: int,
    schedule: Optional[Iterable[int]] = None,
    chunks: int = 4,
    workers: int = 4,
) -> DigitStats:
    """Consume ``up_to`` digits as independent positional blocks, then merge.

    ``factory(start)`` must return a stream whose first digit is the one at
    1-based position ``start``.
    """
    schedule = list(schedule) if schedule is not None else []
    _check_schedule(schedule)
    chunks = max(1, min(chunks, up_to))
    bounds = [up_to * i // chunks for i in range(chunks + 1)]

    def job(i):
        lo, hi = bounds[i], bounds[i + 1]  # covers positions lo+1 .. hi
        local = [p - lo for p in schedule if lo < p <= hi]
        return consume(DigitStats.empty(base), factory(lo + 1), hi - lo, local)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        parts = list(pool.map(job, range(chunks)))
    total = DigitStats.empty(base)
    for part in parts:
        total = merge(total, part)
    return total


@dataclass(frozen=True)
class NormalityDeviation:
    max_dev: Fraction
    avg_dev: Fraction


def normality_deviation(profile: FrequencyProfile, running: RunningStats) -> NormalityDeviation:
    """Distance of the prefix from an exactly simply-normal one."""
    if profile.n == 0 or running.n == 0:
        raise UndefinedAverageError("deviation of an empty prefix")
    b = profile.base.value
    uniform = Fraction(1, b)
    max_dev = max(abs(Fraction(c, profile.n) - uniform) for c in profile.counts)
    avg_dev = abs(Fraction(running.digit_sum, running.n) - Fraction(b - 1, 2))
    return NormalityDeviation(max_dev, avg_dev)
