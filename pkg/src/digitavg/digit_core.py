"""Bases, digits, the digit-stream contract and canonical expansions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DigitAvgError, InvalidBaseError, InvalidDigitError, ZeroExpansionError

MIN_BASE = 2
MAX_BASE = 36
DIGIT_ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyz"

# dtype of digit chunks; every base up to 36 fits
DIGIT_DTYPE = np.uint8


@dataclass(frozen=True, order=True)
class Base:
    value: int

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, (int, np.integer)):
            raise InvalidBaseError(f"base must be an integer, got {self.value!r}")
        if self.value < MIN_BASE:
            raise InvalidBaseError(f"base {self.value} is below the minimum {MIN_BASE}")
        if self.value > MAX_BASE:
            raise InvalidBaseError(f"base {self.value} exceeds the maximum {MAX_BASE}")
        object.__setattr__(self, "value", int(self.value))

    @property
    def max_digit(self) -> int:
        return self.value - 1

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)


def make_base(value) -> Base:
    if isinstance(value, Base):
        return value
    return Base(value)


@dataclass(frozen=True)
class Digit:
    value: int
    base: Base

    def __post_init__(self):
        if not 0 <= self.value <= self.base.max_digit:
            raise InvalidDigitError(f"digit {self.value} out of range for base {self.base}")

    def __int__(self):
        return self.value

    def __str__(self):
        return DIGIT_ALPHABET[self.value]


def render_digits(digits: Iterable[int]) -> str:
    """Text form: 0-9 then a-z, one character per digit, no separators."""
    return "".join(DIGIT_ALPHABET[int(d)] for d in digits)


def parse_digits(text: str, base) -> list[int]:
    base = make_base(base)
    out = []
    for i, ch in enumerate(text.lower()):
        d = DIGIT_ALPHABET.find(ch)
        if d < 0 or d >= base.value:
            raise InvalidDigitError(f"character {ch!r} at offset {i} is not a base-{base} digit")
        out.append(d)
    return out


def check_digits(digits: Sequence[int], base: Base) -> None:
    for i, d in enumerate(digits):
        if not 0 <= d < base.value:
            raise InvalidDigitError(f"digit {d} at index {i} out of range for base {base}")


def finite_value(digits: Sequence[int], base) -> Fraction:
    """Exact value of 0.d1 d2 ... dk in the given base."""
    b = int(make_base(base).value)
    num = 0
    for d in digits:
        num = num * b + int(d)
    return Fraction(num, b ** len(digits))


def periodic_value(prefix: Sequence[int], period: Sequence[int], base) -> Fraction:
    """Exact value of 0.prefix(period) via the geometric series."""
    b = make_base(base).value
    if not period:
        raise ValueError("period must be nonempty")
    head = finite_value(prefix, b)
    block = 0
    for d in period:
        block = block * b + int(d)
    tail = Fraction(block, b ** len(period) - 1)
    return head + tail / b ** len(prefix)


def canonicalize(digits: Sequence[int], base) -> tuple[list[int], list[int]]:
    """Rewrite a terminating expansion as its trailing-(b-1) twin.

    ``[1, 2, 5]`` in base 10 becomes ``([1, 2, 4], [9])``.
    """
    base = make_base(base)
    digits = [int(d) for d in digits]
    check_digits(digits, base)
    last = len(digits) - 1
    while last >= 0 and digits[last] == 0:
        last -= 1
    if last < 0:
        raise ZeroExpansionError("zero has no non-terminating expansion")
    prefix = digits[: last + 1]
    prefix[-1] -= 1
    return prefix, [base.max_digit]


class StreamExhaustedError(DigitAvgError):
    pass


class DigitStream:
    """Pull-based infinite stream of base-b digits.

    ``producer`` yields 1-D integer arrays (chunks of any length). The stream
    validates each chunk against the base and hands digits out either one at
    a time (iteration) or in bulk via :meth:`pull`. Single consumer; to
    restart, build a new stream from the same spec.
    """

    def __init__(self, base, producer: Iterator, label: str = ""):
        self.base = make_base(base)
        self.label = label
        self._producer = iter(producer)
        self._buf = np.empty(0, dtype=DIGIT_DTYPE)
        self._pos = 0
        self.position = 0  # digits handed out so far

    def __repr__(self):
        return f"DigitStream(base={self.base.value}, label={self.label!r}, position={self.position})"

    def _refill(self) -> None:
        try:
            chunk = next(self._producer)
        except StopIteration:
            raise StreamExhaustedError(
                f"producer for {self.label!r} terminated after {self.position} digits"
            ) from None
        chunk = np.asarray(chunk)
        if chunk.size and (chunk.min() < 0 or chunk.max() >= self.base.value):
            bad = int(chunk[(chunk < 0) | (chunk >= self.base.value)][0])
            raise InvalidDigitError(f"producer {self.label!r} emitted digit {bad} for base {self.base}")
        self._buf = chunk.astype(DIGIT_DTYPE, copy=False)
        self._pos = 0

    def pull(self, n: int) -> np.ndarray:
        """Return the next ``n`` digits as a uint8 array."""
        if n < 0:
            raise ValueError("n must be non-negative")
        parts = []
        need = n
        while need:
            avail = len(self._buf) - self._pos
            if avail == 0:
                self._refill()
                continue
            take = min(avail, need)
            parts.append(self._buf[self._pos : self._pos + take])
            self._pos += take
            self.position += take
            need -= take
        if not parts:
            return np.empty(0, dtype=DIGIT_DTYPE)
        if len(parts) == 1:
            return parts[0].copy()
        return np.concatenate(parts)

    def pull_available(self, max_n: int) -> np.ndarray:
        """Between 1 and ``max_n`` digits, taken from the current buffer only.

        Never drops digits on a producer failure, which makes it the right
        primitive for consumers that need exact partial results.
        """
        if max_n <= 0:
            return np.empty(0, dtype=DIGIT_DTYPE)
        while self._pos >= len(self._buf):
            self._refill()
        take = min(max_n, len(self._buf) - self._pos)
        out = self._buf[self._pos : self._pos + take]
        self._pos += take
        self.position += take
        return out

    def __iter__(self):
        return self

    def __next__(self) -> int:
        while self._pos >= len(self._buf):
            self._refill()
        d = int(self._buf[self._pos])
        self._pos += 1
        self.position += 1
        return d


def take_prefix(stream: DigitStream, n: int) -> list[int]:
    return [int(d) for d in stream.pull(n)]


def cycle_chunks(prefix: Sequence[int], period: Sequence[int], chunk_size: int = 1 << 16):
    """Chunk producer for an eventually periodic digit sequence."""
    if prefix:
        yield np.asarray(prefix, dtype=DIGIT_DTYPE)
    block = np.asarray(period, dtype=DIGIT_DTYPE)
    reps = max(1, chunk_size // len(block))
    tiled = np.tile(block, reps)
    while True:
        yield tiled


def constant_stream(digit: int, base=10) -> DigitStream:
    """Stream repeating one digit forever (digit 0 is rejected: it would denote zero)."""
    base = make_base(base)
    Digit(digit, base)
    if digit == 0:
        raise ZeroExpansionError("zero has no non-terminating expansion")
    return DigitStream(base, cycle_chunks([], [digit]), label=f"constant({digit})")


def stream_from_digits(prefix: Sequence[int], period: Sequence[int], base, label: str = "") -> DigitStream:
    base = make_base(base)
    check_digits(prefix, base)
    check_digits(period, base)
    if not period:
        raise ValueError("period must be nonempty")
    if all(d == 0 for d in period):
        raise ZeroExpansionError("a zero period denotes a terminating expansion; canonicalize first")
    return DigitStream(base, cycle_chunks(prefix, period), label=label or "periodic")
