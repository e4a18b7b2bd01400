"""Exact base-b expansions of rationals and their digit averages."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .digit_core import (
    DIGIT_DTYPE,
    Base,
    DigitStream,
    canonicalize,
    make_base,
    periodic_value,
    render_digits,
    stream_from_digits,
)
from .errors import ExactModeUnavailable, ZeroExpansionError

# remainder-map period detection keeps one dict entry per remainder
MAX_EXACT_DENOMINATOR = 10**7

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions, ``(p, q)`` pairs and ``"p/q"`` strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, tuple) and len(value) == 2:
        p, q = value
        if q == 0:
            raise ZeroDivisionError("denominator must be nonzero")
        return Fraction(int(p), int(q))
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if not m:
            raise ValueError(f"malformed rational {value!r}")
        q = int(m.group(2)) if m.group(2) is not None else 1
        if q == 0:
            raise ZeroDivisionError(f"zero denominator in {value!r}")
        return Fraction(int(m.group(1)), q)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def fractional_part(r) -> Fraction:
    r = abs(as_rational(r))
    return r - math.floor(r)


@dataclass(frozen=True)
class RationalExpansion:
    base: Base
    preperiod: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        if all(d == 0 for d in self.period):
            raise ValueError("a zero period is not canonical")

    def __str__(self):
        return format_expansion(self)

    def stream(self) -> DigitStream:
        return stream_from_digits(self.preperiod, self.period, self.base, label=str(self))


def format_expansion(e: RationalExpansion) -> str:
    return f"0.{render_digits(e.preperiod)}({render_digits(e.period)})_{e.base.value}"


def is_regular(r, base) -> bool:
    """True iff every prime factor of the reduced denominator divides the base."""
    b = make_base(base).value
    q = as_rational(r).denominator
    g = math.gcd(q, b)
    while g > 1:
        while q % g == 0:
            q //= g
        g = math.gcd(q, b)
    return q == 1


def expand(r, base) -> RationalExpansion:
    """Preperiod and minimal period of the fractional part of |r|.

    Terminating expansions come back in trailing-(b-1) form.
    """
    base = make_base(base)
    f = fractional_part(r)
    if f == 0:
        raise ZeroExpansionError(f"{as_rational(r)} has zero fractional part")
    p, q = f.numerator, f.denominator
    if q > MAX_EXACT_DENOMINATOR and not is_regular(f, base):
        raise ExactModeUnavailable(
            f"denominator {q} exceeds exact-mode limit {MAX_EXACT_DENOMINATOR}"
        )
    b = base.value
    seen = {}
    digits = []
    rem = p
    while rem and rem not in seen:
        seen[rem] = len(digits)
        d, rem = divmod(rem * b, q)
        digits.append(d)
    if rem == 0:
        pre, per = canonicalize(digits, base)
        return RationalExpansion(base, tuple(pre), tuple(per))
    start = seen[rem]
    return RationalExpansion(base, tuple(digits[:start]), tuple(digits[start:]))


def reconstruct(e: RationalExpansion) -> Fraction:
    return periodic_value(e.preperiod, e.period, e.base)


def exact_average(r, base) -> Fraction:
    """Mean of the period digits: the limit of the running digit average."""
    e = expand(r, base)
    return Fraction(sum(e.period), len(e.period))


def _long_division_chunks(p: int, q: int, b: int, chunk_size: int = 4096):
    rem = p
    while True:
        out = np.empty(chunk_size, dtype=DIGIT_DTYPE)
        for i in range(chunk_size):
            d, rem = divmod(rem * b, q)
            out[i] = d
        yield out


def rational_stream(r, base) -> DigitStream:
    """Digit stream of frac(|r|); falls back to plain long division past the exact-mode limit."""
    base = make_base(base)
    try:
        return expand(r, base).stream()
    except ExactModeUnavailable:
        f = fractional_part(r)
        # non-regular here, so long division never terminates
        return DigitStream(
            base,
            _long_division_chunks(f.numerator, f.denominator, base.value),
            label=f"{f}_{base.value}",
        )
