"""Certified fractional digits of sqrt(m), e and pi using integer arithmetic only.

Each algorithm returns integer bounds ``lo <= C * 10**P <= hi``. A prefix of
``k`` digits is emitted only when ``lo`` and ``hi`` agree on it, i.e. when the
guard digits absorb the approximation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import gmpy2
import numpy as np
from gmpy2 import mpz

from ..digit_core import DIGIT_DTYPE, DigitStream
from ..errors import SpecError

DEFAULT_GUARD = 32
MIN_GUARD = 10
KINDS = ("sqrt", "e", "pi")


@dataclass(frozen=True)
class ConstantSpec:
    kind: str
    m: Optional[int] = None
    guard: int = DEFAULT_GUARD

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(f"unknown constant {self.kind!r}; expected one of {KINDS}")
        if self.guard < MIN_GUARD:
            raise SpecError(f"guard digits must be >= {MIN_GUARD}, got {self.guard}")
        if self.kind == "sqrt":
            if self.m is None or self.m < 2:
                raise SpecError("sqrt needs an integer m >= 2")
            if math.isqrt(self.m) ** 2 == self.m:
                raise SpecError(f"sqrt({self.m}) is rational; use the rational engine")
        elif self.m is not None:
            raise SpecError(f"{self.kind} takes no parameter")

    def describe(self) -> str:
        return f"sqrt:{self.m}" if self.kind == "sqrt" else self.kind


def sqrt_bounds(m: int, prec: int) -> tuple[mpz, mpz]:
    x = gmpy2.isqrt(mpz(m) * mpz(10) ** (2 * prec))
    return x, x


def _e_split(a: int, b: int):
    # sum_{k=a+1}^{b} a!/k!  as  T/Q with Q = (a+1)...(b)
    if b - a == 1:
        return mpz(1), mpz(b)
    mid = (a + b) // 2
    t1, q1 = _e_split(a, mid)
    t2, q2 = _e_split(mid, b)
    return t1 * q2 + t2, q1 * q2


def _e_terms(prec: int) -> int:
    # need (N+1)! >= 2 * 10**prec so the tail sum_{k>N} 1/k! < 2/(N+1)! <= 10**-prec
    target = prec * math.log(10) + math.log(2)
    n = 1
    while math.lgamma(n + 2) < target:
        n = n * 2
    lo, hi = n // 2, n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if math.lgamma(mid + 2) >= target:
            hi = mid
        else:
            lo = mid
    return hi + 4  # margin against lgamma rounding


def e_bounds(prec: int) -> tuple[mpz, mpz]:
    n = _e_terms(prec)
    t, q = _e_split(0, n)  # sum_{k=1}^{n} 1/k!
    scale = mpz(10) ** prec
    lo = scale + (t * scale) // q
    # truncation of the floor (< 1) plus tail (<= 1)
    return lo, lo + 2


def _arctan_split(a: int, b: int, y: int):
    # terms k in [a, b) of sum (-1)^k / ((2k+1) y^k); returns P, Q, B, T
    if b - a == 1:
        k = a
        p = mpz(1) if k == 0 else mpz(-1)
        q = mpz(1) if k == 0 else mpz(y)
        bk = mpz(2 * k + 1)
        return p, q, bk, p
    mid = (a + b) // 2
    p1, q1, b1, t1 = _arctan_split(a, mid, y)
    p2, q2, b2, t2 = _arctan_split(mid, b, y)
    return p1 * p2, q1 * q2, b1 * b2, b2 * q2 * t1 + b1 * p1 * t2


def _arctan_inv(x: int, prec: int) -> tuple[mpz, mpz]:
    """arctan(1/x) ~ num/den with error below 10**-(prec+2)."""
    # first omitted term 1/((2N+1) x^(2N+1)) bounds the alternating tail
    n = int((prec + 2) * math.log(10) / (2 * math.log(x))) + 2
    _, q, b, t = _arctan_split(0, n, x * x)
    return t, b * q * x


def pi_bounds(prec: int) -> tuple[mpz, mpz]:
    # pi = 16 arctan(1/5) - 4 arctan(1/239)
    n5, d5 = _arctan_inv(5, prec)
    n239, d239 = _arctan_inv(239, prec)
    num = 16 * n5 * d239 - 4 * n239 * d5
    den = d5 * d239
    mid = (num * mpz(10) ** prec) // den
    # series error <= 20 * 10**-(prec+2) < 1 unit, plus floor truncation
    return mid - 1, mid + 1


_BOUNDS = {"e": e_bounds, "pi": pi_bounds}


def _bounds(spec: ConstantSpec, prec: int):
    if spec.kind == "sqrt":
        return sqrt_bounds(spec.m, prec)
    return _BOUNDS[spec.kind](prec)


def certified_digits(spec: ConstantSpec, k: int, precision: Optional[int] = None) -> np.ndarray:
    """First ``k`` fractional digits, certified stable.

    ``precision`` (default k + guard) is the starting working precision; it
    is widened until the bounds agree on all k digits.
    """
    if k == 0:
        return np.empty(0, dtype=DIGIT_DTYPE)
    prec = precision if precision is not None else k + spec.guard
    if prec < k:
        raise ValueError("working precision must be at least k")
    guard = prec - k
    while True:
        lo, hi = _bounds(spec, k + guard)
        unit = mpz(10) ** guard
        a, b = lo // unit, hi // unit
        if a == b:
            frac = a % mpz(10) ** k
            text = frac.digits(10).zfill(k)
            return (np.frombuffer(text.encode("ascii"), dtype=np.uint8) - 48).astype(DIGIT_DTYPE)
        guard = max(2 * guard, MIN_GUARD)


def _chunks(spec: ConstantSpec, first_block: int):
    emitted = 0
    k = first_block
    while True:
        digits = certified_digits(spec, k)
        yield digits[emitted:]
        emitted = k
        k *= 2


def constant_digits(spec: ConstantSpec, first_block: int = 1024) -> DigitStream:
    """Fractional base-10 digits of the constant, recomputed in doubling blocks."""
    return DigitStream(10, _chunks(spec, first_block), label=spec.describe())
