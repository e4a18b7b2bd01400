"""Concatenation of 1, 2, 3, ... written in base b."""

from __future__ import annotations

import numpy as np

from ..digit_core import DIGIT_DTYPE, DigitStream, make_base

_BATCH = 1 << 15
_INT64_SAFE = 1 << 62


def digits_through_length(k: int, base) -> int:
    """Total digits after listing every integer with at most ``k`` base-b digits."""
    b = make_base(base).value
    return sum(j * (b**j - b ** (j - 1)) for j in range(1, k + 1))


def _python_block(lo: int, hi: int, b: int, width: int) -> np.ndarray:
    out = np.empty((hi - lo) * width, dtype=DIGIT_DTYPE)
    i = 0
    for v in range(lo, hi):
        for j in range(width - 1, -1, -1):
            v, out[i + j] = divmod(v, b)
        i += width
    return out


def _chunks(b: int):
    width = 1
    lo = 1
    while True:
        top = b**width  # first integer with width+1 digits
        while lo < top:
            hi = min(lo + _BATCH, top)
            if top > _INT64_SAFE:
                yield _python_block(lo, hi, b, width)
            else:
                nums = np.arange(lo, hi, dtype=np.int64)
                powers = b ** np.arange(width - 1, -1, -1, dtype=np.int64)
                yield ((nums[:, None] // powers[None, :]) % b).astype(DIGIT_DTYPE).ravel()
            lo = hi
        width += 1


def champernowne(base=10) -> DigitStream:
    base = make_base(base)
    return DigitStream(base, _chunks(base.value), label=f"champernowne_{base.value}")
