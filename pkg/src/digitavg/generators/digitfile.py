"""Digit files: a ``base=<b> count=<n>`` header line, then one character per digit."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from ..digit_core import DIGIT_ALPHABET, DIGIT_DTYPE, DigitStream, make_base, render_digits
from ..errors import DigitDecodeError, DigitFileError, StreamTruncatedError

_HEADER_RE = re.compile(rb"^base=(\d+) count=(\d+)\r?\n")
_READ_BLOCK = 1 << 20

# byte -> digit value, 255 = illegal
_DECODE = np.full(256, 255, dtype=np.uint8)
for _v, _ch in enumerate(DIGIT_ALPHABET):
    _DECODE[ord(_ch)] = _v
    _DECODE[ord(_ch.upper())] = _v


@dataclass(frozen=True)
class DigitFile:
    path: Path
    base: int
    count: int
    header_len: int


def open_digit_file(path) -> DigitFile:
    """Parse the header and validate the whole body (decode + length)."""
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            header = fh.readline()
            m = _HEADER_RE.match(header)
            if not m:
                raise DigitFileError(f"{path}: bad header {header[:64]!r}; expected 'base=<b> count=<n>'")
            base = make_base(int(m.group(1)))
            count = int(m.group(2))
            hlen = len(header)
            actual = _body_digit_count(path, hlen, os.fstat(fh.fileno()).st_size - hlen)
            seen = 0
            while seen < actual:
                raw = np.frombuffer(fh.read(min(_READ_BLOCK, actual - seen)), dtype=np.uint8)
                bad = np.flatnonzero(_DECODE[raw] >= base.value)
                if bad.size:
                    off = seen + int(bad[0])
                    raise DigitDecodeError(
                        f"{path}: byte {bytes([raw[bad[0]]])!r} at offset {hlen + off} "
                        f"(digit index {off}) is not a base-{base.value} digit",
                        offset=hlen + off,
                    )
                seen += len(raw)
    except OSError as exc:
        raise DigitFileError(f"{path}: {exc}") from exc
    if actual < count:
        raise DigitFileError(f"{path}: header declares {count} digits but body holds {actual}")
    return DigitFile(path, base.value, count, hlen)


def _body_digit_count(path: Path, hlen: int, total: int) -> int:
    if total == 0:
        return 0
    with open(path, "rb") as fh:
        fh.seek(max(hlen, hlen + total - 2))
        tail = fh.read()
    if tail.endswith(b"\r\n"):
        return total - 2
    if tail.endswith(b"\n"):
        return total - 1
    return total


def _chunks(df: DigitFile):
    remaining = df.count
    with open(df.path, "rb") as fh:
        fh.seek(df.header_len)
        while remaining:
            block = fh.read(min(_READ_BLOCK, remaining))
            if not block:
                break
            remaining -= len(block)
            yield _DECODE[np.frombuffer(block, dtype=np.uint8)].astype(DIGIT_DTYPE, copy=False)
    raise StreamTruncatedError(
        f"{df.path}: stream pulled past the declared {df.count} digits", available=df.count
    )


def from_digit_file(file) -> DigitStream:
    df = file if isinstance(file, DigitFile) else open_digit_file(file)
    return DigitStream(df.base, _chunks(df), label=f"file:{df.path.name}")


def write_digit_file(path, digits: Iterable[int], base=10) -> DigitFile:
    base = make_base(base)
    text = render_digits(digits)
    header = f"base={base.value} count={len(text)}\n"
    Path(path).write_text(header + text + "\n", encoding="ascii")
    return DigitFile(Path(path), base.value, len(text), len(header))
