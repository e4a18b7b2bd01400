"""Run reports and their JSON / CSV / plot-data renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from typing import Optional

from . import __version__
from .errors import IdentityMismatchError

SCHEMA_VERSION = 1
SIG_DIGITS = 12
FORMATS = ("json", "csv", "plotdata")

_CTX = Context(prec=SIG_DIGITS, rounding=ROUND_HALF_EVEN)


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction, sig: int = SIG_DIGITS) -> str:
    """Approximate decimal rendering with exactly ``sig`` significant digits, half-even."""
    if x == 0:
        return "0." + "0" * (sig - 1)
    ctx = Context(prec=sig, rounding=ROUND_HALF_EVEN)
    d = ctx.divide(Decimal(x.numerator), Decimal(x.denominator))
    exp = d.adjusted() - (sig - 1)
    return format(d.quantize(Decimal(1).scaleb(exp), context=ctx), "f")


@dataclass
class Report:
    command: str
    config: dict
    checkpoints: list = field(default_factory=list)  # stats.Checkpoint
    base: Optional[int] = None
    classification: Optional[dict] = None
    extra: dict = field(default_factory=dict)
    wall_time: float = 0.0
    version: str = __version__


def verify_identity(report: Report) -> None:
    for cp in report.checkpoints:
        if not cp.identity_holds():
            raise IdentityMismatchError(
                f"checkpoint n={cp.n}: sum d*count_d = {sum(d * c for d, c in enumerate(cp.counts))}"
                f" but digit_sum = {cp.digit_sum}"
            )


def _row(cp) -> dict:
    return {
        "n": cp.n,
        "digit_sum": cp.digit_sum,
        "average": fraction_str(cp.average),
        "average_decimal": decimal_str(cp.average),
        "omega": [fraction_str(w) for w in cp.omegas],
    }


def to_json(report: Report) -> str:
    payload = {
        "schema": SCHEMA_VERSION,
        "tool": "digitavg",
        "version": report.version,
        "command": report.command,
        "config": report.config,
        "base": report.base,
        "checkpoints": [_row(cp) for cp in report.checkpoints],
        "classification": report.classification,
        "wall_time_s": round(report.wall_time, 6),
    }
    payload.update(report.extra)
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def csv_header(base: Optional[int]) -> list:
    return ["n", "digit_sum", "average", "average_decimal"] + [f"omega_{d}" for d in range(base or 0)]


def to_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header(report.base))
    for cp in report.checkpoints:
        row = _row(cp)
        writer.writerow([row["n"], row["digit_sum"], row["average"], row["average_decimal"], *row["omega"]])
    return buf.getvalue()


def to_plotdata(report: Report) -> str:
    lines = ["# n average_decimal"]
    lines += [f"{cp.n} {decimal_str(cp.average)}" for cp in report.checkpoints]
    return "\n".join(lines) + "\n"


def emit(report: Report, fmt: str = "json") -> bytes:
    """Serialize; every checkpoint is re-checked against the frequency identity first."""
    verify_identity(report)
    if fmt == "json":
        text = to_json(report)
    elif fmt == "csv":
        text = to_csv(report)
    elif fmt == "plotdata":
        text = to_plotdata(report)
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    return text.encode("utf-8")
