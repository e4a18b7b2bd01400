"""Command line: ``avg``, ``classify``, ``expand`` and ``pi-check``.

Exit codes: 0 ok, 1 compute error, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import asdict, dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Optional

from .criterion import (
    DEFAULT_ZERO_THRESHOLD,
    chebyshev_check,
    classify_prime_indicator,
    classify_rational,
    classify_sparse,
    classify_stream,
)
from .digit_core import make_base
from .errors import DigitAvgError, DigitFileError, PartialResultError, UsageError
from .generators import (
    ConstantSpec,
    Exponential,
    Factorial,
    Polynomial,
    SparseSeriesSpec,
    champernowne,
    constant_digits,
    from_digit_file,
    open_digit_file,
    prime_indicator,
    sparse_series,
)
from .generators.constants import DEFAULT_GUARD
from .rational import as_rational, exact_average, expand, format_expansion, rational_stream
from .report import FORMATS, Report, emit, fraction_str
from .stats import DigitStats, checkpoint_schedule, chunked_consume, consume

COMMANDS = ("avg", "classify", "expand", "pi-check")
SUBJECTS = ("rational", "champernowne", "sparse", "prime-indicator", "constant", "digit-file")
DEFAULT_PREFIX = 10**4

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    subject: Optional[str] = None
    subject_arg: Optional[str] = None
    base: Optional[int] = None
    prefix: int = DEFAULT_PREFIX
    checkpoints: str = "pow10"
    coeffs: str = "1"
    guard: int = DEFAULT_GUARD
    threshold: str = "1/100"
    a1: str = "1/2"
    a2: str = "2"
    n_max: int = 10**6
    format: str = "json"
    output: Optional[str] = None
    # execution detail; does not change the result
    workers: int = field(default=1, compare=False)

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("workers")
        d["argv"] = to_argv(self)
        return d


def to_argv(cfg: RunConfig) -> list:
    """Flags that reproduce ``cfg`` under :func:`parse_args`."""
    argv = [cfg.command]
    if cfg.command in ("avg", "classify", "expand"):
        if cfg.subject in ("champernowne", "prime-indicator"):
            argv.append(f"--{cfg.subject}")
        elif cfg.subject:
            argv += [f"--{cfg.subject}", cfg.subject_arg]
        if cfg.base is not None:
            argv += ["--base", str(cfg.base)]
    if cfg.command in ("avg", "classify"):
        argv += ["--prefix", str(cfg.prefix), "--checkpoints", cfg.checkpoints]
        if cfg.subject == "sparse":
            argv += ["--coeffs", cfg.coeffs]
        if cfg.subject == "constant":
            argv += ["--guard", str(cfg.guard)]
    if cfg.command == "classify":
        argv += ["--threshold", cfg.threshold]
    if cfg.command == "pi-check":
        argv += ["--a1", cfg.a1, "--a2", cfg.a2, "--n-max", str(cfg.n_max)]
    argv += ["--format", cfg.format]
    if cfg.output:
        argv += ["--output", cfg.output]
    return argv


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _count(text: str) -> int:
    """Integer count; accepts scientific shorthand such as ``1e6``."""
    try:
        d = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a count: {text!r}") from None
    if d != d.to_integral_value() or d < 0:
        raise argparse.ArgumentTypeError(f"not a non-negative integer: {text!r}")
    return int(d)


def _rational_text(text: str) -> str:
    try:
        r = as_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if r.denominator == 1:
        raise argparse.ArgumentTypeError(f"{text} has zero fractional part")
    return text


def _base(text: str) -> int:
    try:
        return make_base(int(text)).value
    except (ValueError, DigitAvgError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_subjects(p, rational_only=False):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--rational", metavar="P/Q", type=_rational_text)
    if rational_only:
        return
    g.add_argument("--champernowne", action="store_true")
    g.add_argument("--sparse", metavar="FAMILY", help="factorial | exp:K | poly:C:J, optionally prefixed 'a1,a2,...+'")
    g.add_argument("--prime-indicator", action="store_true")
    g.add_argument("--constant", metavar="KIND", help="sqrt:M | e | pi")
    g.add_argument("--digit-file", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="digitavg", description="Asymptotic digit averages of real numbers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("avg", "classify"):
        p = sub.add_parser(name)
        _add_subjects(p)
        p.add_argument("--base", type=_base)
        p.add_argument("--prefix", type=_count, default=DEFAULT_PREFIX)
        p.add_argument("--checkpoints", default="pow10")
        p.add_argument("--coeffs", default="1")
        p.add_argument("--guard", type=int, default=DEFAULT_GUARD)
        p.add_argument("--workers", type=int, default=1)
        if name == "classify":
            p.add_argument("--threshold", default=fraction_str(DEFAULT_ZERO_THRESHOLD))
        p.add_argument("--format", choices=FORMATS, default="json")
        p.add_argument("--output")
    p = sub.add_parser("expand")
    _add_subjects(p, rational_only=True)
    p.add_argument("--base", type=_base)
    p.add_argument("--format", choices=FORMATS + ("text",), default="json")
    p.add_argument("--output")
    p = sub.add_parser("pi-check")
    p.add_argument("--a1", default="1/2")
    p.add_argument("--a2", default="2")
    p.add_argument("--n-max", type=_count, default=10**6)
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--output")
    return parser


def parse_sparse(text: str, coeffs: str = "1") -> SparseSeriesSpec:
    head = ()
    if "+" in text:
        head_text, text = text.rsplit("+", 1)
        head = tuple(int(x) for x in head_text.split(","))
    parts = text.split(":")
    if parts[0] == "factorial" and len(parts) == 1:
        family = Factorial()
    elif parts[0] == "exp" and len(parts) == 2:
        family = Exponential(int(parts[1]))
    elif parts[0] == "poly" and len(parts) == 3:
        family = Polynomial(int(parts[1]), int(parts[2]))
    else:
        raise ValueError(f"unknown sparse family {text!r}")
    return SparseSeriesSpec(family, tuple(int(c) for c in coeffs.split(",")), head)


def parse_constant(text: str, guard: int = DEFAULT_GUARD) -> ConstantSpec:
    if text.startswith("sqrt:"):
        return ConstantSpec("sqrt", int(text[5:]), guard)
    return ConstantSpec(text, None, guard)


def parse_args(argv) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    cfg = RunConfig(command=ns.command)
    if ns.command == "pi-check":
        try:
            a1, a2 = as_rational(ns.a1), as_rational(ns.a2)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"pi-check: {exc}") from None
        if not 0 < a1 < a2:
            raise UsageError("pi-check: need 0 < A1 < A2")
        if ns.n_max < 2:
            raise UsageError("pi-check: --n-max must be >= 2")
        cfg.a1, cfg.a2, cfg.n_max = ns.a1, ns.a2, ns.n_max
    else:
        for name in SUBJECTS:
            val = getattr(ns, name.replace("-", "_"), None)
            if val:
                cfg.subject = name
                cfg.subject_arg = None if val is True else val
        cfg.base = ns.base
        if cfg.subject in ("sparse", "prime-indicator", "constant") and cfg.base not in (None, 10):
            raise UsageError(f"{cfg.subject} streams are base 10 only")
    if ns.command in ("avg", "classify"):
        if ns.prefix < 1:
            raise UsageError("--prefix must be >= 1")
        cfg.prefix, cfg.checkpoints, cfg.coeffs, cfg.guard = ns.prefix, ns.checkpoints, ns.coeffs, ns.guard
        cfg.workers = max(1, ns.workers)
        try:
            checkpoint_schedule(cfg.checkpoints, cfg.prefix)
            if cfg.subject == "sparse":
                parse_sparse(cfg.subject_arg, cfg.coeffs)
            if cfg.subject == "constant":
                parse_constant(cfg.subject_arg, cfg.guard)
        except (ValueError, DigitAvgError) as exc:
            raise UsageError(str(exc)) from None
        if ns.command == "classify":
            try:
                t = as_rational(ns.threshold)
            except (ValueError, ZeroDivisionError) as exc:
                raise UsageError(f"--threshold: {exc}") from None
            if not 0 < t < 1:
                raise UsageError("--threshold must lie strictly between 0 and 1")
            cfg.threshold = ns.threshold
    cfg.format, cfg.output = ns.format, ns.output
    return cfg


# ---------------------------------------------------------------------------


def _resolve_base(cfg: RunConfig) -> int:
    if cfg.subject == "digit-file":
        file_base = open_digit_file(cfg.subject_arg).base
        if cfg.base is not None and cfg.base != file_base:
            raise UsageError(f"--base {cfg.base} conflicts with digit file base {file_base}")
        return file_base
    return cfg.base or 10


def _factory(cfg: RunConfig):
    """Stream constructor taking a 1-based start position, for chunkable subjects."""
    if cfg.subject == "prime-indicator":
        return lambda start: prime_indicator(start)
    if cfg.subject == "sparse":
        spec = parse_sparse(cfg.subject_arg, cfg.coeffs)
        return lambda start: sparse_series(spec, start)
    return None


def make_stream(cfg: RunConfig, base: int):
    s = cfg.subject
    if s == "rational":
        return rational_stream(as_rational(cfg.subject_arg), base)
    if s == "champernowne":
        return champernowne(base)
    if s == "sparse":
        return sparse_series(parse_sparse(cfg.subject_arg, cfg.coeffs))
    if s == "prime-indicator":
        return prime_indicator()
    if s == "constant":
        return constant_digits(parse_constant(cfg.subject_arg, cfg.guard))
    if s == "digit-file":
        return from_digit_file(cfg.subject_arg)
    raise UsageError(f"unknown subject {s!r}")


def _classify(cfg: RunConfig, base: int) -> dict:
    s = cfg.subject
    if s == "rational":
        r = as_rational(cfg.subject_arg)
        if expand_possible(r, base):
            return classify_rational(r, base).to_dict()
    if s == "sparse":
        return classify_sparse(parse_sparse(cfg.subject_arg, cfg.coeffs), cfg.prefix).to_dict()
    if s == "prime-indicator" and cfg.prefix >= 2:
        return classify_prime_indicator(cfg.prefix, cfg.checkpoints).to_dict()
    return classify_stream(make_stream(cfg, base), cfg.prefix, as_rational(cfg.threshold), cfg.checkpoints).to_dict()


def expand_possible(r, base) -> bool:
    try:
        expand(r, base)
    except DigitAvgError:
        return False
    return True


def run(cfg: RunConfig) -> Report:
    t0 = time.perf_counter()
    report = Report(command=cfg.command, config=cfg.echo())
    if cfg.command == "pi-check":
        chk = chebyshev_check(as_rational(cfg.a1), as_rational(cfg.a2), cfg.n_max)
        report.extra["chebyshev"] = {
            "a1": fraction_str(chk.a1),
            "a2": fraction_str(chk.a2),
            "n_min": chk.n_min,
            "n_max": chk.n_max,
            "violation_count": chk.violation_count,
            "violations": [{"n": n, "pi_n": p, "bound": which} for n, p, which in chk.violations],
            "ok": chk.ok,
        }
    elif cfg.command == "expand":
        base = cfg.base or 10
        r = as_rational(cfg.subject_arg)
        e = expand(r, base)
        report.base = base
        report.extra["expansion"] = format_expansion(e)
        report.extra["exact_av"] = fraction_str(exact_average(r, base))
    else:
        base = _resolve_base(cfg)
        report.base = base
        schedule = checkpoint_schedule(cfg.checkpoints, cfg.prefix)
        factory = _factory(cfg)
        if cfg.workers > 1 and factory is not None:
            stats = chunked_consume(factory, base, cfg.prefix, schedule, chunks=cfg.workers, workers=cfg.workers)
        else:
            stats = consume(DigitStats.empty(base), make_stream(cfg, base), cfg.prefix, schedule)
        report.checkpoints = list(stats.checkpoints)
        if cfg.subject == "rational":
            r = as_rational(cfg.subject_arg)
            report.extra["exact_av"] = (
                fraction_str(exact_average(r, base)) if expand_possible(r, base) else None
            )
        if cfg.command == "classify":
            report.classification = _classify(cfg, base)
    report.wall_time = time.perf_counter() - t0
    return report


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
        report = run(cfg)
        if cfg.format == "text":
            payload = (report.extra["expansion"] + "\n").encode()
        else:
            payload = emit(report, cfg.format)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DigitFileError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PartialResultError as exc:
        print(f"error: {exc} (consumed n={exc.stats.n})", file=sys.stderr)
        return EXIT_IO if isinstance(exc.cause, DigitFileError) else EXIT_COMPUTE
    except (DigitAvgError, ArithmeticError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    try:
        if cfg.output:
            with open(cfg.output, "wb") as fh:
                fh.write(payload)
        else:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK
