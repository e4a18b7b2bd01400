"""Evidence-graded classification around the zero-average irrationality criterion.

Only three routes may return a proof-strength verdict: exact rationals,
sparse series whose position family has an analytic ``n / a_n -> 0``, and the
prime-indicator number (via the Chebyshev bound). Arbitrary streams only ever
get heuristic verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np

from .digit_core import DigitStream, make_base
from .generators.primes import SegmentedSieve, prime_indicator
from .generators.sparse import SparseSeriesSpec, sparse_series
from .rational import as_rational, exact_average, expand, format_expansion
from .stats import DigitStats, checkpoint_schedule, consume

RATIONAL = "rational-with-exact-Av"
IRRATIONAL = "irrational-by-criterion"
ZERO_EVIDENCE = "evidence-consistent-with-Av-zero"
POSITIVE_EVIDENCE = "evidence-of-positive-Av"
INCONCLUSIVE = "inconclusive"

PROOF_VERDICTS = frozenset({RATIONAL, IRRATIONAL})
HEURISTIC_VERDICTS = frozenset({ZERO_EVIDENCE, POSITIVE_EVIDENCE, INCONCLUSIVE})

DEFAULT_ZERO_THRESHOLD = Fraction(1, 100)
CHEBYSHEV_A1 = Fraction(1, 2)
CHEBYSHEV_A2 = Fraction(2)


@dataclass
class ClassificationReport:
    subject: str
    verdict: str
    exact_av: Optional[Fraction] = None
    analytic_limit: Optional[Fraction] = None
    justification: str = ""
    prefix_n: Optional[int] = None
    evidence: list = field(default_factory=list)  # [(n, average)]

    @property
    def is_proof(self) -> bool:
        return self.verdict in PROOF_VERDICTS

    def to_dict(self) -> dict:
        def q(x):
            return None if x is None else f"{x.numerator}/{x.denominator}"

        return {
            "subject": self.subject,
            "verdict": self.verdict,
            "proof": self.is_proof,
            "exact_av": q(self.exact_av),
            "analytic_limit": q(self.analytic_limit),
            "justification": self.justification,
            "prefix_n": self.prefix_n,
            "evidence": [{"n": n, "average": q(a)} for n, a in self.evidence],
        }


def _evidence(stats: DigitStats) -> list:
    return [(cp.n, cp.average) for cp in stats.checkpoints]


def classify_rational(r, base=10) -> ClassificationReport:
    base = make_base(base)
    r = as_rational(r)
    av = exact_average(r, base)
    return ClassificationReport(
        subject=f"rational {r} = {format_expansion(expand(r, base))}",
        verdict=RATIONAL,
        exact_av=av,
        justification="mean of the period digits of the canonical expansion",
    )


def classify_sparse(spec: SparseSeriesSpec, prefix_n: Optional[int] = None) -> ClassificationReport:
    """Decide via the analytic limit of n / a_n; finite evidence is attached when asked."""
    limit = spec.family.limit_ratio()
    if limit == 0:
        verdict = IRRATIONAL
        why = f"n/a_n -> 0 for family {spec.family}, so the digit average tends to 0"
    else:
        verdict = INCONCLUSIVE
        why = f"n/a_n -> {limit} > 0; the zero-average criterion does not apply"
    report = ClassificationReport(
        subject=f"sparse series {spec.describe()} coefficients {list(spec.coefficients)}",
        verdict=verdict,
        analytic_limit=limit,
        justification=why,
    )
    if prefix_n:
        stats = consume(DigitStats.empty(10), sparse_series(spec), prefix_n, checkpoint_schedule("pow10", prefix_n))
        report.prefix_n = prefix_n
        report.evidence = _evidence(stats)
    return report


def classify_prime_indicator(prefix_n: int, schedule="pow10") -> ClassificationReport:
    if prefix_n < 2:
        raise ValueError("prefix_n must be >= 2 (Chebyshev range starts at n = 2)")
    stats = consume(DigitStats.empty(10), prime_indicator(), prefix_n, checkpoint_schedule(schedule, prefix_n))
    return ClassificationReport(
        subject="prime indicator 0.0110101000101...",
        verdict=IRRATIONAL,
        analytic_limit=Fraction(0),
        justification="π(n)/n → 0 (Chebyshev); the running average equals π(n)/n",
        prefix_n=prefix_n,
        evidence=_evidence(stats),
    )


def _frequencies_stable(stats: DigitStats) -> bool:
    cps = stats.checkpoints
    if len(cps) < 2:
        return True
    a, b = cps[-2], cps[-1]
    tol = Fraction(1, stats.base.value)
    return all(abs(x - y) <= tol for x, y in zip(a.omegas, b.omegas))


def classify_stream(
    stream: DigitStream,
    prefix_n: int,
    zero_threshold=DEFAULT_ZERO_THRESHOLD,
    schedule="pow10",
) -> ClassificationReport:
    """Heuristic verdict from a finite prefix; never claims a proof."""
    zero_threshold = as_rational(zero_threshold)
    if prefix_n < 1:
        raise ValueError("prefix_n must be >= 1")
    if not 0 < zero_threshold < 1:
        raise ValueError("zero_threshold must lie strictly between 0 and 1")
    base = stream.base
    stats = consume(DigitStats.empty(base), stream, prefix_n, checkpoint_schedule(schedule, prefix_n))
    avgs = [cp.average for cp in stats.checkpoints]
    final = stats.running.average
    tail = avgs[-3:]
    if final < zero_threshold and len(tail) == 3 and tail[0] >= tail[1] >= tail[2]:
        verdict = ZERO_EVIDENCE
    elif final > (base.value - 1) * zero_threshold and _frequencies_stable(stats):
        verdict = POSITIVE_EVIDENCE
    else:
        verdict = INCONCLUSIVE
    return ClassificationReport(
        subject=f"stream {stream.label}",
        verdict=verdict,
        justification=f"finite-prefix heuristic over {prefix_n} digits (threshold {zero_threshold}); not a proof",
        prefix_n=prefix_n,
        evidence=list(zip((cp.n for cp in stats.checkpoints), avgs)),
    )


# ---------------------------------------------------------------------------
# Chebyshev bounds A1 n/ln n < π(n) < A2 n/ln n

# libm log is accurate to a few ulp; 1e-12 relative slack is a wide safety margin.
# Anything inside the slack is re-decided with mpmath interval arithmetic.
_SLACK = 1e-12
_MAX_RECORDED = 1000


@dataclass
class ChebyshevCheck:
    a1: Fraction
    a2: Fraction
    n_max: int
    n_min: int = 2
    violations: list = field(default_factory=list)  # (n, π(n), "lower" | "upper"), first 1000
    violation_count: int = 0
    interval_fallbacks: int = 0

    @property
    def ok(self) -> bool:
        return self.violation_count == 0


def _exact_holds(pi_n: int, n: int, a: Fraction, lower: bool) -> bool:
    """Certified test of π(n) ln n > a n (lower) or < a n (upper)."""
    iv = mpmath.iv
    saved = iv.prec
    prec = 80
    while True:
        iv.prec = prec
        try:
            lhs = iv.log(iv.mpf(n)) * pi_n
            rhs = iv.mpf(a.numerator) * n / a.denominator
        finally:
            iv.prec = saved
        if lower:
            if lhs.a > rhs.b:
                return True
            if lhs.b <= rhs.a:
                return False
        else:
            if lhs.b < rhs.a:
                return True
            if lhs.a >= rhs.b:
                return False
        prec *= 2
        if prec > 4096:
            # exact equality π(n) ln n = a n is impossible for n >= 2 (ln n irrational)
            raise ArithmeticError(f"could not separate bound at n={n}")


def chebyshev_check(a1=CHEBYSHEV_A1, a2=CHEBYSHEV_A2, n_max: int = 10**6, segment_size: int = 1 << 20) -> ChebyshevCheck:
    a1, a2 = as_rational(a1), as_rational(a2)
    if not 0 < a1 < a2:
        raise ValueError("need 0 < A1 < A2")
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    out = ChebyshevCheck(a1, a2, n_max)
    sieve = SegmentedSieve(0, segment_size)
    running = 0
    lo = 0
    a1f, a2f = float(a1), float(a2)
    while lo <= n_max:
        hi = min(lo + segment_size, n_max + 1)
        flags = sieve.segment(lo, hi)
        pis = running + np.cumsum(flags, dtype=np.int64)
        running = int(pis[-1])
        ns = np.arange(lo, hi, dtype=np.int64)
        keep = ns >= 2
        ns, pis = ns[keep], pis[keep]
        if ns.size:
            lhs = pis * np.log(ns.astype(np.float64))
            nf = ns.astype(np.float64)
            for a, af, lower in ((a1, a1f, True), (a2, a2f, False)):
                rhs = af * nf
                if lower:
                    sure_ok = lhs * (1 - _SLACK) > rhs * (1 + _SLACK)
                    sure_bad = lhs * (1 + _SLACK) <= rhs * (1 - _SLACK)
                else:
                    sure_ok = lhs * (1 + _SLACK) < rhs * (1 - _SLACK)
                    sure_bad = lhs * (1 - _SLACK) >= rhs * (1 + _SLACK)
                undecided = np.flatnonzero(~(sure_ok | sure_bad))
                bad = set(np.flatnonzero(sure_bad).tolist())
                for i in undecided.tolist():
                    out.interval_fallbacks += 1
                    if not _exact_holds(int(pis[i]), int(ns[i]), a, lower):
                        bad.add(i)
                for i in sorted(bad):
                    out.violation_count += 1
                    if len(out.violations) < _MAX_RECORDED:
                        out.violations.append((int(ns[i]), int(pis[i]), "lower" if lower else "upper"))
        lo = hi
    out.violations.sort()
    return out
