"""pi(n)/n (the running average of the prime-indicator digits) next to Chebyshev-type bounds."""

import argparse
import math

from digitavg.criterion import chebyshev_check
from digitavg.generators import prime_indicator
from digitavg.report import decimal_str
from digitavg.stats import DigitStats, checkpoint_schedule, consume


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prefix", type=float, default=1e8)
    ap.add_argument("--a1", default="1/2")
    ap.add_argument("--a2", default="2")
    ap.add_argument("--check-up-to", type=float, default=1e6)
    args = ap.parse_args()
    n = int(args.prefix)
    stats = consume(DigitStats.empty(10), prime_indicator(), n, checkpoint_schedule("pow10", n))
    print(f"{'n':>11} {'pi(n)':>10} {'pi(n)/n':>16} {'pi(n) ln n / n':>16}")
    for cp in stats.checkpoints:
        ratio = cp.digit_sum * math.log(cp.n) / cp.n if cp.n > 1 else float("nan")
        print(f"{cp.n:>11} {cp.digit_sum:>10} {decimal_str(cp.average):>16} {ratio:>16.6f}")
    chk = chebyshev_check(args.a1, args.a2, int(args.check_up_to))
    print(f"\nA1={chk.a1}, A2={chk.a2}, 2 <= n <= {chk.n_max}: {chk.violation_count} violation(s)")
    for v in chk.violations[:20]:
        print("  n={} pi(n)={} fails the {} bound".format(*v))


if __name__ == "__main__":
    main()
