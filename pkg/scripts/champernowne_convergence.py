"""Running digit average of the Champernowne stream in several bases against (b-1)/2."""

import argparse
from fractions import Fraction

from digitavg.generators import champernowne
from digitavg.report import decimal_str
from digitavg.stats import DigitStats, checkpoint_schedule, consume, normality_deviation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bases", default="2,3,10,16")
    ap.add_argument("--prefix", type=float, default=1e7)
    args = ap.parse_args()
    n = int(args.prefix)
    print(f"{'base':>4} {'n':>10} {'average':>16} {'|avg-(b-1)/2|':>16} {'max|w_d-1/b|':>14}")
    for b in (int(x) for x in args.bases.split(",")):
        stats = DigitStats.empty(b)
        stream = champernowne(b)
        for point in checkpoint_schedule("pow10", n):
            consume(stats, stream, point)
            dev = normality_deviation(stats.profile, stats.running)
            print(
                f"{b:>4} {point:>10} {decimal_str(stats.running.average):>16} "
                f"{decimal_str(dev.avg_dev):>16} {float(dev.max_dev):>14.6f}"
            )
        print(f"     limit (b-1)/2 = {Fraction(b - 1, 2)}")


if __name__ == "__main__":
    main()
