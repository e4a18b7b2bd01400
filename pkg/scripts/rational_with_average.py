"""Build a rational whose digit average is a prescribed s = a/m in (0, 9].

The period is m digits summing to a (as many 9s as fit, one remainder digit,
then zeros); the rational is read back from that purely periodic expansion.
"""

import argparse
from fractions import Fraction

from digitavg.digit_core import Base
from digitavg.rational import RationalExpansion, exact_average, expand, reconstruct


def rational_with_average(s: Fraction) -> Fraction:
    if not 0 < s <= 9:
        raise ValueError("target must lie in (0, 9]")
    a, m = s.numerator, s.denominator
    nines, rest = divmod(a, 9)
    period = [9] * nines + ([rest] if rest else [])
    period += [0] * (m - len(period))
    if period == [9]:
        # 0.(9) = 1 has zero fractional part; use the regular number 1/2 instead
        return Fraction(1, 2)
    return reconstruct(RationalExpansion(Base(10), (), tuple(period)))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("targets", nargs="*", default=["1/7", "9/2", "3", "22/7", "9"])
    args = ap.parse_args()
    for t in args.targets:
        s = Fraction(t)
        r = rational_with_average(s)
        print(f"target {s}: r = {r} = {expand(r, 10)}  Av = {exact_average(r, 10)}")


if __name__ == "__main__":
    main()
