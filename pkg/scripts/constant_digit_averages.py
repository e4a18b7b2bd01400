"""Finite-prefix digit averages of sqrt(m), e and pi.

Whether these averages converge at all is open; the table only shows how the
prefix behaves. Files in the digit-file format can be added with --file.
"""

import argparse

from digitavg.generators import ConstantSpec, constant_digits, from_digit_file
from digitavg.report import decimal_str
from digitavg.stats import DigitStats, checkpoint_schedule, consume, normality_deviation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prefix", type=float, default=1e5)
    ap.add_argument("--constants", default="sqrt:2,sqrt:3,e,pi")
    ap.add_argument("--file", action="append", default=[], help="extra digit file (e.g. gamma digits)")
    args = ap.parse_args()
    n = int(args.prefix)
    subjects = []
    for c in args.constants.split(","):
        spec = ConstantSpec("sqrt", int(c[5:])) if c.startswith("sqrt:") else ConstantSpec(c)
        subjects.append((spec.describe(), constant_digits(spec)))
    subjects += [(f, from_digit_file(f)) for f in args.file]
    for label, stream in subjects:
        stats = consume(DigitStats.empty(stream.base), stream, n, checkpoint_schedule("pow10", n))
        print(label)
        for cp in stats.checkpoints:
            dev = max(abs(w - 1 / 10) for w in map(float, cp.omegas))
            print(f"  n={cp.n:>9}  avg={decimal_str(cp.average)}  max|w_d-1/10|={dev:.6f}")
        d = normality_deviation(stats.profile, stats.running)
        print(f"  |avg - 9/2| at n={n}: {decimal_str(d.avg_dev)}")


if __name__ == "__main__":
    main()
