"""Digit-stream generators."""

from .champernowne import champernowne, digits_through_length
from .constants import ConstantSpec, certified_digits, constant_digits
from .digitfile import DigitFile, from_digit_file, open_digit_file, write_digit_file
from .primes import SegmentedSieve, pi_count, prime_indicator, simple_sieve
from .sparse import LIOUVILLE, Exponential, Factorial, Polynomial, SparseSeriesSpec, sparse_series

__all__ = [
    "champernowne",
    "digits_through_length",
    "ConstantSpec",
    "certified_digits",
    "constant_digits",
    "DigitFile",
    "from_digit_file",
    "open_digit_file",
    "write_digit_file",
    "SegmentedSieve",
    "pi_count",
    "prime_indicator",
    "simple_sieve",
    "LIOUVILLE",
    "Exponential",
    "Factorial",
    "Polynomial",
    "SparseSeriesSpec",
    "sparse_series",
]
