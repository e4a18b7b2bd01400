import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digitavg.digit_core import take_prefix
from digitavg.errors import DigitDecodeError, DigitFileError, SpecError, StreamTruncatedError
from digitavg.generators import (
    LIOUVILLE,
    ConstantSpec,
    Exponential,
    Factorial,
    Polynomial,
    SegmentedSieve,
    SparseSeriesSpec,
    certified_digits,
    champernowne,
    constant_digits,
    digits_through_length,
    from_digit_file,
    open_digit_file,
    pi_count,
    prime_indicator,
    simple_sieve,
    sparse_series,
    write_digit_file,
)

from oracles import (
    champernowne_digits,
    e_continued_fraction_digits,
    is_prime_trial,
    pi_spigot_digits,
    prime_flags,
    sqrt_newton_digits,
)

# --- Champernowne -----------------------------------------------------------


def test_champernowne_examples():
    assert take_prefix(champernowne(10), 15) == [1, 2, 3, 4, 5, 6, 7, 8, 9, 1, 0, 1, 1, 1, 2]
    assert take_prefix(champernowne(2), 8) == [1, 1, 0, 1, 1, 1, 0, 0]
    assert digits_through_length(1, 10) == 9


@pytest.mark.parametrize("b", [2, 3, 7, 10, 16, 36])
def test_champernowne_matches_concatenation_oracle(b):
    n = 20_000
    assert take_prefix(champernowne(b), n) == champernowne_digits(n, b)


@pytest.mark.parametrize("b, k_max", [(2, 6), (3, 6), (10, 6), (16, 4)])
def test_champernowne_boundary_decomposition(b, k_max):
    for k in range(1, k_max + 1):
        total = digits_through_length(k, b)
        assert total == sum(j * (b**j - b ** (j - 1)) for j in range(1, k + 1))
        s = champernowne(b)
        head = s.pull(total)
        # block ends with b^k - 1 (all top digits), next block starts with b^k = 1 0...0
        assert head[-k:].tolist() == [b - 1] * k
        assert s.pull(k + 1).tolist() == [1] + [0] * k


# --- sparse series ----------------------------------------------------------


def test_liouville_prefix():
    assert take_prefix(sparse_series(LIOUVILLE), 6) == [1, 1, 0, 0, 0, 1]


def test_exponential_prefix():
    assert take_prefix(sparse_series(SparseSeriesSpec(Exponential(2))), 8) == [0, 1, 0, 1, 0, 0, 0, 1]


def test_factorial_cycling_coefficients():
    spec = SparseSeriesSpec(Factorial(), tuple(range(1, 10)))
    assert take_prefix(sparse_series(spec), 24)[23] == 4


def test_head_plus_tail():
    spec = SparseSeriesSpec(Exponential(3), (2,), head=(1, 4))
    # head 1, 4 then 3^3 = 27, 81, ...
    digits = take_prefix(sparse_series(spec), 81)
    assert [i + 1 for i, d in enumerate(digits) if d] == [1, 4, 27, 81]


@pytest.mark.parametrize(
    "kwargs",
    [
        {"family": Factorial(), "coefficients": (0,)},
        {"family": Factorial(), "coefficients": (10,)},
        {"family": Factorial(), "head": (3, 3)},
        {"family": Exponential(2), "head": (1, 9)},  # tail resumes at 2^3 = 8 < 9
    ],
)
def test_sparse_spec_validation(kwargs):
    with pytest.raises(SpecError):
        SparseSeriesSpec(**kwargs)


def test_family_validation():
    with pytest.raises(SpecError):
        Exponential(1)
    with pytest.raises(SpecError):
        Polynomial(0, 2)


FAMILIES = st.one_of(
    st.just(Factorial()),
    st.builds(Exponential, st.integers(2, 5)),
    st.builds(Polynomial, st.integers(1, 5), st.integers(1, 3)),
)


@settings(max_examples=25, deadline=None)
@given(family=FAMILIES, coeffs=st.lists(st.integers(1, 9), min_size=1, max_size=4))
def test_sparse_support_matches_positions(family, coeffs):
    spec = SparseSeriesSpec(family, tuple(coeffs))
    n = 10**5
    digits = sparse_series(spec).pull(n)
    support = set()
    k = 1
    while spec.position(k) <= n:
        support.add(spec.position(k))
        assert digits[spec.position(k) - 1] == spec.coefficient(k)
        k += 1
    assert set((np.flatnonzero(digits) + 1).tolist()) == support


@settings(max_examples=25, deadline=None)
@given(family=FAMILIES, start=st.integers(1, 5000))
def test_sparse_positional_start(family, start):
    spec = SparseSeriesSpec(family, (1, 2, 3))
    full = sparse_series(spec).pull(start + 999)
    assert np.array_equal(sparse_series(spec, start=start).pull(1000), full[start - 1 :])


# --- primes -----------------------------------------------------------------


def test_prime_indicator_prefix():
    assert take_prefix(prime_indicator(), 12) == [0, 1, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0]


def test_prime_indicator_counts():
    assert sum(take_prefix(prime_indicator(), 100)) == sum(is_prime_trial(n) for n in range(1, 101)) == 25
    assert sum(take_prefix(prime_indicator(), 10)) == 4


@pytest.mark.parametrize("n, expected", [(0, 0), (1, 0), (2, 1), (10, 4), (100, 25)])
def test_pi_count_small(n, expected):
    assert pi_count(n) == expected
    assert expected == sum(is_prime_trial(k) for k in range(n + 1))


def test_indicator_prefix_sums_equal_oracle_everywhere():
    n = 10**6
    oracle = np.frombuffer(bytes(prime_flags(n)), dtype=np.uint8)[1:]
    digits = prime_indicator(segment_size=1 << 16).pull(n)
    assert np.array_equal(digits, oracle)
    sums = np.cumsum(digits)
    for k in [1, 2, 3, 97, 1000, 65_536, 65_537, 99_991, 500_000, 10**6]:
        assert pi_count(k, segment_size=1 << 12) == int(sums[k - 1])
    assert pi_count(10**6) == 78498


@pytest.mark.parametrize("start", [1, 2, 17, 1 << 16, 999_983])
def test_prime_indicator_positional_start(start):
    got = prime_indicator(start, segment_size=4096).pull(500)
    assert got.tolist() == [int(is_prime_trial(n)) for n in range(start, start + 500)]


def test_sieve_segments_small_windows():
    s = SegmentedSieve()
    flags = s.segment(0, 50)
    assert np.flatnonzero(flags).tolist() == simple_sieve(49).tolist()


# --- constants --------------------------------------------------------------


def test_constant_examples():
    assert take_prefix(constant_digits(ConstantSpec("sqrt", 2)), 8) == [4, 1, 4, 2, 1, 3, 5, 6]
    assert take_prefix(constant_digits(ConstantSpec("e")), 9) == [7, 1, 8, 2, 8, 1, 8, 2, 8]
    assert take_prefix(constant_digits(ConstantSpec("pi")), 6) == [1, 4, 1, 5, 9, 2]


def test_constant_oracles_agree_small():
    assert take_prefix(constant_digits(ConstantSpec("sqrt", 2)), 8) == sqrt_newton_digits(2, 8)
    assert take_prefix(constant_digits(ConstantSpec("e")), 50) == e_continued_fraction_digits(50)
    assert take_prefix(constant_digits(ConstantSpec("pi")), 50) == pi_spigot_digits(50)


@pytest.mark.parametrize("m", [3, 5, 7, 10, 99])
def test_sqrt_other_radicands(m):
    assert take_prefix(constant_digits(ConstantSpec("sqrt", m)), 300) == sqrt_newton_digits(m, 300)


@pytest.mark.parametrize("spec", [ConstantSpec("sqrt", 2), ConstantSpec("e"), ConstantSpec("pi")], ids=str)
def test_guard_digit_stability(spec):
    k = 10**4
    a = certified_digits(spec, k)
    b = certified_digits(spec, k, precision=2 * k)
    assert np.array_equal(a, b)


def test_stream_blocks_agree_with_direct():
    spec = ConstantSpec("pi")
    assert np.array_equal(constant_digits(spec, first_block=64).pull(3000), certified_digits(spec, 3000))


def test_constant_spec_validation():
    with pytest.raises(SpecError, match="rational"):
        ConstantSpec("sqrt", 16)
    with pytest.raises(SpecError):
        ConstantSpec("e", guard=5)
    with pytest.raises(SpecError):
        ConstantSpec("gamma")


# --- digit files ------------------------------------------------------------


def _write(tmp_path, text, name="d.txt"):
    p = tmp_path / name
    p.write_bytes(text.encode())
    return p


def test_digit_file_threes(tmp_path):
    p = _write(tmp_path, "base=10 count=100\n" + "3" * 100 + "\n")
    assert take_prefix(from_digit_file(p), 5) == [3, 3, 3, 3, 3]


def test_digit_file_bad_byte_offset(tmp_path):
    header = "base=10 count=5\n"
    p = _write(tmp_path, header + "12x45")
    with pytest.raises(DigitDecodeError) as info:
        from_digit_file(p)
    assert info.value.offset == len(header) + 2
    assert f"offset {len(header) + 2}" in str(info.value)


def test_digit_file_base_check(tmp_path):
    p = _write(tmp_path, "base=2 count=3\n102")
    with pytest.raises(DigitDecodeError):
        open_digit_file(p)


def test_digit_file_truncation(tmp_path):
    p = _write(tmp_path, "base=10 count=10\n0123456789")
    s = from_digit_file(p)
    assert len(s.pull(10)) == 10
    with pytest.raises(StreamTruncatedError):
        s.pull(1)


def test_digit_file_short_body(tmp_path):
    p = _write(tmp_path, "base=10 count=11\n0123456789\n")
    with pytest.raises(DigitFileError, match="declares 11"):
        open_digit_file(p)


def test_digit_file_header_required(tmp_path):
    p = _write(tmp_path, "0123456789\n")
    with pytest.raises(DigitFileError, match="header"):
        open_digit_file(p)


def test_digit_file_round_trip(tmp_path):
    digits = [int(c, 36) for c in "0123456789abcdefghijz"]
    df = write_digit_file(tmp_path / "x.txt", digits, base=36)
    assert (tmp_path / "x.txt").read_text() == "base=36 count=21\n0123456789abcdefghijz\n"
    assert take_prefix(from_digit_file(df.path), 21) == digits


def test_digit_file_large_multi_block(tmp_path):
    digits = np.random.default_rng(0).integers(0, 7, size=3_000_000)
    write_digit_file(tmp_path / "big.txt", digits.tolist(), base=7)
    s = from_digit_file(tmp_path / "big.txt")
    assert np.array_equal(s.pull(len(digits)), digits)
