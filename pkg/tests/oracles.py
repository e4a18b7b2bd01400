"""Independent reference implementations used only to compute expected values.

Nothing here imports from digitavg: each oracle is a separate, simple (often
slow) route to the same answer.
"""

import math
from fractions import Fraction

ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyz"


def to_base(n, b):
    if n == 0:
        return [0]
    out = []
    while n:
        n, d = divmod(n, b)
        out.append(d)
    return out[::-1]


def long_division(p, q, b):
    """(preperiod, period) of p/q in [0,1), canonical trailing-(b-1) form.

    Tracks the exact remaining value as a Fraction and remembers where each
    value was first seen.
    """
    x = Fraction(p, q)
    history = {}
    digits = []
    while x != 0 and x not in history:
        history[x] = len(digits)
        x *= b
        d = math.floor(x)
        digits.append(d)
        x -= d
    if x == 0:
        digits = list(digits)
        while digits and digits[-1] == 0:
            digits.pop()
        digits[-1] -= 1
        return digits, [b - 1]
    start = history[x]
    return digits[:start], digits[start:]


def series_value(prefix, period, b):
    """Value of 0.prefix(period) by summing the geometric series term by term."""
    v = Fraction(0)
    for i, d in enumerate(prefix, 1):
        v += Fraction(d, b**i)
    m = len(period)
    block = sum(Fraction(d, b ** (i + 1)) for i, d in enumerate(period))
    # block * (1 + b^-m + b^-2m + ...) = block * b^m / (b^m - 1)
    return v + block * Fraction(b**m, b**m - 1) / b ** len(prefix)


def multiplicative_order(b, q):
    k, x = 1, b % q
    while x != 1:
        x = x * b % q
        k += 1
    return k


def is_prime_trial(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_flags(limit):
    """bytearray sieve, pure Python."""
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"[: min(2, limit + 1)]
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return flags


def champernowne_digits(count, b=10):
    out = []
    k = 1
    while len(out) < count:
        out.extend(to_base(k, b))
        k += 1
    return out[:count]


def champernowne_string(count):
    parts = []
    total = 0
    k = 1
    while total < count:
        s = str(k)
        parts.append(s)
        total += len(s)
        k += 1
    return "".join(parts)[:count]


def factorial_positions(limit):
    out, n = [], 1
    while math.factorial(n) <= limit:
        out.append(math.factorial(n))
        n += 1
    return out


def sqrt_newton_digits(m, k):
    """Fractional digits of sqrt(m) by integer Newton iteration on m*10^(2k)."""
    target = m * 10 ** (2 * k)
    x = 1 << ((target.bit_length() + 1) // 2 + 1)
    while True:
        y = (x + target // x) // 2
        if y >= x:
            break
        x = y
    while x * x > target:
        x -= 1
    while (x + 1) * (x + 1) <= target:
        x += 1
    return [int(c) for c in str(x)[-k:]]


def e_continued_fraction_digits(k):
    """e = [2; 1, 2, 1, 1, 4, 1, 1, 6, ...]; successive convergents bracket e."""

    def terms():
        yield 2
        j = 1
        while True:
            yield 1
            yield 2 * j
            yield 1
            j += 1

    scale = 10**k
    min_bits = int((k + 2) * 3.33) + 1
    h0, h1 = 1, 0
    k0, k1 = 0, 1
    prev = None
    for a in terms():
        h0, h1 = a * h0 + h1, h0
        k0, k1 = a * k0 + k1, k0
        if k0.bit_length() < min_bits:
            continue
        cur = h0 * scale // k0
        if prev is not None and cur == prev:
            s = str(cur)
            return [int(c) for c in s[1:]]
        prev = cur


def pi_spigot_digits(k):
    """Gibbons' unbounded spigot; returns fractional digits."""
    q, r, t, j, n, l = 1, 0, 1, 1, 3, 3
    out = []
    while len(out) < k + 1:
        if 4 * q + r - t < n * t:
            out.append(n)
            q, r, n = 10 * q, 10 * (r - n * t), (10 * (3 * q + r)) // t - 10 * n
        else:
            q, r, t, j, n, l = q * j, (2 * q + r) * l, t * l, j + 1, (q * (7 * j + 2) + r * l) // (t * l), l + 2
    return out[1:]
