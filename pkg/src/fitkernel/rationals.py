"""Small helpers around exact rational arithmetic.

Rationals are plain ``fractions.Fraction`` throughout the package; this
module adds p-valuations and the "a/b" string form used by the CLI.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

INFINITY = float("inf")  # valuation of 0


def vp_int(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(q: Fraction, p: int):
    """p-adic valuation of a rational; returns INFINITY for 0."""
    if q == 0:
        return INFINITY
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


def is_p_integral(q: Fraction, p: int) -> bool:
    return q.denominator % p != 0


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s) -> Fraction:
    """Parse "a/b" or "a" (also accepts ints)."""
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, Fraction):
        return s
    if not isinstance(s, str):
        raise ValueError(f"cannot parse rational from {s!r}")
    return Fraction(s.strip())


def lcm_int(a: int, b: int) -> int:
    return a * b // gcd(a, b)
