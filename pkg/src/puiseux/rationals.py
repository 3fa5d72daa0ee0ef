"""Exact nonnegative rational scalars and p-adic valuations.

The scalar type everywhere is :class:`fractions.Fraction`, which already
keeps values in reduced form with a positive denominator and arbitrary
precision.  This module adds the conventions the rest of the toolkit relies
on: the zero element is 0/1, serialization is ``"a/b"`` (or ``"a"`` for
integers), and the p-adic valuation extends to all of Q>=0 with
``padic_valuation(p, 0) == INFINITY``.
"""

import re
from fractions import Fraction
from math import inf
from typing import Iterator

from .errors import DomainError

Rational = Fraction

#: Valuation of zero.  A float infinity so comparisons with integer
#: valuations behave (INFINITY > v for every integer v).
INFINITY = inf

_RATIONAL_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+)\s*)?$")


def normalize(num: int, den: int) -> Fraction:
    """Reduced fraction num/den with num >= 0 and den >= 1."""
    if den == 0:
        raise DomainError("denominator must be nonzero")
    if den < 0 or num < 0:
        raise DomainError("only nonnegative rationals are in scope")
    return Fraction(num, den)


def numerator(q) -> int:
    """n(q): numerator of the reduced form; n(0) == 0."""
    return Fraction(q).numerator


def denominator(q) -> int:
    """d(q): denominator of the reduced form; d(0) == 1."""
    return Fraction(q).denominator


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"``; unreduced input is accepted and reduced.

    Float syntax is rejected on purpose: exactness is the point.
    """
    if not isinstance(text, str):
        if isinstance(text, (int, Fraction)):
            return normalize(numerator(text), denominator(text))
        raise DomainError(f"expected a rational string, got {type(text).__name__}")
    if any(ch in text for ch in ".eE"):
        raise DomainError(
            f"{text!r} looks like a float; rationals must be exact, e.g. \"3/2\""
        )
    m = _RATIONAL_RE.match(text)
    if not m:
        raise DomainError(f"not a rational: {text!r} (expected \"a\" or \"a/b\")")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    return normalize(num, den)


def format_rational(q) -> str:
    """Serialize as ``"a/b"``, or ``"a"`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_stream(odd_only: bool = False) -> Iterator[int]:
    """Primes in increasing order, optionally skipping 2."""
    if not odd_only:
        yield 2
    n = 3
    while True:
        if is_prime(n):
            yield n
        n += 2


def int_valuation(p: int, n: int) -> int:
    """Exponent of p in the positive integer n."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_valuation(p: int, q):
    """v_p(q) = v_p(n(q)) - v_p(d(q)) on Q>=0, with v_p(0) = INFINITY."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    q = Fraction(q)
    if q < 0:
        raise DomainError("valuations are defined on nonnegative rationals here")
    if q == 0:
        return INFINITY
    return int_valuation(p, q.numerator) - int_valuation(p, q.denominator)
