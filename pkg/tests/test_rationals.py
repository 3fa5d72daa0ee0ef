from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from puiseux.errors import DomainError
from puiseux.rationals import (
    INFINITY,
    denominator,
    format_rational,
    is_prime,
    normalize,
    numerator,
    padic_valuation,
    parse_rational,
    prime_stream,
)

positive_rationals = st.builds(
    Fraction, st.integers(1, 400), st.integers(1, 60)
)


def test_normalize_reduces():
    assert normalize(6, 4) == Fraction(3, 2)
    assert normalize(0, 7) == Fraction(0, 1)
    assert normalize(35, 10) == Fraction(7, 2)


def test_normalize_rejects_bad_denominators():
    with pytest.raises(DomainError):
        normalize(1, 0)
    with pytest.raises(DomainError):
        normalize(1, -2)
    with pytest.raises(DomainError):
        normalize(-1, 2)


def test_numerator_denominator_conventions():
    assert (numerator(Fraction(3, 2)), denominator(Fraction(3, 2))) == (3, 2)
    assert (numerator(7), denominator(7)) == (7, 1)
    assert (numerator(0), denominator(0)) == (0, 1)


def test_padic_valuation_examples():
    assert padic_valuation(2, Fraction(3, 8)) == -3
    assert padic_valuation(3, Fraction(9, 5)) == 2
    assert padic_valuation(5, 0) == INFINITY


def test_padic_valuation_rejects_composite_base():
    with pytest.raises(DomainError):
        padic_valuation(4, Fraction(1, 2))
    with pytest.raises(DomainError):
        padic_valuation(1, 3)


@given(st.sampled_from([2, 3, 5, 7, 13]), positive_rationals, positive_rationals)
def test_valuation_is_additive(p, q1, q2):
    assert padic_valuation(p, q1 * q2) == padic_valuation(p, q1) + padic_valuation(p, q2)


@given(positive_rationals, st.integers(1, 50))
def test_normalize_round_trip(q, k):
    assert normalize(q.numerator * k, q.denominator * k) == q


def test_parse_accepts_unreduced_and_integers():
    assert parse_rational("35/10") == Fraction(7, 2)
    assert parse_rational("7") == Fraction(7)
    assert parse_rational(" 6 / 4 ") == Fraction(3, 2)


def test_parse_rejects_floats_and_negatives():
    with pytest.raises(DomainError):
        parse_rational("1.5")
    with pytest.raises(DomainError):
        parse_rational("1e3")
    with pytest.raises(DomainError):
        parse_rational("-3/2")
    with pytest.raises(DomainError):
        parse_rational("3/0")


@given(positive_rationals)
def test_format_parse_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_format_drops_unit_denominator():
    assert format_rational(Fraction(8, 4)) == "2"
    assert format_rational(Fraction(3, 2)) == "3/2"


def test_prime_stream():
    stream = prime_stream()
    assert [next(stream) for _ in range(6)] == [2, 3, 5, 7, 11, 13]
    odd = prime_stream(odd_only=True)
    assert [next(odd) for _ in range(4)] == [3, 5, 7, 11]


def test_is_prime_small_cases():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}
    for n in range(31):
        assert is_prime(n) == (n in primes)
    assert is_prime(2**31 - 1)  # Mersenne
    assert not is_prime(3**10)
