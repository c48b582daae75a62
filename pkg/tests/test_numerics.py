from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from icyf.numerics import (
    as_rational, double_factorial, fmt_decimal, fmt_rational, lcm_range, q_product, sqrt_leq,
)


@pytest.mark.parametrize("n, expected", [(9, 945), (8, 384), (-1, 1), (0, 1), (1, 1), (2, 2)])
def test_double_factorial_values(n, expected):
    assert double_factorial(n) == expected


def test_double_factorial_rejects_below_minus_one():
    with pytest.raises(ValueError):
        double_factorial(-2)


@pytest.mark.parametrize("n", range(2, 41, 2))
def test_even_double_factorial_pairs_multiply_to_factorial(n):
    assert double_factorial(n) * double_factorial(n - 1) == math.factorial(n)


@pytest.mark.parametrize("terms, expected", [
    ([], Fraction(1)),
    ([5], Fraction(5, 4)),
    ([3, 5, 7], Fraction(35, 16)),
])
def test_q_product_values(terms, expected):
    assert q_product(terms) == expected


def test_q_product_rejects_small_terms():
    with pytest.raises(ValueError):
        q_product([1, 3])


@given(st.integers(0, 15), st.integers(0, 10), st.integers(0, 10))
def test_q_product_chains_concatenate(s, a, b):
    # q(s+2, ..., m) * q(m+2, ..., top) == q(s+2, ..., top) along odd/even chains
    mid = s + 2 * a
    top = mid + 2 * b
    lower = range(s + 2, mid + 1, 2)
    upper = range(mid + 2, top + 1, 2)
    assert q_product(lower) * q_product(upper) == q_product(range(s + 2, top + 1, 2))


@pytest.mark.parametrize("text, expected", [
    ("3/4", Fraction(3, 4)),
    ("0.45", Fraction(9, 20)),
    ("7", Fraction(7)),
    (" -1/3 ", Fraction(-1, 3)),
    ("1e-3", Fraction(1, 1000)),
])
def test_as_rational_parses_exactly(text, expected):
    assert as_rational(text) == expected


@pytest.mark.parametrize("bad", [0.5, True, "abc", "1/0", "nan", "inf", None])
def test_as_rational_rejects(bad):
    with pytest.raises((TypeError, ValueError)):
        as_rational(bad)


@given(st.fractions())
def test_fmt_rational_round_trips(x):
    assert as_rational(fmt_rational(x)) == x


def test_fmt_forms():
    assert fmt_rational(Fraction(6, 4)) == "3/2"
    assert fmt_rational(Fraction(4, 2)) == "2"
    assert fmt_decimal(Fraction(1, 3)) == "0.333333"


def test_lcm_range():
    assert [lcm_range(k) for k in range(1, 7)] == [1, 2, 6, 12, 60, 60]


def test_sqrt_leq_is_exact():
    assert sqrt_leq(Fraction(3, 2), Fraction(9, 4))
    assert not sqrt_leq(Fraction(3, 2) + Fraction(1, 10**30), Fraction(9, 4))
