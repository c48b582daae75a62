"""Exact rational helpers and the double-factorial primitives.

All game values are carried as :class:`fractions.Fraction`; floats only
appear when rendering a decimal column for humans.
"""

from __future__ import annotations

import math
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

DISPLAY_DIGITS = 6


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction without ever passing through a float.

    Strings may be ``"p/q"``, an integer, or a finite decimal such as
    ``"0.45"``; decimals are converted exactly.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass 'p/q' or a decimal string")
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            try:
                return Fraction(int(num), int(den))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"not a rational: {value!r}") from exc
        try:
            dec = Decimal(text)
        except InvalidOperation as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
        if not dec.is_finite():
            raise ValueError(f"not a finite rational: {value!r}")
        return Fraction(dec)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def fmt_rational(x: Fraction | int) -> str:
    """Canonical text form: ``"p/q"`` in lowest terms, ``"p"`` when q = 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def fmt_decimal(x: Fraction | int, digits: int = DISPLAY_DIGITS) -> str:
    """Display-only decimal rendering, rounded half-even to ``digits`` places."""
    x = Fraction(x)
    q = Decimal(x.numerator) / Decimal(x.denominator) if x.denominator != 1 else Decimal(x.numerator)
    # Decimal division above uses the context precision (28 digits) which is
    # plenty for display purposes.
    return f"{q:.{digits}f}"


def double_factorial(n: int) -> int:
    """n!! = n(n-2)(n-4)...(2 or 1), with (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError(f"double factorial undefined for n = {n} < -1")
    return _double_factorial(n)


@lru_cache(maxsize=4096)
def _double_factorial(n: int) -> int:
    if n <= 0:
        return 1
    # math.prod over a stride is much faster than the naive recursion for
    # the n ~ 10^3..10^4 values the asymptotic checks use.
    return math.prod(range(n, 0, -2))


def q_product(terms: Iterable[int]) -> Fraction:
    """q(a_1, ..., a_k) = prod a_i / (a_i - 1); the empty product is 1."""
    num = 1
    den = 1
    for a in terms:
        if a < 2:
            raise ValueError(f"q-product terms must be >= 2, got {a}")
        num *= a
        den *= a - 1
    return Fraction(num, den)


def lcm_range(k: int) -> int:
    """lcm(1, 2, ..., k); 1 for k <= 1."""
    return math.lcm(*range(1, k + 1)) if k >= 1 else 1


def sqrt_leq(x: Fraction, y_squared: Fraction) -> bool:
    """Exact test of ``x <= sqrt(y_squared)`` for ``y_squared >= 0``."""
    if x <= 0:
        return True
    return x * x <= y_squared
