"""Target packing under I-cut-you-freeze, without geometry.

A target of mass ``s_T`` (in district units) is spread over the unfrozen
districts.  Player 1 wants some frozen district to hold as much of it as
possible; Player 2 wants the opposite.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .numerics import as_rational, double_factorial, fmt_decimal, fmt_rational
from .oracles import Game2Oracle, IcifGame2Oracle, brute_force_game2, icif_game2_value
from .players import Player

__all__ = [
    "game2_value", "b_value", "splitter_move", "concentrator_move",
    "brute_force_game2", "icif_game2_value", "b_value_rows",
    "Game2Oracle", "IcifGame2Oracle",
]


def game2_value(n: int, s_T, divider: Player = Player.P2) -> Fraction:
    """Largest frozen target share under optimal play.

    s_T (n-1)!!/n!! when Player 2 divides first, s_T (n-2)!!/(n-1)!! when
    Player 1 does.  The game itself only makes sense for s_T <= 1 (a
    district cannot hold more than its own measure); the formula is
    returned for any s_T >= 0.
    """
    s_T = as_rational(s_T)
    if n < 1:
        raise ValueError("n must be >= 1")
    if s_T < 0:
        raise ValueError("target mass must be nonnegative")
    if divider is Player.P2:
        return s_T * Fraction(double_factorial(n - 1), double_factorial(n))
    return s_T * Fraction(double_factorial(n - 2), double_factorial(n - 1))


def b_value(n: int) -> Fraction:
    """min{n!!/(n-1)!!, (n-1)!!/(n-2)!!}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a = Fraction(double_factorial(n), double_factorial(n - 1))
    b = Fraction(double_factorial(n - 1), double_factorial(n - 2))
    return min(a, b)


def b_values(n_max: int) -> list[Fraction]:
    """b_value(1..n_max) via the ratio recurrence, avoiding huge products."""
    # r[n] = n!!/(n-1)!! satisfies r[n] = r[n-2] * n/(n-1)
    ratios = [Fraction(1), Fraction(1)]  # r[0] = 0!!/(-1)!!, r[1] = 1!!/0!!
    for n in range(2, n_max + 1):
        ratios.append(ratios[n - 2] * Fraction(n, n - 1))
    return [min(ratios[n], ratios[n - 1]) for n in range(1, n_max + 1)]


def splitter_move(k: int, s) -> list[Fraction]:
    s = as_rational(s)
    if k < 1:
        raise ValueError("k must be >= 1")
    if s < 0:
        raise ValueError("target mass must be nonnegative")
    return [s / k] * k


def concentrator_move(k: int, s) -> list[Fraction]:
    s = as_rational(s)
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 0 <= s <= 1:
        raise ValueError(f"a single district cannot hold target mass {s}")
    return [s] + [Fraction(0)] * (k - 1)


def b_value_rows(n_max: int, digits: int = 6) -> list[dict]:
    rows = []
    for n, b in enumerate(b_values(n_max), start=1):
        rows.append({
            "n": n,
            "b_value": fmt_rational(b),
            "b_value_decimal": fmt_decimal(b, digits),
            "sqrt_n_over_2": f"{math.sqrt(n) / 2:.{digits}f}",
            "sqrt_2n_over_pi": f"{math.sqrt(2 * n / math.pi):.{digits}f}",
        })
    return rows
