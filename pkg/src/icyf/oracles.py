"""Brute-force grid minimax for the three interval games.

Everything here works in integer grid units: a loyalty or target mass ``x``
is represented by ``X = x * D``.  None of it consults the closed forms or
the constructive strategies, so it can serve as an independent check on them.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .numerics import as_rational, lcm_range
from .players import Player


def _grid_units(value, D: int, what: str) -> int:
    value = as_rational(value)
    scaled = value * D
    if scaled.denominator != 1:
        raise ValueError(f"{what} = {value} is not a multiple of 1/{D}")
    return int(scaled)


def _win_table(D: int, tie: Player) -> list[int]:
    """[X/D wins for Player 1] for X = 0..D."""
    out = []
    for x in range(D + 1):
        if 2 * x > D:
            out.append(1)
        elif 2 * x == D:
            out.append(1 if tie is Player.P1 else 0)
        else:
            out.append(0)
    return out


def _sorted_allocations(k: int, total: int, cap: int, top: int):
    """Nonincreasing k-tuples in [0, min(cap, top)] summing to ``total``."""
    if k == 0:
        if total == 0:
            yield ()
        return
    hi = min(cap, top, total)
    lo = -(-total // k)  # the largest part is at least the mean
    for first in range(hi, lo - 1, -1):
        for rest in _sorted_allocations(k - 1, total - first, cap, first):
            yield (first,) + rest


class Game1Oracle:
    """Exact minimax of the slate game restricted to grid allocations.

    ``mode="full"`` enumerates every allocation (as a multiset, since the
    freezer may pick any position); ``mode="two_value"`` only considers
    allocations taking at most two distinct values, evaluated with numpy.
    """

    def __init__(self, D: int, tie: Player = Player.P1, mode: str = "full"):
        if D < 1:
            raise ValueError("D must be positive")
        if mode not in ("full", "two_value"):
            raise ValueError(f"unknown mode {mode!r}")
        self.D = D
        self.tie = tie
        self.mode = mode
        self.win = _win_table(D, tie)
        self._memo: dict[tuple[int, int, Player], int] = {}
        self._tables: dict[tuple[int, Player], np.ndarray] = {}

    def value(self, k: int, S: int, mover: Player) -> int:
        if not 0 <= S <= k * self.D:
            raise ValueError(f"grid mass {S} outside [0, {k * self.D}]")
        if self.mode == "two_value":
            return int(self.table(k, mover)[S])
        return self._full(k, S, mover)

    def _full(self, k: int, S: int, mover: Player) -> int:
        if k == 0:
            return 0
        key = (k, S, mover)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        freezer = mover.other
        best = None
        for alloc in _sorted_allocations(k, S, self.D, self.D):
            reply = None
            for x in set(alloc):
                v = self.win[x] + self._full(k - 1, S - x, freezer)
                if reply is None or (v < reply if freezer is Player.P2 else v > reply):
                    reply = v
            if best is None or (reply > best if mover is Player.P1 else reply < best):
                best = reply
        self._memo[key] = best
        return best

    def table(self, k: int, mover: Player) -> np.ndarray:
        """Values f(k, S/D, mover) for S = 0..kD, two-value mode."""
        key = (k, mover)
        if key in self._tables:
            return self._tables[key]
        D = self.D
        if k == 0:
            arr = np.zeros(1, dtype=np.int64)
            self._tables[key] = arr
            return arr
        prev = self.table(k - 1, mover.other)
        win = np.asarray(self.win, dtype=np.int64)
        S = np.arange(k * D + 1)
        freezer = mover.other
        reply_op = np.minimum if freezer is Player.P2 else np.maximum
        if mover is Player.P1:
            best = np.full(S.shape, -1, dtype=np.int64)
            better = np.maximum
        else:
            best = np.full(S.shape, k + 1, dtype=np.int64)
            better = np.minimum

        def option(x, ok):
            # masked entries read index 0; their results are discarded
            return win[np.where(ok, x, 0)] + prev[np.where(ok, S - x, 0)]

        uni = (S % k == 0) & (S // k <= D)
        best = np.where(uni, better(best, option(S // k, uni)), best)
        for m in range(1, k):
            for lam in range(D + 1):
                num = S - (k - m) * lam
                ok = (num >= 0) & (num % m == 0) & (num // m <= D)
                if not ok.any():
                    continue
                lam_arr = np.full(S.shape, lam)
                v = reply_op(option(num // m, ok), option(lam_arr, ok))
                best = np.where(ok, better(best, v), best)
        self._tables[key] = best
        return best


def brute_force_game1(k: int, s1, mover: Player = Player.P1, tie: Player = Player.P1,
                      D: int | None = None, mode: str = "full",
                      oracle: Game1Oracle | None = None) -> int:
    """Grid minimax value of the slate game at ``(k, s1, mover)``."""
    if mode == "full" and k > 3 and oracle is None:
        raise ValueError("full enumeration is limited to k <= 3")
    if mode == "two_value" and k > 6:
        raise ValueError("two-value enumeration is limited to k <= 6")
    if D is None:
        D = math.lcm(2 * lcm_range(k) * 12, as_rational(s1).denominator)
    if D % (2 * lcm_range(k)):
        raise ValueError(f"D = {D} must be divisible by 2*lcm(1..{k})")
    S = _grid_units(s1, D, "s1")
    if oracle is None:
        oracle = Game1Oracle(D, tie, mode)
    return oracle.value(k, S, mover)


# ---------------------------------------------------------------------------
# I-cut-I-freeze


class IcifOracle:
    """Grid minimax for I-cut-I-freeze: the divider picks its own frozen district."""

    def __init__(self, D: int, tie: Player = Player.P1):
        self.D = D
        self.tie = tie
        self.win = _win_table(D, tie)
        self.value = lru_cache(maxsize=None)(self._value)

    def moves(self, k: int, S: int) -> range:
        """Feasible frozen loyalties X: the rest must fit in k - 1 districts."""
        return range(max(0, S - (k - 1) * self.D), min(self.D, S) + 1)

    def _value(self, k: int, S: int, mover: Player) -> int:
        if k == 0:
            return 0
        vals = [self.win[x] + self.value(k - 1, S - x, mover.other) for x in self.moves(k, S)]
        return max(vals) if mover is Player.P1 else min(vals)

    def best_move(self, k: int, S: int, mover: Player) -> int:
        target = self.value(k, S, mover)
        for x in self.moves(k, S):
            if self.win[x] + self.value(k - 1, S - x, mover.other) == target:
                return x
        raise AssertionError("no move attains the value")


def icif_value(n: int, s1, first: Player = Player.P1, tie: Player = Player.P1,
               D: int = 60) -> int:
    S = _grid_units(s1, D, "s1")
    return IcifOracle(D, tie).value(n, S, first)


class IcifGridStrategy:
    """Optimal grid play for I-cut-I-freeze: freeze district 0, spread the rest."""

    def __init__(self, D: int = 60, tie: Player = Player.P1):
        self.oracle = IcifOracle(D, tie)

    def cut_and_freeze(self, pos):
        D = self.oracle.D
        S = _grid_units(pos.s1, D, "s1")
        x = self.oracle.best_move(pos.k, S, pos.mover)
        frozen = Fraction(x, D)
        rest = pos.s1 - frozen
        others = [rest / (pos.k - 1)] * (pos.k - 1) if pos.k > 1 else []
        return [frozen] + others, 0


# ---------------------------------------------------------------------------
# Target packing


class Game2Oracle:
    """Exact grid minimax for the target game.

    The value of a position is the largest target mass any frozen district
    ends up holding.  Player 1 maximises it, Player 2 minimises it.
    Returned values are in grid units.
    """

    def __init__(self, D: int):
        self.D = D
        self.value = lru_cache(maxsize=None)(self._value)

    def _value(self, k: int, S: int, divider: Player) -> int:
        if k == 1:
            if S > self.D:
                raise ValueError("a single district cannot hold more than 1")
            return S
        chooser = divider.other
        best = None
        cap = self.D
        for alloc in _sorted_allocations(k, S, cap, cap):
            reply = None
            for x in set(alloc):
                v = max(self.value(k - 1, S - x, chooser), x)
                if reply is None or (v > reply if chooser is Player.P1 else v < reply):
                    reply = v
            if best is None or (reply > best if divider is Player.P1 else reply < best):
                best = reply
        if best is None:
            raise ValueError(f"mass {S} does not fit in {k} districts")
        return best


class IcifGame2Oracle:
    """Target game under I-cut-I-freeze: the divider fixes its own frozen district."""

    def __init__(self, D: int):
        self.D = D
        self.value = lru_cache(maxsize=None)(self._value)

    def _value(self, k: int, S: int, divider: Player) -> int:
        if k == 1:
            return S
        moves = range(max(0, S - (k - 1) * self.D), min(self.D, S) + 1)
        vals = [max(x, self.value(k - 1, S - x, divider.other)) for x in moves]
        return max(vals) if divider is Player.P1 else min(vals)


def brute_force_game2(n: int, s_T, divider: Player = Player.P2, D: int | None = None,
                      oracle: Game2Oracle | None = None) -> Fraction:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > 4 and oracle is None:
        raise ValueError("brute force is limited to n <= 4")
    if D is None:
        D = math.lcm(lcm_range(n) * 12, as_rational(s_T).denominator)
    if D % lcm_range(n):
        raise ValueError(f"D = {D} must be divisible by lcm(1..{n})")
    S = _grid_units(s_T, D, "s_T")
    if S < 0:
        raise ValueError("s_T must be nonnegative")
    if oracle is None:
        oracle = Game2Oracle(D)
    return Fraction(oracle.value(n, S, divider), D)


def icif_game2_value(n: int, s_T, divider: Player = Player.P1, D: int = 12) -> Fraction:
    S = _grid_units(s_T, D, "s_T")
    return Fraction(IcifGame2Oracle(D).value(n, S, divider), D)
