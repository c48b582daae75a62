"""The slate game: I-cut-you-freeze on the interval [0, n].

Positions are ``(k, s1, mover)``: ``k`` unfrozen unit districts remain,
Player 1 holds loyal measure ``s1`` among them, and ``mover`` is about to
divide.  Values always count Player-1 districts, whoever moves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Protocol, Sequence

from .numerics import as_rational, double_factorial, fmt_rational
from .players import HALF, Player, p1_wins, wins


class ProtocolError(RuntimeError):
    """A strategy produced an illegal move."""

    def __init__(self, round_index: int, message: str):
        super().__init__(f"round {round_index}: {message}")
        self.round_index = round_index


@dataclass(frozen=True)
class GamePosition:
    k: int
    s1: Fraction
    mover: Player
    tie: Player = Player.P1

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be >= 0")
        if not 0 <= self.s1 <= self.k:
            raise ValueError(f"s1 = {self.s1} outside [0, {self.k}]")

    @property
    def s2(self) -> Fraction:
        return self.k - self.s1

    def loyal(self, player: Player) -> Fraction:
        return self.s1 if player is Player.P1 else self.s2

    @property
    def p1_stronger(self) -> bool:
        # At exactly k/2 the player favoured by the tie rule is the stronger
        # one: only then does a uniform split carry every district for that player.
        if 2 * self.s1 == self.k:
            return self.tie is Player.P1
        return 2 * self.s1 > self.k

    def stronger(self, player: Player) -> bool:
        return self.p1_stronger if player is Player.P1 else not self.p1_stronger


# ---------------------------------------------------------------------------
# Closed forms


class Threshold(NamedTuple):
    value: Fraction
    inclusive: bool

    def met_by(self, s: Fraction) -> bool:
        return s >= self.value if self.inclusive else s > self.value


def _df(n: int) -> int:
    return double_factorial(n)


@lru_cache(maxsize=None)
def _p1_threshold_values(n: int) -> tuple[Fraction, ...]:
    """Threshold values for k = 1..n when Player 1 divides first."""
    odd = n % 2
    out = []
    for k in range(1, n + 1):
        if 2 * k <= n:
            a = 2 * k + odd
            val = Fraction(_df(n - 1) * _df(a - 2), 2 * _df(a - 3) * _df(n - 2))
        else:
            b = 2 * (n - k) - odd
            val = n - Fraction(_df(n) * _df(b + 1), 2 * _df(b) * _df(n - 1))
        out.append(val)
    return tuple(out)


def closed_form_threshold(n: int, k: int, tie: Player = Player.P1,
                          first: Player = Player.P1) -> Threshold:
    """Least loyal measure with which Player 1 secures at least ``k`` seats.

    Player 1 wins ``>= k`` districts exactly when ``s`` meets the returned
    threshold (``>=`` when ties favour Player 1, ``>`` otherwise).  For
    ``first=Player.P2`` the threshold is obtained by relabelling the
    players: f(n, s, 2) = n - f(n, n - s, 1) with the tie rule mirrored.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 1 <= k <= n:
        raise ValueError(f"k = {k} outside [1, {n}]")
    inclusive = tie is Player.P1
    if first is Player.P1:
        return Threshold(_p1_threshold_values(n)[k - 1], inclusive)
    return Threshold(n - _p1_threshold_values(n)[n - k], inclusive)


def threshold_table(n: int, tie: Player = Player.P1,
                    first: Player = Player.P1) -> list[Threshold]:
    return [closed_form_threshold(n, k, tie, first) for k in range(1, n + 1)]


def sigma(n: int, s, tie: Player = Player.P1, first: Player = Player.P1) -> int:
    """Player-1 slate under optimal play, from the threshold table."""
    s = as_rational(s)
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= s <= n:
        raise ValueError(f"s = {s} outside [0, {n}]")
    table = threshold_table(n, tie, first)
    # thresholds increase with k, so binary search for the last one met
    lo, hi = 0, n
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if table[mid - 1].met_by(s):
            lo = mid
        else:
            hi = mid - 1
    return lo


def asymptotic_share(alpha) -> Fraction:
    alpha = as_rational(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha = {alpha} outside [0, 1]")
    if alpha <= HALF:
        return 2 * alpha * alpha
    return 1 - 2 * (1 - alpha) ** 2


def one_player_decides_slate(n: int, s) -> int:
    """Slate of the deciding Player 1: min(n, floor(2s))."""
    s = as_rational(s)
    if not 0 <= s <= n:
        raise ValueError(f"s = {s} outside [0, {n}]")
    return min(n, math.floor(2 * s))


# ---------------------------------------------------------------------------
# Optimal moves and the value recursion


def stronger_move(k: int, mover_loyal) -> list[Fraction]:
    """Uniform split; entries are the mover's loyalty per district."""
    mover_loyal = as_rational(mover_loyal)
    if k < 1:
        raise ValueError("k must be >= 1")
    if 2 * mover_loyal < k:
        raise ValueError(f"mover with measure {mover_loyal} is not stronger at k = {k}")
    if mover_loyal > k:
        raise ValueError("loyal measure exceeds the unfrozen region")
    return [mover_loyal / k] * k


def weaker_count(mover_loyal: Fraction, mover: Player, tie: Player) -> int:
    """Number m of districts the weaker mover stocks with loyalty s_A / m.

    The favoured side of the tie rule may land exactly on 1/2 and uses
    floor(2 s_A); the other side needs a strict majority, ceil(2 s_A) - 1.
    """
    if tie is mover:
        return math.floor(2 * mover_loyal)
    return math.ceil(2 * mover_loyal) - 1


def weaker_move(k: int, mover_loyal, mover: Player, tie: Player = Player.P1) -> list[Fraction]:
    """Concentrate the weaker mover's mass: s_A/m in m districts, 0 elsewhere."""
    mover_loyal = as_rational(mover_loyal)
    if k < 1:
        raise ValueError("k must be >= 1")
    if mover_loyal < 0:
        raise ValueError("loyal measure must be nonnegative")
    p1_measure = mover_loyal if mover is Player.P1 else k - mover_loyal
    if GamePosition(k, p1_measure, mover, tie).stronger(mover):
        raise ValueError(f"mover with measure {mover_loyal} is stronger at k = {k}")
    if not wins(mover_loyal, mover, tie):
        raise ValueError(f"measure {mover_loyal} cannot carry any district")
    m = weaker_count(mover_loyal, mover, tie)
    share = mover_loyal / m
    return [share] * m + [Fraction(0)] * (k - m)


def to_p1_loyalty(values: Sequence[Fraction], holder: Player) -> list[Fraction]:
    if holder is Player.P1:
        return list(values)
    return [1 - x for x in values]


def optimal_division(pos: GamePosition) -> list[Fraction]:
    """The mover's optimal allocation, as Player-1 loyalty per district."""
    mover = pos.mover
    loyal = pos.loyal(mover)
    if pos.k == 0:
        return []
    if not wins(loyal, mover, pos.tie) or pos.stronger(mover):
        # a hopeless mover gains nothing from any shape; use the uniform split
        return [pos.s1 / pos.k] * pos.k
    return to_p1_loyalty(weaker_move(pos.k, loyal, mover, pos.tie), mover)


def game_value(pos: GamePosition) -> int:
    """f(k, s1, mover): Player-1 slate under optimal play from ``pos``."""
    k, s1, mover, tie = pos.k, pos.s1, pos.mover, pos.tie
    total = 0
    while k > 0:
        p = GamePosition(k, s1, mover, tie)
        loyal = p.loyal(mover)
        if not wins(loyal, mover, tie):
            # the mover can never reach a majority again
            return total + (0 if mover is Player.P1 else k)
        if p.stronger(mover):
            x = s1 / k
            total += p1_wins(x, tie)
            s1 -= x
        else:
            if mover is Player.P2:
                # Player 1 freezes a district that is entirely his
                total += 1
                s1 -= 1
            # else Player 2 freezes a district with no Player-1 loyalty
        k -= 1
        mover = mover.other
    return total


def optimal_freeze(pos: GamePosition, alloc: Sequence[Fraction]) -> int:
    """Freezer's best district for a Player-1-loyalty allocation.

    Only the extreme district of each class (won / lost by Player 1)
    needs evaluating; value ties go to the lower index.
    """
    _check_allocation(pos, alloc, round_index=pos.k)
    freezer = pos.mover.other
    tie = pos.tie
    won = [i for i, x in enumerate(alloc) if p1_wins(x, tie)]
    lost = [i for i, x in enumerate(alloc) if not p1_wins(x, tie)]
    # Player 2 removes as much Player-1 mass as possible, Player 1 as little.
    pick = max if freezer is Player.P2 else min
    candidates = sorted(
        pick(cls, key=lambda i: (alloc[i], -i) if pick is max else (alloc[i], i))
        for cls in (won, lost) if cls
    )
    best_i, best_v = None, None
    for i in candidates:
        v = p1_wins(alloc[i], tie) + game_value(
            GamePosition(pos.k - 1, pos.s1 - alloc[i], freezer, tie))
        better = best_v is None or (v < best_v if freezer is Player.P2 else v > best_v)
        if better:
            best_i, best_v = i, v
    return best_i


def _check_allocation(pos: GamePosition, alloc: Sequence[Fraction], round_index: int):
    if len(alloc) != pos.k:
        raise ProtocolError(round_index, f"expected {pos.k} districts, got {len(alloc)}")
    for i, x in enumerate(alloc):
        if not isinstance(x, Fraction):
            raise ProtocolError(round_index, f"district {i} loyalty {x!r} is not exact")
        if not 0 <= x <= 1:
            raise ProtocolError(round_index, f"district {i} loyalty {x} outside [0, 1]")
    if sum(alloc, Fraction(0)) != pos.s1:
        raise ProtocolError(round_index,
                            f"loyalties sum to {sum(alloc, Fraction(0))}, expected {pos.s1}")


# ---------------------------------------------------------------------------
# Simulation


class Strategy(Protocol):
    def divide(self, pos: GamePosition) -> list[Fraction]: ...

    def freeze(self, pos: GamePosition, alloc: Sequence[Fraction]) -> int: ...


class OptimalStrategy:
    """Constructive optimal play for either seat."""

    def divide(self, pos):
        return optimal_division(pos)

    def freeze(self, pos, alloc):
        return optimal_freeze(pos, alloc)


class RandomStrategy:
    """Uniformly random legal-looking moves on a fixed rational grid."""

    def __init__(self, seed: int, grid: int = 60):
        import random

        self.rng = random.Random(seed)
        self.grid = grid

    def divide(self, pos):
        k, s1 = pos.k, pos.s1
        alloc = [s1 / k] * k
        # random pairwise transfers keep the sum and the [0, 1] bounds
        for _ in range(3 * k):
            i, j = self.rng.randrange(k), self.rng.randrange(k)
            if i == j:
                continue
            room = min(1 - alloc[i], alloc[j])
            amount = room * Fraction(self.rng.randint(0, self.grid), self.grid)
            alloc[i] += amount
            alloc[j] -= amount
        return alloc

    def freeze(self, pos, alloc):
        return self.rng.randrange(len(alloc))


@dataclass
class RoundRecord:
    t: int
    divider: Player
    allocation: list[Fraction]
    frozen_index: int
    frozen_loyalty: Fraction
    winner: Player

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "divider": self.divider.label,
            "allocation": [fmt_rational(x) for x in self.allocation],
            "frozen_index": self.frozen_index,
            "frozen_loyalty": fmt_rational(self.frozen_loyalty),
            "winner": self.winner.label,
        }


@dataclass
class PlayTranscript:
    n: int
    s1: Fraction
    tie: Player
    first_mover: Player
    rounds: list[RoundRecord] = field(default_factory=list)
    protocol: str = "i-cut-you-freeze"

    @property
    def slate_p1(self) -> int:
        return sum(1 for r in self.rounds if r.winner is Player.P1)

    final_slate_p1 = slate_p1

    def to_json(self) -> dict:
        return {
            "protocol": self.protocol,
            "n": self.n,
            "s1": fmt_rational(self.s1),
            "tie": self.tie.label,
            "first_mover": self.first_mover.label,
            "rounds": [r.to_json() for r in self.rounds],
            "slate_p1": self.slate_p1,
        }


def _winner(x: Fraction, tie: Player) -> Player:
    return Player.P1 if p1_wins(x, tie) else Player.P2


def play_protocol(n: int, s1, first_mover: Player, strat1: Strategy, strat2: Strategy,
                  tie: Player = Player.P1) -> PlayTranscript:
    """Run I-cut-you-freeze for ``n`` rounds, numbered n down to 1."""
    s1 = as_rational(s1)
    GamePosition(n, s1, first_mover, tie)
    strategies = {Player.P1: strat1, Player.P2: strat2}
    transcript = PlayTranscript(n, s1, tie, first_mover)
    divider, remaining = first_mover, s1
    for t in range(n, 0, -1):
        pos = GamePosition(t, remaining, divider, tie)
        alloc = list(strategies[divider].divide(pos))
        _check_allocation(pos, alloc, t)
        i = strategies[divider.other].freeze(pos, alloc)
        if not (isinstance(i, int) and 0 <= i < t):
            raise ProtocolError(t, f"freeze index {i!r} outside [0, {t})")
        x = alloc[i]
        transcript.rounds.append(RoundRecord(t, divider, alloc, i, x, _winner(x, tie)))
        remaining -= x
        divider = divider.other
    return transcript


# ---------------------------------------------------------------------------
# I-cut-I-freeze


class IcifStrategy(Protocol):
    def cut_and_freeze(self, pos: GamePosition) -> tuple[list[Fraction], int]: ...


def icif_play(n: int, s1, strat1: IcifStrategy, strat2: IcifStrategy,
              tie: Player = Player.P1, first_mover: Player = Player.P1) -> PlayTranscript:
    """I-cut-I-freeze: each divider freezes one of its own districts."""
    s1 = as_rational(s1)
    GamePosition(n, s1, first_mover, tie)
    strategies = {Player.P1: strat1, Player.P2: strat2}
    transcript = PlayTranscript(n, s1, tie, first_mover, protocol="i-cut-i-freeze")
    divider, remaining = first_mover, s1
    for t in range(n, 0, -1):
        pos = GamePosition(t, remaining, divider, tie)
        alloc, i = strategies[divider].cut_and_freeze(pos)
        alloc = list(alloc)
        _check_allocation(pos, alloc, t)
        if not (isinstance(i, int) and 0 <= i < t):
            raise ProtocolError(t, f"freeze index {i!r} outside [0, {t})")
        x = alloc[i]
        transcript.rounds.append(RoundRecord(t, divider, alloc, i, x, _winner(x, tie)))
        remaining -= x
        divider = divider.other
    return transcript
