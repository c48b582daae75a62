from __future__ import annotations

import enum
from fractions import Fraction

HALF = Fraction(1, 2)


class Player(enum.IntEnum):
    P1 = 1
    P2 = 2

    @property
    def other(self) -> "Player":
        return Player.P2 if self is Player.P1 else Player.P1

    @property
    def label(self) -> str:
        return f"p{int(self)}"

    @classmethod
    def parse(cls, text: "str | int | Player") -> "Player":
        if isinstance(text, Player):
            return text
        key = str(text).strip().lower().replace("player", "p").replace("_", "")
        if key in ("p1", "1"):
            return cls.P1
        if key in ("p2", "2"):
            return cls.P2
        raise ValueError(f"unknown player {text!r} (expected p1 or p2)")


# A tie-break rule is identified with the player it favours: with
# ``tie=Player.P1`` a district at exactly 1/2 belongs to Player 1.
TieBreak = Player


def wins(loyalty: Fraction, player: Player, tie: Player) -> bool:
    """True if ``player`` carries a district where its own loyalty is ``loyalty``."""
    return loyalty > HALF or (loyalty == HALF and tie is player)


def p1_wins(x: Fraction, tie: Player) -> int:
    """The indicator [x >= 1/2] (or [x > 1/2]) for a Player-1 loyalty ``x``."""
    return 1 if wins(x, Player.P1, tie) else 0
