"""Bundled grid states for the property suite."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..players import Player
from .engine import Game3Transcript, game3_play
from .grid import GridState, make_state, rectangle, staircase
from .heuristics import STRATEGIES, make_strategy

# (name, cells, u): n = len(cells) / u is 4, 6 or 9
SHAPES = [
    ("rect-4x4", rectangle(4, 4), 4),
    ("rect-4x6", rectangle(4, 6), 4),
    ("rect-6x6", rectangle(6, 6), 4),
    ("rect-6x6", rectangle(6, 6), 9),
    ("rect-6x9", rectangle(6, 9), 9),
    ("rect-9x9", rectangle(9, 9), 9),
    ("rect-8x8", rectangle(8, 8), 16),
    ("rect-8x12", rectangle(8, 12), 16),
    ("rect-12x12", rectangle(12, 12), 16),
    ("stair-6532", staircase([6, 5, 3, 2]), 4),
    ("stair-877653", staircase([8, 7, 7, 6, 5, 3]), 4),
    ("stair-10-8", staircase([10, 10, 9, 9, 8, 8]), 9),
    ("stair-12-9", staircase([12, 12, 11, 10, 10, 9]), 16),
]


def quadrant_target(cells):
    """A uniform background plus a mild bump on the lower-left quadrant.

    The background is heavy enough that even splits stay within a grid
    slack of 0.1 for every bundled shape.
    """
    w = max(x for x, _ in cells) + 1
    h = max(y for _, y in cells) + 1
    base = 80

    def target(cell):
        x, y = cell
        return Fraction(base + (2 if x < (w + 1) // 2 and y < (h + 1) // 2 else 0))
    return target


def bundled_states() -> list[tuple[str, GridState]]:
    """The suite states, each scaled to total target mass 1 (so r0 = 1/n)."""
    out = []
    for name, cells, u in SHAPES:
        weight = quadrant_target(cells)
        total = sum(weight(c) for c in cells)
        out.append((f"{name}-u{u}", make_state(cells, u, lambda c, w=weight, t=total: w(c) / t)))
    return out


@dataclass
class SuiteRun:
    state_name: str
    strategy: str
    first_cutter: Player
    seed: int
    transcript: Game3Transcript


def run_suite(seed: int = 0) -> list[SuiteRun]:
    runs = []
    for si, (name, state) in enumerate(bundled_states()):
        for strat in sorted(STRATEGIES):
            for first in (Player.P1, Player.P2):
                run_seed = seed * 1000 + si * 10 + int(first)
                tr = game3_play(state, first, make_strategy(strat, run_seed), seed=run_seed)
                runs.append(SuiteRun(name, strat, first, run_seed, tr))
    return runs
