"""Adversarial Player-1 strategies for the grid game.

None of these is claimed optimal; they push in different directions so
the bound checks see varied pressure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .engine import Component, _mass_objective
from .grid import GridState, connected_components, order_districts
from .partition import enumerate_partitions, initial_partition, recombine_search

SMALL_CELLS = 16


def _search(state: GridState, comp: Component, current: Sequence[frozenset], objective,
            rng: random.Random, steps: int, greedy: bool = True) -> list[frozenset]:
    """Minimise ``objective`` exhaustively on small components, by local search otherwise."""
    if len(comp.cells) <= SMALL_CELLS:
        return order_districts(min(enumerate_partitions(comp.cells, state.u), key=objective))
    start = list(current) if current else initial_partition(comp.cells, state.u)
    return recombine_search(start, state.u, objective, rng, steps, greedy=greedy)


def _residual_pieces(comp: Component, district: frozenset) -> int:
    rest = comp.cells - district
    return len(connected_components(rest)) if rest else 0


@dataclass
class _Base:
    seed: int = 0
    steps_per_district: int = 30
    rng: random.Random = field(init=False)

    def __post_init__(self):
        self.rng = random.Random(self.seed)

    def steps(self, comp: Component) -> int:
        return self.steps_per_district * comp.size


class Packer(_Base):
    """Concentrate the target into as few districts as possible; freeze the richest."""

    name = "packer"

    def cut(self, state, comp, current):
        weights, _ = state.integer_weights()
        base = _mass_objective(weights)

        def objective(parts):
            mx, sq = base(parts)
            return (-mx, -sq)
        return _search(state, comp, current, objective, self.rng, self.steps(comp))

    def freeze(self, state, components, districtings):
        return max(((ci, di) for ci, parts in enumerate(districtings) for di in range(len(parts))),
                   key=lambda p: (state.mass(districtings[p[0]][p[1]]), -p[0], -p[1]))


class Spreader(_Base):
    """Even out the target across districts; freeze the poorest so the rest stays rich."""

    name = "spreader"

    def cut(self, state, comp, current):
        weights, _ = state.integer_weights()
        return _search(state, comp, current, _mass_objective(weights), self.rng, self.steps(comp))

    def freeze(self, state, components, districtings):
        return min(((ci, di) for ci, parts in enumerate(districtings) for di in range(len(parts))),
                   key=lambda p: (state.mass(districtings[p[0]][p[1]]), p[0], p[1]))


class Splitter(_Base):
    """Draw districts whose removal shatters the region; freeze the most disruptive one."""

    name = "splitter"

    def cut(self, state, comp, current):
        weights, _ = state.integer_weights()

        def objective(parts):
            pieces = max(_residual_pieces(comp, d) for d in parts)
            return (-pieces, -max(sum(weights[c] for c in d) for d in parts))
        return _search(state, comp, current, objective, self.rng, self.steps(comp))

    def freeze(self, state, components, districtings):
        def score(p):
            ci, di = p
            d = districtings[ci][di]
            return (_residual_pieces(components[ci], d), state.mass(d), -ci, -di)
        return max(((ci, di) for ci, parts in enumerate(districtings) for di in range(len(parts))),
                   key=score)


class RandomPlayer(_Base):
    """A seeded random walk over valid districtings and a uniformly random freeze."""

    name = "random"

    def cut(self, state, comp, current):
        start = list(current) if current else initial_partition(comp.cells, state.u)
        return recombine_search(start, state.u, lambda parts: (0,), self.rng,
                                self.steps(comp), greedy=False, keep_last=True)

    def freeze(self, state, components, districtings):
        ci = self.rng.randrange(len(districtings))
        return ci, self.rng.randrange(len(districtings[ci]))


STRATEGIES = {"packer": Packer, "spreader": Spreader, "splitter": Splitter, "random": RandomPlayer}


def make_strategy(name: str, seed: int):
    try:
        return STRATEGIES[name](seed)
    except KeyError:
        raise ValueError(f"unknown strategy {name!r}; choose from {sorted(STRATEGIES)}") from None
