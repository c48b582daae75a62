"""Grid states, districts and connectivity helpers."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..numerics import as_rational, fmt_rational

Cell = tuple[int, int]
District = frozenset  # of Cell


def neighbors(cell: Cell):
    x, y = cell
    return ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1))


def cell_key(cell: Cell) -> tuple[int, int]:
    """Row-major order: lowest y first, then lowest x."""
    return (cell[1], cell[0])


def is_connected(cells: Iterable[Cell]) -> bool:
    cells = set(cells)
    if not cells:
        return False
    start = next(iter(cells))
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for d in neighbors(c):
            if d in cells and d not in seen:
                seen.add(d)
                queue.append(d)
    return len(seen) == len(cells)


def connected_components(cells: Iterable[Cell]) -> list[frozenset]:
    """4-connected components, ordered by their lowest cell."""
    remaining = set(cells)
    out = []
    for start in sorted(remaining, key=cell_key):
        if start not in remaining:
            continue
        comp = {start}
        remaining.discard(start)
        queue = deque([start])
        while queue:
            c = queue.popleft()
            for d in neighbors(c):
                if d in remaining:
                    remaining.discard(d)
                    comp.add(d)
                    queue.append(d)
        out.append(frozenset(comp))
    return out


def order_districts(districts: Iterable[frozenset]) -> list[frozenset]:
    return sorted(districts, key=lambda d: min(cell_key(c) for c in d))


def districts_adjacent(a: frozenset, b: frozenset) -> bool:
    """True when some cell of ``a`` shares an edge with some cell of ``b``."""
    if len(a) > len(b):
        a, b = b, a
    return any(d in b for c in a for d in neighbors(c))


@dataclass(frozen=True)
class GridState:
    """A polyomino state: n districts of u cells, each cell holding population 1/u."""

    u: int
    target: Mapping[Cell, Fraction]

    def __post_init__(self):
        if self.u < 1:
            raise ValueError("u must be >= 1")
        if not self.target:
            raise ValueError("a state needs at least one cell")
        if len(self.target) % self.u:
            raise ValueError(f"{len(self.target)} cells do not split into districts of {self.u}")
        if any(v < 0 for v in self.target.values()):
            raise ValueError("target mass must be nonnegative")
        if not is_connected(self.target):
            raise ValueError("state cells are not 4-connected")

    @property
    def cells(self) -> frozenset:
        return frozenset(self.target)

    @property
    def n(self) -> int:
        return len(self.target) // self.u

    @property
    def pop(self) -> Fraction:
        return Fraction(1, self.u)

    @property
    def total_target(self) -> Fraction:
        return sum(self.target.values(), Fraction(0))

    @property
    def r0(self) -> Fraction:
        return self.total_target / self.n

    def mass(self, cells: Iterable[Cell]) -> Fraction:
        return sum((self.target[c] for c in cells), Fraction(0))

    def ratio(self, cells: Iterable[Cell]) -> Fraction:
        """Target mass per unit of population (district units)."""
        cells = list(cells)
        return self.mass(cells) * self.u / len(cells)

    def integer_weights(self) -> tuple[dict[Cell, int], int]:
        """Target scaled to integers, with the scale factor."""
        scale = math.lcm(*(v.denominator for v in self.target.values()))
        return {c: int(v * scale) for c, v in self.target.items()}, scale

    def to_json(self) -> dict:
        return {
            "u": self.u,
            "cells": [
                {"x": c[0], "y": c[1], "pop": fmt_rational(self.pop), "target": fmt_rational(self.target[c])}
                for c in sorted(self.target, key=cell_key)
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GridState":
        u = int(data["u"])
        target = {}
        for rec in data["cells"]:
            cell = (int(rec["x"]), int(rec["y"]))
            if cell in target:
                raise ValueError(f"duplicate cell {cell}")
            if "pop" in rec and as_rational(rec["pop"]) != Fraction(1, u):
                raise ValueError(f"cell {cell} has population {rec['pop']}, expected 1/{u}")
            target[cell] = as_rational(rec.get("target", 0))
        return cls(u, target)


def rectangle(width: int, height: int) -> list[Cell]:
    return [(x, y) for y in range(height) for x in range(width)]


def staircase(row_lengths: Sequence[int]) -> list[Cell]:
    """Left-aligned rows with the given lengths, bottom row first."""
    return [(x, y) for y, w in enumerate(row_lengths) for x in range(w)]


def make_state(cells: Iterable[Cell], u: int, target_fn=None) -> GridState:
    target_fn = target_fn or (lambda c: Fraction(0))
    return GridState(u, {c: as_rational(target_fn(c)) for c in cells})


def validate_districting(region: Iterable[Cell], districts: Sequence[Iterable[Cell]],
                         u: int) -> tuple[bool, str]:
    """Check a districting of ``region``; returns (ok, first violated clause)."""
    region = frozenset(region)
    seen: set[Cell] = set()
    for i, d in enumerate(districts):
        d = frozenset(d)
        if len(d) != u:
            return False, f"district {i} has {len(d)} cells, expected {u}"
        if not d <= region:
            return False, f"district {i} leaves the region"
        if d & seen:
            return False, f"district {i} overlaps an earlier district"
        if not is_connected(d):
            return False, f"district {i} is not 4-connected"
        seen |= d
    if seen != region:
        return False, f"{len(region - seen)} region cells are not covered"
    return True, ""
