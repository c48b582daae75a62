"""Grid simulation of the geometric target game with component-type tracking."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Protocol, Sequence

from ..graph_freeze import WeightedGraph, split_vertex
from ..numerics import fmt_decimal, fmt_rational, q_product
from ..players import Player
from .grid import (
    GridState, cell_key, connected_components, districts_adjacent, order_districts,
    validate_districting,
)
from .partition import enumerate_partitions, initial_partition, recombine_search

EXHAUSTIVE_CELLS = 16


class EngineInvariantError(RuntimeError):
    pass


class StrategyError(ValueError):
    def __init__(self, round_index: int, message: str):
        super().__init__(f"round {round_index}: {message}")
        self.round_index = round_index


class ComponentType(enum.IntEnum):
    T1 = 1
    T2 = 2
    T3 = 3

    @property
    def label(self) -> str:
        return f"Type{int(self)}"


@dataclass(frozen=True)
class Component:
    cells: frozenset
    size: int  # capacity in districts
    tag: ComponentType

    @property
    def key(self):
        return min(cell_key(c) for c in self.cells)


def parity_tag(size: int) -> ComponentType:
    return ComponentType.T2 if size % 2 == 0 else ComponentType.T1


def _odd_ceiling(n: int) -> int:
    return 2 * ((n - 1) // 2) + 1


def type_bound(s: int, tag: ComponentType, n: int, r0) -> Fraction:
    """Upper bound on a component's target ratio given its size and tag."""
    if not 1 <= s <= n:
        raise ValueError(f"component size {s} outside [1, {n}]")
    r0 = Fraction(r0)
    top = _odd_ceiling(n)
    if tag is ComponentType.T1:
        terms = list(range(s + 2, top + 1, 2))
    elif tag is ComponentType.T2:
        terms = list(range(s + 1, top + 1, 2))
    else:
        terms = [s + 1] + list(range(s + 2, top + 1, 2))
    return r0 * q_product(terms)


def update_component_types(before: Sequence[Component], frozen: frozenset, mover: Player,
                           u: int) -> list[Component]:
    """Remove a frozen district and retag the component it came from."""
    hosts = [i for i, comp in enumerate(before) if frozen & comp.cells]
    if len(hosts) != 1 or not frozen <= before[hosts[0]].cells:
        raise EngineInvariantError("frozen district does not lie inside exactly one component")
    host = before[hosts[0]]
    rest = host.cells - frozen
    out = [c for i, c in enumerate(before) if i != hosts[0]]
    pieces = connected_components(rest) if rest else []
    if len(pieces) == 1:
        if host.tag is ComponentType.T1:
            tag = ComponentType.T2
        elif host.tag is ComponentType.T2:
            tag = ComponentType.T1 if mover is Player.P1 else ComponentType.T3
        else:
            tag = ComponentType.T2
        out.append(Component(pieces[0], host.size - 1, tag))
    else:
        for p in pieces:
            if len(p) % u:
                raise EngineInvariantError("residual piece is not a whole number of districts")
            out.append(Component(p, len(p) // u, parity_tag(len(p) // u)))
    return sorted(out, key=lambda c: c.key)


# ---------------------------------------------------------------------------
# Player 2


@dataclass
class CutResult:
    districts: list[frozenset]
    objective: Fraction  # max district target mass
    exhaustive: bool


def _mass_objective(weights: dict):
    def objective(parts):
        masses = [sum(weights[c] for c in d) for d in parts]
        return (max(masses), sum(m * m for m in masses))
    return objective


def p2_cut(state: GridState, comp: Component, rng: random.Random,
           start: Sequence[frozenset] | None = None, budget: int | None = None,
           stall: int | None = None) -> CutResult:
    """Districting of ``comp`` that keeps the largest district target mass small."""
    u = state.u
    weights, scale = state.integer_weights()
    objective = _mass_objective(weights)
    total = sum(weights[c] for c in comp.cells)
    if len(comp.cells) <= EXHAUSTIVE_CELLS:
        best, best_val = None, None
        for parts in enumerate_partitions(comp.cells, u):
            val = objective(parts)
            if best_val is None or val < best_val:
                best, best_val = parts, val
        if best is None:
            raise EngineInvariantError("component has no valid districting")
        parts = order_districts(best)
        exhaustive = True
    else:
        s = comp.size
        parts = list(start) if start else initial_partition(comp.cells, u)
        budget = 10 * u * s * s if budget is None else budget
        # an exactly even split cannot be beaten
        floor = (-(-total // s), float("inf")) if total % s else (total // s, total * total // s)
        parts = recombine_search(parts, u, objective, rng, budget, stall=stall, target=floor)
        exhaustive = False
    worst = max(sum(weights[c] for c in d) for d in parts)
    return CutResult(parts, Fraction(worst, scale), exhaustive)


def district_graph(state: GridState, districts: Sequence[frozenset]) -> WeightedGraph:
    edges = [(i, j) for i in range(len(districts)) for j in range(i + 1, len(districts))
             if districts_adjacent(districts[i], districts[j])]
    return WeightedGraph.from_edges([state.mass(d) for d in districts], edges)


def p2_choose_component(components: Sequence[Component]) -> int:
    for wanted in (ComponentType.T1, ComponentType.T2):
        for i, comp in enumerate(components):
            if comp.tag is wanted:
                return i
    raise EngineInvariantError("Player 2 must freeze but only Type3 components remain")


def p2_freeze(state: GridState, components: Sequence[Component],
              districtings: Sequence[Sequence[frozenset]]) -> tuple[int, int]:
    """(component index, district index) chosen by the vertex-splitting rule with c = 3."""
    ci = p2_choose_component(components)
    districts = districtings[ci]
    if len(districts) == 1:
        return ci, 0
    cert = split_vertex(district_graph(state, districts), 3)
    return ci, cert.vertex


# ---------------------------------------------------------------------------
# Player 1 interface


class GeoStrategy(Protocol):
    name: str

    def cut(self, state: GridState, comp: Component, current: Sequence[frozenset]) -> list[frozenset]:
        ...

    def freeze(self, state: GridState, components: Sequence[Component],
               districtings: Sequence[Sequence[frozenset]]) -> tuple[int, int]:
        ...


# ---------------------------------------------------------------------------
# The game loop


def game_type(n: int, first_cutter: Player) -> str:
    """'odd' when Player 2 always freezes from an odd number of districts."""
    p2_freezes_at_odd = (n % 2 == 1) if first_cutter is Player.P1 else (n % 2 == 0)
    return "odd" if p2_freezes_at_odd else "even"


@dataclass
class Game3Round:
    index: int
    cutter: Player
    freezer: Player
    components: list[dict]
    chosen_component: int
    district_masses: list[Fraction]
    frozen_cells: list
    frozen_r: Fraction
    slack_factor: Fraction
    type_changes: list[str]

    def to_json(self) -> dict:
        return {
            "round": self.index,
            "cutter": self.cutter.label,
            "freezer": self.freezer.label,
            "components": self.components,
            "chosen_component": self.chosen_component,
            "district_masses": [fmt_rational(m) for m in self.district_masses],
            "frozen_cells": [list(c) for c in self.frozen_cells],
            "frozen_r": fmt_rational(self.frozen_r),
            "slack_factor": fmt_rational(self.slack_factor),
            "type_changes": self.type_changes,
        }


@dataclass
class Game3Transcript:
    n: int
    u: int
    r0: Fraction
    first_cutter: Player
    strategy: str
    seed: int
    game_type: str
    rounds: list[Game3Round] = field(default_factory=list)
    max_rd: Fraction = Fraction(0)
    epsilon_grid: Fraction = Fraction(0)
    violations: list[str] = field(default_factory=list)
    max_type3: int = 0

    @property
    def bound_holds(self) -> bool:
        """max_rd <= 2 r0 sqrt(n) (1 + eps), compared exactly through squares."""
        rhs = 2 * self.r0 * (1 + self.epsilon_grid)
        return self.max_rd * self.max_rd <= rhs * rhs * self.n

    def to_json(self) -> dict:
        bound = 2 * float(self.r0) * self.n ** 0.5 * float(1 + self.epsilon_grid)
        return {
            "n": self.n,
            "u": self.u,
            "r0": fmt_rational(self.r0),
            "first_cutter": self.first_cutter.label,
            "p1_strategy": self.strategy,
            "seed": self.seed,
            "game_type": self.game_type,
            "rounds": [r.to_json() for r in self.rounds],
            "max_rd": fmt_rational(self.max_rd),
            "max_rd_decimal": fmt_decimal(self.max_rd),
            "bound": f"{bound:.6f}",
            "bound_holds": self.bound_holds,
            "epsilon_grid": fmt_rational(self.epsilon_grid),
            "epsilon_grid_decimal": fmt_decimal(self.epsilon_grid),
            "max_type3": self.max_type3,
            "violations": self.violations,
        }


def _component_rows(state: GridState, comps: Sequence[Component]) -> list[dict]:
    return [{"index": i, "size": c.size, "type": c.tag.label, "r": fmt_rational(state.ratio(c.cells))}
            for i, c in enumerate(comps)]


def game3_play(state: GridState, first_cutter: Player, p1: GeoStrategy, seed: int = 0,
               strict: bool = False, p2_budget: int | None = None,
               p2_stall: int | None = None) -> Game3Transcript:
    """Play the full game with Player 2 on the vertex-splitting strategy and check every invariant.

    Violations are collected in the transcript; with ``strict`` the first
    one raises :class:`EngineInvariantError`.
    """
    rng = random.Random(seed)
    n, u, r0 = state.n, state.u, state.r0
    tr = Game3Transcript(n, u, r0, first_cutter, getattr(p1, "name", type(p1).__name__),
                         seed, game_type(n, first_cutter))
    comps = [Component(state.cells, n, parity_tag(n))]
    # the last districting of each region, used as a local-search start
    known: list[frozenset] = initial_partition(state.cells, u)
    frozen_mass = Fraction(0)
    slack = Fraction(1)

    def violate(msg: str):
        tr.violations.append(msg)
        if strict:
            raise EngineInvariantError(msg)

    def check_components(where: str):
        t3 = sum(1 for c in comps if c.tag is ComponentType.T3)
        tr.max_type3 = max(tr.max_type3, t3)
        if t3 > 1:
            violate(f"{where}: {t3} Type3 components")
        if t3 and tr.game_type == "odd":
            violate(f"{where}: Type3 component in an odd-type game")
        for c in comps:
            if (c.size % 2 == 0) != (c.tag is ComponentType.T2):
                violate(f"{where}: size {c.size} tagged {c.tag.label}")
            if state.ratio(c.cells) > type_bound(c.size, c.tag, n, r0) * slack:
                violate(f"{where}: component of size {c.size} ({c.tag.label}) exceeds its type bound")
        remaining = sum((state.mass(c.cells) for c in comps), Fraction(0))
        if frozen_mass + remaining != state.total_target:
            violate(f"{where}: target mass not conserved")

    check_components("start")
    for t in range(n):
        cutter = first_cutter if t % 2 == 0 else first_cutter.other
        freezer = cutter.other
        where = f"round {t}"
        districtings = []
        for comp in comps:
            start = [d for d in known if d <= comp.cells]
            if cutter is Player.P2:
                parts = p2_cut(state, comp, rng, start=start, budget=p2_budget, stall=p2_stall).districts
            else:
                parts = order_districts(p1.cut(state, comp, start))
            ok, why = validate_districting(comp.cells, parts, u)
            if not ok:
                if cutter is Player.P1:
                    raise StrategyError(t, f"invalid districting from Player 1: {why}")
                raise EngineInvariantError(f"{where}: Player 2 produced an invalid districting: {why}")
            districtings.append(parts)
        if freezer is Player.P2:
            if not any(c.tag in (ComponentType.T1, ComponentType.T2) for c in comps):
                violate(f"{where}: Player 2 has no Type1/Type2 component to freeze")
                ci, di = 0, 0
            else:
                ci, di = p2_freeze(state, comps, districtings)
        else:
            ci, di = p1.freeze(state, comps, districtings)
            if not (0 <= ci < len(comps) and 0 <= di < len(districtings[ci])):
                raise StrategyError(t, f"Player 1 froze a missing district ({ci}, {di})")
        chosen = districtings[ci]
        district = chosen[di]
        masses = [state.mass(d) for d in chosen]
        comp_ratio = state.ratio(comps[ci].cells)
        factor = Fraction(1)
        if cutter is Player.P2 and comp_ratio > 0:
            # an exact even split would make every district hold comp_ratio
            factor = max(max(masses) / comp_ratio, Fraction(1))
        slack *= factor
        r_d = state.mass(district)
        if len(district) * state.pop != 1:
            violate(f"{where}: frozen district population is not 1")
        frozen_mass += r_d
        tr.max_rd = max(tr.max_rd, r_d)
        rows = _component_rows(state, comps)
        before_tag = comps[ci].tag
        new = update_component_types(comps, district, freezer, u)
        residual = comps[ci].cells - district
        changes = [
            f"{before_tag.label}->{c.tag.label}" for c in new if c.cells <= residual
        ] or [f"{before_tag.label}->closed"]
        comps = new
        known = [d for parts in districtings for d in parts if d != district]
        tr.rounds.append(Game3Round(t, cutter, freezer, rows, ci, masses, sorted(district, key=cell_key),
                                    r_d, factor, changes))
        check_components(where)
    tr.epsilon_grid = slack - 1
    if not tr.bound_holds:
        violate(f"max_rd {fmt_decimal(tr.max_rd)} exceeds 2 r0 sqrt(n) (1 + eps)")
    return tr
