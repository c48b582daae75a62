"""Partitioning a polyomino into connected pieces of equal size."""

from __future__ import annotations

import random
from typing import Callable, Iterable, Iterator, Sequence

from .grid import Cell, cell_key, connected_components, districts_adjacent, neighbors, order_districts


class PartitionError(RuntimeError):
    pass


def _pieces_containing(anchor: Cell, free: set, u: int) -> Iterator[frozenset]:
    """Every connected u-subset of ``free`` whose lowest cell is ``anchor``.

    Standard connected-subgraph enumeration: grow from the anchor, and at
    each step either take the first frontier cell or exclude it for good.
    """
    akey = cell_key(anchor)

    def grow(piece: frozenset, frontier: tuple, banned: frozenset):
        if len(piece) == u:
            yield piece
            return
        if not frontier:
            return
        c, rest = frontier[0], frontier[1:]
        # branch 1: include c
        extra = tuple(
            d for d in neighbors(c)
            if d in free and d not in piece and d not in banned and d != c
            and d not in rest and cell_key(d) > akey
        )
        yield from grow(piece | {c}, rest + extra, banned)
        # branch 2: never use c
        yield from grow(piece, rest, banned | {c})

    start = tuple(d for d in neighbors(anchor) if d in free and cell_key(d) > akey)
    yield from grow(frozenset([anchor]), start, frozenset())


def enumerate_partitions(cells: Iterable[Cell], u: int) -> Iterator[list[frozenset]]:
    """All partitions of ``cells`` into connected u-cell pieces."""
    cells = frozenset(cells)
    if len(cells) % u:
        return

    def rec(free: frozenset, acc: list):
        if not free:
            yield list(acc)
            return
        anchor = min(free, key=cell_key)
        for piece in _pieces_containing(anchor, set(free), u):
            rest = free - piece
            if rest and any(len(c) % u for c in connected_components(rest)):
                continue
            acc.append(piece)
            yield from rec(rest, acc)
            acc.pop()

    yield from rec(cells, [])


def _snake(cells: frozenset) -> list[Cell] | None:
    """Row-by-row boustrophedon order if it is a Hamiltonian path."""
    rows: dict[int, list[int]] = {}
    for x, y in cells:
        rows.setdefault(y, []).append(x)
    order: list[Cell] = []
    for i, y in enumerate(sorted(rows)):
        xs = sorted(rows[y], reverse=bool(i % 2))
        order.extend((x, y) for x in xs)
    for a, b in zip(order, order[1:]):
        if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
            return None
    return order


def initial_partition(cells: Iterable[Cell], u: int) -> list[frozenset]:
    """Some valid partition: a chopped snake path when one exists, else a search."""
    cells = frozenset(cells)
    if len(cells) % u:
        raise PartitionError(f"{len(cells)} cells do not split into pieces of {u}")
    order = _snake(cells)
    if order is not None:
        return order_districts(frozenset(order[i:i + u]) for i in range(0, len(order), u))
    found = next(enumerate_partitions(cells, u), None)
    if found is None:
        raise PartitionError("region has no partition into connected pieces")
    return order_districts(found)


def _random_split(region: Sequence[Cell], u: int, rng: random.Random) -> tuple[frozenset, frozenset] | None:
    """Split a 2u-cell region in two connected halves via a random spanning tree."""
    index = {c: i for i, c in enumerate(region)}
    edges = [(i, index[d]) for c, i in index.items() for d in neighbors(c) if d in index and index[d] > i]
    rng.shuffle(edges)
    parent = list(range(len(region)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    adj: list[list[int]] = [[] for _ in region]
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            adj[a].append(b)
            adj[b].append(a)
    # subtree sizes from root 0
    order, par = [0], {0: -1}
    for v in order:
        for w in adj[v]:
            if w not in par:
                par[w] = v
                order.append(w)
    if len(order) != len(region):
        return None
    size = [1] * len(region)
    for v in reversed(order[1:]):
        size[par[v]] += size[v]
    cuts = [v for v in order[1:] if size[v] == u]
    if not cuts:
        return None
    v = rng.choice(cuts)
    side = {v}
    stack = [v]
    while stack:
        a = stack.pop()
        for w in adj[a]:
            if w != par[a] and w not in side:
                side.add(w)
                stack.append(w)
    half = frozenset(region[i] for i in side)
    return half, frozenset(region) - half


Objective = Callable[[list[frozenset]], tuple]


def recombine_search(start: Sequence[frozenset], u: int, objective: Objective,
                     rng: random.Random, budget: int, stall: int | None = None,
                     target: tuple | None = None, greedy: bool = True,
                     keep_last: bool = False) -> list[frozenset]:
    """Seeded recombination local search minimising ``objective``.

    Each step merges two adjacent pieces and re-splits the union along a
    random spanning tree.  With ``greedy`` the move is kept only if the
    objective does not get worse; otherwise every move is kept (a random
    walk).  The best partition seen is returned, or the final one with
    ``keep_last``.
    """
    current = list(start)
    if len(current) < 2:
        return order_districts(current)
    cur_val = objective(current)
    best, best_val = list(current), cur_val
    since = 0
    for _ in range(budget):
        if target is not None and best_val <= target:
            break
        if stall is not None and since >= stall:
            break
        i = rng.randrange(len(current))
        partners = [j for j in range(len(current)) if j != i and districts_adjacent(current[i], current[j])]
        since += 1
        if not partners:
            continue
        j = rng.choice(partners)
        region = sorted(current[i] | current[j], key=cell_key)
        split = _random_split(region, u, rng)
        if split is None:
            continue
        cand = list(current)
        cand[i], cand[j] = split
        val = objective(cand)
        if greedy and val > cur_val:
            continue
        current, cur_val = cand, val
        if val < best_val:
            best, best_val = list(cand), val
            since = 0
    return order_districts(current if keep_last else best)
