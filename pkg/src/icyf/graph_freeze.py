"""Vertex splitting on node-weighted graphs.

Player 2 uses this to pick which district to freeze: districts are nodes,
shared boundaries are edges and the weight of a node is its target mass.
The chosen node is cheap (weight at most ``min{c, n/2}`` times the mean)
and removing it leaves components that are neither tiny nor much richer
than the whole.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .numerics import as_rational, fmt_rational


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph on nodes ``0..n-1`` with rational weights."""

    weights: tuple[Fraction, ...]
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()

    @classmethod
    def from_edges(cls, weights: Sequence, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None, require_connected: bool = True):
        n = len(weights)
        if n < 1:
            raise ValueError("a graph needs at least one node")
        w = tuple(as_rational(x) for x in weights)
        if any(x < 0 for x in w):
            raise ValueError("node weights must be nonnegative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) references a missing node")
            if a == b:
                continue
            nbrs[a].add(b)
            nbrs[b].add(a)
        g = cls(w, tuple(tuple(sorted(s)) for s in nbrs),
                tuple(labels) if labels else tuple(f"v{i}" for i in range(n)))
        if require_connected and len(g.components(range(n))) != 1:
            raise ValueError("graph is not connected")
        return g

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in self.adjacency[a] if a < b]

    def components(self, nodes: Iterable[int]) -> list[list[int]]:
        """Connected components of the induced subgraph, each sorted, ordered by minimum."""
        allowed = set(nodes)
        seen: set[int] = set()
        comps = []
        for start in sorted(allowed):
            if start in seen:
                continue
            comp = []
            queue = deque([start])
            seen.add(start)
            while queue:
                v = queue.popleft()
                comp.append(v)
                for w in self.adjacency[v]:
                    if w in allowed and w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def scaled(self, factor) -> "WeightedGraph":
        factor = as_rational(factor)
        return WeightedGraph(tuple(w * factor for w in self.weights), self.adjacency, self.labels)

    def to_json(self) -> dict:
        return {
            "nodes": [{"id": i, "r": fmt_rational(w)} for i, w in enumerate(self.weights)],
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "WeightedGraph":
        nodes = sorted(data["nodes"], key=lambda d: int(d["id"]))
        ids = [int(d["id"]) for d in nodes]
        if ids != list(range(len(ids))):
            raise ValueError("node ids must be 0..n-1")
        return cls.from_edges([d["r"] for d in nodes], [tuple(e) for e in data["edges"]])


def mean_weight(nodes: Iterable[int], G: WeightedGraph) -> Fraction:
    nodes = list(nodes)
    if not nodes:
        raise ValueError("mean over an empty node set")
    return sum((G.weights[v] for v in nodes), Fraction(0)) / len(nodes)


# ---------------------------------------------------------------------------
# Spanning tree and the edge walk


@dataclass(frozen=True)
class Tree:
    """A spanning tree stored as adjacency lists over the same node ids."""

    graph: WeightedGraph
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in self.adjacency[a] if a < b]

    @property
    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if len(self.adjacency[v]) == 1]

    def side_components(self, removed: int) -> list[list[int]]:
        """Components of T - removed, one per tree neighbour, in neighbour order."""
        out = []
        for start in self.adjacency[removed]:
            comp = []
            stack = [start]
            seen = {removed, start}
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adjacency[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out


def spanning_tree(G: WeightedGraph) -> Tree:
    """Breadth-first tree from node 0, neighbours taken in index order."""
    adj: list[list[int]] = [[] for _ in range(G.n)]
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in G.adjacency[v]:
            if w not in seen:
                seen.add(w)
                adj[v].append(w)
                adj[w].append(v)
                queue.append(w)
    if len(seen) != G.n:
        raise ValueError("graph is not connected")
    return Tree(G, tuple(tuple(sorted(a)) for a in adj))


@dataclass
class EdgeWalk:
    edge: tuple[int, int]
    steps: list[tuple[int, int]] = field(default_factory=list)


def _edge_parts(T: Tree, u: int, v: int):
    """(C_1, [C_2..C_m]) for the directed edge (u, v): components of T - v."""
    comps = T.side_components(v)
    first = next(c for c in comps if u in c)
    others = sorted((c for c in comps if c is not first), key=min)
    return first, others


def find_edge(T: Tree, start_edge: tuple[int, int]) -> EdgeWalk:
    """Walk to a directed edge (u, v) whose far side is no richer than average.

    On return, the subtree C_0 = {v} plus every component of T - v not
    containing u has mean weight <= mean(G), while each such component on
    its own is strictly above the mean.
    """
    G = T.graph
    if G.n < 2:
        raise ValueError("find_edge needs at least two nodes")
    u, v = start_edge
    if v not in T.adjacency[u]:
        raise ValueError(f"{start_edge} is not a tree edge")
    avg = mean_weight(range(G.n), G)
    walk = EdgeWalk((u, v))
    _, others = _edge_parts(T, u, v)
    c0 = [v] + [x for c in others for x in c]
    if mean_weight(c0, G) > avg:
        u, v = v, u
    walk.steps.append((u, v))
    while True:
        _, others = _edge_parts(T, u, v)
        nxt = next((c for c in others if mean_weight(c, G) <= avg), None)
        if nxt is None:
            break
        w = next(x for x in T.adjacency[v] if x in nxt)
        u, v = v, w
        walk.steps.append((u, v))
    walk.edge = (u, v)
    return walk


# ---------------------------------------------------------------------------
# Split certificates


@dataclass(frozen=True)
class ComponentInfo:
    nodes: tuple[int, ...]
    mean: Fraction

    @property
    def size(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class SplitCertificate:
    vertex: int
    c: Fraction
    components: tuple[ComponentInfo, ...]
    method: str = ""

    def to_json(self, G: WeightedGraph | None = None) -> dict:
        out = {
            "vertex": self.vertex,
            "c": fmt_rational(self.c),
            "method": self.method,
            "components": [
                {"nodes": list(ci.nodes), "size": ci.size, "mean_r": fmt_rational(ci.mean)}
                for ci in self.components
            ],
        }
        if G is not None:
            out["label"] = G.labels[self.vertex]
            out["r"] = fmt_rational(G.weights[self.vertex])
            out["mean_r_graph"] = fmt_rational(mean_weight(range(G.n), G))
            out["valid"] = verify_split_certificate(G, self)
        return out


def certificate_for(G: WeightedGraph, v: int, c, method: str = "") -> SplitCertificate:
    c = as_rational(c)
    comps = G.components(x for x in range(G.n) if x != v)
    return SplitCertificate(
        v, c, tuple(ComponentInfo(tuple(cc), mean_weight(cc, G)) for cc in comps), method)


def split_conditions(G: WeightedGraph, v: int, c) -> dict[str, bool]:
    """Evaluate the three clauses for removing ``v``, from scratch."""
    c = as_rational(c)
    n = G.n
    avg = mean_weight(range(n), G)
    comps = G.components(x for x in range(n) if x != v)
    return {
        "weight": G.weights[v] <= min(c, Fraction(n, 2)) * avg,
        "sizes": all(c - 1 < len(C) < n - c or len(C) == n - 1 for C in comps),
        "means": all(mean_weight(C, G) <= Fraction(len(C) + 1, len(C)) * avg for C in comps),
    }


def verify_split_certificate(G: WeightedGraph, cert: SplitCertificate) -> bool:
    if not 0 <= cert.vertex < G.n:
        return False
    return all(split_conditions(G, cert.vertex, cert.c).values())


def split_vertex(G: WeightedGraph, c=1, tree: Tree | None = None) -> SplitCertificate:
    """Find a node satisfying the split conditions, following the constructive proof.

    A cheap leaf of the spanning tree is taken when one exists; otherwise
    the head of the edge returned by :func:`find_edge` (started from the
    first tree edge) is used.
    """
    c = as_rational(c)
    if G.n < 2:
        raise ValueError("split_vertex needs at least two nodes")
    if c < 1:
        raise ValueError("c must be >= 1")
    T = tree or spanning_tree(G)
    avg = mean_weight(range(G.n), G)
    cap = min(c, Fraction(G.n, 2)) * avg
    for leaf in T.leaves:
        if G.weights[leaf] <= cap:
            cert = certificate_for(G, leaf, c, method="leaf")
            if verify_split_certificate(G, cert):
                return cert
    walk = find_edge(T, T.edges[0])
    cert = certificate_for(G, walk.edge[1], c, method="edge-walk")
    if not verify_split_certificate(G, cert):
        raise AssertionError(f"split certificate failed for vertex {cert.vertex}")
    return cert


def ten_node_example() -> WeightedGraph:
    """The ten-node worked example: a tree on v0..v9 plus the chord (v4, v5)."""
    weights = [0, 0, 0, 0, 1, 0, 1, 1, 1, 1]
    edges = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (2, 6), (3, 7), (3, 8), (5, 9), (4, 5)]
    return WeightedGraph.from_edges(weights, edges)
