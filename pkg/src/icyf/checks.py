"""Verification suites: each returns a pass/fail result with a short summary.

The CLI ``verify`` command and the acceptance tests both run these.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .graph_freeze import (
    WeightedGraph, ten_node_example, find_edge, spanning_tree, split_conditions, split_vertex,
    verify_split_certificate, certificate_for,
)
from .numerics import lcm_range
from .oracles import Game1Oracle, Game2Oracle, IcifOracle
from .players import Player
from .reports import curve_breakpoints, curve_rows
from .slate_game import GamePosition, asymptotic_share, closed_form_threshold, game_value, sigma
from .target_game import b_values, game2_value

# Step positions of the n = 10 seat curve in the published plot, k = 1..10
PRINTED_STEPS = ["0.123047", "0.245094", "0.328125", "0.39375", "0.45", "0.5",
                "0.555556", "0.619048", "0.695238", "0.796825"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    summary: str
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.summary} ({self.seconds:.2f}s)"


def _timed(name: str, fn: Callable[[], tuple[bool, str, list[str]]]) -> CheckResult:
    t0 = time.perf_counter()
    ok, summary, failures = fn()
    return CheckResult(name, ok, summary, failures, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# 1. the n = 10 seat curve


def check_seat_curve() -> CheckResult:
    def run():
        n = 10
        rows = curve_rows(n, 1000)
        steps = curve_breakpoints(rows)
        failures = []
        for k, alpha in enumerate(steps, start=1):
            th = closed_form_threshold(n, k)
            if alpha * n != th.value:
                failures.append(f"k={k}: breakpoint {alpha} != threshold/n {th.value / n}")
            # the step really is where sigma reaches k
            below = alpha * n - Fraction(1, 10**12)
            if sigma(n, alpha * n) < k or sigma(n, below) >= k:
                failures.append(f"k={k}: sigma does not step at {alpha}")
        matches = [f"{float(a):.6f}".rstrip("0") == f.rstrip("0") for a, f in zip(steps, PRINTED_STEPS)]
        mismatched = [k for k, m in enumerate(matches, start=1) if not m]
        if mismatched != [2]:
            failures.append(f"printed-plot mismatches at k={mismatched}, expected only k=2")
        summary = (f"{len(steps)} exact breakpoints, {sum(matches)}/10 match the printed plot "
                   f"(k=2: {float(steps[1]):.8f} vs {PRINTED_STEPS[1]})")
        return not failures, summary, failures
    return _timed("seat curve", run)


# ---------------------------------------------------------------------------
# 2. half the vote


def check_half_vote() -> CheckResult:
    def run():
        failures = []
        for n in range(1, 21):
            half = Fraction(n, 2)
            s1 = sigma(n, half, Player.P1)
            s2 = sigma(n, half, Player.P2)
            if s1 < n // 2 + 1:
                failures.append(f"n={n}: sigma(tie=p1) = {s1} < {n // 2 + 1}")
            if s2 > n // 2:
                failures.append(f"n={n}: sigma(tie=p2) = {s2} > {n // 2}")
        return not failures, "n = 1..20, both tie rules", failures
    return _timed("half-vote seats", run)


# ---------------------------------------------------------------------------
# 3. slate-game closed form versus grid minimax


def _far_from_thresholds(k: int, s: Fraction, mover: Player, tie: Player, D: int) -> bool:
    margin = Fraction(2 * k, D)
    for j in range(1, k + 1):
        if abs(s - closed_form_threshold(k, j, tie, mover).value) <= margin:
            return False
    return True


def game1_mismatches(k_max: int, D: int, mode: str) -> tuple[int, int, list[str]]:
    """(points compared, mismatches, examples) between game_value and the grid oracle."""
    compared, bad, examples = 0, 0, []
    for tie in Player:
        oracle = Game1Oracle(D, tie, mode)
        for k in range(1, k_max + 1):
            for mover in Player:
                for S in range(k * D + 1):
                    s = Fraction(S, D)
                    if not _far_from_thresholds(k, s, mover, tie, D):
                        continue
                    compared += 1
                    exact = game_value(GamePosition(k, s, mover, tie))
                    grid = oracle.value(k, S, mover)
                    if exact != grid:
                        bad += 1
                        if len(examples) < 10:
                            examples.append(f"k={k} s={s} mover={mover.label} tie={tie.label}: "
                                            f"{exact} vs {grid}")
    return compared, bad, examples


def check_game1_oracle() -> CheckResult:
    def run():
        d_full = 24 * lcm_range(3)
        d_two = 24 * lcm_range(5)
        c1, b1, e1 = game1_mismatches(3, d_full, "full")
        c2, b2, e2 = game1_mismatches(5, d_two, "two_value")
        summary = (f"full k<=3 D={d_full}: {b1}/{c1} mismatches; "
                   f"two-value k<=5 D={d_two}: {b2}/{c2} mismatches")
        return b1 == 0 and b2 == 0, summary, e1 + e2
    return _timed("slate oracle equivalence", run)


# ---------------------------------------------------------------------------
# 4. large-n seat share


def check_convergence() -> CheckResult:
    def run():
        failures, worst = [], 0.0
        for n in (100, 1000):
            tol = 3 / math.sqrt(n)
            for a in range(1, 10):
                alpha = Fraction(a, 10)
                gap = abs(Fraction(sigma(n, alpha * n), n) - asymptotic_share(alpha))
                worst = max(worst, float(gap) * math.sqrt(n))
                if gap > tol:
                    failures.append(f"n={n} alpha={alpha}: gap {float(gap):.4f} > {tol:.4f}")
        return not failures, f"max gap*sqrt(n) = {worst:.3f} (limit 3)", failures
    return _timed("large-n convergence", run)


# ---------------------------------------------------------------------------
# 5. target game


def game2_grid_comparison(n_max: int = 4, D: int | None = None):
    """Compare the closed form with the grid oracle over all grid targets in [0, 1].

    Returns (exact_points, exact_mismatches, off_grid_points, ceiling_mismatches).
    Where the closed-form value is itself a grid point the two must agree
    exactly; elsewhere the oracle can only report grid values and must
    return the closed form rounded up to the grid.
    """
    D = D or 12 * lcm_range(n_max)
    oracle = Game2Oracle(D)
    exact_pts = exact_bad = off_pts = ceil_bad = 0
    examples = []
    for n in range(1, n_max + 1):
        for divider in Player:
            for S in range(D + 1):
                formula = game2_value(n, Fraction(S, D), divider)
                grid = Fraction(oracle.value(n, S, divider), D)
                if (formula * D).denominator == 1:
                    exact_pts += 1
                    if grid != formula:
                        exact_bad += 1
                        examples.append(f"n={n} s={S}/{D} {divider.label}: {grid} != {formula}")
                else:
                    off_pts += 1
                    if grid != Fraction(math.ceil(formula * D), D):
                        ceil_bad += 1
                        examples.append(f"n={n} s={S}/{D} {divider.label}: {grid} != ceil({formula})")
    return exact_pts, exact_bad, off_pts, ceil_bad, examples[:10]


def check_game2() -> CheckResult:
    def run():
        D = 12 * lcm_range(4)
        exact_pts, exact_bad, off_pts, ceil_bad, examples = game2_grid_comparison(4, D)
        failures = list(examples)
        bs = b_values(10_000)
        low = [n for n, b in enumerate(bs, start=1) if 4 * b * b < n]
        if low:
            failures.append(f"b_value(n) < sqrt(n)/2 at n={low[:5]}")
        ratios = [float(b) / math.sqrt(2 * n / math.pi) for n, b in enumerate(bs, start=1) if n >= 500]
        lo, hi = min(ratios), max(ratios)
        if not (0.95 <= lo and hi <= 1.05):
            failures.append(f"b_value/sqrt(2n/pi) spans [{lo:.4f}, {hi:.4f}]")
        summary = (f"D={D}: {exact_pts} representable points exact ({exact_bad} bad), "
                   f"{off_pts} off-grid points rounded up ({ceil_bad} bad); "
                   f"b_value >= sqrt(n)/2 for n<=10^4; ratio in [{lo:.4f}, {hi:.4f}] for n>=500")
        return not failures, summary, failures
    return _timed("target game", run)


# ---------------------------------------------------------------------------
# 6. vertex splitting


def random_connected_graph(rng: random.Random, n: int, weights=(0, Fraction(1, 2), 1, 2)) -> WeightedGraph:
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    extra = rng.randrange(0, n)
    for _ in range(extra):
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges.append((a, b))
    perm = list(range(n))
    rng.shuffle(perm)
    return WeightedGraph.from_edges([rng.choice(weights) for _ in range(n)],
                                    [(perm[a], perm[b]) for a, b in edges])


def check_ten_node_graph() -> tuple[bool, list[str]]:
    failures = []
    G = ten_node_example()
    T = spanning_tree(G)
    if (4, 5) in T.edges or len(T.edges) != 9:
        failures.append(f"spanning tree {T.edges} does not drop (4, 5)")
    walk = find_edge(T, (5, 9))
    if walk.edge != (0, 1):
        failures.append(f"walk from (5, 9) ends at {walk.edge}")
    if not verify_split_certificate(G, certificate_for(G, 0, 1)):
        failures.append("v0 certificate fails at c=1")
    cert = split_vertex(G, 1)
    if not verify_split_certificate(G, cert):
        failures.append(f"split_vertex certificate for v{cert.vertex} fails")
    return not failures, failures


def check_vertex_splitting(graphs: int = 10_000, seed: int = 20240601) -> CheckResult:
    def run():
        ok, failures = check_ten_node_graph()
        rng = random.Random(seed)
        certs = 0
        for _ in range(graphs):
            n = rng.randint(2, 12)
            G = random_connected_graph(rng, n)
            for c in sorted({Fraction(1), Fraction(2), Fraction(3), Fraction(n, 2), Fraction(n)}):
                if c < 1:
                    continue
                cert = split_vertex(G, c)
                certs += 1
                if not verify_split_certificate(G, cert):
                    failures.append(f"n={n} c={c}: vertex {cert.vertex} fails")
        summary = f"ten-node example reproduced; {certs} certificates on {graphs} random graphs"
        return not failures, summary, failures[:10]
    return _timed("vertex splitting", run)


# ---------------------------------------------------------------------------
# 7. geometric game


def check_game3(seed: int = 0) -> CheckResult:
    from .geo.suite import run_suite

    def run():
        runs = run_suite(seed)
        failures = []
        for r in runs:
            tr = r.transcript
            tag = f"{r.state_name}/{r.strategy}/{r.first_cutter.label}"
            if tr.epsilon_grid > Fraction(1, 10):
                failures.append(f"{tag}: grid slack {float(tr.epsilon_grid):.3f} > 0.1")
            failures.extend(f"{tag}: {v}" for v in tr.violations)
        eps = max(float(r.transcript.epsilon_grid) for r in runs)
        use = max(float(r.transcript.max_rd / (2 * r.transcript.r0 * math.sqrt(r.transcript.n))) for r in runs)
        odd = sum(1 for r in runs if r.transcript.game_type == "odd")
        summary = (f"{len(runs)} runs ({odd} odd-type), max slack {eps:.3f}, "
                   f"max_rd at most {use:.3f} of 2 r0 sqrt(n)")
        return not failures and len(runs) >= 50, summary, failures[:10]
    return _timed("geometric game properties", run)


# ---------------------------------------------------------------------------
# 8. I-cut-I-freeze


def check_icif(D: int = 60) -> CheckResult:
    def run():
        failures, points = [], 0
        for n in (2, 3):
            for tie in Player:
                oracle = IcifOracle(D, tie)
                for first in Player:
                    for S in range(n * D + 1):
                        v = oracle.value(n, S, first)
                        for ell in range(1, n + 1):
                            if S >= ell * D + 1:
                                points += 1
                                if v < ell:
                                    failures.append(f"n={n} s1={S}/{D} {first.label} tie={tie.label}: "
                                                    f"value {v} < {ell}")
        return not failures, f"{points} (s1, l) pairs, n in {{2, 3}}, D={D}", failures[:10]
    return _timed("i-cut-i-freeze guarantee", run)


# ---------------------------------------------------------------------------
# 9. monotonicity and homogeneity


def check_invariants(seed: int = 7) -> CheckResult:
    def run():
        failures = []
        rng = random.Random(seed)
        # slate value is nondecreasing in s1 (closed form, fine grid)
        for tie in Player:
            for mover in Player:
                for k in range(1, 13):
                    prev = -1
                    for S in range(k * 60 + 1):
                        v = game_value(GamePosition(k, Fraction(S, 60), mover, tie))
                        if v < prev:
                            failures.append(f"slate value drops at k={k} s={S}/60")
                        prev = v
        # ... and for the independent grid oracle
        for tie in Player:
            oracle = Game1Oracle(72, tie, "full")
            for k in (1, 2, 3):
                for mover in Player:
                    vals = [oracle.value(k, S, mover) for S in range(k * 72 + 1)]
                    if any(b < a for a, b in zip(vals, vals[1:])):
                        failures.append(f"oracle value drops at k={k} mover={mover.label}")
        # target game value is linear in the target mass
        for _ in range(500):
            n = rng.randint(1, 60)
            s = Fraction(rng.randint(0, 1000), rng.randint(1, 1000))
            lam = Fraction(rng.randint(1, 50), rng.randint(1, 50))
            for divider in Player:
                if game2_value(n, lam * s, divider) != lam * game2_value(n, s, divider):
                    failures.append(f"target value not linear at n={n} s={s} lam={lam}")
        # split conditions and split_vertex's choice are invariant under weight scaling
        for _ in range(500):
            n = rng.randint(2, 12)
            G = random_connected_graph(rng, n)
            lam = Fraction(rng.randint(1, 30), rng.randint(1, 30))
            H = G.scaled(lam)
            c = rng.choice([Fraction(1), Fraction(2), Fraction(3), Fraction(n, 2)])
            if c < 1:
                continue
            good_g = {v for v in range(n) if all(split_conditions(G, v, c).values())}
            good_h = {v for v in range(n) if all(split_conditions(H, v, c).values())}
            if good_g != good_h:
                failures.append(f"scaling by {lam} changes the valid vertex set")
            if split_vertex(G, c).vertex != split_vertex(H, c).vertex:
                failures.append(f"scaling by {lam} changes split_vertex's choice")
        return not failures, "slate monotonicity, target linearity, weight scaling", failures[:10]
    return _timed("monotonicity and homogeneity", run)


SUITES: dict[str, Callable[[], CheckResult]] = {
    "seat-curve": check_seat_curve,
    "half-vote": check_half_vote,
    "game1-oracle": check_game1_oracle,
    "convergence": check_convergence,
    "game2": check_game2,
    "graph": check_vertex_splitting,
    "game3": check_game3,
    "icif": check_icif,
    "invariants": check_invariants,
}


def run_suites(names: list[str]) -> list[CheckResult]:
    return [SUITES[name]() for name in names]


