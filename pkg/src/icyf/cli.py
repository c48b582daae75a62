"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure,
3 engine invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .numerics import as_rational, fmt_decimal, fmt_rational
from .players import Player

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_ENGINE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _player(text: str) -> Player:
    try:
        return Player.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pair(value: Fraction) -> dict:
    return {"value": fmt_rational(value), "decimal": fmt_decimal(value)}


# ---------------------------------------------------------------------------
# output


def _emit_json(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _emit_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def _write(text: str, args) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _rows_out(rows: list[dict], args) -> None:
    _write(_emit_csv(rows) if args.format == "csv" else _emit_json(rows), args)


# ---------------------------------------------------------------------------
# commands


def cmd_slate(args) -> int:
    from .reports import slate_report

    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if not 0 <= args.s <= args.n:
        raise UsageError(f"--s must lie in [0, n] = [0, {args.n}]")
    report = slate_report(args.n, args.s, args.tie, args.first)
    if args.format == "csv":
        _write(_emit_csv(report["thresholds"]), args)
    else:
        _write(_emit_json(report), args)
    return EXIT_OK


def cmd_curve(args) -> int:
    from .reports import curve_rows

    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    _rows_out(curve_rows(args.n, args.samples, args.tie, args.first), args)
    return EXIT_OK


def cmd_asymptote(args) -> int:
    from .reports import asymptote_rows

    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    _rows_out(asymptote_rows(args.samples), args)
    return EXIT_OK


def cmd_target(args) -> int:
    from .target_game import b_value, game2_value

    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if not 0 <= args.s <= 1:
        raise UsageError("--s (target mass in district units) must lie in [0, 1]")
    value = game2_value(args.n, args.s, args.divider)
    _write(_emit_json({
        "n": args.n,
        "s_T": fmt_rational(args.s),
        "divider": args.divider.label,
        "frozen_target_max": _pair(value),
        "b_value": _pair(b_value(args.n)),
    }), args)
    return EXIT_OK


def cmd_bvalue(args) -> int:
    from .target_game import b_value_rows

    if args.n_max < 1:
        raise UsageError("--n-max must be >= 1")
    _rows_out(b_value_rows(args.n_max), args)
    return EXIT_OK


def cmd_oracle_game1(args) -> int:
    from .oracles import brute_force_game1
    from .slate_game import GamePosition, game_value

    if args.k < 1:
        raise UsageError("--k must be >= 1")
    if not 0 <= args.s <= args.k:
        raise UsageError(f"--s must lie in [0, k] = [0, {args.k}]")
    try:
        grid = brute_force_game1(args.k, args.s, args.mover, args.tie, args.D, args.mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    exact = game_value(GamePosition(args.k, args.s, args.mover, args.tie))
    _write(_emit_json({
        "k": args.k, "s1": fmt_rational(args.s), "mover": args.mover.label, "tie": args.tie.label,
        "mode": args.mode, "oracle_value": grid, "closed_form_value": exact, "agree": grid == exact,
    }), args)
    return EXIT_OK


def cmd_oracle_game2(args) -> int:
    from .target_game import brute_force_game2, game2_value

    if not 0 <= args.s <= 1:
        raise UsageError("--s must lie in [0, 1]")
    try:
        grid = brute_force_game2(args.n, args.s, args.divider, args.D)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    exact = game2_value(args.n, args.s, args.divider)
    _write(_emit_json({
        "n": args.n, "s_T": fmt_rational(args.s), "divider": args.divider.label,
        "oracle_value": _pair(grid), "closed_form_value": _pair(exact),
    }), args)
    return EXIT_OK


def cmd_graph_split(args) -> int:
    from .graph_freeze import WeightedGraph, certificate_for, ten_node_example, split_vertex

    if args.builtin:
        G = ten_node_example()
    else:
        try:
            G = WeightedGraph.from_json(json.loads(Path(args.file).read_text()))
        except (OSError, KeyError, ValueError) as exc:
            raise UsageError(f"cannot read graph {args.file}: {exc}") from None
    if args.c < 1:
        raise UsageError("--c must be >= 1")
    if G.n < 2:
        raise UsageError("graph needs at least two nodes")
    if args.vertex is not None:
        if not 0 <= args.vertex < G.n:
            raise UsageError(f"--vertex must lie in [0, {G.n})")
        cert = certificate_for(G, args.vertex, args.c, method="given")
    else:
        cert = split_vertex(G, args.c)
    out = cert.to_json(G)
    _write(_emit_json(out), args)
    if not out["valid"]:
        raise VerificationFailed(f"vertex {cert.vertex} does not satisfy the split conditions")
    return EXIT_OK


def cmd_geosim(args) -> int:
    from .geo import GridState, game3_play, make_strategy

    try:
        state = GridState.from_json(json.loads(Path(args.file).read_text()))
        strategy = make_strategy(args.strategy, args.seed)
    except (OSError, KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    tr = game3_play(state, args.first, strategy, seed=args.seed)
    _write(_emit_json(tr.to_json()), args)
    if tr.violations:
        from .geo import EngineInvariantError
        raise EngineInvariantError(tr.violations[0])
    return EXIT_OK


def _slate_strategy(name: str, seed: int | None):
    from .slate_game import OptimalStrategy, RandomStrategy

    if name == "optimal":
        return OptimalStrategy()
    if seed is None:
        raise UsageError("random strategies need an explicit --seed")
    return RandomStrategy(seed)


def cmd_play(args) -> int:
    from .slate_game import play_protocol

    if not 0 <= args.s <= args.n:
        raise UsageError(f"--s must lie in [0, n] = [0, {args.n}]")
    s1 = _slate_strategy(args.p1, args.seed)
    s2 = _slate_strategy(args.p2, None if args.seed is None else args.seed + 1)
    tr = play_protocol(args.n, args.s, args.first, s1, s2, args.tie)
    _write(_emit_json(tr.to_json()), args)
    return EXIT_OK


def cmd_icif_play(args) -> int:
    from .oracles import IcifGridStrategy
    from .slate_game import icif_play

    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if not 0 <= args.s <= args.n:
        raise UsageError(f"--s must lie in [0, n] = [0, {args.n}]")
    if (args.s * args.D).denominator != 1:
        raise UsageError(f"--s must be a multiple of 1/{args.D}")
    strat = IcifGridStrategy(args.D, args.tie)
    tr = icif_play(args.n, args.s, strat, strat, args.tie, args.first)
    _write(_emit_json(tr.to_json()), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .checks import SUITES

    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    lines = []
    for name in names:
        result = SUITES[name]()
        lines.append(result.line())
        lines.extend(f"    {f}" for f in result.failures)
        failed += not result.passed
    _write("\n".join(lines) + "\n", args)
    if failed:
        raise VerificationFailed(f"{failed} suite(s) failed")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    from .checks import SUITES
    from .geo import STRATEGIES

    p = _Parser(prog="icyf", description="Solvers and simulators for the I-cut-you-freeze protocol.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text, fmt=False):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=fn)
        sp.add_argument("--output", "-o", help="write to a file instead of stdout")
        if fmt:
            sp.add_argument("--format", choices=["json", "csv"], default="json")
        return sp

    def tie_first(sp):
        sp.add_argument("--tie", type=_player, default=Player.P1, help="player favoured at exactly 1/2")
        sp.add_argument("--first", type=_player, default=Player.P1, help="player who divides first")

    sp = add("slate", cmd_slate, "seats won under optimal play, with the threshold table", fmt=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=_rational, required=True, help="Player-1 loyal measure in [0, n]")
    tie_first(sp)

    sp = add("curve", cmd_curve, "seat share against vote share", fmt=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--samples", type=int, default=1000)
    tie_first(sp)

    sp = add("asymptote", cmd_asymptote, "large-n seat share curve", fmt=True)
    sp.add_argument("--samples", type=int, default=101)

    sp = add("target", cmd_target, "largest frozen target share")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=_rational, required=True, help="target mass in district units")
    sp.add_argument("--divider", type=_player, default=Player.P2)

    sp = add("bvalue", cmd_bvalue, "target-property constants b(n)", fmt=True)
    sp.add_argument("--n-max", type=int, required=True)

    sp = add("oracle-game1", cmd_oracle_game1, "grid minimax for the slate game")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--s", type=_rational, required=True)
    sp.add_argument("--mover", type=_player, default=Player.P1)
    sp.add_argument("--tie", type=_player, default=Player.P1)
    sp.add_argument("--D", type=int, default=None)
    sp.add_argument("--mode", choices=["full", "two_value"], default="full")

    sp = add("oracle-game2", cmd_oracle_game2, "grid minimax for the target game")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=_rational, required=True)
    sp.add_argument("--divider", type=_player, default=Player.P2)
    sp.add_argument("--D", type=int, default=None)

    sp = add("graph-split", cmd_graph_split, "split-vertex certificate for a weighted graph")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="graph JSON: {nodes: [{id, r}], edges: [[a, b]]}")
    src.add_argument("--builtin", choices=["ten-node"], help="bundled ten-node example")
    sp.add_argument("--c", type=_rational, default=Fraction(1))
    sp.add_argument("--vertex", type=int, default=None, help="certify this vertex instead of searching")

    sp = add("geosim", cmd_geosim, "simulate the grid target game")
    sp.add_argument("--file", required=True, help="grid state JSON")
    sp.add_argument("--strategy", choices=sorted(STRATEGIES), required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--first", type=_player, default=Player.P1, help="player who cuts first")

    sp = add("play", cmd_play, "play the slate game and print the transcript")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=_rational, required=True)
    sp.add_argument("--p1", choices=["optimal", "random"], default="optimal")
    sp.add_argument("--p2", choices=["optimal", "random"], default="optimal")
    sp.add_argument("--seed", type=int, default=None)
    tie_first(sp)

    sp = add("icif-play", cmd_icif_play, "play I-cut-I-freeze with grid-optimal strategies")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=_rational, required=True)
    sp.add_argument("--D", type=int, default=60)
    tie_first(sp)

    sp = add("verify", cmd_verify, "run verification suites")
    sp.add_argument("--suite", choices=["all", *SUITES], default="all")
    return p


def main(argv: list[str] | None = None) -> int:
    from .geo import EngineInvariantError
    from .slate_game import ProtocolError

    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"icyf {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailed as exc:
        print(f"icyf {args.command}: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (EngineInvariantError, ProtocolError, AssertionError) as exc:
        print(f"icyf {args.command}: invariant violated: {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
