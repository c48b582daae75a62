"""Tabular reports shared by the CLI and the verification suites."""

from __future__ import annotations

from fractions import Fraction

from .numerics import as_rational, fmt_decimal, fmt_rational
from .players import Player
from .slate_game import asymptotic_share, one_player_decides_slate, sigma, threshold_table


def _curve_row(kind: str, n: int, alpha: Fraction, tie: Player, first: Player) -> dict:
    s = alpha * n
    seats = sigma(n, s, tie, first)
    opd = one_player_decides_slate(n, s)
    asym = asymptotic_share(alpha)
    return {
        "kind": kind,
        "n": n,
        "s": fmt_rational(s),
        "alpha": fmt_rational(alpha),
        "alpha_decimal": fmt_decimal(alpha, 8),
        "sigma_icyf": seats,
        "sigma_icyf_over_n": fmt_decimal(Fraction(seats, n), 8),
        "sigma_one_player_decides": opd,
        "sigma_one_player_decides_over_n": fmt_decimal(Fraction(opd, n), 8),
        "asymptotic_share": fmt_rational(asym),
        "asymptotic_share_decimal": fmt_decimal(asym, 8),
    }


def curve_rows(n: int, samples: int, tie: Player = Player.P1,
               first: Player = Player.P1) -> list[dict]:
    """The seat-share curve: one exact row per step, then uniform samples."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if samples < 2:
        raise ValueError("samples must be >= 2")
    rows = [_curve_row("step", n, th.value / n, tie, first) for th in threshold_table(n, tie, first)]
    rows += [_curve_row("sample", n, Fraction(i, samples - 1), tie, first) for i in range(samples)]
    return rows


def curve_breakpoints(rows: list[dict]) -> list[Fraction]:
    return [as_rational(r["alpha"]) for r in rows if r["kind"] == "step"]


def slate_report(n: int, s, tie: Player = Player.P1, first: Player = Player.P1) -> dict:
    s = as_rational(s)
    value = sigma(n, s, tie, first)
    return {
        "n": n,
        "s": fmt_rational(s),
        "tie": tie.label,
        "first_mover": first.label,
        "sigma": value,
        "one_player_decides": one_player_decides_slate(n, s),
        "thresholds": [
            {
                "k": k,
                "threshold": fmt_rational(th.value),
                "threshold_decimal": fmt_decimal(th.value, 8),
                "comparison": ">=" if th.inclusive else ">",
            }
            for k, th in enumerate(threshold_table(n, tie, first), start=1)
        ],
    }


def asymptote_rows(samples: int) -> list[dict]:
    if samples < 2:
        raise ValueError("samples must be >= 2")
    rows = []
    for i in range(samples):
        alpha = Fraction(i, samples - 1)
        a = asymptotic_share(alpha)
        rows.append({
            "alpha": fmt_rational(alpha), "alpha_decimal": fmt_decimal(alpha, 8),
            "asymptotic": fmt_rational(a), "asymptotic_decimal": fmt_decimal(a, 8),
            "one_player_decides": fmt_rational(min(Fraction(1), 2 * alpha)),
        })
    return rows
