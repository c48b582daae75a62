from __future__ import annotations

from fractions import Fraction

import pytest

from icyf.oracles import (
    Game1Oracle, IcifOracle, brute_force_game1, brute_force_game2, icif_game2_value, icif_value,
)
from icyf.players import Player
from icyf.slate_game import GamePosition, closed_form_threshold, game_value

P1, P2 = Player.P1, Player.P2
F = Fraction


@pytest.mark.parametrize("k, s1, D, expected", [
    (1, F(1, 2), 2, 1),
    (2, F(1), 4, 2),
    (2, F(3, 4), 4, 1),
    (3, F(3, 2), 12, 2),
])
def test_game1_examples(k, s1, D, expected):
    assert brute_force_game1(k, s1, P1, P1, D=D) == expected


def test_game1_exclusive_tie_at_half():
    assert brute_force_game1(1, F(1, 2), P1, P2, D=2) == 0


def test_game1_rejects_off_grid_and_large_k():
    with pytest.raises(ValueError):
        brute_force_game1(2, F(1, 7), P1, P1, D=24)
    with pytest.raises(ValueError):
        brute_force_game1(4, F(1), P1, P1)
    with pytest.raises(ValueError):
        brute_force_game1(7, F(1), P1, P1, mode="two_value")
    with pytest.raises(ValueError):
        brute_force_game1(3, F(1), P1, P1, D=10)


@pytest.mark.parametrize("tie", list(Player))
def test_two_value_mode_matches_full_enumeration(tie):
    D = 72
    full, two = Game1Oracle(D, tie, "full"), Game1Oracle(D, tie, "two_value")
    for k in (1, 2, 3):
        for mover in Player:
            for S in range(k * D + 1):
                assert full.value(k, S, mover) == two.value(k, S, mover)


@pytest.mark.parametrize("tie", list(Player))
def test_closed_form_matches_grid_away_from_thresholds(tie):
    D = 144
    oracle = Game1Oracle(D, tie, "full")
    for k in (1, 2, 3):
        for mover in Player:
            ths = [closed_form_threshold(k, j, tie, mover).value for j in range(1, k + 1)]
            for S in range(k * D + 1):
                s = F(S, D)
                if any(abs(s - t) <= F(2 * k, D) for t in ths):
                    continue
                assert oracle.value(k, S, mover) == game_value(GamePosition(k, s, mover, tie))


@pytest.mark.parametrize("n, s, divider, D, expected", [
    (1, F(1), P1, 1, F(1)),
    (1, F(1), P2, 1, F(1)),
    (2, F(1), P2, 4, F(1, 2)),
    (3, F(1), P2, 6, F(2, 3)),
])
def test_game2_examples(n, s, divider, D, expected):
    assert brute_force_game2(n, s, divider, D) == expected


def test_game2_rejects_large_n():
    with pytest.raises(ValueError):
        brute_force_game2(5, F(1))


def test_icif_target_first_divider_keeps_everything():
    # dividing and freezing yourself, the whole target fits in one district
    for n in range(1, 5):
        assert icif_game2_value(n, F(1), P1) == 1


@pytest.mark.parametrize("n, s1, expected_at_least", [(2, F(11, 10), 1), (1, F(1), 1), (3, F(21, 10), 2)])
def test_icif_guarantee_examples(n, s1, expected_at_least):
    for tie in Player:
        assert icif_value(n, s1, P1, tie) >= expected_at_least


def test_icif_moves_respect_capacity():
    o = IcifOracle(10)
    assert list(o.moves(2, 15)) == list(range(5, 11))
    assert o.value(2, 20, P2) == 2
