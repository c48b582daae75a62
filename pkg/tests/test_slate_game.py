from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from icyf.oracles import brute_force_game1
from icyf.players import Player
from icyf.slate_game import (
    GamePosition, OptimalStrategy, ProtocolError, RandomStrategy, asymptotic_share,
    closed_form_threshold, game_value, icif_play, one_player_decides_slate, optimal_division,
    optimal_freeze, play_protocol, sigma, stronger_move, threshold_table, weaker_move,
)

P1, P2 = Player.P1, Player.P2
F = Fraction


# -- closed-form thresholds ------------------------------------------------

@pytest.mark.parametrize("n, k, expected", [
    (10, 1, F(945, 768)),
    (10, 5, F(9, 2)),
    (10, 6, F(5)),
    (3, 2, F(3, 2)),
])
def test_threshold_examples(n, k, expected):
    assert closed_form_threshold(n, k).value == expected


def test_n10_threshold_table():
    values = [t.value for t in threshold_table(10)]
    assert values == [F(315, 256), F(315, 128), F(105, 32), F(63, 16), F(9, 2), F(5),
                      F(50, 9), F(130, 21), F(146, 21), F(502, 63)]


def test_threshold_comparison_follows_tie():
    assert closed_form_threshold(4, 2, P1).inclusive
    assert not closed_form_threshold(4, 2, P2).inclusive


@pytest.mark.parametrize("n", range(1, 21))
def test_thresholds_increase(n):
    values = [t.value for t in threshold_table(n)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert 0 < values[0] and values[-1] <= n


@pytest.mark.parametrize("n", range(1, 21))
def test_threshold_is_exact_step(n):
    for k, th in enumerate(threshold_table(n), start=1):
        assert sigma(n, th.value, P1) >= k
        assert sigma(n, th.value, P2) < k


def test_threshold_rejects_bad_k():
    with pytest.raises(ValueError):
        closed_form_threshold(3, 4)
    with pytest.raises(ValueError):
        closed_form_threshold(0, 1)


# -- sigma -------------------------------------------------------------------

@pytest.mark.parametrize("n, s, tie, expected", [
    (10, F(9, 2), P1, 5),
    (7, F(0), P1, 0),
    (7, F(0), P2, 0),
    (3, F(6, 5), P1, 1),
    (1, F(0), P1, 0),
])
def test_sigma_examples(n, s, tie, expected):
    assert sigma(n, s, tie) == expected


@pytest.mark.parametrize("n", range(1, 21))
def test_half_vote_gives_majority_only_with_favourable_tie(n):
    assert sigma(n, F(n, 2), P1) >= n // 2 + 1
    assert sigma(n, F(n, 2), P2) <= n // 2


@pytest.mark.parametrize("n", range(1, 13))
def test_sigma_agrees_with_value_recursion(n):
    for tie in Player:
        for first in Player:
            for S in range(0, 24 * n + 1):
                s = F(S, 24)
                assert sigma(n, s, tie, first) == game_value(GamePosition(n, s, first, tie))


@pytest.mark.parametrize("n", range(1, 16))
def test_players_mirror(n):
    # Player 2's seats from the mirrored position equal n minus Player 1's seats
    for S in range(0, 12 * n + 1):
        s = F(S, 12)
        for tie in Player:
            for first in Player:
                mirrored = sigma(n, n - s, tie.other, first.other)
                assert sigma(n, s, tie, first) == n - mirrored


def test_sigma_rejects_out_of_range():
    with pytest.raises(ValueError):
        sigma(3, F(4))
    with pytest.raises(ValueError):
        sigma(3, F(-1))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 30), st.fractions(0, 1), st.fractions(0, 1), st.sampled_from(list(Player)))
def test_sigma_is_monotone(n, a, b, tie):
    lo, hi = sorted((a * n, b * n))
    assert sigma(n, lo, tie) <= sigma(n, hi, tie)


# -- asymptotics and the baseline -------------------------------------------

@pytest.mark.parametrize("alpha, expected", [(F(1, 2), F(1, 2)), (F(0), F(0)), (F(1, 4), F(1, 8)),
                                             (F(1), F(1)), (F(3, 4), F(7, 8))])
def test_asymptotic_share(alpha, expected):
    assert asymptotic_share(alpha) == expected


@pytest.mark.parametrize("n, s, expected", [(10, F(5), 10), (6, F(0), 0), (10, F(9, 4), 4)])
def test_one_player_decides(n, s, expected):
    assert one_player_decides_slate(n, s) == expected


# -- constructive strategies ------------------------------------------------------

def test_stronger_move_examples():
    assert stronger_move(4, F(5, 2)) == [F(5, 8)] * 4
    assert stronger_move(1, F(3, 4)) == [F(3, 4)]
    assert stronger_move(3, F(3, 2)) == [F(1, 2)] * 3
    with pytest.raises(ValueError):
        stronger_move(3, F(1))


def test_weaker_move_examples():
    assert weaker_move(5, F(6, 5), P1) == [F(3, 5), F(3, 5), 0, 0, 0]
    assert weaker_move(3, F(1, 2), P1, P1) == [F(1, 2), 0, 0]
    assert weaker_move(4, F(3, 2), P2) == [F(3, 4), F(3, 4), 0, 0]


def test_weaker_move_needs_strict_majority_without_the_tie():
    # with ties going to Player 2, Player 1 must exceed 1/2 in each stocked district
    alloc = weaker_move(4, F(3, 2), P1, P2)
    assert alloc == [F(3, 4), F(3, 4), 0, 0]
    with pytest.raises(ValueError):
        weaker_move(3, F(1, 2), P1, P2)


def test_weaker_move_rejects_the_stronger_player():
    with pytest.raises(ValueError):
        weaker_move(4, F(3), P1)


# -- freezing ----------------------------------------------------------------

def test_freeze_prefers_lowest_index_on_value_ties():
    pos = GamePosition(2, F(1), P1, P1)
    assert optimal_freeze(pos, [F(1), F(0)]) == 0
    assert optimal_freeze(pos, [F(1, 2), F(1, 2)]) == 0


def test_freeze_after_weaker_move():
    pos = GamePosition(3, F(6, 5), P1, P1)
    alloc = [F(3, 5), F(3, 5), F(0)]
    chosen = optimal_freeze(pos, alloc)
    # both the zero district and a 3/5 district leave Player 1 with one seat
    value = lambda i: (alloc[i] >= F(1, 2)) + game_value(GamePosition(2, pos.s1 - alloc[i], P2, P1))
    assert value(chosen) == value(2) == game_value(pos) == 1
    assert chosen == 0


def test_freeze_is_a_best_response():
    for S in range(0, 61):
        pos = GamePosition(3, F(S, 20), P1, P1)
        alloc = optimal_division(pos)
        i = optimal_freeze(pos, alloc)
        vals = [(x >= F(1, 2)) + game_value(GamePosition(2, pos.s1 - x, P2, P1)) for x in alloc]
        assert vals[i] == min(vals)


# -- value recursion -------------------------------------------------------

@pytest.mark.parametrize("k, s1, mover, tie, expected", [
    (10, F(9, 2), P1, P1, 5),
    (1, F(1), P1, P1, 1),
    (1, F(1), P2, P1, 1),
    (4, F(7, 10), P1, P1, 0),
    (4, F(3, 4), P1, P1, 1),
    (0, F(0), P1, P1, 0),
])
def test_game_value_examples(k, s1, mover, tie, expected):
    assert game_value(GamePosition(k, s1, mover, tie)) == expected


def test_one_seat_needs_three_quarters_at_k4():
    # the first seat at k = 4 costs 3/4; full enumeration agrees on both sides of it
    from icyf.oracles import Game1Oracle
    oracle = Game1Oracle(120, P1, "full")
    assert brute_force_game1(4, F(7, 10), P1, P1, D=120, oracle=oracle) == 0
    assert brute_force_game1(4, F(3, 4), P1, P1, D=120, oracle=oracle) == 1
    assert closed_form_threshold(4, 1).value == F(3, 4)


def test_position_validation():
    with pytest.raises(ValueError):
        GamePosition(2, F(3), P1)
    with pytest.raises(ValueError):
        GamePosition(-1, F(0), P1)


def test_stronger_player_at_exact_half_follows_tie():
    assert GamePosition(4, F(2), P1, P1).p1_stronger
    assert not GamePosition(4, F(2), P1, P2).p1_stronger


# -- simulation --------------------------------------------------------------

def test_play_examples():
    opt = OptimalStrategy()
    assert play_protocol(3, F(3, 2), P1, opt, opt, P1).slate_p1 == 2
    assert play_protocol(1, F(0), P1, opt, opt, P1).slate_p1 == 0


def test_play_with_exclusive_ties_at_even_split():
    # (3/4, 1/4) keeps one seat whichever district Player 2 freezes
    opt = OptimalStrategy()
    tr = play_protocol(2, F(1), P1, opt, opt, P2)
    assert tr.slate_p1 == 1
    assert brute_force_game1(2, F(1), P1, P2, D=24) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 10])
def test_optimal_self_play_reproduces_value(n):
    opt = OptimalStrategy()
    for S in range(0, 10 * n + 1, 3):
        s = F(S, 10)
        for tie in Player:
            for first in Player:
                tr = play_protocol(n, s, first, opt, opt, tie)
                assert tr.slate_p1 == sigma(n, s, tie, first)
                assert sum(r.frozen_loyalty for r in tr.rounds) == s
                assert [r.t for r in tr.rounds] == list(range(n, 0, -1))


@pytest.mark.parametrize("seed", range(20))
def test_optimal_player_never_does_worse_than_value(seed):
    opt = OptimalStrategy()
    rnd = RandomStrategy(seed)
    n = 2 + seed % 6
    s = F(seed * 7 % (10 * n), 10)
    v = sigma(n, s)
    assert play_protocol(n, s, P1, opt, rnd).slate_p1 >= v
    assert play_protocol(n, s, P1, rnd, opt).slate_p1 <= v


def test_transcript_json_fields():
    opt = OptimalStrategy()
    data = play_protocol(2, F(3, 2), P1, opt, opt).to_json()
    assert set(data) >= {"n", "s1", "tie", "first_mover", "rounds", "slate_p1"}
    assert data["s1"] == "3/2"
    assert set(data["rounds"][0]) == {"t", "divider", "allocation", "frozen_index", "frozen_loyalty", "winner"}


class _Cheat:
    def divide(self, pos):
        return [F(1)] * pos.k

    def freeze(self, pos, alloc):
        return 0


def test_illegal_division_is_rejected_with_round():
    with pytest.raises(ProtocolError) as err:
        play_protocol(2, F(1), P1, _Cheat(), OptimalStrategy())
    assert err.value.round_index == 2


def test_icif_examples():
    from icyf.oracles import IcifGridStrategy
    strat = IcifGridStrategy(60)
    assert icif_play(2, F(11, 10), strat, strat).slate_p1 >= 1
    assert icif_play(1, F(1), strat, strat).slate_p1 == 1
    assert icif_play(3, F(21, 10), strat, strat).slate_p1 >= 2
