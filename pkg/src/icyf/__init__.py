"""Exact solvers and simulators for the I-cut-you-freeze redistricting protocol."""

from .numerics import as_rational, double_factorial, fmt_rational, q_product
from .players import Player, TieBreak
from .slate_game import (
    GamePosition, OptimalStrategy, ProtocolError, RandomStrategy, asymptotic_share,
    closed_form_threshold, game_value, icif_play, one_player_decides_slate, optimal_division,
    optimal_freeze, play_protocol, sigma, stronger_move, threshold_table, weaker_move,
)
from .target_game import b_value, concentrator_move, game2_value, splitter_move
from .graph_freeze import (
    SplitCertificate, WeightedGraph, find_edge, mean_weight, spanning_tree, split_vertex,
    verify_split_certificate,
)

__version__ = "0.1.0"
