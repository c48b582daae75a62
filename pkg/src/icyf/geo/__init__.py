"""Grid simulation of the geometric target game."""

from .engine import (
    Component, ComponentType, EngineInvariantError, Game3Round, Game3Transcript, StrategyError,
    district_graph, game3_play, game_type, p2_cut, p2_freeze, parity_tag, type_bound,
    update_component_types,
)
from .grid import GridState, connected_components, is_connected, make_state, rectangle, staircase, validate_districting
from .heuristics import STRATEGIES, make_strategy
from .partition import PartitionError, enumerate_partitions, initial_partition

__all__ = [
    "Component", "ComponentType", "EngineInvariantError", "Game3Round", "Game3Transcript",
    "StrategyError", "district_graph", "game3_play", "game_type", "p2_cut", "p2_freeze",
    "parity_tag", "type_bound", "update_component_types", "GridState", "connected_components",
    "is_connected", "make_state", "rectangle", "staircase", "validate_districting",
    "STRATEGIES", "make_strategy", "PartitionError", "enumerate_partitions", "initial_partition",
]
