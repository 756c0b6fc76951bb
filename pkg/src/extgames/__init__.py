"""Exact solver and verifier for finite extensive games with perfect information."""

from .equilibria import is_best_response, is_nash, is_spe_by_definition, one_deviation_check
from .fileformat import parse_game, parse_strategy, serialize_game, serialize_strategy
from .spe import has_unique_spe, spe_count, spe_enumerate, spe_outcomes
from .tree import GameTree, Strategy, decision, joint_strategy_count, leaf, play_of, rank, subgame, validate

__all__ = [
    "GameTree", "Strategy", "decision", "leaf", "validate", "subgame", "rank", "play_of",
    "joint_strategy_count", "is_best_response", "is_nash", "is_spe_by_definition", "one_deviation_check",
    "spe_outcomes", "spe_count", "spe_enumerate", "has_unique_spe",
    "parse_game", "serialize_game", "parse_strategy", "serialize_strategy",
]
