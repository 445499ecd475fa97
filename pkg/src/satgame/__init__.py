"""Saturation games on graphs: exact solving, strategy automata and exhaustive checks."""
from .game import MAX, MINI, GameState, IllegalMove, Role, Transcript, new_game, play
from .graph import Graph, canonical_key, from_graph6, to_graph6
from .properties import parse_property
from .solver import solve, verify_strategy

__all__ = [
    "MAX", "MINI", "GameState", "Graph", "IllegalMove", "Role", "Transcript", "canonical_key",
    "from_graph6", "new_game", "parse_property", "play", "solve", "to_graph6", "verify_strategy",
]
