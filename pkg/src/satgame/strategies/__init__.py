"""Strategy automata and the name registry used by the command line."""
from __future__ import annotations

import json

from .base import Greedy, Optimal, PreconditionError, RandomPlayer, Strategy, Trivial, trivial_move
from .colorability import MaxChikRandom, MiniChi4
from .connectivity import MaxConnExpander, MaxConnSqrt
from .longpath import LongPath
from .matching import EndgameRunner, MaxMk, MaxPM, MiniMk, endgame_from_dict


class UnknownStrategy(ValueError):
    pass


NAMES = (
    "trivial", "greedy", "random[:seed]", "optimal", "long-path:L", "max-conn-sqrt:k",
    "max-conn-expander:k", "mini-chi4", "max-chik-random:k[:seed]", "max-pm", "max-mk:k",
    "mini-mk:k", "endgame:{json}",
)


def _int(text, name):
    try:
        return int(text)
    except ValueError:
        raise UnknownStrategy(f"{name}: expected an integer, got {text!r}") from None


def make_strategy(name: str, seed: int = 0) -> Strategy:
    """Build a strategy from its registry name.

    ``seed`` is used by randomised strategies whose name carries no seed.
    """
    head, _, rest = name.partition(":")
    args = rest.split(":") if rest else []
    if head == "endgame":
        try:
            cfg = json.loads(rest)
        except json.JSONDecodeError as exc:
            raise UnknownStrategy(f"endgame config is not JSON: {exc}") from None
        return EndgameRunner(endgame_from_dict(cfg))
    if head == "trivial" and not args:
        return Trivial()
    if head == "greedy" and not args:
        return Greedy()
    if head == "optimal" and not args:
        return Optimal()
    if head == "random" and len(args) <= 1:
        return RandomPlayer(_int(args[0], name) if args else seed)
    if head == "mini-chi4" and len(args) <= 1:
        return MiniChi4(_int(args[0], name) if args else 0)
    if head == "max-pm" and not args:
        return MaxPM()
    if head == "max-chik-random" and len(args) in (1, 2):
        k = _int(args[0], name)
        return MaxChikRandom(k, _int(args[1], name) if len(args) == 2 else seed)
    one_arg = {
        "long-path": LongPath,
        "max-conn-sqrt": MaxConnSqrt,
        "max-conn-expander": MaxConnExpander,
        "max-mk": MaxMk,
        "mini-mk": MiniMk,
    }
    if head in one_arg and len(args) == 1:
        return one_arg[head](_int(args[0], name))
    raise UnknownStrategy(f"unknown strategy {name!r}; known forms: {', '.join(NAMES)}")


__all__ = ["make_strategy", "UnknownStrategy", "PreconditionError", "Strategy", "trivial_move", "NAMES"]
