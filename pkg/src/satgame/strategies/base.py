"""Strategy automata: the common contract plus the simple built-in players."""
from __future__ import annotations

import copy
import random

from ..game import GameOver, GameState, IllegalMove, Role
from ..graph import norm


class PreconditionError(ValueError):
    """The strategy was asked to play a game its guarantee does not cover."""


class Strategy:
    """A deterministic (or seeded) automaton choosing one edge per turn.

    Subclasses keep their memory on ``self``.  ``next_move`` may read the
    state but must not mutate it; it should update memory assuming the
    returned edge will be played.
    """

    name = "strategy"

    def __init__(self):
        self.role = None

    def reset(self, role: Role, state: GameState) -> None:
        self.role = role

    def next_move(self, state: GameState):
        raise NotImplementedError

    def key(self):
        """Hashable snapshot of everything that affects future moves."""
        return None

    @property
    def passive(self) -> bool:
        """True once the strategy only plays trivially (it can no longer forfeit)."""
        return False

    def fault(self) -> str | None:
        """Why the strategy abandoned its plan, if it did (its guarantee no longer applies)."""
        return None

    def clone(self) -> "Strategy":
        return copy.deepcopy(self)

    def opponent_last(self, state: GameState):
        if state.moves and state.moves[-1][0] is not self.role:
            return state.moves[-1][1]
        return None

    def __repr__(self):
        return self.name


def trivial_move(state: GameState):
    e = state.first_legal_lex()
    if e is None:
        raise GameOver("no legal edge left")
    return e


def claim(state: GameState, u, v):
    """Return ``uv`` after checking it is playable; the forfeit channel otherwise."""
    u, v = norm(u, v)
    if u == v or state.graph.has_edge(u, v):
        raise IllegalMove(f"prescribed edge {(u, v)} is not free", state.mover, (u, v), state.ply)
    if not state.prop.legal(state.graph, u, v, state.memo):
        raise IllegalMove(f"prescribed edge {(u, v)} is illegal", state.mover, (u, v), state.ply)
    return (u, v)


class Trivial(Strategy):
    name = "trivial"
    passive = True

    def next_move(self, state):
        return trivial_move(state)


class Greedy(Strategy):
    """Claims the legal edge of largest degree sum (ties: lexicographic)."""

    name = "greedy"

    def next_move(self, state):
        g = state.graph
        deg = g.degrees()
        order = sorted(g.free_edges(), key=lambda e: -(deg[e[0]] + deg[e[1]]))
        e = state.first_legal(order)
        if e is None:
            raise GameOver("no legal edge left")
        return e


class RandomPlayer(Strategy):
    """Uniform over legal edges; reproducible from its seed."""

    def __init__(self, seed=0):
        super().__init__()
        self.seed = seed
        self.rng = random.Random(seed)
        self.name = f"random:{seed}"

    def reset(self, role, state):
        super().reset(role, state)
        self.rng = random.Random(self.seed)

    def next_move(self, state):
        # Rejection sampling stays uniform over legal edges and avoids listing
        # all free pairs while the graph is sparse.
        n, rng = state.n, self.rng
        for _ in range(32):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v and state.legal(u, v):
                return norm(u, v)
        free = state.graph.free_edges()
        rng.shuffle(free)
        e = state.first_legal(free)
        if e is None:
            raise GameOver("no legal edge left")
        return e

    def key(self):
        return self.rng.getstate()


class Optimal(Strategy):
    """Plays the solver's best move (small n only)."""

    name = "optimal"

    def next_move(self, state):
        from ..solver import best_move

        return best_move(state)
