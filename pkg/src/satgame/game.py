"""The saturation game: states, legal moves, turn order, transcripts."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from .graph import Graph, from_graph6, norm, to_graph6
from .properties import LineageMemo, Property, parse_property


class Role(enum.Enum):
    MAX = "max"
    MINI = "mini"

    @property
    def other(self) -> "Role":
        return Role.MINI if self is Role.MAX else Role.MAX

    @classmethod
    def parse(cls, text) -> "Role":
        if isinstance(text, Role):
            return text
        return cls(str(text).lower())

    def __repr__(self):
        return self.value


MAX, MINI = Role.MAX, Role.MINI


class GameError(Exception):
    pass


class GameOver(GameError):
    pass


class IllegalMove(GameError):
    """A player tried an edge that completes the property (a forfeit)."""

    def __init__(self, msg, role=None, edge=None, ply=None):
        super().__init__(msg)
        self.role = role
        self.edge = edge
        self.ply = ply


class NotFreeMove(IllegalMove):
    pass


class StartSatisfies(GameError):
    pass


class GameState:
    """One position of the (H, P) game.

    ``graph`` and ``moves`` are owned by the state; :meth:`push` mutates in
    place (used by :func:`play`), :func:`apply_move` returns a fresh state.
    """

    __slots__ = ("graph", "prop", "first", "start", "moves", "memo")

    def __init__(self, graph, prop, first, start, moves, memo=None):
        self.graph = graph
        self.prop = prop
        self.first = first
        self.start = start
        self.moves = moves
        self.memo = memo

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def start_edges(self) -> int:
        return self.start.m

    @property
    def ply(self) -> int:
        return self.graph.m - self.start.m

    @property
    def mover(self) -> Role:
        return self.first if self.ply % 2 == 0 else self.first.other

    @property
    def last_move(self):
        return self.moves[-1][1] if self.moves else None

    def last_move_by(self, role):
        for r, e in reversed(self.moves):
            if r is role:
                return e
        return None

    def legal(self, u, v) -> bool:
        u, v = norm(u, v)
        if self.graph.has_edge(u, v):
            return False
        return self.prop.legal(self.graph, u, v, self.memo)

    def first_legal(self, candidates):
        for e in candidates:
            u, v = norm(*e)
            if not self.graph.has_edge(u, v) and self.prop.legal(self.graph, u, v, self.memo):
                return (u, v)
        return None

    def first_legal_lex(self):
        """Lexicographically least legal edge (None when the game is over)."""
        memo = self.memo
        start = memo.cursor if memo is not None else (0, 1)
        for u, v in self.graph.iter_free(start):
            if self.prop.legal(self.graph, u, v, memo):
                if memo is not None:
                    memo.cursor = (u, v)
                return (u, v)
        if memo is not None:
            memo.cursor = (self.n, self.n)
        return None

    def is_over(self) -> bool:
        return self.first_legal_lex() is None

    def push(self, e) -> None:
        u, v = norm(*e)
        role = self.mover
        if self.graph.has_edge(u, v) or u == v:
            raise NotFreeMove(f"{role.value} played non-free edge {(u, v)}", role, (u, v), self.ply)
        if not self.prop.legal(self.graph, u, v, self.memo):
            raise IllegalMove(f"{role.value} played illegal edge {(u, v)}", role, (u, v), self.ply)
        self.graph.add_edge(u, v)
        self.moves.append((role, (u, v)))

    def push_trusted(self, e) -> None:
        """Append an edge already known to be free and legal (search internals)."""
        role = self.mover
        self.graph.add_edge(*e)
        self.moves.append((role, e))

    def copy(self) -> "GameState":
        return GameState(self.graph.copy(), self.prop, self.first, self.start, list(self.moves), None)

    def __repr__(self):
        return f"GameState(n={self.n}, {self.prop}, first={self.first.value}, mover={self.mover.value}, e={self.graph.m})"


def new_game(n: int, prop: Property, first=MAX, start: Graph | None = None, memo=False) -> GameState:
    first = Role.parse(first)
    if start is None:
        start = Graph(n)
    elif start.n != n:
        raise GameError("start graph has the wrong vertex count")
    if prop.holds(start):
        raise StartSatisfies(f"start graph already satisfies {prop}")
    return GameState(start.copy(), prop, first, start.copy(), [], LineageMemo() if memo else None)


def legal_moves(s: GameState) -> list:
    return s.prop.legal_edges(s.graph, s.memo)


def apply_move(s: GameState, e) -> GameState:
    t = s.copy()
    t.push(e)
    return t


@dataclass
class Transcript:
    n: int
    prop: str
    first: Role
    moves: list
    final: Graph
    score: int
    start: Graph = None
    info: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "property": self.prop,
            "first": self.first.value,
            "moves": [{"by": r.value, "u": u, "v": v} for r, (u, v) in self.moves],
            "final_graph6": to_graph6(self.final),
            "score": self.score,
        }
        if self.start is not None and self.start.m:
            d["start_graph6"] = to_graph6(self.start)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Transcript":
        n = d["n"]
        start = from_graph6(d["start_graph6"]) if "start_graph6" in d else Graph(n)
        moves = [(Role(m["by"]), (m["u"], m["v"])) for m in d["moves"]]
        return cls(n, d["property"], Role(d["first"]), moves, from_graph6(d["final_graph6"]), d["score"], start)

    @classmethod
    def from_json(cls, text: str) -> "Transcript":
        return cls.from_dict(json.loads(text))

    def replay(self) -> GameState:
        """Re-run the moves through the engine, checking turn order and legality."""
        s = new_game(self.n, parse_property(self.prop), self.first, self.start)
        for role, e in self.moves:
            if role is not s.mover:
                raise GameError(f"move {e} attributed to {role.value} out of turn")
            s.push(e)
        return s


def play(s: GameState, strat_max, strat_mini, monitors=(), max_moves=None) -> Transcript:
    """Play to saturation; ``s`` is advanced in place.

    Monitors are called as ``monitor(state, role, edge)`` after every move and
    once more as ``monitor(state, None, None)`` at the end.
    """
    if s.memo is None:
        s.memo = LineageMemo()
    strats = {MAX: strat_max, MINI: strat_mini}
    strat_max.reset(MAX, s)
    strat_mini.reset(MINI, s)
    count = 0
    while not s.is_over():
        role = s.mover
        e = strats[role].next_move(s)
        if e is None:
            raise IllegalMove(f"{role.value} strategy returned no move", role, None, s.ply)
        s.push(e)
        for mon in monitors:
            mon(s, role, s.moves[-1][1])
        count += 1
        if max_moves is not None and count >= max_moves:
            raise GameError("move limit reached")
    for mon in monitors:
        mon(s, None, None)
    return Transcript(s.n, s.prop.name, s.first, list(s.moves), s.graph.copy(), s.graph.m, s.start.copy())
