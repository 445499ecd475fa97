"""Building a long path that covers every non-isolated vertex.

The builder answers each opponent edge ``xy`` with one of four responses
depending on where ``x`` and ``y`` sit relative to the current path.  The
path is kept oriented so that ``path[0]`` has degree one, which makes
``path[-1]`` the end we always extend.
"""
from __future__ import annotations

from ..game import GameState, IllegalMove
from ..graph import norm
from .base import Strategy, claim


def least_isolated(state: GameState, exclude=()):
    adj = state.graph.adj
    for z in range(state.n):
        if adj[z] == 0 and z not in exclude:
            return z
    raise IllegalMove("no isolated vertex left for the path", state.mover, None, state.ply)


class PathBuilder:
    """Memory and move rule of the long path strategy for target length ``target``."""

    __slots__ = ("target", "path", "done", "last_case")

    def __init__(self, target: int):
        if target < 1:
            raise ValueError("path target must be at least 1")
        self.target = target
        self.path = []
        self.done = False
        self.last_case = None

    @property
    def length(self) -> int:
        return max(len(self.path) - 1, 0)

    def key(self):
        return (tuple(self.path), self.done)

    def copy(self) -> "PathBuilder":
        c = PathBuilder(self.target)
        c.path = list(self.path)
        c.done = self.done
        c.last_case = self.last_case
        return c

    def _finish(self, g, e) -> tuple:
        # Degrees as they will be once ``e`` is on the board.
        u, v = e
        deg0 = g.degree(self.path[0]) + (self.path[0] in (u, v))
        degl = g.degree(self.path[-1]) + (self.path[-1] in (u, v))
        if deg0 != 1 and degl == 1:
            self.path.reverse()
        if self.length >= self.target:
            self.done = True
        return e

    def move(self, state: GameState, opp) -> tuple:
        """Return the builder's next edge given the opponent's last edge ``opp`` (or None)."""
        if self.done:
            raise ValueError("path already complete")
        if not self.path:
            if opp is None:
                e = claim(state, 0, 1)
                self.path = [0, 1]
                self.last_case = "open"
            else:
                x, y = opp
                z = least_isolated(state)
                e = claim(state, y, z)
                self.path = [x, y, z]
                self.last_case = "extend-first"
            return self._finish(state.graph, e)

        on = set(self.path)
        x, y = opp
        end = self.path[-1]
        if x in on and y in on:
            z = least_isolated(state)
            e = claim(state, end, z)
            self.path.append(z)
            self.last_case = 1
        elif x not in on and y not in on:
            x, y = min(x, y), max(x, y)
            e = claim(state, end, x)
            self.path += [x, y]
            self.last_case = 2
        else:
            if y in on:
                x, y = y, x
            if x == self.path[0] or x == end:
                z = least_isolated(state, exclude=(y,))
                e = claim(state, y, z)
                if x == end:
                    self.path += [y, z]
                else:
                    self.path = [z, y] + self.path
                self.last_case = 3
            else:
                e = claim(state, end, y)
                self.path.append(y)
                self.last_case = 4
        return self._finish(state.graph, e)


def path_properties(g, path, target) -> list:
    """Return the list of violated path properties (empty when all hold)."""
    bad = []
    length = len(path) - 1
    if length not in (target, target + 1):
        bad.append("a")
    if len(set(path)) != len(path) or any(not g.has_edge(a, b) for a, b in zip(path, path[1:])):
        bad.append("not-a-path")
    on = set(path)
    if any(g.adj[v] and v not in on for v in range(g.n)):
        bad.append("b")
    if g.degree(path[0]) != 1 and g.degree(path[-1]) != 1:
        bad.append("c")
    return bad


class LongPath(Strategy):
    """Runs the path builder, then falls back to the trivial strategy."""

    def __init__(self, target: int):
        super().__init__()
        self.builder = PathBuilder(target)
        self.name = f"long-path:{target}"

    @property
    def done(self) -> bool:
        return self.builder.done

    def reset(self, role, state):
        super().reset(role, state)
        self.builder = PathBuilder(self.builder.target)

    def next_move(self, state):
        if self.builder.done:
            from .base import trivial_move

            return trivial_move(state)
        return self.builder.move(state, self.opponent_last(state))

    @property
    def passive(self):
        return self.builder.done

    def key(self):
        return self.builder.key()

    def clone(self):
        c = LongPath.__new__(LongPath)
        c.role, c.name, c.builder = self.role, self.name, self.builder.copy()
        return c


def path_shape_key(state: GameState, path) -> tuple:
    """Relabel-invariant key while the builder runs.

    Off-path vertices are isolated between builder moves, so the graph is
    determined by its edges in path-position coordinates.  Anything else
    falls back to the labelled graph.
    """
    pos = {v: i for i, v in enumerate(path)}
    edges = []
    for u, v in state.graph.edges():
        if u not in pos or v not in pos:
            return ("labelled", tuple(path), state.graph.key())
        edges.append(norm(pos[u], pos[v]))
    return (len(path), tuple(sorted(edges)))


def verify_long_path(n: int, target: int, role, first, prop=None, **budget):
    """Exhaustively check path properties (a)-(c) at the builder's completion point.

    ``prop`` defaults to ``Matching(n // 2 + 1)``, which no graph on ``n``
    vertices satisfies, so every adversary edge stays available.
    """
    from ..properties import Matching
    from ..solver import verify_strategy

    if prop is None:
        prop = Matching(n // 2 + 1)

    def stop(s, st):
        return st.done

    def check(s, st):
        if not st.done:
            return "game ended before the path was complete"
        bad = path_properties(s.graph, st.builder.path, target)
        return f"path properties violated: {bad}" if bad else None

    def keyfn(s, st):
        return path_shape_key(s, st.builder.path)

    return verify_strategy(LongPath(target), role, n, prop, first, stop=stop, check=check, keyfn=keyfn, **budget)
