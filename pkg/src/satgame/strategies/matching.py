"""Matching games: Max's perfect-matching strategy, both k-matching strategies
and the end-game automata they hand control to.

Every end-game is a small automaton that answers the opponent's last edge.
``respond`` returns the edge to claim together with the automaton to use
from then on (itself, a successor end-game, or ``None`` for trivial play).
Successors are checked against their own hypotheses when installed, so a
proof mismatch surfaces immediately as :class:`ConfigMismatch`.
"""
from __future__ import annotations

import copy
from math import comb

from .. import oracles
from ..game import MAX, MINI, IllegalMove
from ..graph import Graph, bits, norm
from ..properties import Matching, PerfectMatching
from .base import PreconditionError, Strategy, claim, trivial_move
from .longpath import PathBuilder, least_isolated


class ConfigMismatch(IllegalMove):
    """An end-game was installed on a board that violates its hypotheses."""


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def cycle_neighbours(cycle, v):
    i = cycle.index(v)
    return sorted({cycle[i - 1], cycle[(i + 1) % len(cycle)]})


def insert_between(cycle, a, b, seq):
    """Splice ``seq`` into ``cycle`` between the consecutive vertices ``a`` and ``b``."""
    L = len(cycle)
    i = cycle.index(a)
    if cycle[(i + 1) % L] == b:
        return cycle[: i + 1] + list(seq) + cycle[i + 1:]
    if cycle[i - 1] == b:
        return cycle[:i] + list(reversed(seq)) + cycle[i:] if i else cycle + list(reversed(seq))
    raise ValueError(f"{a} and {b} are not consecutive on the cycle")


def is_hamilton_cycle(g: Graph, cycle, vertices) -> bool:
    if sorted(cycle) != sorted(vertices) or len(cycle) < 3:
        return False
    return all(g.has_edge(cycle[i - 1], cycle[i]) for i in range(len(cycle)))


def least_free_inside(state, mask):
    g = state.graph
    for u in bits(mask):
        row = mask & ~g.adj[u] & ~((2 << u) - 1)
        if row:
            return (u, (row & -row).bit_length() - 1)
    return None


def least_free_avoiding(state, avoid):
    keep = ((1 << state.n) - 1) & ~_mask(avoid)
    return least_free_inside(state, keep)


def _neighbour_claim(state, u, v, cycle):
    """Claim ``u v'`` for the least cycle neighbour ``v'`` of ``v`` with ``uv'`` free."""
    for w in cycle_neighbours(cycle, v):
        if w != u and not state.graph.has_edge(u, w):
            return claim(state, u, w)
    raise IllegalMove(f"no free edge from {u} to a cycle neighbour of {v}", state.mover, None, state.ply)


def _mismatch(state, what, opp):
    raise ConfigMismatch(f"{what}: opponent edge {opp} is outside the case table", state.mover, opp, state.ply)


def _split(e, inside):
    """Order ``e`` as ``(a, b)`` with ``a`` in ``inside`` when exactly one is."""
    u, v = e
    if u in inside and v not in inside:
        return u, v
    if v in inside and u not in inside:
        return v, u
    return None


class Endgame:
    kind = "endgame"

    def key(self):
        return (self.kind,) + tuple(tuple(x) if isinstance(x, list) else x for x in self._fields())

    def _fields(self):
        return ()

    def check(self, g: Graph, k: int | None) -> list:
        return []

    def respond(self, state, opp):
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"variant": self.kind, **self.__dict__}

    def __repr__(self):
        return f"{self.kind}{self.__dict__}"


def _install(state, edge, nxt, k):
    if nxt is None:
        return None
    g = state.graph.with_edge(*edge)
    problems = nxt.check(g, k)
    if problems:
        raise ConfigMismatch(f"cannot install {nxt.kind}: {'; '.join(problems)}", state.mover, edge, state.ply)
    return nxt


# --------------------------------------------------------------------------
# perfect matching end-games (Max, second to move)
# --------------------------------------------------------------------------


class NMinus2Cycle(Endgame):
    kind = "NMinus2Cycle"

    def __init__(self, x, y, cycle):
        self.x, self.y, self.cycle = x, y, list(cycle)

    def _fields(self):
        return (self.x, self.y, self.cycle)

    def check(self, g, k=None):
        bad = []
        if g.n % 2 or g.n < 6:
            bad.append("n must be even and >= 6")
        if g.degree(self.x) or g.degree(self.y):
            bad.append("x and y must be isolated")
        rest = [v for v in range(g.n) if v not in (self.x, self.y)]
        if not is_hamilton_cycle(g, self.cycle, rest):
            bad.append("cycle is not a Hamilton cycle of G - {x, y}")
        return bad

    def respond(self, state, opp):
        X = (self.x, self.y)
        u, v = opp
        if u not in X and v not in X:
            e = least_free_avoiding(state, X)
            if e is None:
                return trivial_move(state), None
            return claim(state, *e), self
        if u in X and v in X:
            _mismatch(state, self.kind, opp)
        if v in X:
            u, v = v, u
        return _neighbour_claim(state, u, v, self.cycle), None


class OutsideEdge(Endgame):
    kind = "OutsideEdge"

    def __init__(self, x, y, z, cycle):
        self.x, self.y, self.z, self.cycle = x, y, z, list(cycle)

    def _fields(self):
        return (self.x, self.y, self.z, self.cycle)

    def check(self, g, k=None):
        bad = []
        if g.n % 2 or g.n < 6:
            bad.append("n must be even and >= 6")
        if not g.has_edge(self.x, self.y) or g.degree(self.x) != 1 or g.degree(self.y) != 1:
            bad.append("xy must be an isolated edge")
        if g.degree(self.z):
            bad.append("z must be isolated")
        rest = [v for v in range(g.n) if v not in (self.x, self.y, self.z)]
        if not is_hamilton_cycle(g, self.cycle, rest):
            bad.append("cycle is not a Hamilton cycle of G - {x, y, z}")
        return bad

    def respond(self, state, opp):
        S = (self.x, self.y, self.z)
        u, v = opp
        if u not in S and v not in S:
            e = least_free_avoiding(state, S)
            if e is None:
                return trivial_move(state), None
            return claim(state, *e), self
        pair = {u, v}
        if pair == {self.x, self.z}:
            return claim(state, self.y, self.z), None
        if pair == {self.y, self.z}:
            return claim(state, self.x, self.z), None
        sp = _split(opp, (self.x, self.y))
        if sp is not None and sp[1] not in S:
            a, b = sp
            other = self.y if a == self.x else self.x
            return _neighbour_claim(state, other, b, self.cycle), None
        _mismatch(state, self.kind, opp)


class HangingEdge(Endgame):
    kind = "HangingEdge"

    def __init__(self, w, x, y, z, cycle):
        self.w, self.x, self.y, self.z, self.cycle = w, x, y, z, list(cycle)

    def _fields(self):
        return (self.w, self.x, self.y, self.z, self.cycle)

    def check(self, g, k=None):
        bad = []
        if g.n % 2 or g.n < 6:
            bad.append("n must be even and >= 6")
        if not g.has_edge(self.w, self.x) or g.degree(self.x) != 1:
            bad.append("x must hang from w")
        if g.degree(self.y) or g.degree(self.z):
            bad.append("y and z must be isolated")
        rest = [v for v in range(g.n) if v not in (self.x, self.y, self.z)]
        if not is_hamilton_cycle(g, self.cycle, rest):
            bad.append("cycle is not a Hamilton cycle of G - {x, y, z}")
        return bad

    def respond(self, state, opp):
        YZ = (self.y, self.z)
        u, v = opp
        if u not in YZ and v not in YZ:
            e = least_free_avoiding(state, YZ)
            if e is None:
                return trivial_move(state), None
            return claim(state, *e), self
        sp = _split(opp, YZ)
        if sp is None:
            _mismatch(state, self.kind, opp)
        a, b = sp
        if b != self.x:
            return claim(state, a, self.x), None
        for c in range(state.n):
            if c not in (self.x, self.y, self.z) and not state.graph.has_edge(a, c):
                return claim(state, a, c), None
        _mismatch(state, self.kind, opp)


class TriangleVertex(Endgame):
    kind = "TriangleVertex"

    def __init__(self, w1, w2, w3, w4, cycle):
        self.w1, self.w2, self.w3, self.w4, self.cycle = w1, w2, w3, w4, list(cycle)

    def _fields(self):
        return (self.w1, self.w2, self.w3, self.w4, self.cycle)

    def check(self, g, k=None):
        bad = []
        tri = (self.w1, self.w2, self.w3)
        if g.n % 2 or g.n < 8:
            bad.append("n must be even and >= 8")
        if not all(g.has_edge(a, b) for a, b in ((tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2]))):
            bad.append("w1 w2 w3 must span a triangle")
        if any(g.degree(t) != 2 for t in tri):
            bad.append("triangle vertices must have degree 2")
        if g.degree(self.w4):
            bad.append("w4 must be isolated")
        rest = [v for v in range(g.n) if v not in tri + (self.w4,)]
        if not is_hamilton_cycle(g, self.cycle, rest):
            bad.append("cycle is not a Hamilton cycle of the rest")
        return bad

    def respond(self, state, opp):
        tri = (self.w1, self.w2, self.w3)
        W = tri + (self.w4,)
        u, v = opp
        if u not in W and v not in W:
            e = least_free_avoiding(state, W)
            if e is None:
                return trivial_move(state), None
            return claim(state, *e), self
        sp = _split(opp, W)
        if sp is None:
            _mismatch(state, self.kind, opp)
        a, b = sp
        if a == self.w4:
            return _neighbour_claim(state, a, b, self.cycle), None
        options = sorted(norm(t, c) for t in tri if t != a for c in cycle_neighbours(self.cycle, b))
        for e in options:
            if not state.graph.has_edge(*e):
                return claim(state, *e), None
        _mismatch(state, self.kind, opp)


class EdgeTwoVertices(Endgame):
    kind = "EdgeTwoVertices"

    def __init__(self, w1, w2, w3, w4, cycle):
        self.w1, self.w2, self.w3, self.w4, self.cycle = w1, w2, w3, w4, list(cycle)

    def _fields(self):
        return (self.w1, self.w2, self.w3, self.w4, self.cycle)

    def check(self, g, k=None):
        bad = []
        if g.n % 2 or g.n < 8:
            bad.append("n must be even and >= 8")
        if not g.has_edge(self.w3, self.w4) or g.degree(self.w3) != 1 or g.degree(self.w4) != 1:
            bad.append("w3 w4 must be an isolated edge")
        if g.degree(self.w1) or g.degree(self.w2):
            bad.append("w1 and w2 must be isolated")
        W = (self.w1, self.w2, self.w3, self.w4)
        rest = [v for v in range(g.n) if v not in W]
        if not is_hamilton_cycle(g, self.cycle, rest):
            bad.append("cycle is not a Hamilton cycle of the rest")
        return bad

    def respond(self, state, opp):
        lone = (self.w1, self.w2)
        pair = (self.w3, self.w4)
        W = lone + pair
        u, v = opp
        if u not in W and v not in W:
            e = least_free_avoiding(state, W)
            if e is None:
                return trivial_move(state), None
            return claim(state, *e), self
        sp = _split(opp, W)
        if sp is not None:
            a, b = sp
            nb = cycle_neighbours(self.cycle, b)
            if a in lone:
                e = _neighbour_claim(state, a, b, self.cycle)
                c = e[0] if e[1] == a else e[1]
                other = self.w2 if a == self.w1 else self.w1
                cyc = insert_between(self.cycle, b, c, [a])
                return e, OutsideEdge(self.w3, self.w4, other, cyc)
            a2 = self.w4 if a == self.w3 else self.w3
            e = _neighbour_claim(state, a2, b, self.cycle)
            c = e[0] if e[1] == a2 else e[1]
            assert c in nb
            cyc = insert_between(self.cycle, b, c, [a, a2])
            return e, NMinus2Cycle(self.w1, self.w2, cyc)
        sp = _split(opp, lone)
        if sp is not None and sp[1] in pair:
            a, b = sp
            b2 = self.w4 if b == self.w3 else self.w3
            other = self.w2 if a == self.w1 else self.w1
            e = claim(state, a, b2)
            return e, TriangleVertex(a, self.w3, self.w4, other, self.cycle)
        _mismatch(state, self.kind, opp)


# --------------------------------------------------------------------------
# connect-all-isolated (Max, second to move)
# --------------------------------------------------------------------------


class ConnectAllIsolated(Endgame):
    """Tie every vertex outside ``U`` to the hub ``u`` until none is left loose."""

    kind = "ConnectAllIsolated"

    def __init__(self, U, u, w1, w2):
        self.U = sorted(U)
        self.u, self.w1, self.w2 = u, w1, w2

    def _fields(self):
        return (self.U, self.u, self.w1, self.w2)

    def loose(self, g) -> int:
        Um = _mask(self.U)
        full = (1 << g.n) - 1
        return _mask(w for w in bits(full & ~Um) if not g.adj[w] & Um)

    def check(self, g, k=None):
        bad = []
        Um = _mask(self.U)
        W = ((1 << g.n) - 1) & ~Um
        if k is not None:
            if oracles.max_matching_size(g) != k - 1:
                bad.append("nu(G) must be k-1")
            if oracles.max_matching_size(g.induced(bits(Um))) != k - 1:
                bad.append("nu(G - W) must be k-1")
        if not (W >> self.w1 & 1 and W >> self.w2 & 1) or self.u not in self.U:
            bad.append("w1, w2 must lie outside U and u inside")
        if g.degree(self.w1) != 1 or g.degree(self.w2) != 1:
            bad.append("w1 and w2 must have degree 1")
        if not (g.has_edge(self.u, self.w1) and g.has_edge(self.u, self.w2)):
            bad.append("u must be adjacent to w1 and w2")
        return bad

    def respond(self, state, opp):
        loose = self.loose(state.graph)
        if not loose:
            return trivial_move(state), None
        w = (loose & -loose).bit_length() - 1
        return claim(state, self.u, w), self


# --------------------------------------------------------------------------
# k-matching end-games (Mini, second to move)
# --------------------------------------------------------------------------


def _component_problems(g, C1, cycle, tag="C1"):
    bad = []
    m = _mask(C1)
    if not is_hamilton_cycle(g, cycle, C1):
        bad.append(f"{tag} has no stored Hamilton cycle")
    if any(g.adj[v] & ~m for v in C1):
        bad.append(f"{tag} is not a component")
    return bad


def _inner_edges(g, C1) -> int:
    m = _mask(C1)
    return sum((g.adj[v] & m).bit_count() for v in C1) // 2


class OneLongCycle(Endgame):
    def __init__(self, C1, cycle, part):
        self.C1 = sorted(C1)
        self.cycle = list(cycle)
        self.part = part
        self.kind = "OneLongCycle" + part

    def _fields(self):
        return (self.C1, self.cycle)

    def check(self, g, k):
        bad = _component_problems(g, self.C1, self.cycle)
        if any(g.adj[v] for v in range(g.n) if v not in self.C1):
            bad.append("vertices outside C1 must be isolated")
        size = 2 * k - 1 if self.part == "A" else 2 * k - 2
        if len(self.C1) != size:
            bad.append(f"|C1| must be {size}")
        if self.part == "B" and (comb(2 * k - 2, 2) - g.m) % 2:
            bad.append("parity: binom(2k-2,2) - e(G) must be even")
        return bad

    def respond(self, state, opp):
        if self.part == "A":
            return trivial_move(state), None
        inside = set(self.C1)
        u, v = opp
        if u in inside and v in inside:
            e = least_free_inside(state, _mask(self.C1))
            if e is None:
                raise IllegalMove("no free edge left inside C1", state.mover, None, state.ply)
            return claim(state, *e), self
        sp = _split(opp, inside)
        if sp is None:
            _mismatch(state, self.kind, opp)
        a, b = sp
        return _neighbour_claim(state, b, a, self.cycle), None


class EdgeOrTriangle(Endgame):
    def __init__(self, C1, cycle, C2, part):
        self.C1 = sorted(C1)
        self.cycle = list(cycle)
        self.C2 = sorted(C2)
        self.part = part
        self.kind = "EdgeOrTriangle" + part

    def _fields(self):
        return (self.C1, self.cycle, self.C2)

    def check(self, g, k):
        bad = _component_problems(g, self.C1, self.cycle)
        if len(self.C1) != 2 * k - 3:
            bad.append("|C1| must be 2k-3")
        c2 = self.C2
        want = 3 if self.part == "A" else 2
        m2 = _mask(c2)
        if len(c2) != want or any((g.adj[v] & m2).bit_count() != want - 1 or g.adj[v] & ~m2 for v in c2):
            bad.append(f"C2 must be a component isomorphic to K{want}")
        if any(g.adj[v] for v in range(g.n) if v not in self.C1 and v not in c2):
            bad.append("other vertices must be isolated")
        if self.part == "B" and (comb(2 * k - 3, 2) - _inner_edges(g, self.C1)) % 2:
            bad.append("parity: binom(2k-3,2) - e(G[C1]) must be even")
        return bad

    def respond(self, state, opp):
        if self.part == "A":
            return trivial_move(state), None
        inside = set(self.C1)
        u, v = opp
        if u in inside and v in inside:
            e = least_free_inside(state, _mask(self.C1))
            if e is None:
                raise IllegalMove("no free edge left inside C1", state.mover, None, state.ply)
            return claim(state, *e), self
        if v in self.C2 and u not in self.C2:
            u, v = v, u
        if u not in self.C2:
            _mismatch(state, self.kind, opp)
        u2 = self.C2[0] if self.C2[1] == u else self.C2[1]
        if v in inside:
            return _neighbour_claim(state, u2, v, self.cycle), None
        return claim(state, u2, v), None


class EdgeOrTriangle2(Endgame):
    def __init__(self, C1, cycle, C2, part):
        self.C1 = sorted(C1)
        self.cycle = list(cycle)
        self.C2 = sorted(C2)
        self.part = part
        self.kind = "EdgeOrTriangle2" + part

    def _fields(self):
        return (self.C1, self.cycle, self.C2)

    def check(self, g, k):
        bad = _component_problems(g, self.C1, self.cycle)
        if k < 4:
            bad.append("needs k >= 4")
        if len(self.C1) != 2 * k - 4:
            bad.append("|C1| must be 2k-4")
        want = 3 if self.part == "A" else 2
        m2 = _mask(self.C2)
        if len(self.C2) != want or any((g.adj[v] & m2).bit_count() != want - 1 or g.adj[v] & ~m2 for v in self.C2):
            bad.append(f"C2 must be a component isomorphic to K{want}")
        if any(g.adj[v] for v in range(g.n) if v not in self.C1 and v not in self.C2):
            bad.append("other vertices must be isolated")
        if (comb(2 * k - 4, 2) - _inner_edges(g, self.C1)) % 2:
            bad.append("parity: binom(2k-4,2) - e(G[C1]) must be even")
        return bad

    def respond(self, state, opp):
        inside = set(self.C1)
        u, v = opp
        if u in inside and v in inside:
            e = least_free_inside(state, _mask(self.C1))
            if e is None:
                raise IllegalMove("no free edge left inside C1", state.mover, None, state.ply)
            return claim(state, *e), self
        sp = _split(opp, inside)
        if self.part == "A":
            if sp is None:
                _mismatch(state, self.kind, opp)
            b, a = sp  # b in C1, a outside
            if a in self.C2:
                options = sorted(norm(c, w) for c in self.C2 if c != a for w in cycle_neighbours(self.cycle, b))
                for e in options:
                    if not state.graph.has_edge(*e):
                        return claim(state, *e), None
                _mismatch(state, self.kind, opp)
            return _neighbour_claim(state, a, b, self.cycle), None
        # part B
        if sp is None:
            if v in self.C2 and u not in self.C2:
                u, v = v, u
            if u not in self.C2 or v in self.C2:
                _mismatch(state, self.kind, opp)
            u2 = self.C2[0] if self.C2[1] == u else self.C2[1]
            e = claim(state, u2, v)
            return e, EdgeOrTriangle2(self.C1, self.cycle, self.C2 + [v], "A")
        b, a = sp
        if a in self.C2:
            a2 = self.C2[0] if self.C2[1] == a else self.C2[1]
            e = _neighbour_claim(state, a2, b, self.cycle)
            c = e[0] if e[1] == a2 else e[1]
            cyc = insert_between(self.cycle, b, c, [a, a2])
            return e, OneLongCycle(self.C1 + self.C2, cyc, "B")
        e = _neighbour_claim(state, a, b, self.cycle)
        c = e[0] if e[1] == a else e[1]
        cyc = insert_between(self.cycle, b, c, [a])
        return e, EdgeOrTriangle(self.C1 + [a], cyc, self.C2, "B")


class CyclePending(Endgame):
    """A Hamilton-cycle component of order 2k-3 plus (part A) a pendant edge wx."""

    def __init__(self, C1, cycle, x, w=None, part="A", isolated0=None):
        self.C1 = sorted(C1)
        self.cycle = list(cycle)
        self.x, self.w = x, w
        self.part = part
        self.kind = "CyclePending" + part
        # vertices isolated when the end-game began
        self.isolated0 = isolated0

    def _fields(self):
        return (self.C1, self.cycle, self.x, self.w, self.isolated0)

    def bind(self, g):
        if self.isolated0 is None:
            self.isolated0 = [v for v in range(g.n) if not g.adj[v]]
        return self

    def check(self, g, k):
        self.bind(g)
        bad = _component_problems(g, self.C1, self.cycle) if self.part == "B" else []
        if self.part == "A":
            m = _mask(self.C1) | (1 << self.x)
            if not is_hamilton_cycle(g, self.cycle, self.C1):
                bad.append("C1 has no stored Hamilton cycle")
            if any(g.adj[v] & ~m for v in self.C1 + [self.x]):
                bad.append("C1 + x must be a component")
            if self.w not in self.C1 or not g.has_edge(self.w, self.x) or g.degree(self.x) != 1:
                bad.append("x must hang from w in C1")
            if (comb(2 * k - 2, 2) - g.m) % 2:
                bad.append("parity: binom(2k-2,2) - e(G) must be even")
        else:
            if g.degree(self.x):
                bad.append("x must be isolated")
            if (comb(2 * k - 3, 2) - g.m) % 2 == 0:
                bad.append("parity: binom(2k-3,2) - e(G) must be odd")
        if len(self.C1) != 2 * k - 3:
            bad.append("|C1| must be 2k-3")
        others = [v for v in range(g.n) if v not in self.C1 and v != self.x]
        if any(g.adj[v] for v in others):
            bad.append("other vertices must be isolated")
        return bad

    def respond(self, state, opp):
        g = state.graph
        iso0 = set(self.isolated0)
        inside = set(self.C1)
        u, v = opp
        if self.part == "A":
            block = inside | {self.x}
            if u in block and v in block:
                e = _neighbour_claim(state, self.x, self.w, self.cycle)
                c = e[0] if e[1] == self.x else e[1]
                cyc = insert_between(self.cycle, self.w, c, [self.x])
                return e, OneLongCycle(self.C1 + [self.x], cyc, "B")
            if v in iso0 and u not in iso0:
                u, v = v, u
            if u not in iso0:
                _mismatch(state, self.kind, opp)
            if v == self.x:
                for z in self.C1:
                    if not g.has_edge(u, z):
                        return claim(state, u, z), None
                _mismatch(state, self.kind, opp)
            return claim(state, u, self.x), None
        # part B
        if u in inside and v in inside:
            for a in sorted(iso0):
                for b in sorted(iso0):
                    if a < b and not g.has_edge(a, b):
                        return claim(state, a, b), EdgeOrTriangle(self.C1, self.cycle, [a, b], "B")
            _mismatch(state, self.kind, opp)
        if u not in inside and v not in inside:
            e = least_free_inside(state, _mask(self.C1))
            if e is None:
                _mismatch(state, self.kind, opp)
            return claim(state, *e), EdgeOrTriangle(self.C1, self.cycle, [u, v], "B")
        b, a = _split(opp, inside)
        e = _neighbour_claim(state, a, b, self.cycle)
        c = e[0] if e[1] == a else e[1]
        cyc = insert_between(self.cycle, b, c, [a])
        return e, OneLongCycle(self.C1 + [a], cyc, "B")


ENDGAMES = {
    "NMinus2Cycle": lambda d: NMinus2Cycle(d["x"], d["y"], d["cycle"]),
    "OutsideEdge": lambda d: OutsideEdge(d["x"], d["y"], d["z"], d["cycle"]),
    "HangingEdge": lambda d: HangingEdge(d["w"], d["x"], d["y"], d["z"], d["cycle"]),
    "TriangleVertex": lambda d: TriangleVertex(d["w1"], d["w2"], d["w3"], d["w4"], d["cycle"]),
    "EdgeTwoVertices": lambda d: EdgeTwoVertices(d["w1"], d["w2"], d["w3"], d["w4"], d["cycle"]),
    "ConnectAllIsolated": lambda d: ConnectAllIsolated(d["U"], d["u"], d["w1"], d["w2"]),
    "OneLongCycleA": lambda d: OneLongCycle(d["C1"], d["cycle"], "A"),
    "OneLongCycleB": lambda d: OneLongCycle(d["C1"], d["cycle"], "B"),
    "EdgeOrTriangleA": lambda d: EdgeOrTriangle(d["C1"], d["cycle"], d["C2"], "A"),
    "EdgeOrTriangleB": lambda d: EdgeOrTriangle(d["C1"], d["cycle"], d["C2"], "B"),
    "EdgeOrTriangle2A": lambda d: EdgeOrTriangle2(d["C1"], d["cycle"], d["C2"], "A"),
    "EdgeOrTriangle2B": lambda d: EdgeOrTriangle2(d["C1"], d["cycle"], d["C2"], "B"),
    "CyclePendingA": lambda d: CyclePending(d["C1"], d["cycle"], d["x"], d["w"], "A"),
    "CyclePendingB": lambda d: CyclePending(d["C1"], d["cycle"], d["x"], None, "B"),
}

PM_ENDGAMES = ("NMinus2Cycle", "OutsideEdge", "HangingEdge", "TriangleVertex", "EdgeTwoVertices")


def endgame_from_dict(d: dict) -> Endgame:
    try:
        make = ENDGAMES[d["variant"]]
    except KeyError:
        raise ValueError(f"unknown end-game variant {d.get('variant')!r}") from None
    return make(d)


def _k_of(prop):
    if isinstance(prop, PerfectMatching):
        return None
    if isinstance(prop, Matching):
        return prop.k
    return None


class EndgameRunner(Strategy):
    """Plays one end-game automaton (and its successors) from a prepared board."""

    def __init__(self, cfg: Endgame):
        super().__init__()
        self.initial = cfg
        self.current = cfg
        self.name = f"endgame:{cfg.kind}"
        self.history = []

    def reset(self, role, state):
        super().reset(role, state)
        self.current = self.initial
        self.history = [self.initial.kind]
        k = _k_of(state.prop)
        problems = self.current.check(state.graph, k)
        if problems:
            raise PreconditionError(f"{self.current.kind}: {'; '.join(problems)}")

    def next_move(self, state):
        if self.current is None:
            return trivial_move(state)
        opp = self.opponent_last(state)
        if opp is None:
            raise PreconditionError("end-games are played as the second player")
        e, nxt = self.current.respond(state, opp)
        if nxt is not self.current:
            nxt = _install(state, e, nxt, _k_of(state.prop))
            self.history.append(nxt.kind if nxt is not None else "trivial")
        self.current = nxt
        return e

    def key(self):
        return self.current.key() if self.current is not None else None

    def clone(self):
        c = copy.copy(self)
        c.history = list(self.history)
        return c

    @property
    def passive(self):
        return self.current is None


# --------------------------------------------------------------------------
# top-level strategies
# --------------------------------------------------------------------------


class _Staged(Strategy):
    """Shared plumbing: a long path stage followed by hand-offs to end-games."""

    def __init__(self):
        super().__init__()
        self.stage = 1
        self.builder = None
        self.endgame = None
        self.history = []

    def _path(self):
        return self.builder.path

    def clone(self):
        # end-game objects are never mutated after installation, so sharing is safe
        c = copy.copy(self)
        c.builder = self.builder.copy() if self.builder is not None else None
        c.history = list(self.history)
        return c

    def run_endgame(self, state, opp):
        e, nxt = self.endgame.respond(state, opp)
        if nxt is not self.endgame:
            nxt = _install(state, e, nxt, _k_of(state.prop))
            self.history.append(nxt.kind if nxt is not None else "trivial")
        self.endgame = nxt
        if nxt is None:
            self.stage = "trivial"
        return e

    def hand_off(self, state, e, cfg):
        cfg = _install(state, e, cfg, _k_of(state.prop))
        self.endgame = cfg
        self.stage = "endgame"
        self.history.append(cfg.kind)
        return e

    @property
    def passive(self):
        return self.stage in ("trivial", 4)

    def key(self):
        return (self.stage, self.builder.key() if self.builder else None,
                self.endgame.key() if self.endgame is not None else None)


class MaxPM(_Staged):
    """Max's strategy for the perfect matching game (even n >= 8)."""

    name = "max-pm"

    def __init__(self):
        super().__init__()
        self.fell_through = False
        self.path_filled = False

    def reset(self, role, state):
        super().reset(role, state)
        if role is not MAX:
            raise PreconditionError("max-pm plays as Max")
        if not isinstance(state.prop, PerfectMatching):
            raise PreconditionError(f"max-pm plays the pm game, not {state.prop}")
        n = state.n
        if n % 2 or n < 8:
            raise PreconditionError("max-pm needs an even n >= 8")
        if state.start.m:
            raise PreconditionError("max-pm starts from the empty graph")
        self.builder = PathBuilder(n - 5)
        self.stage = 1
        self.endgame = None
        self.history = []
        self.fell_through = False
        self.path_filled = False

    def next_move(self, state):
        if self.stage in (1, 2, 3):
            try:
                return self._staged_move(state)
            except ConfigMismatch:
                raise
            except IllegalMove:
                # Running out of edges inside V(P) is the expected way into
                # stage 4: the path vertices then span a clique, which is
                # already the whole guarantee.  Anything else is a fault.
                if self.stage == 3 and least_free_inside(state, _mask(self.builder.path)) is None:
                    self.path_filled = True
                else:
                    self.fell_through = True
                self.stage = 4
                self.history.append("stage-4")
                return trivial_move(state)
        if self.stage == "endgame":
            return self.run_endgame(state, self.opponent_last(state))
        return trivial_move(state)

    def _staged_move(self, state):
        n = state.n
        opp = self.opponent_last(state)
        if self.stage == 1:
            e = self.builder.move(state, opp)
            if self.builder.done:
                self.stage = 3 if self.builder.length == n - 4 else 2
            return e
        path = self.builder.path
        on = set(path)
        off = [v for v in range(n) if v not in on]
        u0, ul = path[0], path[-1]
        u, v = opp
        if self.stage == 2:
            if u in on or v in on:
                if u in on and v in on:
                    w = off[0]
                    e = claim(state, ul, w)
                    path.append(w)
                else:
                    w = u if u not in on else v
                    if not state.graph.has_edge(ul, w):
                        e = claim(state, ul, w)
                        path.append(w)
                    else:
                        e = claim(state, u0, w)
                        path.insert(0, w)
                self.stage = 3
                return e
            lone = [w for w in off if w not in (u, v)]
            e = claim(state, u0, ul)
            return self.hand_off(state, e, EdgeTwoVertices(lone[0], lone[1], u, v, list(path)))
        # stage 3
        if u in on and v in on:
            e = least_free_inside(state, _mask(path))
            if e is None:
                raise IllegalMove("no free edge inside the path", state.mover, None, state.ply)
            return claim(state, *e)
        if not state.graph.has_edge(u0, ul):
            e = claim(state, u0, ul)
        else:
            e = least_free_inside(state, _mask(path))
            if e is None:
                raise IllegalMove("no free edge inside the path", state.mover, None, state.ply)
            e = claim(state, *e)
        if u not in on and v not in on:
            z = [w for w in off if w not in (u, v)][0]
            return self.hand_off(state, e, OutsideEdge(u, v, z, list(path)))
        a, b = (u, v) if u in on else (v, u)
        y, z = [w for w in off if w != b]
        return self.hand_off(state, e, HangingEdge(a, b, y, z, list(path)))

    def fault(self):
        return "fell through to trivial play in stages 1-3" if self.fell_through else None

    def key(self):
        return super().key() + (self.fell_through, self.path_filled)


def max_mk_allowed(k: int, first) -> bool:
    """Max's parity (odd = moves first) must differ from the parity of k."""
    return (first is MAX) == (k % 2 == 0)


def mini_mk_allowed(k: int, first) -> bool:
    return (first is MINI) == (k % 2 == 0)


class MaxMk(_Staged):
    """Max's strategy for the k-matching game when his parity is opposite to k's."""

    def __init__(self, k: int):
        super().__init__()
        if k < 2:
            raise PreconditionError("k must be at least 2")
        self.k = k
        self.name = f"max-mk:{k}"

    def reset(self, role, state):
        super().reset(role, state)
        k, n = self.k, state.n
        if role is not MAX:
            raise PreconditionError("max-mk plays as Max")
        if not isinstance(state.prop, Matching) or isinstance(state.prop, PerfectMatching) or state.prop.k != k:
            raise PreconditionError(f"max-mk:{k} plays matching:{k}, not {state.prop}")
        if n < 2 * k:
            raise PreconditionError("needs n >= 2k")
        if not max_mk_allowed(k, state.first):
            raise PreconditionError(f"max-mk:{k} needs Max to move {'first' if k % 2 == 0 else 'second'}")
        if state.start.m:
            raise PreconditionError("max-mk starts from the empty graph")
        self.builder = PathBuilder(max(2 * k - 4, 1))
        self.stage = 1
        self.endgame = None
        self.history = []

    def next_move(self, state):
        k, n = self.k, state.n
        opp = self.opponent_last(state)
        if self.stage == 1:
            e = self.builder.move(state, opp)
            if self.builder.done:
                self.stage = 2 if self.builder.length == 2 * k - 4 else 3
            return e
        if self.stage == "endgame":
            return self.run_endgame(state, opp)
        if self.stage == "trivial":
            return trivial_move(state)
        path = self.builder.path
        on = set(path)
        u0, ul = path[0], path[-1]
        w, v = opp
        if self.stage == 2:
            if w in on or v in on:
                if w in on and v in on:
                    z = min(x for x in range(n) if x not in on)
                    e = claim(state, ul, z)
                    path.append(z)
                else:
                    x = w if w not in on else v
                    if not state.graph.has_edge(ul, x):
                        e = claim(state, ul, x)
                        path.append(x)
                    else:
                        e = claim(state, u0, x)
                        path.insert(0, x)
                self.stage = 3
                return e
            if state.graph.degree(u0) != 1:
                path.reverse()
                u0 = path[0]
            u1 = path[1]
            z = least_isolated(state)
            e = claim(state, u1, z)
            U = [w, v] + path[1:]
            return self.hand_off(state, e, ConnectAllIsolated(U, u1, z, u0))
        # stage 3
        if w in on and v in on:
            e = least_free_inside(state, _mask(path))
            if e is None:
                raise IllegalMove("no free edge inside the path", state.mover, None, state.ply)
            return claim(state, *e)
        sp = _split(opp, on)
        if sp is None:
            raise ConfigMismatch(f"opponent edge {opp} misses the path", state.mover, opp, state.ply)
        a, b = sp
        z = least_isolated(state)
        e = claim(state, a, z)
        return self.hand_off(state, e, ConnectAllIsolated(list(path), a, z, b))


class MiniMk(_Staged):
    """Mini's strategy for the k-matching game when her parity is opposite to k's."""

    def __init__(self, k: int):
        super().__init__()
        if k < 3:
            raise PreconditionError("mini-mk needs k >= 3")
        self.k = k
        self.name = f"mini-mk:{k}"

    def reset(self, role, state):
        super().reset(role, state)
        k, n = self.k, state.n
        if role is not MINI:
            raise PreconditionError("mini-mk plays as Mini")
        if not isinstance(state.prop, Matching) or isinstance(state.prop, PerfectMatching) or state.prop.k != k:
            raise PreconditionError(f"mini-mk:{k} plays matching:{k}, not {state.prop}")
        if n < 2 * k:
            raise PreconditionError("needs n >= 2k")
        if not mini_mk_allowed(k, state.first):
            raise PreconditionError(f"mini-mk:{k} needs Mini to move {'first' if k % 2 == 0 else 'second'}")
        if state.start.m:
            raise PreconditionError("mini-mk starts from the empty graph")
        self.builder = PathBuilder(2 * k - 5)
        self.repaired = False
        self.stage = 1
        self.endgame = None
        self.history = []

    def next_move(self, state):
        k, n = self.k, state.n
        opp = self.opponent_last(state)
        if self.stage == 1:
            e = self.builder.move(state, opp)
            if self.builder.done:
                self.stage = 2 if self.builder.length == 2 * k - 5 else 3
            return e
        if self.stage == "endgame":
            return self.run_endgame(state, opp)
        if self.stage == "trivial":
            return trivial_move(state)
        path = self.builder.path
        on = set(path)
        u0, ul = path[0], path[-1]
        u, v = opp
        if self.stage == 2:
            if u in on or v in on:
                if u in on and v in on:
                    z = min(x for x in range(n) if x not in on)
                    e = claim(state, ul, z)
                    path.append(z)
                else:
                    x = u if u not in on else v
                    if not state.graph.has_edge(ul, x):
                        e = claim(state, ul, x)
                        path.append(x)
                    else:
                        e = claim(state, u0, x)
                        path.insert(0, x)
                self.stage = 3
                return e
            e = claim(state, u0, ul)
            return self.hand_off(state, e, EdgeOrTriangle2(list(path), list(path), [u, v], "B"))
        # stage 3
        if not state.graph.has_edge(u0, ul):
            e = claim(state, u0, ul)
        else:
            e = least_free_inside(state, _mask(path))
            if e is None:
                # Only k = 3: Max closed the triangle on V(P).  Pairing two
                # isolated vertices leaves a triangle plus an edge with Max
                # to move, which the edge-or-triangle end-game covers.
                iso = [z for z in range(n) if not state.graph.adj[z]]
                e = claim(state, iso[0], iso[1])
                self.repaired = True
                return self.hand_off(state, e, EdgeOrTriangle(list(path), list(path), list(e), "B"))
            e = claim(state, *e)
        hits = (u in on) + (v in on)
        if hits == 0:
            cfg = EdgeOrTriangle(list(path), list(path), [u, v], "B")
        elif hits == 1:
            a, b = (u, v) if u in on else (v, u)
            cfg = CyclePending(list(path), list(path), b, a, "A")
        else:
            g = state.graph.with_edge(*e)
            x = min(z for z in range(n) if not g.adj[z])
            cfg = CyclePending(list(path), list(path), x, None, "B")
        if isinstance(cfg, CyclePending):
            cfg.bind(state.graph.with_edge(*e))
        return self.hand_off(state, e, cfg)


# --------------------------------------------------------------------------
# smallest boards satisfying each end-game's hypotheses
# --------------------------------------------------------------------------


class LemmaInstance:
    """A prepared start graph plus the end-game that should be played from it."""

    def __init__(self, name, n, prop, edges, config, role, bound, sense):
        self.name = name
        self.n = n
        self.prop = prop
        self.start = Graph.from_edges(n, edges)
        self.config = config
        self.role = role
        self.bound = bound
        self.sense = sense  # ">=" for Max's lower bounds, "<=" for Mini's upper bounds

    @property
    def first(self):
        # the end-game player always moves second within the sub-game
        return self.role.other

    def holds(self, guarantee) -> bool:
        return guarantee >= self.bound if self.sense == ">=" else guarantee <= self.bound


def _ring(vs):
    return [(vs[i - 1], vs[i]) for i in range(len(vs))]


def lemma_instances() -> list:
    pm8, pm6 = PerfectMatching(), PerfectMatching()
    out = [
        LemmaInstance("NMinus2Cycle", 6, pm6, _ring([0, 1, 2, 3]), NMinus2Cycle(4, 5, [0, 1, 2, 3]),
                      MAX, comb(4, 2), ">="),
        LemmaInstance("OutsideEdge", 6, pm6, _ring([0, 1, 2]) + [(3, 4)], OutsideEdge(3, 4, 5, [0, 1, 2]),
                      MAX, comb(3, 2), ">="),
        LemmaInstance("HangingEdge", 6, pm6, _ring([0, 1, 2]) + [(0, 3)], HangingEdge(0, 3, 4, 5, [0, 1, 2]),
                      MAX, comb(4, 2), ">="),
        LemmaInstance("TriangleVertex", 8, pm8, _ring([0, 1, 2, 3]) + _ring([4, 5, 6]),
                      TriangleVertex(4, 5, 6, 7, [0, 1, 2, 3]), MAX, comb(4, 2), ">="),
        LemmaInstance("EdgeTwoVertices", 8, pm8, _ring([0, 1, 2, 3]) + [(6, 7)],
                      EdgeTwoVertices(4, 5, 6, 7, [0, 1, 2, 3]), MAX, comb(4, 2), ">="),
    ]
    m3, m4 = Matching(3), Matching(4)
    c3 = [0, 1, 2]
    c4 = [0, 1, 2, 3]
    out += [
        LemmaInstance("OneLongCycleA", 6, m3, _ring([0, 1, 2, 3, 4]), OneLongCycle([0, 1, 2, 3, 4], [0, 1, 2, 3, 4], "A"),
                      MINI, comb(5, 2), "<="),
        LemmaInstance("OneLongCycleB", 6, m3, _ring(c4), OneLongCycle(c4, c4, "B"), MINI, comb(5, 2), "<="),
        LemmaInstance("EdgeOrTriangleA", 6, m3, _ring(c3) + _ring([3, 4, 5]), EdgeOrTriangle(c3, c3, [3, 4, 5], "A"),
                      MINI, comb(5, 2), "<="),
        LemmaInstance("EdgeOrTriangleB", 6, m3, _ring(c3) + [(3, 4)], EdgeOrTriangle(c3, c3, [3, 4], "B"),
                      MINI, comb(5, 2), "<="),
        LemmaInstance("EdgeOrTriangle2A", 8, m4, _ring(c4) + _ring([4, 5, 6]), EdgeOrTriangle2(c4, c4, [4, 5, 6], "A"),
                      MINI, comb(7, 2), "<="),
        LemmaInstance("EdgeOrTriangle2B", 8, m4, _ring(c4) + [(4, 5)], EdgeOrTriangle2(c4, c4, [4, 5], "B"),
                      MINI, comb(7, 2), "<="),
        LemmaInstance("CyclePendingA", 6, m3, _ring(c3) + [(0, 3)], CyclePending(c3, c3, 3, 0, "A"),
                      MINI, comb(5, 2), "<="),
        # With k = 3 the cycle component is a triangle and the parity side
        # condition can never hold, so this one is exercised at k = 4.
        LemmaInstance("CyclePendingB", 8, m4, _ring([0, 1, 2, 3, 4]), CyclePending([0, 1, 2, 3, 4], [0, 1, 2, 3, 4], 5, None, "B"),
                      MINI, comb(7, 2), "<="),
    ]
    return out
