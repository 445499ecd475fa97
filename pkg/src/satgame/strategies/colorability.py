"""Colorability games: the top/middle/bottom partition and the two strategies.

For an anchor ``v0`` the *top* vertices are those coloured like ``v0`` in
every proper 3-colouring, the *middle* is their neighbourhood and the
*bottom* is everything else.  Mini's strategy for the chi > 3 game keeps the
board "good" (no bottom-bottom edges, at most one bottom vertex hanging off
each middle component) while pulling bottom vertices into the middle.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .. import oracles
from ..graph import Graph, bits, norm
from ..properties import ChromaticAbove
from .base import PreconditionError, Strategy, claim, trivial_move


class PartitionCorrupt(RuntimeError):
    pass


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _bipartite(adj, mask: int) -> bool:
    """Whether the subgraph induced on ``mask`` is 2-colourable."""
    side = {}
    rest = mask
    while rest:
        s = (rest & -rest).bit_length() - 1
        side[s] = 0
        frontier = [s]
        rest &= ~(1 << s)
        while frontier:
            x = frontier.pop()
            for y in bits(adj[x] & mask):
                if y in side:
                    if side[y] == side[x]:
                        return False
                else:
                    side[y] = side[x] ^ 1
                    rest &= ~(1 << y)
                    frontier.append(y)
    return True


def _component(adj, v: int, alive: int) -> int:
    seen = 1 << v
    frontier = seen
    while frontier:
        nxt = 0
        for x in bits(frontier):
            nxt |= adj[x]
        nxt &= alive & ~seen
        seen |= nxt
        frontier = nxt
    return seen


@dataclass
class TMBPartition:
    """Top / middle / bottom masks relative to ``v0`` for graph ``adj``."""

    v0: int
    top: int
    middle: int
    bottom: int
    adj: tuple = field(repr=False, default=())

    @property
    def T(self) -> set:
        return set(bits(self.top))

    @property
    def M(self) -> set:
        return set(bits(self.middle))

    @property
    def B(self) -> set:
        return set(bits(self.bottom))

    def gamma(self, x: int) -> int:
        """Vertex mask of the component of ``x`` in G[{x} + M]."""
        return _component(self.adj, x, self.middle | (1 << x))

    def middle_components(self) -> list:
        comps, rest = [], self.middle
        while rest:
            v = (rest & -rest).bit_length() - 1
            c = _component(self.adj, v, self.middle)
            comps.append(c)
            rest &= ~c
        return comps

    def attached(self) -> dict:
        """Middle component mask -> mask of bottom vertices adjacent to it."""
        out = {}
        for c in self.middle_components():
            hang = 0
            for v in bits(c):
                hang |= self.adj[v]
            out[c] = hang & self.bottom
        return out

    def same_sets(self, other) -> bool:
        return (self.top, self.middle, self.bottom) == (other.top, other.middle, other.bottom)


def _close(adj, v0: int, top: int) -> TMBPartition:
    """Grow ``top`` to its fixed point under the odd-cycle promotion rule."""
    n = len(adj)
    full = (1 << n) - 1
    while True:
        nb = 0
        for t in bits(top):
            nb |= adj[t]
        middle = nb & ~top
        bottom = full & ~top & ~middle
        promoted = 0
        for x in bits(bottom):
            if not _bipartite(adj, _component(adj, x, middle | (1 << x))):
                promoted |= 1 << x
        if not promoted:
            return TMBPartition(v0, top, middle, bottom, tuple(adj))
        top |= promoted


def initial_partition(n: int, v0: int = 0) -> TMBPartition:
    full = (1 << n) - 1
    return TMBPartition(v0, 1 << v0, 0, full & ~(1 << v0), (0,) * n)


def update_partition(p: TMBPartition, g_before: Graph, e, g_after: Graph) -> TMBPartition:
    """Partition of ``g_after`` from the partition ``p`` of ``g_before``.

    Tops only ever grow, so the new top set is the closure of the old one.
    The rule is exact on good and almost-good boards; ``PartitionCorrupt``
    flags boards where a middle component stopped being 2-colourable.
    """
    u, v = e
    if not g_after.has_edge(u, v) or g_after.m != g_before.m + 1:
        raise PartitionCorrupt("g_after must be g_before plus e")
    q = _close(g_after.adj, p.v0, p.top)
    if q.top & p.top != p.top or q.middle & p.middle != p.middle:
        raise PartitionCorrupt("a vertex left the top or the middle")
    if not _bipartite(g_after.adj, q.middle):
        raise PartitionCorrupt("middle is not 2-colourable")
    return q


def partition_from_scratch(g: Graph, v0: int = 0) -> TMBPartition:
    return _close(g.adj, v0, 1 << v0)


def partition_bruteforce(g: Graph, v0: int = 0) -> TMBPartition:
    """Top set straight from its definition via 3-colouring feasibility.

    ``x`` is a top vertex iff no proper 3-colouring separates it from ``v0``,
    i.e. iff ``G + v0 x`` is not 3-colourable (for ``x`` not adjacent to v0).
    """
    if oracles.k_coloring(g.adj, 3) is None:
        raise ValueError("graph is not 3-colourable")
    top = 1 << v0
    for x in range(g.n):
        if x == v0 or g.has_edge(v0, x):
            continue
        h = g.with_edge(v0, x)
        if oracles.k_coloring(h.adj, 3) is None:
            top |= 1 << x
    return _from_top(g, v0, top)


def partition_enumerate(g: Graph, v0: int = 0, max_n: int = 12) -> TMBPartition:
    """Same partition by listing every proper 3-colouring (small n only)."""
    n = g.n
    if n > max_n:
        raise ValueError(f"enumeration limited to n <= {max_n}")
    adj = g.adj
    col = [-1] * n
    col[v0] = 0
    order = [v0] + [v for v in range(n) if v != v0]
    agree = (1 << n) - 1
    found = False

    def rec(i):
        nonlocal agree, found
        if i == n:
            found = True
            same = 0
            for v in range(n):
                if col[v] == 0:
                    same |= 1 << v
            agree &= same
            return
        v = order[i]
        if v == v0:
            rec(i + 1)
            return
        used = {col[w] for w in bits(adj[v]) if col[w] >= 0}
        for c in range(3):
            if c not in used:
                col[v] = c
                rec(i + 1)
                col[v] = -1

    rec(0)
    if not found:
        raise ValueError("graph is not 3-colourable")
    return _from_top(g, v0, agree)


def _from_top(g, v0, top) -> TMBPartition:
    full = (1 << g.n) - 1
    nb = 0
    for t in bits(top):
        nb |= g.adj[t]
    middle = nb & ~top
    return TMBPartition(v0, top, middle, full & ~top & ~middle, tuple(g.adj))


@dataclass
class GoodnessReport:
    p1_holds: bool
    p2_holds: bool
    bad_edges: set
    bad_present: set
    bad_vertices: set

    @property
    def good(self) -> bool:
        return self.p1_holds and self.p2_holds

    @property
    def consistent(self) -> bool:
        a = self.p1_holds and self.p2_holds
        b = not self.bad_present
        c = not self.bad_vertices
        return a == b == c


def goodness(g: Graph, p: TMBPartition) -> GoodnessReport:
    """Evaluate the three equivalent goodness conditions independently."""
    adj = g.adj
    bottom = list(bits(p.bottom))
    p1 = all(not (adj[x] & p.bottom) for x in bottom)
    p2 = all(h.bit_count() <= 1 for h in p.attached().values())
    gam = {x: p.gamma(x) for x in bottom}
    bad = set()
    for x, y in combinations(bottom, 2):
        for u in bits(gam[x]):
            for v in bits(gam[y]):
                if u != v:
                    bad.add(norm(u, v))
    present = {e for e in bad if g.has_edge(*e)}
    bad_vertices = set()
    for x in bottom:
        inside = gam[x]
        for u in bits(inside):
            if adj[u] & ~inside & ~p.top:
                bad_vertices.add(x)
                break
    return GoodnessReport(p1, p2, bad, present, bad_vertices)


def top_bound(n: int) -> float:
    return (n + 3) / 4


def chi4_score_bound(n: int) -> float:
    return (n + 3) / 4 * (3 * n - 3) / 4 + ((3 * n - 3) / 8) ** 2


class MiniChi4(Strategy):
    """Mini's good-board strategy for the chi > 3 game (anchor ``v0 = 0``)."""

    name = "mini-chi4"

    def __init__(self, v0: int = 0):
        super().__init__()
        self.v0 = v0
        self.part = None
        self.board = None
        self.seen = 0
        self.stage = 1
        self.log = []

    def reset(self, role, state):
        super().reset(role, state)
        if not isinstance(state.prop, ChromaticAbove) or state.prop.k != 3:
            raise PreconditionError(f"mini-chi4 plays chromatic-gt:3, not {state.prop}")
        if state.start.m:
            raise PreconditionError("mini-chi4 starts from the empty graph")
        self.part = initial_partition(state.n, self.v0)
        self.board = state.start.copy()
        self.seen = 0
        self.stage = 1
        self.log = []

    def catch_up(self, state):
        """Fold moves played since our last look into the partition."""
        g = self.board
        for _, e in state.moves[self.seen:]:
            before = g.copy()
            g.add_edge(*e)
            self.part = update_partition(self.part, before, e, g)
            self.seen += 1
        return self.part

    def choose(self, state):
        p = self.catch_up(state)
        if not p.bottom:
            self.stage = 2
            return None
        last = self.opponent_last(state)
        if last is not None:
            a, b = last
            for x in bits(p.bottom):
                gx = p.gamma(x)
                if gx >> a & 1 or gx >> b & 1:
                    self.log.append(("i", x))
                    return x
        z = (p.bottom & -p.bottom).bit_length() - 1
        self.log.append(("ii", z))
        return z

    def next_move(self, state):
        if self.stage == 1:
            x = self.choose(state)
            if x is not None:
                return claim(state, self.v0, x)
        return trivial_move(state)

    def key(self):
        return (self.stage, self.part.top if self.part else None)

    @property
    def passive(self):
        return self.stage == 2


class MaxChikRandom(Strategy):
    """Max's seeded random strategy for the chi > k game."""

    SEMI_ODDS = 140

    def __init__(self, k: int, seed: int = 0):
        super().__init__()
        if k < 2:
            raise PreconditionError("k must be at least 2")
        self.k = k
        self.seed = seed
        self.name = f"max-chik-random:{k}:{seed}"
        self.rng = random.Random(seed)
        self.stage = 1
        self.last_S = ()
        self.opportunities = 0
        self.semi_moves = 0

    def reset(self, role, state):
        super().reset(role, state)
        if not isinstance(state.prop, ChromaticAbove) or state.prop.k != self.k:
            raise PreconditionError(f"{self.name} plays chromatic-gt:{self.k}, not {state.prop}")
        self.rng = random.Random(self.seed)
        self.stage = 1
        self.last_S = ()
        self.opportunities = 0
        self.semi_moves = 0

    def low_edges(self, g: Graph) -> list:
        k = self.k
        deg = g.degrees()
        low = _mask(v for v in range(g.n) if deg[v] <= k - 2)
        return [(u, v) for u, v in g.iter_free() if (low >> u | low >> v) & 1]

    def next_move(self, state):
        g = state.graph
        k = self.k
        if self.stage == 1 and g.min_degree() >= k - 1:
            self.stage = 2
        if self.stage == 2:
            return trivial_move(state)
        last = self.opponent_last(state)
        if last is None:
            # Max opens (or Mini has not moved): an arbitrary first move
            self.last_S = ()
            return trivial_move(state)
        S = tuple(x for x in last if g.degree(x) <= k - 2)
        self.last_S = S
        if S:
            self.opportunities += 1
            if self.rng.randrange(self.SEMI_ODDS) == 0:
                self.semi_moves += 1
                x = S[self.rng.randrange(len(S))]
                ys = [y for y in range(g.n) if y != x and not g.has_edge(x, y)]
                y = ys[self.rng.randrange(len(ys))]
                return claim(state, x, y)
        cands = self.low_edges(g)
        return claim(state, *cands[self.rng.randrange(len(cands))])

    def key(self):
        return (self.stage, self.rng.getstate())

    @property
    def passive(self):
        return self.stage == 2


def is_complete_multipartite(g: Graph) -> bool:
    """Non-adjacency is an equivalence relation iff the graph is complete multipartite."""
    comp = g.complement()
    for c in comp.components():
        for v in bits(c):
            if comp.adj[v] | (1 << v) != c:
                return False
    return True


def part_count(g: Graph) -> int:
    return len(g.complement().components())
