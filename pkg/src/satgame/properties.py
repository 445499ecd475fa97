"""Monotone increasing graph properties and the legality/saturation predicates.

Each property knows how to decide ``P(G)`` exactly and how to decide whether
a free edge is legal, i.e. whether ``G + e`` still lies outside ``P``.  The
legality routines take an optional :class:`LineageMemo`, a scratch cache that
is only valid along one increasing chain of graphs (a single played game).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from . import oracles
from .graph import Graph, bits, canonical_key, from_graph6, to_graph6


class PropertyError(ValueError):
    pass


class NotFree(ValueError):
    pass


class AlreadySatisfied(ValueError):
    pass


@dataclass
class LineageMemo:
    """Facts that stay true as edges are added to the same graph.

    ``dead`` holds edges already proven illegal; by monotonicity they stay
    illegal in every supergraph.  ``separators`` and ``coloring`` are hints
    that are re-verified before use.
    """

    dead: set = field(default_factory=set)
    separators: list = field(default_factory=list)
    coloring: list | None = None
    # every free edge lexicographically below ``cursor`` is known illegal
    cursor: tuple = (0, 1)


class Property:
    """Base class; subclasses implement :meth:`holds`."""

    name = "property"

    def holds(self, g: Graph) -> bool:
        raise NotImplementedError

    def validate(self, n: int) -> None:
        pass

    def _plus_holds(self, g: Graph, u: int, v: int, memo=None) -> bool:
        g.add_edge(u, v)
        try:
            return self.holds(g)
        finally:
            g.remove_edge(u, v)

    def legal(self, g: Graph, u: int, v: int, memo: LineageMemo | None = None) -> bool:
        """Legality of the free edge ``uv`` for a graph outside the property."""
        if memo is not None and (u, v) in memo.dead:
            return False
        ok = not self._plus_holds(g, u, v, memo)
        if not ok and memo is not None:
            memo.dead.add((u, v))
        return ok

    def legal_edges(self, g: Graph, memo: LineageMemo | None = None) -> list:
        return [e for e in g.free_edges() if self.legal(g, e[0], e[1], memo)]

    def bounds(self, n: int):
        """Known (sat, ex) closed forms, when the literature gives them."""
        return None

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, repr(self)))

    def __repr__(self):
        return self.name


class Connectivity(Property):
    """Being k-vertex-connected (and spanning)."""

    def __init__(self, k: int):
        if k < 1:
            raise PropertyError("connectivity parameter must be >= 1")
        self.k = k
        self.name = f"connectivity:{k}"

    def holds(self, g):
        return oracles.is_k_connected(g.adj, self.k)[0]

    def legal(self, g, u, v, memo=None):
        if memo is not None and (u, v) in memo.dead:
            return False
        n, k = g.n, self.k
        if n <= k:
            return True
        adj = g.adj
        if (adj[u].bit_count() + 1 < k) or (adj[v].bit_count() + 1 < k):
            return True
        if memo is not None:
            for sep in memo.separators:
                if self._still_separates(g, sep, u, v):
                    return True
        g.add_edge(u, v)
        try:
            ok, sep = oracles.is_k_connected(g.adj, k)
        finally:
            g.remove_edge(u, v)
        if ok:
            if memo is not None:
                memo.dead.add((u, v))
            return False
        if memo is not None and sep is not None:
            mask = sum(1 << x for x in sep)
            if mask not in memo.separators:
                memo.separators.insert(0, mask)
                del memo.separators[8:]
        return True

    @staticmethod
    def _still_separates(g, sep, u, v):
        g.add_edge(u, v)
        try:
            return oracles.separates(g.adj, sep, (1 << g.n) - 1)
        finally:
            g.remove_edge(u, v)

    def bounds(self, n):
        if self.k <= n - 1:
            return None, comb(n - 1, 2) + self.k - 1
        return None


class ChromaticAbove(Property):
    """Having chromatic number at least k + 1."""

    def __init__(self, k: int):
        if k < 1:
            raise PropertyError("chromatic parameter must be >= 1")
        self.k = k
        self.name = f"chromatic-gt:{k}"

    def holds(self, g):
        return oracles.k_coloring(g.adj, self.k) is None

    def legal(self, g, u, v, memo=None):
        if memo is not None and (u, v) in memo.dead:
            return False
        k = self.k
        adj = g.adj
        if k >= 2 and (adj[u].bit_count() <= k - 2 or adj[v].bit_count() <= k - 2):
            return True
        hint = memo.coloring if memo is not None else None
        if hint is not None and len(hint) == g.n and hint[u] != hint[v]:
            if _proper(adj, hint):
                return True
        # K_{k+1} through uv is an immediate certificate of illegality
        if oracles.has_clique(adj, adj[u] & adj[v], k - 1):
            if memo is not None:
                memo.dead.add((u, v))
            return False
        g.add_edge(u, v)
        try:
            col = oracles.k_coloring(g.adj, k, hint)
        finally:
            g.remove_edge(u, v)
        if col is None:
            if memo is not None:
                memo.dead.add((u, v))
            return False
        if memo is not None:
            memo.coloring = col
        return True

    def bounds(self, n):
        k = self.k
        if n < k:
            return None
        sat = (k - 1) * (n - 1) - comb(k - 1, 2)
        ex = sum((n + i) // k * ((n + j) // k) for i in range(k) for j in range(i + 1, k))
        return sat, ex


def _proper(adj, col):
    for x, row in enumerate(adj):
        c = col[x]
        for y in bits(row >> (x + 1) << (x + 1)):
            if col[y] == c:
                return False
    return True


class Matching(Property):
    """Admitting a matching of size k."""

    def __init__(self, k: int):
        if k < 1:
            raise PropertyError("matching parameter must be >= 1")
        self.k = k
        self.name = f"matching:{k}"

    def holds(self, g):
        if g.n <= oracles.SMALL_MATCHING_N:
            return oracles.matching_number(g.adj) >= self.k
        return oracles.max_matching_size(g) >= self.k

    def legal_edges(self, g, memo=None):
        free = g.free_edges()
        if g.n > oracles.SMALL_MATCHING_N:
            return [e for e in free if self.legal(g, e[0], e[1], memo)]
        rows = oracles.matching_blockers(tuple(g.adj), self.k - 1)
        return [(u, v) for u, v in free if not rows[u] >> v & 1]

    def legal(self, g, u, v, memo=None):
        if g.n <= oracles.SMALL_MATCHING_N:
            return not oracles.matching_blockers(tuple(g.adj), self.k - 1)[u] >> v & 1
        return super().legal(g, u, v, memo)

    def bounds(self, n):
        k = self.k
        if 2 * k > n:
            return None
        return None, max((k - 1) * (n - 1) - comb(k - 1, 2), comb(2 * k - 1, 2))


class PerfectMatching(Matching):
    """Admitting a perfect matching; never satisfied on an odd vertex count."""

    def __init__(self):
        self.k = None
        self.name = "pm"

    def _k(self, n):
        return n // 2 if n % 2 == 0 else None

    def holds(self, g):
        if g.n % 2:
            return False
        return Matching(g.n // 2).holds(g)

    def legal_edges(self, g, memo=None):
        if g.n % 2:
            return g.free_edges()
        return Matching(g.n // 2).legal_edges(g, memo)

    def legal(self, g, u, v, memo=None):
        if g.n % 2:
            return True
        if g.n <= oracles.SMALL_MATCHING_N:
            return not oracles.matching_blockers(tuple(g.adj), g.n // 2 - 1)[u] >> v & 1
        return Matching(g.n // 2).legal(g, u, v, memo)

    def bounds(self, n):
        if n % 2:
            return None
        return None, comb(n - 1, 2)


class IndependenceBelow(Property):
    """Having independence number less than k."""

    def __init__(self, k: int):
        if k < 1:
            raise PropertyError("independence parameter must be >= 1")
        self.k = k
        self.name = f"independence-lt:{k}"

    def holds(self, g):
        return oracles.independence_number(g) < self.k

    def bounds(self, n):
        if n < self.k:
            return None
        b = comb(n, 2) - comb(self.k, 2)
        return b, b


class Hamiltonicity(Property):
    name = "hamiltonicity"

    def __init__(self):
        self.name = "hamiltonicity"

    def holds(self, g):
        if g.n < 3:
            return False
        return oracles.has_hamilton_cycle(g)

    def bounds(self, n):
        if n < 3:
            return None
        return None, comb(n - 1, 2) + 1


NAMED_PATTERNS = {
    "K3": lambda: Graph.complete(3),
    "K4": lambda: Graph.complete(4),
    "C4": lambda: Graph.cycle(4),
    "C5": lambda: Graph.cycle(5),
    "P3": lambda: Graph.path(3),
    "P4": lambda: Graph.path(4),
    "K13": lambda: Graph.complete_bipartite(1, 3),
}


class ContainsSubgraph(Property):
    """Admitting a (not necessarily induced) copy of a fixed pattern graph."""

    def __init__(self, h: Graph, label: str | None = None):
        if h.n < 2:
            raise PropertyError("pattern needs at least two vertices")
        if h.n > 6:
            raise PropertyError("pattern graph too large (at most 6 vertices)")
        self.h = h
        self.name = f"contains:{label or to_graph6(h)}"

    def holds(self, g):
        return oracles.contains_copy(g, self.h)

    def bounds(self, n):
        if self.h == Graph.complete(3) and n >= 2:
            return n - 1, n * n // 4
        return None

    def __eq__(self, other):
        return isinstance(other, ContainsSubgraph) and self.h == other.h

    def __hash__(self):
        return hash(("contains", self.h))


def parse_property(text: str) -> Property:
    """Parse names such as ``connectivity:2``, ``pm`` or ``contains:K3``."""
    s = text.strip().lower()
    head, _, arg = s.partition(":")
    try:
        if head == "connectivity":
            return Connectivity(int(arg or 1))
        if head == "chromatic-gt":
            return ChromaticAbove(int(arg))
        if head == "matching":
            return Matching(int(arg))
        if head == "pm":
            return PerfectMatching()
        if head == "independence-lt":
            return IndependenceBelow(int(arg))
        if head == "hamiltonicity":
            return Hamiltonicity()
        if head == "contains":
            raw = text.strip().partition(":")[2]
            if raw.upper() in NAMED_PATTERNS:
                return ContainsSubgraph(NAMED_PATTERNS[raw.upper()](), raw.upper())
            return ContainsSubgraph(from_graph6(raw))
    except ValueError as exc:
        raise PropertyError(f"bad property {text!r}: {exc}") from exc
    raise PropertyError(f"unknown property {text!r}")


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------


def satisfies(g: Graph, p: Property) -> bool:
    return p.holds(g)


def is_legal(g: Graph, e, p: Property) -> bool:
    u, v = sorted(e)
    if g.has_edge(u, v):
        raise NotFree(f"edge {(u, v)} is not free")
    if p.holds(g):
        raise AlreadySatisfied("graph already satisfies the property")
    return p.legal(g, u, v)


def is_saturated(g: Graph, p: Property) -> bool:
    if p.holds(g):
        return False
    return all(not p.legal(g, u, v) for u, v in g.free_edges())


@dataclass
class ExtremalPair:
    sat: int
    ex: int
    sat_witness: str
    ex_witness: str


EXTREMAL_MAX_N = 8


def _saturated_classes(n: int, p: Property):
    """Canonical representatives of every P-free graph, grown edge by edge.

    Every saturated graph is reached because the P-free graphs are closed
    under edge deletion, so each one extends a smaller P-free graph.
    """
    layer = {canonical_key(Graph(n)): Graph(n)}
    if p.holds(Graph(n)):
        return
    while layer:
        nxt = {}
        for g in layer.values():
            moves = p.legal_edges(g)
            if not moves:
                yield g
                continue
            for u, v in moves:
                h = g.with_edge(u, v)
                key = canonical_key(h)
                if key not in nxt:
                    nxt[key] = h
        layer = nxt


def extremal_bruteforce(n: int, p: Property) -> ExtremalPair:
    """Exact sat(n, P) and ex(n, P) by isomorphism-class enumeration."""
    if n > EXTREMAL_MAX_N:
        raise ValueError(f"extremal enumeration limited to n <= {EXTREMAL_MAX_N}")
    best_lo = best_hi = None
    for g in _saturated_classes(n, p):
        if best_lo is None or g.m < best_lo.m:
            best_lo = g
        if best_hi is None or g.m > best_hi.m:
            best_hi = g
    if best_lo is None:
        raise PropertyError("the empty graph already satisfies the property")
    return ExtremalPair(best_lo.m, best_hi.m, to_graph6(best_lo), to_graph6(best_hi))


def brute_extremal(n: int, p: Property) -> tuple[int, int]:
    """Labelled enumeration reference for tiny n (no canonical forms)."""
    pairs = list(combinations(range(n), 2))
    lo, hi = None, None
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
        if is_saturated(g, p):
            lo = g.m if lo is None else min(lo, g.m)
            hi = g.m if hi is None else max(hi, g.m)
    return lo, hi
