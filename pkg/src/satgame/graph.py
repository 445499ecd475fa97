"""Simple graphs on a fixed vertex set ``0..n-1`` stored as adjacency bitrows.

Row ``adj[v]`` is a Python int whose bit ``u`` is set iff ``uv`` is an edge.
Everything else in the package is built on top of this type.
"""
from __future__ import annotations

import hashlib
from itertools import combinations
from typing import Iterable, Iterator

Edge = tuple  # (u, v) with u < v

KEY_EXACT_LIMIT = 10


class GraphError(ValueError):
    pass


class VertexOutOfRange(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class LoopEdge(GraphError):
    pass


class MissingEdge(GraphError):
    pass


class Graph6Error(ValueError):
    pass


def norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    __slots__ = ("n", "adj", "m")

    def __init__(self, n: int, adj: list[int] | None = None, m: int | None = None):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        self.n = n
        self.adj = list(adj) if adj is not None else [0] * n
        if m is None:
            m = sum(a.bit_count() for a in self.adj) // 2
        self.m = m

    # -- construction -------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "Graph":
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)], n * (n - 1) // 2)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    def copy(self) -> "Graph":
        return Graph(self.n, self.adj, self.m)

    # -- mutation -----------------------------------------------------
    def _check(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise VertexOutOfRange(f"edge ({u}, {v}) out of range for n={self.n}")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")

    def add_edge(self, u: int, v: int) -> None:
        self._check(u, v)
        if self.adj[u] >> v & 1:
            raise DuplicateEdge(f"edge ({u}, {v}) already present")
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u
        self.m += 1

    def remove_edge(self, u: int, v: int) -> None:
        """Undo of :meth:`add_edge`; restores the bitrows exactly."""
        self._check(u, v)
        if not self.adj[u] >> v & 1:
            raise MissingEdge(f"edge ({u}, {v}) not present")
        self.adj[u] ^= 1 << v
        self.adj[v] ^= 1 << u
        self.m -= 1

    def with_edge(self, u: int, v: int) -> "Graph":
        g = self.copy()
        g.add_edge(u, v)
        return g

    # -- queries ------------------------------------------------------
    @property
    def edge_count(self) -> int:
        return self.m

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees()) if self.n else 0

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree_in(self, v: int, mask: int) -> int:
        return (self.adj[v] & mask).bit_count()

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def free_edges(self) -> list[Edge]:
        """Non-edges ``(u, v)``, ``u < v``, in lexicographic order."""
        full = (1 << self.n) - 1
        out = []
        for u in range(self.n):
            free = ~self.adj[u] & full & ~((1 << (u + 1)) - 1)
            out.extend((u, v) for v in bits(free))
        return out

    def iter_free(self, start: Edge = (0, 1)) -> Iterator[Edge]:
        """Free edges in lexicographic order, beginning at ``start``."""
        n, adj = self.n, self.adj
        u0, v0 = start
        for u in range(u0, n):
            lo = v0 if u == u0 else u + 1
            if lo >= n:
                continue
            row = ~adj[u] & ((1 << n) - (1 << lo))
            for v in bits(row):
                yield (u, v)

    def free_count(self) -> int:
        return self.n * (self.n - 1) // 2 - self.m

    def isolated(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """``G[S]`` relabelled to ``0..|S|-1`` in increasing order of the originals."""
        vs = sorted(vertices)
        idx = {v: i for i, v in enumerate(vs)}
        g = Graph(len(vs))
        for v in vs:
            for u in bits(self.adj[v]):
                if u in idx and idx[u] > idx[v]:
                    g.add_edge(idx[v], idx[u])
        return g

    def remove_vertices_mask(self, mask: int) -> list[int]:
        """Adjacency rows with the vertices of ``mask`` deleted (indices kept)."""
        keep = ~mask
        return [0 if mask >> v & 1 else a & keep for v, a in enumerate(self.adj)]

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, [full & ~a & ~(1 << v) for v, a in enumerate(self.adj)])

    def component_of(self, v: int, alive: int | None = None) -> int:
        """Bitmask of the component of ``v`` inside the vertex set ``alive``."""
        if alive is None:
            alive = (1 << self.n) - 1
        seen = 1 << v
        frontier = seen
        adj = self.adj
        while frontier:
            nxt = 0
            for x in bits(frontier):
                nxt |= adj[x]
            nxt &= alive & ~seen
            seen |= nxt
            frontier = nxt
        return seen

    def components(self, alive: int | None = None) -> list[int]:
        if alive is None:
            alive = (1 << self.n) - 1
        comps = []
        rest = alive
        while rest:
            v = (rest & -rest).bit_length() - 1
            c = self.component_of(v, alive)
            comps.append(c)
            rest &= ~c
        return comps

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return self.component_of(0) == (1 << self.n) - 1

    def relabel(self, perm: list[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        g = Graph(self.n)
        for u, v in self.edges():
            g.add_edge(perm[u], perm[v])
        return g

    # -- dunder -------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.adj)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"

    def key(self) -> tuple:
        """Labelled (not isomorphism-invariant) hashable key."""
        return tuple(self.adj)


def build_graph(n: int, edges: Iterable) -> Graph:
    return Graph.from_edges(n, edges)


def free_edges(g: Graph) -> list[Edge]:
    return g.free_edges()


def disjoint_union(*graphs: Graph) -> Graph:
    n = sum(g.n for g in graphs)
    out = Graph(n)
    off = 0
    for g in graphs:
        for u, v in g.edges():
            out.add_edge(u + off, v + off)
        off += g.n
    return out


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    out = [_encode_n(g.n)]
    chunk = 0
    k = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            chunk = (chunk << 1) | (row >> i & 1)
            k += 1
            if k == 6:
                out.append(chr(chunk + 63))
                chunk = k = 0
    if k:
        out.append(chr((chunk << (6 - k)) + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise Graph6Error("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(d < 0 or d > 63 for d in data):
        raise Graph6Error("character outside the graph6 range")
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise Graph6Error("truncated extended header")
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        pos = 8
    else:
        if len(data) < 4:
            raise Graph6Error("truncated header")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < need:
        raise Graph6Error(f"expected {need} data bytes, got {len(body)}")
    if len(body) > need:
        raise Graph6Error("trailing garbage after graph6 data")
    g = Graph(n)
    idx = 0
    for j in range(1, n):
        for i in range(j):
            d = body[idx // 6]
            if d >> (5 - idx % 6) & 1:
                g.add_edge(i, j)
            idx += 1
    if nbits % 6 and body and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise Graph6Error("non-zero padding bits")
    return g


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------

def _refine(adj: list[int], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement; sub-cell order depends only on structure."""
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        masks = [sum(1 << v for v in c) for c in cells]
        out = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            sig = {v: tuple((adj[v] & m).bit_count() for m in masks) for v in c}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                out.append(c)
                continue
            changed = True
            for k in keys:
                out.append([v for v in c if sig[v] == k])
        cells = out
    return cells


def _certificate(adj: list[int], order: list[int]) -> tuple:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    cert = []
    for v in order:
        row = 0
        for u in bits(adj[v]):
            row |= 1 << pos[u]
        cert.append(row)
    return tuple(cert)


class _Canon:
    def __init__(self, adj: list[int]):
        self.adj = adj
        self.n = len(adj)
        self.best: tuple | None = None
        self.best_order: list[int] | None = None
        self.autos: list[list[int]] = []

    def _orbits(self, fixed: list[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.autos:
            if all(a[f] == f for f in fixed):
                for x in range(self.n):
                    rx, ry = find(x), find(a[x])
                    if rx != ry:
                        parent[rx] = ry
        return [find(x) for x in range(self.n)]

    def search(self, cells: list[list[int]], fixed: list[int]) -> None:
        cells = _refine(self.adj, cells)
        if all(len(c) == 1 for c in cells):
            order = [c[0] for c in cells]
            cert = _certificate(self.adj, order)
            if self.best is None or cert < self.best:
                self.best, self.best_order = cert, order
            elif cert == self.best:
                # two labellings with the same image: record the automorphism
                auto = [0] * self.n
                for a, b in zip(self.best_order, order):
                    auto[a] = b
                self.autos.append(auto)
            return
        ti = min(range(len(cells)), key=lambda i: (len(cells[i]) == 1, len(cells[i]), i))
        target = cells[ti]
        tried_roots: list[int] = []
        for v in sorted(target):
            if tried_roots:
                orb = self._orbits(fixed)
                if orb[v] in {orb[x] for x in tried_roots}:
                    continue
            tried_roots.append(v)
            rest = [u for u in target if u != v]
            new = cells[:ti] + [[v], rest] + cells[ti + 1:]
            self.search(new, fixed + [v])


def canonical_form(g: Graph) -> tuple[tuple, list[int]]:
    """Canonical adjacency certificate and the vertex order that realises it."""
    c = _Canon(g.adj)
    c.search([list(range(g.n))], [])
    return c.best if c.best is not None else (), c.best_order or []


def canonical_key(g: Graph) -> bytes:
    """Isomorphism-class key; exact for ``n <= KEY_EXACT_LIMIT``.

    Above the limit the key is a degree/neighbourhood hash that may merge
    non-isomorphic graphs.
    """
    if g.n <= KEY_EXACT_LIMIT:
        cert, _ = canonical_form(g)
        return bytes([g.n]) + b"".join(r.to_bytes(2, "little") for r in cert)
    degs = g.degrees()
    sig = sorted((degs[v], tuple(sorted(degs[u] for u in bits(g.adj[v])))) for v in range(g.n))
    h = hashlib.blake2b(repr((g.n, g.m, sig)).encode(), digest_size=16).digest()
    return b"~" + h


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices (2^(n choose 2) of them)."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        g = Graph(n)
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                g.adj[u] |= 1 << v
                g.adj[v] |= 1 << u
        g.m = mask.bit_count()
        yield g
