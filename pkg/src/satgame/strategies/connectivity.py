"""Max strategies for the k-connectivity game.

``MaxConnSqrt`` lays a long path and then ties k spare vertices to the path
every ``ceil(4 sqrt n)`` steps, so any small cut leaves one huge side.
``MaxConnExpander`` (k >= 5) wires the outside vertices evenly into a small
core ``V0`` and then makes the core k-connected with a Harary graph.
"""
from __future__ import annotations

from math import isqrt

from ..graph import Graph, bits, norm
from ..properties import Connectivity
from .base import PreconditionError, Strategy, claim, trivial_move
from .longpath import PathBuilder


def ceil_sqrt(x: int) -> int:
    return 0 if x <= 0 else isqrt(x - 1) + 1


def harary_graph(k: int, r: int) -> Graph:
    """The circulant k-connected graph on r vertices with ceil(kr/2) edges."""
    if k < 1 or r <= k:
        raise ValueError("need r > k >= 1")
    g = Graph(r)
    half = k // 2
    for i in range(r):
        for d in range(1, half + 1):
            j = (i + d) % r
            if not g.has_edge(i, j):
                g.add_edge(i, j)
    if k % 2:
        if r % 2 == 0:
            for i in range(r // 2):
                g.add_edge(i, i + r // 2)
        else:
            # one vertex ends up with degree k + 1
            for i in range((r + 1) // 2):
                j = (i + (r + 1) // 2) % r
                if not g.has_edge(i, j):
                    g.add_edge(i, j)
    return g


def _require_connectivity(state, k):
    if not isinstance(state.prop, Connectivity) or state.prop.k != k:
        raise PreconditionError(f"strategy needs connectivity:{k}, got {state.prop}")
    if state.start.m:
        raise PreconditionError("strategy starts from the empty graph")


class MaxConnSqrt(Strategy):
    def __init__(self, k: int):
        super().__init__()
        if k < 2:
            raise PreconditionError("k must be at least 2")
        self.k = k
        self.name = f"max-conn-sqrt:{k}"
        self.stage = 1
        self.builder = None
        self.spacing = None
        self.spare = []
        self.attach = []
        self.cursor = 0

    def reset(self, role, state):
        super().reset(role, state)
        _require_connectivity(state, self.k)
        n, k = state.n, self.k
        if n < (4 * k) ** 2:
            raise PreconditionError(f"needs n >= (4k)^2 = {(4 * k) ** 2}")
        self.stage = 1
        self.builder = PathBuilder(self.path_target(n, k))
        self.spacing = ceil_sqrt(16 * n)
        self.spare, self.attach, self.cursor = [], [], 0

    @staticmethod
    def path_target(n, k):
        return n - k - ceil_sqrt(n) - 1

    def plan_attachments(self, n):
        path = self.builder.path
        on = set(path)
        self.spare = [v for v in range(n) if v not in on][: self.k]
        t = len(path) // self.spacing
        # when spacing divides len(path) exactly the last house would sit one
        # past the end of the path; it is dropped
        anchors = [path[self.spacing * j] for j in range(1, t + 1) if self.spacing * j < len(path)]
        self.attach = [norm(v, u) for v in self.spare for u in anchors]
        self.cursor = 0

    def next_move(self, state):
        if self.stage == 1:
            e = self.builder.move(state, self.opponent_last(state))
            if self.builder.done:
                self.stage = 2
                self.plan_attachments(state.n)
            return e
        if self.stage == 2:
            g = state.graph
            while self.cursor < len(self.attach) and g.has_edge(*self.attach[self.cursor]):
                self.cursor += 1
            if self.cursor < len(self.attach):
                return claim(state, *self.attach[self.cursor])
            self.stage = 3
        return trivial_move(state)

    def key(self):
        return (self.stage, self.builder.key() if self.builder else None, self.cursor)

    @property
    def passive(self):
        return self.stage == 3


class MaxConnExpander(Strategy):
    def __init__(self, k: int):
        super().__init__()
        if k < 5:
            raise PreconditionError("the expander strategy needs k >= 5")
        self.k = k
        self.name = f"max-conn-expander:{k}"
        self.stage = 1
        self.r = self.t = None
        self.spokes = []
        self.core = []
        self.cursor = 0

    def reset(self, role, state):
        super().reset(role, state)
        _require_connectivity(state, self.k)
        n, k = state.n, self.k
        if n < (2 * k - 3) * (k + 1):
            raise PreconditionError(f"needs n >= (2k-3)(k+1) = {(2 * k - 3) * (k + 1)}")
        r, t = expander_sizes(n, k)
        self.r, self.t = r, t
        # u_i = r + i - 1 and v_j = j - 1
        self.spokes = [(-(-i * r // t) - 1, r + i - 1) for i in range(1, t + 1)]
        self.core = harary_graph(k, r).edges()
        self.stage, self.cursor = 1, 0

    @property
    def core_vertices(self) -> int:
        return (1 << self.r) - 1

    def next_move(self, state):
        g = state.graph
        if self.stage == 1:
            while self.cursor < len(self.spokes) and g.has_edge(*self.spokes[self.cursor]):
                self.cursor += 1
            if self.cursor < len(self.spokes):
                return claim(state, *self.spokes[self.cursor])
            self.stage, self.cursor = 2, 0
        if self.stage == 2:
            while self.cursor < len(self.core) and g.has_edge(*self.core[self.cursor]):
                self.cursor += 1
            if self.cursor < len(self.core):
                return claim(state, *self.core[self.cursor])
            self.stage = 3
        return trivial_move(state)

    def key(self):
        return (self.stage, self.cursor)

    @property
    def passive(self):
        return self.stage == 3


def complement_sides(g: Graph):
    """Split ``V = S + A + B`` when the missing edges of ``g`` are exactly ``A x B``.

    ``S`` collects the vertices of full degree.  Returns ``(A, B, S)`` with
    ``|A| >= |B|`` or ``None`` when the non-edges do not form one complete
    bipartite graph.
    """
    n = g.n
    full = (1 << n) - 1
    miss = [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)]
    rest = [v for v in range(n) if miss[v]]
    if not rest:
        return None
    side_b = miss[rest[0]]
    side_a = miss[(side_b & -side_b).bit_length() - 1]
    if side_a & side_b or (side_a | side_b) != sum(1 << v for v in rest):
        return None
    for v in rest:
        if miss[v] != (side_b if side_a >> v & 1 else side_a):
            return None
    a, b = set(bits(side_a)), set(bits(side_b))
    s = {v for v in range(n) if not miss[v]}
    return (a, b, s) if len(a) >= len(b) else (b, a, s)


def expander_sizes(n: int, k: int) -> tuple[int, int]:
    """Core size ``r = ceil(n / (2k-3))`` and outside count ``t = n - r``."""
    r = -(-n // (2 * k - 3))
    return r, n - r


def spoke_fibres(n: int, k: int) -> list[int]:
    """How many outside vertices the stage-1 spokes attach to each core vertex."""
    r, t = expander_sizes(n, k)
    sizes = [0] * r
    for i in range(1, t + 1):
        sizes[-(-i * r // t) - 1] += 1
    return sizes


def expander_score_bound(n: int, k: int) -> int:
    """Final edge count the expander strategy guarantees, from the actual ``r`` and ``t``.

    A cut ``S`` of size k-1 can only separate outside vertices whose spokes
    all land in ``S``, so the far side ``B`` has at most the k-1 largest
    spoke fibres, ``b`` vertices.  The missing edges number ``|B|(n-k+1-|B|)``,
    which is largest at ``|B| = min(b, (n-k+1)//2)``.
    """
    b = sum(sorted(spoke_fibres(n, k), reverse=True)[: k - 1])
    x = min(b, (n - k + 1) // 2)
    return n * (n - 1) // 2 - x * (n - k + 1 - x)
