"""Exact graph-invariant oracles on bitrow graphs.

All functions are pure.  Most accept either a :class:`Graph` or take raw
adjacency rows so that callers can test a hypothetical ``G + e`` without
building a new object.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache

from .graph import Graph, bits

# ---------------------------------------------------------------------------
# connectivity
# ---------------------------------------------------------------------------


def local_connectivity(adj, s, t, cap=None, alive=None):
    n = len(adj)
    if alive is None:
        alive = (1 << n) - 1
    if cap is None:
        cap = n
    return _flow_paths(adj, s, t, cap, alive)


def _flow_paths(adj, s, t, cap, alive):
    """Menger paths via repeated BFS on the split graph (simple and exact)."""
    # arcs stored as dict of residual capacities on split nodes; node ids:
    # 2v = v_in, 2v+1 = v_out.  s uses s_out, t uses t_in.
    flow = {}  # (a, b) -> flow on arc a->b (split ids)

    def residual_neighbors(x):
        v, side = x >> 1, x & 1
        out = []
        if side == 0:
            # v_in -> v_out capacity 1 (infinite for s/t)
            if flow.get((x, x | 1), 0) < 1:
                out.append(x | 1)
            # reverse residual of arcs into v_in: u_out -> v_in with flow
            for u in bits(adj[v] & alive):
                if flow.get(((u << 1) | 1, x), 0) > 0:
                    out.append((u << 1) | 1)
        else:
            for u in bits(adj[v] & alive):
                out.append(u << 1)
            if flow.get((x & ~1, x), 0) > 0:
                out.append(x & ~1)
        return out

    src, dst = (s << 1) | 1, t << 1
    value = 0
    parent = {}
    while value < cap:
        parent = {src: None}
        q = deque([src])
        while q and dst not in parent:
            x = q.popleft()
            for y in residual_neighbors(x):
                if y not in parent:
                    parent[y] = x
                    if y == dst:
                        break
                    q.append(y)
        if dst not in parent:
            break
        y = dst
        while parent[y] is not None:
            x = parent[y]
            if flow.get((y, x), 0) > 0:
                flow[(y, x)] -= 1
            else:
                flow[(x, y)] = flow.get((x, y), 0) + 1
            y = x
        value += 1
    if value >= cap:
        return value, None
    reach = set(parent)
    cut = {x >> 1 for x in reach if not x & 1 and (x | 1) not in reach and (x >> 1) not in (s, t)}
    return value, cut


def is_k_connected(adj, k, alive=None):
    """Whether the graph induced on ``alive`` is k-vertex-connected.

    A graph on at most ``k`` vertices is never k-connected; K_n has
    connectivity n-1.  Returns ``(flag, separator)`` where ``separator`` is a
    vertex set of size < k disconnecting the graph when ``flag`` is False and
    the graph has more than k vertices.
    """
    n = len(adj)
    if alive is None:
        alive = (1 << n) - 1
    size = alive.bit_count()
    if k <= 0:
        return size >= 1, None
    if size <= k:
        return False, None
    return _kconn(adj, k, alive)


def _kconn(adj, k, alive):
    verts = list(bits(alive))
    # degree rejection
    for v in verts:
        d = (adj[v] & alive).bit_count()
        if d < k:
            return False, set(bits(adj[v] & alive))
    if k == 1:
        v = verts[0]
        seen = 1 << v
        frontier = seen
        while frontier:
            nxt = 0
            for x in bits(frontier):
                nxt |= adj[x]
            nxt &= alive & ~seen
            seen |= nxt
            frontier = nxt
        if seen == alive:
            return True, None
        return False, set()
    # pick the vertex with the fewest non-neighbours
    v = max(verts, key=lambda x: ((adj[x] & alive).bit_count(), -x))
    non = alive & ~adj[v] & ~(1 << v)
    for u in bits(non):
        val, cut = _flow_paths(adj, v, u, k, alive)
        if val < k:
            return False, cut
    ok, sep = _kconn(adj, k - 1, alive & ~(1 << v))
    if ok:
        return True, None
    return False, (set(sep) | {v}) if sep is not None else None


def vertex_connectivity(g: Graph) -> int:
    n = g.n
    if n <= 1:
        return 0
    full = (1 << n) - 1
    if all(g.adj[v] == full ^ (1 << v) for v in range(n)):
        return n - 1
    best = n - 1
    for s in range(n):
        for t in range(s + 1, n):
            if not g.adj[s] >> t & 1:
                val, _ = _flow_paths(g.adj, s, t, best, full)
                best = min(best, val)
                if best == 0:
                    return 0
    return best


def separates(adj, sep_mask: int, alive: int) -> bool:
    """True iff deleting ``sep_mask`` leaves ``alive`` disconnected (>= 2 parts)."""
    rest = alive & ~sep_mask
    if rest.bit_count() < 2:
        return False
    v = (rest & -rest).bit_length() - 1
    seen = 1 << v
    frontier = seen
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= adj[low.bit_length() - 1]
            frontier ^= low
        nxt &= rest & ~seen
        seen |= nxt
        frontier = nxt
    return seen != rest


# ---------------------------------------------------------------------------
# colouring
# ---------------------------------------------------------------------------


def k_coloring(adj, k, hint=None):
    """A proper colouring with at most ``k`` colours, or ``None``.

    DSATUR branching with colour-symmetry breaking.  ``hint`` is an optional
    colouring tried first (it is checked, never trusted).
    """
    n = len(adj)
    if hint is not None and len(hint) == n and all(0 <= c < k for c in hint):
        if all(hint[u] != hint[v] for u in range(n) for v in bits(adj[u] >> (u + 1) << (u + 1))):
            return list(hint)
    if n == 0:
        return []
    if k <= 0:
        return None
    color = [-1] * n
    # per-vertex bitmask of colours used by coloured neighbours
    forbid = [0] * n
    full_colors = (1 << k) - 1
    order_deg = [a.bit_count() for a in adj]
    uncolored = set(range(n))

    def pick():
        best, bkey = -1, None
        for v in uncolored:
            sat = forbid[v].bit_count()
            key = (sat, order_deg[v], -v)
            if bkey is None or key > bkey:
                best, bkey = v, key
        return best

    def rec(used):
        if not uncolored:
            return True
        v = pick()
        avail = full_colors & ~forbid[v]
        if not avail:
            return False
        uncolored.discard(v)
        tried_new = False
        for c in bits(avail):
            if c >= used:
                if tried_new:
                    break
                tried_new = True
            color[v] = c
            changed = []
            for u in bits(adj[v]):
                if color[u] < 0 and not forbid[u] >> c & 1:
                    forbid[u] |= 1 << c
                    changed.append(u)
            if rec(max(used, c + 1)):
                return True
            for u in changed:
                forbid[u] &= ~(1 << c)
            color[v] = -1
        uncolored.add(v)
        return False

    if rec(0):
        return color
    return None


def chromatic_number(g: Graph, cap: int | None = None):
    """Exact chromatic number.

    With ``cap`` the search stops once it is known that chi > cap and returns
    ``None`` in that case.
    """
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    lo = max(2, clique_number(g) if g.n <= 40 else 2)
    hi = g.n if cap is None else cap
    for k in range(lo, hi + 1):
        if k_coloring(g.adj, k) is not None:
            return k
    return None if cap is not None else g.n


def has_clique(adj, candidates: int, size: int) -> bool:
    """Whether ``candidates`` contains a clique of ``size`` vertices."""
    if size <= 0:
        return True
    if candidates.bit_count() < size:
        return False
    if size == 1:
        return True
    for v in bits(candidates):
        rest = candidates & ~((1 << (v + 1)) - 1)
        if has_clique(adj, rest & adj[v], size - 1):
            return True
    return False


def _max_clique(adj, cand: int, size: int, best: list) -> None:
    if not cand:
        if size > best[0]:
            best[0] = size
        return
    if size + cand.bit_count() <= best[0]:
        return
    while cand:
        if size + cand.bit_count() <= best[0]:
            return
        v = (cand & -cand).bit_length() - 1
        cand &= ~(1 << v)
        _max_clique(adj, cand & adj[v], size + 1, best)


def clique_number(g: Graph) -> int:
    best = [0]
    _max_clique(g.adj, (1 << g.n) - 1, 0, best)
    return best[0]


def independence_number(g: Graph) -> int:
    return clique_number(g.complement())


# ---------------------------------------------------------------------------
# matching
# ---------------------------------------------------------------------------


def max_matching(g: Graph) -> list[tuple[int, int]]:
    """Maximum-cardinality matching by Edmonds' blossom algorithm."""
    n = g.n
    adj = [list(bits(a)) for a in g.adj]
    match = [-1] * n
    # greedy start
    for v in range(n):
        if match[v] < 0:
            for u in adj[v]:
                if match[u] < 0:
                    match[v], match[u] = u, v
                    break

    def find_path(root):
        used = [False] * n
        p = [-1] * n
        base = list(range(n))
        used[root] = True
        q = deque([root])

        def lca(a, b):
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] < 0:
                    break
                a = p[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = p[match[b]]

        def mark_path(v, b, child, blossom):
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                p[v] = child
                child = match[v]
                v = p[match[v]]

        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] >= 0 and p[match[to]] >= 0):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif p[to] < 0:
                    p[to] = v
                    if match[to] < 0:
                        return to, p
                    used[match[to]] = True
                    q.append(match[to])
        return -1, p

    for v in range(n):
        if match[v] < 0:
            end, p = find_path(v)
            while end >= 0:
                pv = p[end]
                ppv = match[pv]
                match[end], match[pv] = pv, end
                end = ppv
    return [(v, match[v]) for v in range(n) if match[v] > v]


def max_matching_size(g: Graph) -> int:
    return len(max_matching(g))


SMALL_MATCHING_N = 16


def matching_table(adj):
    """``nu(mask)`` for induced subgraphs, memoised per adjacency."""

    @lru_cache(maxsize=None)
    def nu(mask):
        if mask.bit_count() < 2:
            return 0
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        best = nu(rest)
        top = mask.bit_count() // 2
        if best == top:
            return best
        for u in bits(adj[v] & rest):
            val = 1 + nu(rest & ~(1 << u))
            if val > best:
                best = val
                if best == top:
                    break
        return best

    return nu


@lru_cache(maxsize=1 << 15)
def matching_blockers(adj: tuple, j: int) -> tuple:
    """Row ``u`` holds every ``v`` such that ``G - u - v`` still has a ``j``-matching.

    Built from the vertex sets covered by ``j``-matchings, so one pass
    answers legality for every free pair of the matching games.
    """
    n = len(adj)
    full = (1 << n) - 1
    covers = set()
    slack0 = n - 2 * j
    if slack0 < 0:
        return (0,) * n

    def walk(i, matched, seen, left, slack):
        if left == 0:
            covers.add(matched)
            return
        while i < n and seen >> i & 1:
            i += 1
        if n - i < 2 * left:
            return
        row = adj[i] & ~seen & ~((2 << i) - 1)
        bit = 1 << i
        while row:
            low = row & -row
            walk(i + 1, matched | bit | low, seen | bit | low, left - 1, slack)
            row ^= low
        if slack:
            walk(i + 1, matched, seen | bit, left, slack - 1)

    walk(0, 0, 0, j, slack0)
    rows = [0] * n
    for m in covers:
        c = full & ~m
        r = c
        while r:
            low = r & -r
            rows[low.bit_length() - 1] |= c ^ low
            r ^= low
    return tuple(rows)


def matching_number(adj) -> int:
    n = len(adj)
    if n <= SMALL_MATCHING_N:
        return matching_table(tuple(adj))((1 << n) - 1)
    return len(max_matching(Graph(n, adj)))


# ---------------------------------------------------------------------------
# Hamiltonicity, subgraph containment
# ---------------------------------------------------------------------------


def has_hamilton_cycle(g: Graph) -> bool:
    n = g.n
    if n < 3:
        raise ValueError("Hamiltonicity needs n >= 3")
    adj = g.adj
    if any(a.bit_count() < 2 for a in adj):
        return False
    if not g.is_connected():
        return False
    full = (1 << n) - 1

    def rec(v, visited, count):
        if count == n:
            return bool(adj[v] & 1)
        rest = full & ~visited
        # a remaining vertex with < 1 available neighbour among rest+{v,0}
        for u in bits(rest):
            avail = adj[u] & (rest | (1 << v) | 1)
            if avail.bit_count() < 2 and not (count == n - 1 and avail):
                return False
        for u in bits(adj[v] & rest):
            if rec(u, visited | (1 << u), count + 1):
                return True
        return False

    return rec(0, 1, 1)


def contains_copy(g: Graph, h: Graph, max_h: int = 6) -> bool:
    """Whether ``g`` has a (not necessarily induced) subgraph isomorphic to ``h``."""
    if h.n > max_h:
        raise ValueError(f"pattern graph too large (v(H)={h.n} > {max_h})")
    if h.n > g.n or h.m > g.m:
        return False
    # order pattern vertices so each is adjacent to earlier ones where possible
    order = []
    left = set(range(h.n))
    while left:
        placed = set(order)
        v = max(left, key=lambda x: (len(set(bits(h.adj[x])) & placed), h.degree(x), -x))
        order.append(v)
        left.discard(v)
    gdeg = g.degrees()
    img = {}

    def rec(i, used):
        if i == len(order):
            return True
        x = order[i]
        cand = ((1 << g.n) - 1) & ~used
        for y in bits(h.adj[x]):
            if y in img:
                cand &= g.adj[img[y]]
        dx = h.degree(x)
        for c in bits(cand):
            if gdeg[c] < dx:
                continue
            img[x] = c
            if rec(i + 1, used | (1 << c)):
                return True
            del img[x]
        return False

    return rec(0, 0)


# ---------------------------------------------------------------------------
# brute-force reference oracles (independent of the above)
# ---------------------------------------------------------------------------


def brute_vertex_connectivity(g: Graph) -> int:
    from itertools import combinations

    n = g.n
    full = (1 << n) - 1
    for size in range(0, n - 1):
        for s in combinations(range(n), size):
            mask = sum(1 << v for v in s)
            rest = full & ~mask
            if rest.bit_count() >= 2 and len(g.components(rest)) >= 2:
                return size
    return n - 1


def brute_chromatic_number(g: Graph) -> int:
    from itertools import product

    n = g.n
    if n == 0:
        return 0
    edges = g.edges()
    for k in range(1, n + 1):
        for col in product(range(k), repeat=n):
            if all(col[u] != col[v] for u, v in edges):
                return k
    return n


def brute_matching_size(g: Graph) -> int:
    edges = g.edges()
    best = 0

    def rec(i, used, size):
        nonlocal best
        best = max(best, size)
        if size + (len(edges) - i) <= best:
            return
        for j in range(i, len(edges)):
            u, v = edges[j]
            if not (used >> u & 1 or used >> v & 1):
                rec(j + 1, used | 1 << u | 1 << v, size + 1)

    rec(0, 0, 0)
    return best


def brute_independence_number(g: Graph) -> int:
    best = 0
    for mask in range(1 << g.n):
        c = mask.bit_count()
        if c <= best:
            continue
        if all(not (g.adj[v] & mask) for v in bits(mask)):
            best = c
    return best


def brute_hamiltonian(g: Graph) -> bool:
    from itertools import permutations

    n = g.n
    for perm in permutations(range(1, n)):
        cyc = (0,) + perm
        if all(g.has_edge(cyc[i], cyc[(i + 1) % n]) for i in range(n)):
            return True
    return False
