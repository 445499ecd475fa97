import random
from itertools import permutations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satgame.graph import (
    DuplicateEdge,
    Graph,
    Graph6Error,
    LoopEdge,
    VertexOutOfRange,
    all_graphs,
    build_graph,
    canonical_key,
    disjoint_union,
    free_edges,
    from_graph6,
    to_graph6,
)

from conftest import graphs, random_graph, to_nx


def test_build_empty_and_triangle():
    assert build_graph(3, []).m == 0
    k3 = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert k3.m == 3 and k3.degrees() == [2, 2, 2]


@pytest.mark.parametrize("edges,exc", [
    ([(0, 1), (0, 1)], DuplicateEdge),
    ([(1, 0), (0, 1)], DuplicateEdge),
    ([(2, 2)], LoopEdge),
    ([(0, 4)], VertexOutOfRange),
])
def test_build_rejects(edges, exc):
    with pytest.raises(exc):
        build_graph(4, edges)


def test_free_edges_examples():
    assert free_edges(Graph.complete(3)) == []
    assert free_edges(Graph(3)) == [(0, 1), (0, 2), (1, 2)]
    assert free_edges(Graph.path(3)) == [(0, 2)]


def test_remove_and_undo_restore_exact_state():
    g = Graph.cycle(6)
    before = (list(g.adj), g.m)
    g.add_edge(0, 3)
    g.remove_edge(0, 3)
    assert (g.adj, g.m) == before
    h = g.with_edge(0, 3)
    assert h.has_edge(0, 3) and not g.has_edge(0, 3)


def test_canonical_key_examples():
    a = build_graph(3, [(0, 1), (1, 2)])
    b = build_graph(3, [(0, 2), (0, 1)])
    c = build_graph(3, [(0, 1)])
    assert canonical_key(a) == canonical_key(b)
    assert canonical_key(a) != canonical_key(c)


def _brute_classes(n):
    reps = []
    for g in all_graphs(n):
        h = to_nx(g)
        if not any(nx.is_isomorphic(h, r) for r in reps):
            reps.append(h)
    return len(reps)


def test_canonical_key_counts_classes_on_four_vertices():
    # oracle: pairwise isomorphism over all 64 labelled graphs
    assert _brute_classes(4) == 11
    assert len({canonical_key(g) for g in all_graphs(4)}) == 11


def test_canonical_key_exact_on_five_vertices():
    keys = {}
    for g in all_graphs(5):
        keys.setdefault(canonical_key(g), g)
    assert len(keys) == 34
    reps = list(keys.values())
    for i, g in enumerate(reps):
        for h in reps[i + 1:]:
            if g.m == h.m:
                assert not nx.is_isomorphic(to_nx(g), to_nx(h))


def test_canonical_key_relabel_invariance_many_perms():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(2, 8)
        g = random_graph(rng, n)
        key = canonical_key(g)
        for _ in range(200):
            perm = list(range(n))
            rng.shuffle(perm)
            assert canonical_key(g.relabel(perm)) == key


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=7), graphs(max_n=7))
def test_canonical_key_decides_isomorphism(g, h):
    if g.n != h.n:
        return
    assert (canonical_key(g) == canonical_key(h)) == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_graph6_reference_strings():
    for g in (Graph.complete(2), Graph.complete(3), Graph.petersen(), Graph.path(7)):
        ref = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert to_graph6(g) == ref
    assert to_graph6(Graph.complete(2)) == "A_"
    assert to_graph6(Graph.complete(3)) == "Bw"


def test_graph6_long_header_roundtrip():
    rng = random.Random(1)
    g = random_graph(rng, 70, 0.1)
    s = to_graph6(g)
    assert s.startswith("~")
    assert s == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert from_graph6(s) == g


@pytest.mark.parametrize("bad", ["", "A", "A__", "Bx!", "\x7f"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(Graph6Error):
        from_graph6(bad)


def test_graph6_roundtrip_random_strings():
    rng = random.Random(2)
    for _ in range(100):
        s = to_graph6(random_graph(rng, rng.randint(0, 20)))
        assert to_graph6(from_graph6(s)) == s


def test_graph6_roundtrip_exhaustive():
    # every labelled graph with n <= 7 (about 2.1 million at n = 7)
    for n in range(0, 8):
        for g in all_graphs(n):
            assert from_graph6(to_graph6(g)) == g


@settings(max_examples=200, deadline=None)
@given(graphs(min_n=2, max_n=9), st.data())
def test_add_edge_and_partition_laws(g, data):
    total = g.n * (g.n - 1) // 2
    assert len(g.free_edges()) + g.m == total
    assert sum(g.degrees()) == 2 * g.m
    free = g.free_edges()
    if not free:
        return
    u, v = data.draw(st.sampled_from(free))
    m = g.m
    g.add_edge(u, v)
    assert g.has_edge(u, v) and g.has_edge(v, u) and g.m == m + 1
    with pytest.raises(DuplicateEdge):
        g.add_edge(v, u)


def test_disjoint_union_and_induced():
    g = disjoint_union(Graph.complete(3), Graph.path(2))
    assert g.n == 5 and g.m == 4 and g.has_edge(3, 4)
    assert g.induced([0, 1, 3]).m == 1
