import random
from functools import lru_cache
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satgame.game import (
    MAX,
    MINI,
    GameError,
    IllegalMove,
    NotFreeMove,
    Role,
    StartSatisfies,
    Transcript,
    apply_move,
    legal_moves,
    new_game,
    play,
)
from satgame.graph import Graph, build_graph
from satgame.properties import (
    ChromaticAbove,
    Connectivity,
    ContainsSubgraph,
    IndependenceBelow,
    Matching,
    PerfectMatching,
    extremal_bruteforce,
    is_saturated,
    parse_property,
    satisfies,
)
from satgame.strategies import make_strategy
from satgame.strategies.base import RandomPlayer, Strategy, Trivial


def test_new_game_examples():
    s = new_game(4, Matching(2), MAX)
    assert s.mover is MAX and s.graph.m == 0
    s = new_game(3, ChromaticAbove(1), MINI)
    assert s.is_over() and legal_moves(s) == []
    with pytest.raises(StartSatisfies):
        new_game(4, Matching(1), MAX, build_graph(4, [(0, 1)]))


def test_legal_moves_examples():
    assert legal_moves(new_game(3, Matching(2))) == [(0, 1), (0, 2), (1, 2)]
    s = new_game(4, Matching(2), MAX, build_graph(4, [(0, 1), (0, 2)]))
    assert legal_moves(s) == [(0, 3), (1, 2)]


def test_apply_move_examples():
    s = new_game(4, Matching(2))
    t = apply_move(s, (0, 1))
    assert t.mover is MINI and t.graph.m == 1 and s.graph.m == 0
    with pytest.raises(IllegalMove) as info:
        apply_move(t, (2, 3))
    assert not isinstance(info.value, NotFreeMove)
    with pytest.raises(NotFreeMove):
        apply_move(t, (1, 0))


def test_play_trivial_matching():
    tr = play(new_game(4, Matching(2), MAX), Trivial(), Trivial())
    assert tr.score == 3
    assert is_saturated(tr.final, Matching(2))
    assert [e for _, e in tr.moves] == [(0, 1), (0, 2), (0, 3)]


def test_play_zero_move_game():
    tr = play(new_game(3, ChromaticAbove(1), MAX), Trivial(), Trivial())
    assert tr.score == 0 and tr.moves == []


def test_play_independence_closed_form():
    for seed in range(5):
        tr = play(new_game(5, IndependenceBelow(2)), RandomPlayer(seed), RandomPlayer(seed + 9))
        assert tr.score == comb(5, 2) - comb(2, 2) == 9


class _Cheat(Strategy):
    name = "cheat"

    def next_move(self, state):
        return (0, 1) if not state.graph.has_edge(0, 1) else (2, 3)


def test_play_propagates_forfeit_with_role():
    with pytest.raises(IllegalMove) as info:
        play(new_game(4, Matching(2), MINI), Trivial(), _Cheat())
    assert info.value.role is MINI


def test_transcript_json_roundtrip_and_replay():
    tr = play(new_game(6, Connectivity(1), MINI), RandomPlayer(1), RandomPlayer(2))
    d = tr.to_dict()
    assert set(d) == {"n", "property", "first", "moves", "final_graph6", "score"}
    back = Transcript.from_json(tr.to_json())
    assert back.to_dict() == d
    s = back.replay()
    assert s.graph == tr.final and s.graph.m == tr.score
    bad = dict(d, moves=[dict(d["moves"][0], by="max")] + d["moves"][1:])
    with pytest.raises(GameError):
        Transcript.from_dict(bad).replay()


def test_transcript_keeps_start_graph():
    start = build_graph(6, [(0, 1)])
    tr = play(new_game(6, PerfectMatching(), MAX, start), Trivial(), Trivial())
    back = Transcript.from_json(tr.to_json())
    assert back.start == start
    assert back.replay().graph == tr.final


def test_role_parse():
    assert Role.parse("MAX") is MAX and Role.parse(MINI) is MINI and MAX.other is MINI


@lru_cache(maxsize=None)
def _extremal(n, name):
    return extremal_bruteforce(n, parse_property(name))


NAMES = ["connectivity:1", "connectivity:2", "chromatic-gt:2", "chromatic-gt:3", "matching:2",
         "matching:3", "pm", "independence-lt:3", "hamiltonicity", "contains:K3"]


@settings(max_examples=120, deadline=None)
@given(st.integers(3, 7), st.sampled_from(NAMES), st.sampled_from([MAX, MINI]),
       st.integers(0, 10**6), st.sampled_from(["random", "greedy", "trivial"]))
def test_play_invariants(n, name, first, seed, other):
    prop = parse_property(name)
    s = new_game(n, prop, first)
    seen = []

    def watch(state, role, edge):
        if edge is None:
            return
        # reachability safety and mover parity at every step
        assert not satisfies(state.graph, prop)
        assert (state.mover is first) == (len(state.moves) % 2 == 0)
        seen.append(edge)

    tr = play(s, RandomPlayer(seed), make_strategy(other, seed), monitors=[watch])
    assert len(seen) == tr.score <= comb(n, 2)
    assert is_saturated(tr.final, prop)
    ep = _extremal(n, name)
    assert ep.sat <= tr.score <= ep.ex
    assert Transcript.from_json(tr.to_json()).replay().graph == tr.final
