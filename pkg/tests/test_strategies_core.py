import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satgame.game import MAX, MINI, GameOver, IllegalMove, new_game, play
from satgame.graph import build_graph
from satgame.properties import ChromaticAbove, Matching
from satgame.strategies import make_strategy
from satgame.strategies.base import RandomPlayer, trivial_move
from satgame.strategies.longpath import LongPath, PathBuilder, path_properties, verify_long_path


def test_trivial_move_examples():
    assert trivial_move(new_game(3, Matching(2))) == (0, 1)
    s = new_game(4, Matching(2), MINI, build_graph(4, [(0, 1)]))
    assert trivial_move(s) == (0, 2)
    with pytest.raises(GameOver):
        trivial_move(new_game(3, ChromaticAbove(1)))


def _builder_state(n, path, edges, opp):
    g = build_graph(n, edges + [opp])
    s = new_game(n, Matching(n // 2 + 1), MAX, g)
    b = PathBuilder(n - 2)
    b.path = list(path)
    return b, s


def test_case_both_off_path():
    b, s = _builder_state(8, [0, 1], [(0, 1)], (2, 3))
    assert b.move(s, (2, 3)) == (1, 2)
    assert b.last_case == 2 and b.path == [0, 1, 2, 3]


def test_case_endpoint_and_off_path():
    b, s = _builder_state(8, [0, 1, 2], [(0, 1), (1, 2)], (0, 4))
    # the least isolated vertex other than 4 is 3
    assert b.move(s, (0, 4)) == (3, 4)
    assert b.last_case == 3 and b.path == [3, 4, 0, 1, 2]


def test_case_interior_and_off_path():
    b, s = _builder_state(8, [0, 1, 2], [(0, 1), (1, 2)], (1, 4))
    assert b.move(s, (1, 4)) == (2, 4)
    assert b.last_case == 4 and b.path == [0, 1, 2, 4]


def test_case_both_on_path():
    b, s = _builder_state(8, [0, 1, 2, 3], [(0, 1), (1, 2), (2, 3)], (0, 2))
    assert b.move(s, (0, 2)) == (3, 4)
    assert b.last_case == 1


def test_second_player_base_case_extends_opponent_edge():
    s = new_game(6, Matching(4), MAX, build_graph(6, [(2, 5)]))
    b = PathBuilder(3)
    assert b.move(s, (2, 5)) == (0, 5)
    assert b.path in ([2, 5, 0], [0, 5, 2])


def test_forfeit_channel_when_property_binds():
    # after (0,1) and Mini's (0,2) the prescribed (2,3) would complete a 2-matching
    with pytest.raises(IllegalMove) as info:
        play(new_game(5, Matching(2), MAX), LongPath(3), make_strategy("trivial"))
    assert info.value.role is MAX and info.value.edge == (2, 3)


@pytest.mark.parametrize("n", range(3, 10))
def test_long_path_exhaustive(n):
    for target in range(1, n - 1):
        for first in (MAX, MINI):
            for role in (MAX, MINI):
                res = verify_long_path(n, target, role, first)
                assert res.ok, (target, first, role, res.violation)


@settings(max_examples=150, deadline=None)
@given(st.integers(5, 16), st.data(), st.integers(0, 10**6), st.sampled_from([MAX, MINI]))
def test_moves_touch_only_allowed_vertices(n, data, seed, first):
    """Every builder edge meets the path end, an isolated vertex or the opponent's edge."""
    target = data.draw(st.integers(1, n - 2))
    s = new_game(n, Matching(n // 2 + 1), first)
    me = data.draw(st.sampled_from([MAX, MINI]))
    builder, rival = LongPath(target), RandomPlayer(seed)
    builder.reset(me, s)
    rival.reset(me.other, s)
    while not builder.done:
        if s.mover is me:
            path = builder.builder.path
            allowed = {v for v in range(n) if s.graph.adj[v] == 0}
            if path:
                allowed.add(path[-1])
            opp = builder.opponent_last(s)
            if opp:
                allowed |= set(opp)
            e = builder.next_move(s)
            assert set(e) & allowed, (e, path, opp)
        else:
            e = rival.next_move(s)
        s.push(e)
    assert path_properties(s.graph, builder.builder.path, target) == []
