"""Invariant monitors that watch a game move by move.

A monitor is called as ``monitor(state, role, edge)`` after each move and as
``monitor(state, None, None)`` once the game is over (see :func:`game.play`).
Violations raise :class:`MonitorViolation` carrying the move index.
"""
from __future__ import annotations

from . import oracles
from .game import MINI, GameError
from .graph import Graph
from .properties import ChromaticAbove, Matching, PerfectMatching, is_saturated
from .strategies.colorability import (
    MiniChi4,
    chi4_score_bound,
    goodness,
    initial_partition,
    is_complete_multipartite,
    part_count,
    partition_bruteforce,
    partition_enumerate,
    top_bound,
    update_partition,
)

ENUMERATE_MAX_N = 12


class MonitorViolation(GameError):
    def __init__(self, monitor, move_index, msg):
        super().__init__(f"[{monitor}] move {move_index}: {msg}")
        self.monitor = monitor
        self.move_index = move_index


class Monitor:
    name = "monitor"

    def __init__(self, strategies=None):
        self.strategies = strategies or {}
        self.checks = 0

    def fail(self, state, msg):
        raise MonitorViolation(self.name, len(state.moves), msg)

    def __call__(self, state, role, edge):
        raise NotImplementedError


class _PartitionTracker(Monitor):
    """Keeps its own T/M/B partition in step with the board."""

    def __init__(self, strategies=None):
        super().__init__(strategies)
        mini = self.strategies.get(MINI)
        if not isinstance(mini, MiniChi4):
            raise ValueError(f"{self.name} needs mini-chi4 as Mini's strategy")
        self.mini = mini
        self.part = None
        self.board = None

    def track(self, state, edge):
        if self.part is None:
            self.part = initial_partition(state.n, self.mini.v0)
            self.board = Graph(state.n)
        before = self.part
        if edge is not None:
            g0 = self.board.copy()
            self.board.add_edge(*edge)
            self.part = update_partition(self.part, g0, edge, self.board)
        return before, self.part


class GoodnessMonitor(_PartitionTracker):
    name = "goodness"

    def __call__(self, state, role, edge):
        _, p = self.track(state, edge)
        if role is not MINI or self.mini.stage != 1:
            return
        rep = goodness(self.board, p)
        self.checks += 1
        if not rep.consistent:
            self.fail(state, "the three goodness characterisations disagree")
        if not rep.good:
            self.fail(state, f"board not good: bad edges present {sorted(rep.bad_present)}")


class TMBOracleMonitor(_PartitionTracker):
    name = "tmb-oracle"

    def __call__(self, state, role, edge):
        before, p = self.track(state, edge)
        if edge is None:
            return
        ref = partition_bruteforce(self.board, self.mini.v0)
        if not p.same_sets(ref):
            self.fail(state, "incremental partition differs from the per-vertex oracle")
        if state.n <= ENUMERATE_MAX_N:
            if not ref.same_sets(partition_enumerate(self.board, self.mini.v0)):
                self.fail(state, "per-vertex oracle differs from colouring enumeration")
        if role is MINI and p.top & before.bottom:
            self.fail(state, "a bottom vertex became top on Mini's move")
        self.checks += 1


class TopBoundMonitor(_PartitionTracker):
    name = "top-bound"

    def __init__(self, strategies=None):
        super().__init__(strategies)
        self.stage_one_top = None

    def __call__(self, state, role, edge):
        _, p = self.track(state, edge)
        if self.stage_one_top is None and (not p.bottom or edge is None):
            self.stage_one_top = p.top.bit_count()
            self.checks += 1
            if self.stage_one_top > top_bound(state.n):
                self.fail(state, f"|T| = {self.stage_one_top} exceeds (n+3)/4 = {top_bound(state.n)}")
        if edge is None:
            self.checks += 1
            if state.graph.m > chi4_score_bound(state.n):
                self.fail(state, f"score {state.graph.m} exceeds {chi4_score_bound(state.n):.2f}")


class LegalityMonitor(Monitor):
    """Re-checks every position with the property oracle, and saturation at the end."""

    name = "legality"

    def __call__(self, state, role, edge):
        self.checks += 1
        if state.prop.holds(state.graph):
            self.fail(state, f"{state.prop} holds after {edge}")
        if edge is None and not is_saturated(state.graph, state.prop):
            self.fail(state, "final graph is not saturated")


class EndStateMonitor(Monitor):
    name = "endstate-structure"

    def __call__(self, state, role, edge):
        if edge is not None:
            return
        g, prop = state.graph, state.prop
        self.checks += 1
        if not is_saturated(g, prop):
            self.fail(state, "final graph is not saturated")
        if isinstance(prop, ChromaticAbove):
            if not is_complete_multipartite(g) or part_count(g) != prop.k:
                self.fail(state, f"final graph is not complete {prop.k}-partite")
        elif isinstance(prop, Matching) and not isinstance(prop, PerfectMatching):
            if oracles.max_matching_size(g) != prop.k - 1:
                self.fail(state, "final matching number is not k-1")


MONITORS = {
    "goodness": GoodnessMonitor,
    "tmb-oracle": TMBOracleMonitor,
    "top-bound": TopBoundMonitor,
    "legality": LegalityMonitor,
    "endstate-structure": EndStateMonitor,
}


def make_monitors(names, strategies) -> list:
    out = []
    for name in names:
        if name not in MONITORS:
            raise ValueError(f"unknown monitor {name!r}; known: {', '.join(MONITORS)}")
        out.append(MONITORS[name](strategies))
    return out
