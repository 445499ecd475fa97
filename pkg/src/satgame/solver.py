"""Exact game values by minimax, and exhaustive checks of fixed strategies.

The memo is keyed on the canonical form of the graph alone: for a fixed
starting graph and first player, whose turn it is follows from the edge
count, so two positions with isomorphic graphs have the same value.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb

from .game import MAX, MINI, GameOver, GameState, IllegalMove, Role, Transcript, new_game
from .graph import Graph, canonical_key
from .properties import EXTREMAL_MAX_N, Property, extremal_bruteforce

DEFAULT_NODE_CAP = 200_000_000
DEFAULT_TIME_CAP = 3600.0


class BudgetExceeded(RuntimeError):
    def __init__(self, msg, nodes):
        super().__init__(f"{msg} after {nodes} nodes")
        self.nodes = nodes


@dataclass
class SolveResult:
    score: int
    pv: list
    nodes: int
    first: Role
    table_size: int = 0
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "score": self.score,
            "first": self.first.value,
            "pv": [list(e) for e in self.pv],
            "nodes": self.nodes,
            "table_size": self.table_size,
            "seconds": round(self.seconds, 3),
        }


class _Budget:
    __slots__ = ("nodes", "node_cap", "deadline")

    def __init__(self, node_cap, time_cap):
        self.nodes = 0
        self.node_cap = node_cap
        self.deadline = time.monotonic() + time_cap if time_cap else None

    def tick(self):
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise BudgetExceeded("node cap exceeded", self.nodes)
        if self.deadline is not None and self.nodes & 0x3FF == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("time cap exceeded", self.nodes)


def _ordered(g: Graph, moves, maximizing: bool):
    deg = g.degrees()
    sign = -1 if maximizing else 1
    return sorted(moves, key=lambda e: (sign * (deg[e[0]] + deg[e[1]]), e))


class Solver:
    """Alpha-beta over the game DAG with a bound table on canonical keys."""

    def __init__(self, prop: Property, first: Role, start_edges: int, node_cap=DEFAULT_NODE_CAP,
                 time_cap=DEFAULT_TIME_CAP, keyfn=canonical_key, ordering=True):
        self.prop = prop
        self.first = first
        self.start_edges = start_edges
        self.budget = _Budget(node_cap, time_cap)
        self.table = {}
        self.keyfn = keyfn
        self.ordering = ordering

    def mover(self, g: Graph) -> Role:
        return self.first if (g.m - self.start_edges) % 2 == 0 else self.first.other

    def value(self, g: Graph, alpha: float, beta: float) -> int:
        self.budget.tick()
        key = self.keyfn(g)
        lo, hi = self.table.get(key, (g.m, comb(g.n, 2)))
        if lo == hi or lo >= beta:
            return lo
        if hi <= alpha:
            return hi
        a, b = max(alpha, lo), min(beta, hi)
        a0, b0 = a, b
        moves = self.prop.legal_edges(g)
        if not moves:
            self.table[key] = (g.m, g.m)
            return g.m
        maximizing = self.mover(g) is MAX
        if self.ordering:
            moves = _ordered(g, moves, maximizing)
        best = -1 if maximizing else comb(g.n, 2) + 1
        for u, v in moves:
            g.add_edge(u, v)
            try:
                val = self.value(g, a, b)
            finally:
                g.remove_edge(u, v)
            if maximizing:
                if val > best:
                    best = val
                if best > a:
                    a = best
            else:
                if val < best:
                    best = val
                if best < b:
                    b = best
            if a >= b:
                break
        if best <= a0:
            hi = min(hi, best)
        elif best >= b0:
            lo = max(lo, best)
        else:
            lo = hi = best
        self.table[key] = (lo, hi)
        return best

    def exact(self, g: Graph, window=None) -> int:
        lo, hi = window if window is not None else (g.m - 1, comb(g.n, 2) + 1)
        val = self.value(g, lo, hi)
        if not lo < val < hi:
            # the window was not admissible; fall back to a full search
            val = self.value(g, -1, comb(g.n, 2) + 1)
        return val

    def pv(self, g: Graph) -> list:
        """Principal variation: best moves from ``g`` (ties to the least edge)."""
        g = g.copy()
        line = []
        while True:
            moves = self.prop.legal_edges(g)
            if not moves:
                return line
            target = self.exact(g)
            for u, v in moves:
                g.add_edge(u, v)
                if self.exact(g) == target:
                    line.append((u, v))
                    break
                g.remove_edge(u, v)
            else:  # pragma: no cover - would mean the table is inconsistent
                raise RuntimeError("principal variation lost")


def _window(n: int, prop: Property, start: Graph | None):
    if start is not None and start.m:
        return None
    if n <= EXTREMAL_MAX_N:
        ext = extremal_bruteforce(n, prop)
        return (ext.sat - 1, ext.ex + 1)
    return None


def solve(n: int, prop: Property, first=MAX, start: Graph | None = None, node_cap=DEFAULT_NODE_CAP,
          time_cap=DEFAULT_TIME_CAP, use_window=True, with_pv=True) -> SolveResult:
    first = Role.parse(first)
    t0 = time.monotonic()
    s = new_game(n, prop, first, start)
    solver = Solver(prop, first, s.start_edges, node_cap, time_cap)
    window = _window(n, prop, start) if use_window else None
    score = solver.exact(s.graph.copy(), window)
    pv = solver.pv(s.graph) if with_pv else []
    return SolveResult(score, pv, solver.budget.nodes, first, len(solver.table), time.monotonic() - t0)


def plain_minimax(g: Graph, prop: Property, mover: Role) -> int:
    """Reference minimax: no memo, no pruning, no ordering.  Tiny n only."""
    moves = prop.legal_edges(g)
    if not moves:
        return g.m
    vals = []
    for u, v in moves:
        g.add_edge(u, v)
        try:
            vals.append(plain_minimax(g, prop, mover.other))
        finally:
            g.remove_edge(u, v)
    return max(vals) if mover is MAX else min(vals)


def labelled_minimax(g: Graph, prop: Property, mover: Role, memo=None) -> int:
    """Minimax memoised on the labelled graph only (no isomorphism, no pruning)."""
    if memo is None:
        memo = {}
    key = g.key()
    if key in memo:
        return memo[key]
    moves = prop.legal_edges(g)
    if not moves:
        val = g.m
    else:
        vals = []
        for u, v in moves:
            g.add_edge(u, v)
            try:
                vals.append(labelled_minimax(g, prop, mover.other, memo))
            finally:
                g.remove_edge(u, v)
        val = max(vals) if mover is MAX else min(vals)
    memo[key] = val
    return val


def best_move(state: GameState, node_cap=DEFAULT_NODE_CAP, time_cap=DEFAULT_TIME_CAP):
    """A move achieving the minimax value for the side to move; least edge on ties."""
    g = state.graph.copy()
    moves = state.prop.legal_edges(g)
    if not moves:
        raise GameOver("no legal edge left")
    solver = Solver(state.prop, state.first, state.start_edges, node_cap, time_cap)
    maximizing = state.mover is MAX
    best, arg = None, None
    for u, v in moves:
        g.add_edge(u, v)
        val = solver.exact(g)
        g.remove_edge(u, v)
        if best is None or (val > best if maximizing else val < best):
            best, arg = val, (u, v)
    return arg


@dataclass
class VerifyResult:
    guarantee: int | None
    violated_line: Transcript | None
    leaves: int
    nodes: int = 0
    states: int = 0
    violation: str | None = None
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.violated_line is None

    def to_dict(self) -> dict:
        d = {
            "guarantee": self.guarantee,
            "leaves": self.leaves,
            "nodes": self.nodes,
            "states": self.states,
            "ok": self.ok,
        }
        if self.violated_line is not None:
            d["violation"] = self.violation
            d["violated_line"] = self.violated_line.to_dict()
        return d


class _Violation(Exception):
    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


def verify_strategy(strat, role, n: int, prop: Property, first=MAX, start: Graph | None = None,
                    stop=None, check=None, keyfn=None, node_cap=DEFAULT_NODE_CAP,
                    time_cap=DEFAULT_TIME_CAP, floor=None) -> VerifyResult:
    """Play ``strat`` as ``role`` against every adversary line.

    ``stop(state, strat)`` ends a line early (its score is then the current
    edge count); ``check(state, strat)`` returns a reason string when a leaf
    violates a postcondition.  ``keyfn(state, strat)`` overrides the memo key
    used at adversary nodes (default: labelled graph plus strategy memory).
    The guarantee is the worst leaf score from the strategy's point of view.

    ``floor`` (Max only) cuts a line once the strategy has gone passive and
    the board already holds ``floor`` edges: trivial play cannot forfeit and
    the score only grows, so the reported guarantee is then a certified lower
    bound rather than the exact worst case.
    """
    role, first = Role.parse(role), Role.parse(first)
    if floor is not None:
        if role is not MAX:
            raise ValueError("floor cut-offs only certify lower bounds for Max")
        inner = stop

        def stop(s, st):
            if st.passive and s.graph.m >= floor:
                return True
            return inner is not None and inner(s, st)

    state = new_game(n, prop, first, start)
    budget = _Budget(node_cap, time_cap)
    memo = {}
    leaves = 0
    worse = min if role is MAX else max
    if keyfn is None:
        def keyfn(s, st):
            return (s.graph.key(), st.key())

    def leaf(s, st):
        nonlocal leaves
        leaves += 1
        if check is not None:
            reason = check(s, st)
            if reason:
                raise _Violation(reason)
        return s.graph.m

    def rec(s, st):
        budget.tick()
        if stop is not None and stop(s, st):
            return leaf(s, st)
        if s.mover is role:
            if s.is_over():
                return leaf(s, st)
            try:
                e = st.next_move(s)
                s.push(e)
            except (IllegalMove, GameOver) as exc:
                raise _Violation(f"{type(exc).__name__}: {exc}")
            try:
                return rec(s, st)
            finally:
                s.graph.remove_edge(*s.moves.pop()[1])
        key = keyfn(s, st)
        if key in memo:
            return memo[key]
        moves = prop.legal_edges(s.graph)
        if not moves:
            val = leaf(s, st)
        else:
            val = None
            for e in moves:
                s.push_trusted(e)
                try:
                    v = rec(s, st.clone())
                finally:
                    s.graph.remove_edge(*s.moves.pop()[1])
                val = v if val is None else worse(val, v)
        memo[key] = val
        return val

    root = strat.clone()
    root.reset(role, state)
    try:
        guarantee = rec(state, root)
    except _Violation as exc:
        line = Transcript(n, prop.name, first, list(state.moves), state.graph.copy(), state.graph.m,
                          state.start.copy())
        return VerifyResult(None, line, leaves, budget.nodes, len(memo), exc.reason)
    res = VerifyResult(guarantee, None, leaves, budget.nodes, len(memo))
    res.info["worst_line"] = _worst_line(strat, role, n, prop, first, start, stop, keyfn, memo, guarantee)
    return res


def _worst_line(strat, role, n, prop, first, start, stop, keyfn, memo, target):
    """Follow adversary moves whose memoised value equals the guarantee."""
    s = new_game(n, prop, first, start)
    st = strat.clone()
    st.reset(role, s)
    while True:
        if stop is not None and stop(s, st):
            break
        if s.mover is role:
            if s.is_over():
                break
            s.push(st.next_move(s))
            continue
        moves = prop.legal_edges(s.graph)
        if not moves:
            break
        pick = None
        for e in moves:
            t = s.copy()
            t.push(e)
            st2 = st.clone()
            val = _peek(t, st2, role, stop, keyfn, memo)
            if val == target:
                pick = e
                break
        if pick is None:
            break
        s.push(pick)
    return [{"by": r.value, "u": u, "v": v} for r, (u, v) in s.moves]


def _peek(s, st, role, stop, keyfn, memo):
    while not (stop is not None and stop(s, st)) and s.mover is role and not s.is_over():
        s.push(st.next_move(s))
    if (stop is not None and stop(s, st)) or s.is_over():
        return s.graph.m
    return memo.get(keyfn(s, st))
