"""Acceptance criteria 1-10.

Each test prints one ``criterion N: PASS|FAIL`` line as it finishes, and the
lines are repeated in the terminal summary.  The long ones (3, 9, 10) take a
few minutes each on one core.
"""
import random
import sys
from fractions import Fraction
from math import comb, isqrt

import pytest

from satgame import oracles
from satgame.game import MAX, MINI, IllegalMove, new_game, play
from satgame.graph import Graph
from satgame.monitors import make_monitors
from satgame.properties import (
    ChromaticAbove,
    Connectivity,
    ContainsSubgraph,
    Hamiltonicity,
    IndependenceBelow,
    Matching,
    PerfectMatching,
    extremal_bruteforce,
    is_saturated,
)
from satgame.solver import best_move, labelled_minimax, plain_minimax, solve, verify_strategy
from satgame.strategies import make_strategy
from satgame.strategies.base import RandomPlayer, Strategy
from satgame.strategies.colorability import MaxChikRandom, MiniChi4, is_complete_multipartite, part_count
from satgame.strategies.connectivity import MaxConnExpander, MaxConnSqrt, complement_sides, spoke_fibres
from satgame.strategies.longpath import verify_long_path
from satgame.strategies.matching import EndgameRunner, MaxMk, MaxPM, MiniMk, lemma_instances

from conftest import random_graph

REPORT = []


def report(num, ok, detail):
    line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    REPORT.append(line)
    sys.__stdout__.write("\n" + line + "\n")
    sys.__stdout__.flush()
    assert ok, line


def no_fault(s, st):
    return st.fault()


# ---------------------------------------------------------------- 1, 2


def test_criterion_01_exact_scores():
    bad = []
    rows = []
    for n in (6, 7):
        for first in (MAX, MINI):
            v = solve(n, Connectivity(1), first, with_pv=False).score
            rows.append(f"C1 n={n} {first.value}={v}")
            if v != comb(n - 2, 2) + 1:
                bad.append(("connectivity:1", n, first.value, v))
    for n in range(4, 8):
        for first in (MAX, MINI):
            v = solve(n, ChromaticAbove(2), first, with_pv=False).score
            if v != n * n // 4:
                bad.append(("chromatic-gt:2", n, first.value, v))
    for n in range(4, 10):
        v = solve(n, Matching(2), MINI, with_pv=False).score
        if v != 3:
            bad.append(("matching:2", n, "mini", v))
    for n in (5, 6):
        for first in (MAX, MINI):
            v = solve(n, IndependenceBelow(2), first, with_pv=False).score
            if v != comb(n, 2) - 1:
                bad.append(("independence-lt:2", n, first.value, v))
    report(1, not bad, "; ".join(rows) + (f"; mismatches {bad}" if bad else "; all closed forms exact"))


def test_criterion_02_parity_phenomenon():
    cells, ok = [], True
    for n in range(5, 10):
        hi = solve(n, Matching(2), MAX, with_pv=False).score
        lo = solve(n, Matching(2), MINI, with_pv=False).score
        ok &= hi >= n - 1 and lo == 3
        cells.append(f"n={n}: max-first {hi} / mini-first {lo}")
    report(2, ok, ", ".join(cells))


# ---------------------------------------------------------------- 3


def test_criterion_03_strategy_guarantees():
    problems, notes = [], []
    for first in (MAX, MINI):
        res = verify_strategy(MaxPM(), MAX, 8, PerfectMatching(), first, check=no_fault, floor=comb(4, 2))
        notes.append(f"max-pm n=8 {first.value}-first >= {res.guarantee}")
        if not res.ok or res.guarantee < 6:
            problems.append(("max-pm", first.value, res.violation, res.guarantee))
    for li in lemma_instances():
        res = verify_strategy(EndgameRunner(li.config), li.role, li.n, li.prop, li.first, start=li.start)
        if not (res.ok and li.holds(res.guarantee)):
            problems.append((li.name, res.violation, res.guarantee))
    notes.append(f"{len(lemma_instances())} end-game lemmas")
    for n in range(4, 10):
        res = verify_strategy(MaxMk(2), MAX, n, Matching(2), MAX, check=no_fault)
        if not res.ok or res.guarantee < n - 1:
            problems.append(("max-mk:2", n, res.violation, res.guarantee))
    notes.append("max-mk:2 n=4..9 >= n-1")
    for n in (8, 9):
        res = verify_strategy(MiniMk(3), MINI, n, Matching(3), MAX, check=no_fault)
        if not res.ok or res.guarantee > 10:
            problems.append(("mini-mk:3", n, res.violation, res.guarantee))
    notes.append("mini-mk:3 n=8,9 <= 10")
    report(3, not problems, ", ".join(notes) + (f"; failures {problems}" if problems else "; no forfeits"))


# ---------------------------------------------------------------- 4


def test_criterion_04_long_path():
    bad, runs = [], 0
    for n in range(3, 10):
        for target in range(1, n - 1):
            for first in (MAX, MINI):
                for role in (MAX, MINI):
                    res = verify_long_path(n, target, role, first)
                    runs += 1
                    if not res.ok:
                        bad.append((n, target, first.value, role.value, res.violation))
    report(4, not bad, f"{runs} exhaustive runs (n=3..9, every target, both first players, both roles)"
                       + (f"; failures {bad[:3]}" if bad else ""))


# ---------------------------------------------------------------- 5


def test_criterion_05_oracle_equivalence():
    rng = random.Random(2024)
    pairs = {
        "matching": (oracles.max_matching_size, oracles.brute_matching_size, 10),
        "connectivity": (oracles.vertex_connectivity, oracles.brute_vertex_connectivity, 8),
        "chromatic": (oracles.chromatic_number, oracles.brute_chromatic_number, 8),
        "independence": (oracles.independence_number, oracles.brute_independence_number, 8),
    }
    bad = []
    for name, (fast, brute, top) in pairs.items():
        for _ in range(500):
            g = random_graph(rng, rng.randint(1, top))
            if fast(g) != brute(g):
                bad.append((name, g.edges()))
        if name == "matching":
            # the pairs themselves form a matching of the reported size
            for _ in range(100):
                g = random_graph(rng, rng.randint(2, top))
                m = oracles.max_matching(g)
                used = [v for e in m for v in e]
                if len(used) != len(set(used)) or not all(g.has_edge(*e) for e in m):
                    bad.append(("matching-pairs", g.edges()))
    report(5, not bad, "500 random graphs per oracle, exact agreement" if not bad else f"mismatches {bad[:3]}")


# ---------------------------------------------------------------- 6


def turan(n, k):
    return sum((n + i) // k * ((n + j) // k) for i in range(k) for j in range(i + 1, k))


def erdos_gallai(n, k):
    return max(comb(2 * k - 1, 2), comb(k - 1, 2) + (k - 1) * (n - k + 1))


def test_criterion_06_extremal_forms():
    bad, checked = [], 0

    def expect(n, prop, sat, ex):
        nonlocal checked
        ep = extremal_bruteforce(n, prop)
        checked += 1
        if (sat is not None and ep.sat != sat) or ep.ex != ex:
            bad.append((prop.name, n, (ep.sat, ep.ex), (sat, ex)))

    k3 = ContainsSubgraph(Graph.complete(3))
    for n in range(3, 8):
        expect(n, k3, n - 1, n * n // 4)
        expect(n, ChromaticAbove(3), 2 * (n - 1) - 1, turan(n, 3))
    for k in (2, 3):
        for n in range(2 * k, 9):
            # the saturation closed form 3(k-1) is stated for k <= n/3
            expect(n, Matching(k), 3 * (k - 1) if 3 * k <= n else None, erdos_gallai(n, k))
    for k in (1, 2, 3):
        for n in range(k + 2, 8):
            expect(n, Connectivity(k), None, comb(n - 1, 2) + k - 1)
    report(6, not bad, f"{checked} (property, n) pairs exact" if not bad else f"mismatches {bad}")


# ---------------------------------------------------------------- 7


def test_criterion_07_good_graph_machinery():
    rng = random.Random(7)
    styles = ["trivial", "greedy", "random"]
    bad, games, checks = [], 0, 0
    for i in range(300):
        n = 5 + i % 36  # 5..40
        style = styles[i % 3]
        first = (MAX, MINI)[(i // 3) % 2]
        mini = MiniChi4()
        rival = make_strategy(style, seed=rng.randrange(10**6))
        mons = make_monitors(["goodness", "tmb-oracle", "top-bound", "legality"], {MINI: mini})
        try:
            tr = play(new_game(n, ChromaticAbove(3), first, memo=True), rival, mini, monitors=mons)
        except Exception as exc:  # noqa: BLE001 - every failure is reported
            bad.append((n, style, first.value, str(exc)))
            continue
        games += 1
        checks += sum(m.checks for m in mons)
        if tr.score > (n + 3) / 4 * (3 * n - 3) / 4 + ((3 * n - 3) / 8) ** 2:
            bad.append((n, style, "score", tr.score))
    report(7, not bad, f"{games} monitored games (n=5..40, trivial/greedy/random), {checks} invariant checks"
                       + (f"; failures {bad[:3]}" if bad else ""))


# ---------------------------------------------------------------- 8


def test_criterion_08_random_chik():
    n, k = 60, 6
    bad, opp, semi = [], 0, 0
    for seed in range(200):
        strat = MaxChikRandom(k, seed)
        rival = [make_strategy("trivial"), make_strategy("greedy"), RandomPlayer(10**4 + seed)][seed % 3]
        first = (MAX, MINI)[seed % 2]
        try:
            tr = play(new_game(n, ChromaticAbove(k), first, memo=True), strat, rival)
        except IllegalMove as exc:
            bad.append((seed, str(exc)))
            continue
        g = tr.final
        if strat.stage != 2 or g.min_degree() < k - 1:
            bad.append((seed, "stage 1 did not finish"))
        if not is_saturated(g, ChromaticAbove(k)) or not is_complete_multipartite(g) or part_count(g) != k:
            bad.append((seed, "final graph is not a saturated complete k-partite graph"))
        opp += strat.opportunities
        semi += strat.semi_moves
    p = Fraction(1, MaxChikRandom.SEMI_ODDS)
    sigma = (float(p * (1 - p)) / opp) ** 0.5
    freq = semi / opp
    ok = not bad and abs(freq - float(p)) <= 4 * sigma
    report(8, ok, f"200 games n=60 k=6; semi-random {semi}/{opp} = {freq:.5f} vs 1/140 = {float(p):.5f} "
                  f"(4 sigma = {4 * sigma:.5f}); the asymptotic (1 - C log k / k) binom(n,2) bound is not "
                  f"reproducible at this size and is not checked" + (f"; failures {bad[:3]}" if bad else ""))


# ---------------------------------------------------------------- 9


class StageOneSnapshot:
    """Copies the board the first time the watched strategy leaves stage 1."""

    def __init__(self, strat):
        self.strat = strat
        self.board = None
        self.checks = 0

    def __call__(self, state, role, edge):
        if self.board is None and self.strat.stage != 1:
            self.board = state.graph.copy()


def test_criterion_09_connectivity():
    bad, notes = [], []
    # sqrt strategy, n = 500, k = 2
    n, k = 500, 2
    for first, rival in [(MAX, "random:1"), (MINI, "random:2"), (MAX, "trivial"), (MINI, "trivial")]:
        strat = MaxConnSqrt(k)
        tr = play(new_game(n, Connectivity(k), first, memo=True), strat, make_strategy(rival))
        sides = complement_sides(tr.final)
        if sides is None or len(sides[1]) ** 2 > 25 * k * k * n:
            bad.append(("sqrt", first.value, rival, None if sides is None else len(sides[1])))
        else:
            notes.append(len(sides[1]))
    limit = 5 * k * isqrt(n)
    line = f"sqrt n=500: 4 games, complement complete bipartite, |B| in {sorted(set(notes))} <= 5k sqrt(n) ~ {limit}"
    # expander strategy, n = 200, k = 5
    n, k = 200, 5
    floor_stated = comb(n, 2) - 24 * (n - 28)
    scores, snap_board, snap_strat = [], None, None
    for i in range(30):
        strat = MaxConnExpander(k)
        snap = StageOneSnapshot(strat)
        rival = ["greedy", "trivial", f"random:{i}"][i % 3]
        tr = play(new_game(n, Connectivity(k), (MAX, MINI)[i % 2], memo=True), strat, make_strategy(rival),
                  monitors=[snap])
        scores.append(tr.score)
        if tr.score < floor_stated:
            bad.append(("expander", i, tr.score))
        if snap_board is None:
            snap_board, snap_strat = snap.board, strat
    # stage-one neighbourhood condition on 1000 random outside sets
    rng = random.Random(9)
    r, t = snap_strat.r, snap_strat.t
    core = snap_strat.core_vertices
    outside = list(range(r, n))
    worst = None
    fibre_ok = True
    big = max(spoke_fibres(n, k))
    for _ in range(1000):
        B = rng.sample(outside, rng.randint(1, t))
        nb = 0
        for u in B:
            nb |= snap_board.adj[u] & core
        got = nb.bit_count()
        if Fraction(len(B) * r, t) > got:
            bad.append(("neighbourhood", len(B), got))
        fibre_ok &= got >= -(-len(B) // big)
        ratio = Fraction(got * t, len(B) * r)
        worst = ratio if worst is None else min(worst, ratio)
    if not fibre_ok:
        bad.append(("fibre form",))
    line += (f"; expander n=200: 30 games, min score {min(scores)} >= binom(n,2) - 24(n-28) = {floor_stated}; "
             f"|N(B,V0)| >= |B| r/t on 1000 sampled B (min ratio {float(worst):.2f}); fibre-aligned B break the "
             f"ratio form when r does not divide t, the rounded form |N| >= ceil(|B|/{big}) is what the bound uses; "
             f"asymptotic bounds are vacuous at these sizes")
    report(9, not bad, line + (f"; failures {bad[:3]}" if bad else ""))


# ---------------------------------------------------------------- 10


SMALL_PROPS = [Connectivity(1), Connectivity(2), ChromaticAbove(2), ChromaticAbove(3), Matching(2),
               PerfectMatching(), IndependenceBelow(2), IndependenceBelow(3), Hamiltonicity(),
               ContainsSubgraph(Graph.complete(3))]


class BestMove(Strategy):
    name = "best-move"

    def next_move(self, state):
        return best_move(state)


def test_criterion_10_solver_consistency():
    bad, cases = [], 0
    for prop in SMALL_PROPS:
        for n in range(2, 6):
            if prop.holds(Graph(n)):
                continue
            for first in (MAX, MINI):
                ref = plain_minimax(Graph(n), prop, first)
                got = {solve(n, prop, first, with_pv=False).score, solve(n, prop, first, use_window=False).score,
                       labelled_minimax(Graph(n), prop, first)}
                cases += 1
                if got != {ref}:
                    bad.append((prop.name, n, first.value, ref, got))
    # relabelling invariance from random start graphs
    rng = random.Random(10)
    for prop in (Connectivity(1), ChromaticAbove(2), Matching(3), IndependenceBelow(3)):
        for _ in range(4):
            base = random_graph(rng, 6, 0.2)
            if prop.holds(base):
                continue
            ref = solve(6, prop, MAX, start=base).score
            perm = list(range(6))
            rng.shuffle(perm)
            if solve(6, prop, MAX, start=base.relabel(perm)).score != ref:
                bad.append(("relabel", prop.name))
    # one side fixed to best_move, the other searched exhaustively
    for prop in (Connectivity(1), ChromaticAbove(2), Matching(2), IndependenceBelow(3), Hamiltonicity()):
        for n in (4, 5):
            for first in (MAX, MINI):
                val = solve(n, prop, first, with_pv=False).score
                for role in (MAX, MINI):
                    if verify_strategy(BestMove(), role, n, prop, first).guarantee != val:
                        bad.append(("best_move", prop.name, n, first.value, role.value))
    report(10, not bad, f"memo-free = labelled memo = canonical memo = no-window on {cases} games (n<=5), "
                        f"relabelling invariance, best_move reproduces solve at n=4,5"
                        + (f"; failures {bad[:3]}" if bad else ""))
