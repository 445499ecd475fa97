"""Mini keeps the board 'good' in the chi > 3 game.

The top/middle/bottom partition is updated after each move; the monitors
re-derive it from scratch and would stop the game on any disagreement.
"""
from satgame.game import MAX, new_game, play
from satgame.monitors import make_monitors
from satgame.properties import ChromaticAbove
from satgame.strategies import make_strategy
from satgame.strategies.colorability import MiniChi4, chi4_score_bound, top_bound
from satgame.game import MINI

for n, rival in [(16, "random:1"), (24, "greedy"), (40, "trivial")]:
    mini = MiniChi4()
    mons = make_monitors(["goodness", "tmb-oracle", "top-bound", "endstate-structure"], {MINI: mini})
    tr = play(new_game(n, ChromaticAbove(3), MAX, memo=True), make_strategy(rival), mini, monitors=mons)
    tb = next(m for m in mons if m.name == "top-bound")
    print(f"n={n:2d} vs {rival:9s} |T| at stage end {tb.stage_one_top} <= {top_bound(n):.2f}, "
          f"score {tr.score} <= {chi4_score_bound(n):.1f}, checks {sum(m.checks for m in mons)}")
