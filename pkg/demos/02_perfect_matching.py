"""Max's perfect-matching strategy, watched move by move and then checked exhaustively.

Max grows a long path until only four or five vertices are left off it and
then hands control to a small end-game automaton.  The exhaustive check at
n = 8 explores every reply Mini could make (about a minute).
"""
import sys
from math import comb

from satgame.game import MAX, MINI, new_game, play
from satgame.properties import PerfectMatching
from satgame.solver import verify_strategy
from satgame.strategies.base import RandomPlayer
from satgame.strategies.matching import MaxPM

n = 12
for seed in range(3):
    strat = MaxPM()
    tr = play(new_game(n, PerfectMatching(), MINI, memo=True), strat, RandomPlayer(seed))
    print(f"seed {seed}: path {strat.builder.path}, end-games {strat.history or ['none']}, "
          f"score {tr.score} (bound {comb(n - 4, 2)})")

if "--quick" in sys.argv:
    sys.exit()

res = verify_strategy(MaxPM(), MAX, 8, PerfectMatching(), MAX, check=lambda s, st: st.fault(), floor=comb(4, 2))
print(f"\nn=8, Max first: every line ends with at least {res.guarantee} edges "
      f"({res.leaves} leaves, {res.states} distinct positions), ok={res.ok}")
