"""Two ways for Max to keep the k-connectivity game dense.

The final graph is always K_n minus a complete bipartite graph between two
sides A and B of a (k-1)-cut; Max's strategies keep B small.
"""
from math import comb

from satgame.game import MAX, MINI, new_game, play
from satgame.properties import Connectivity
from satgame.strategies import make_strategy
from satgame.strategies.connectivity import complement_sides, expander_score_bound, spoke_fibres

n, k = 100, 2
tr = play(new_game(n, Connectivity(k), MAX), make_strategy("max-conn-sqrt:2"), make_strategy("random:4"))
A, B, S = complement_sides(tr.final)
print(f"sqrt strategy n={n}: |A|={len(A)} |B|={len(B)} |S|={len(S)}, missing edges {comb(n, 2) - tr.score}")

n, k = 200, 5
fib = spoke_fibres(n, k)
print(f"\nexpander n={n} k={k}: core of {len(fib)} vertices, spoke fibres of sizes {sorted(set(fib))}")
for rival, first in [("greedy", MAX), ("random:7", MINI)]:
    tr = play(new_game(n, Connectivity(k), first), make_strategy("max-conn-expander:5"), make_strategy(rival))
    print(f"  vs {rival:8s}: score {tr.score} >= {expander_score_bound(n, k)}")
