"""Who moves first matters: exact scores of the 2-matching game.

With Mini first the game always ends with a triangle or a star on three
vertices (3 edges).  With Max first he can keep a star growing, and the
score climbs with n.
"""
from satgame.game import MAX, MINI
from satgame.properties import Connectivity, Matching
from satgame.solver import solve

print(" n  max-first  mini-first")
for n in range(4, 10):
    hi = solve(n, Matching(2), MAX, with_pv=False).score
    lo = solve(n, Matching(2), MINI, with_pv=False).score
    print(f"{n:2d}  {hi:9d}  {lo:10d}")

# connectivity is different: the score is binom(n-2, 2) + 1 either way
res = solve(7, Connectivity(1), MINI)
print("\nconnectivity, n=7, Mini first:", res.score, "after", res.nodes, "search nodes")
print("one optimal line:", " ".join(f"{u}{v}" for u, v in res.pv))
