"""Plant a few noisy vertices in a thread graph, then solve and kernelize.

The branching solver returns a minimum deletion set; the kernel shrinks the
instance first.  With the proven thresholds only the first two rules can act
on a graph this small, so the test preset is shown too.
"""
from lrw1 import PAPER, TEST, kernelize, solve_branching
from lrw1.generators import gen_planted
from lrw1.graph import cycle_graph
from lrw1.kernel import Reduced, mu, rules_fired
from lrw1.oracle import min_deletion_set_bruteforce

inst = gen_planted("thread", extra_vertices=2, edge_prob=0.4, seed=11, size=4, block_size_range=(2, 3))
g, k = inst.graph, inst.k
print(f"instance: n={g.n} m={g.m}, budget k={k}")

sol = solve_branching(inst)
print("solver:", sorted(sol.deletion_set) if sol else None, f"({sol.nodes_expanded} nodes)" if sol else "")
print("brute force:", sorted(min_deletion_set_bruteforce(g, k) or []))

print(f"\nmu(0) = {mu(0)}, so structural rules need components far beyond this graph")
# add a 13-cycle: one more deletion, and long enough for the contraction rule under the test preset
g = g.disjoint_union(cycle_graph(13))
k += 1
for th in (PAPER, TEST):
    res = kernelize(g, k, th)
    if isinstance(res, Reduced):
        print(f"{th.name:>6}: kernel n={res.graph.n} k={res.k}, rules {sorted(rules_fired(res.state.trace))}")
    else:
        print(f"{th.name:>6}: NO ({res.reason})")
