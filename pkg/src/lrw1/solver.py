"""Bounded search tree solver: branch on the vertices of a small obstruction.

Once no small obstruction is left, every non-thread component is a
necklace and one vertex per necklace finishes the job.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Generic, Hashable, Sequence, TypeVar

from .graph import Graph, bits, connected_components
from .necklace import _min_deletion_unchecked
from .obstructions import find_small_obstruction
from .thread import is_thread_graph

S = TypeVar("S")


@dataclass(frozen=True)
class Instance:
    graph: Graph
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("budget must be non-negative")


@dataclass(frozen=True)
class Solution:
    deletion_set: frozenset
    branch_trace: tuple = ()
    nodes_expanded: int = 0

    def __len__(self) -> int:
        return len(self.deletion_set)


@dataclass
class BranchOps(Generic[S]):
    """What the search needs to know about a state (a residual graph in some representation)."""

    key: Callable[[S], Hashable]
    reduce: Callable[[S], S]  # drop parts that never need deletions
    is_empty: Callable[[S], bool]
    find_hit: Callable[[S], tuple | None]  # (hit description, vertices to branch on)
    remove: Callable[[S, object], S]
    finish: Callable[[S], frozenset]  # minimum deletion set of an obstruction-free state
    # optional lower bound: disjoint obstructions extending ``hit``, counting stops past ``cap``
    packing: Callable[[S, object, int], int] | None = None


@dataclass
class _Stats:
    nodes: int = 0
    memo: dict = field(default_factory=dict)


def branch_and_bound(start: S, k: int, ops: BranchOps[S]) -> Solution | None:
    """Minimum deletion set of size <= k, exploring every branch with bound pruning."""
    stats = _Stats()
    found = _search(ops.reduce(start), k, ops, stats)
    if found is None:
        return None
    chosen, trace = found
    return Solution(frozenset(chosen), tuple(trace), stats.nodes)


def _search(state, budget: int, ops: BranchOps, stats: _Stats):
    key = (ops.key(state), budget)
    if key in stats.memo:
        return stats.memo[key]
    stats.nodes += 1
    result = _expand(state, budget, ops, stats)
    stats.memo[key] = result
    return result


def _expand(state, budget: int, ops: BranchOps, stats: _Stats):
    if ops.is_empty(state):
        return frozenset(), []
    found = ops.find_hit(state)
    if found is None:
        rest = ops.finish(state)
        return (rest, [("obstruction-free", sorted(rest, key=str))]) if len(rest) <= budget else None
    if budget == 0:
        return None
    hit, branch_on = found
    if ops.packing is not None and budget > 1 and ops.packing(state, hit, budget) > budget:
        return None
    best = None
    for v in branch_on:
        limit = budget if best is None else len(best[0]) - 1
        if limit < 1:
            break
        sub = _search(ops.reduce(ops.remove(state, v)), limit - 1, ops, stats)
        if sub is None:
            continue
        chosen = sub[0] | {v}
        if best is None or len(chosen) < len(best[0]):
            best = (chosen, [(hit, v)] + sub[1])
    return best


# -- graph engine -----------------------------------------------------------------

def graph_ops(g: Graph) -> BranchOps[int]:
    def reduce(mask: int) -> int:
        keep = 0
        for comp in connected_components(g, mask):
            sub, _ = g.induced_subgraph(comp)
            if not is_thread_graph(sub):
                keep |= comp
        return keep

    def find_hit(mask: int):
        hit = find_small_obstruction(g, within=mask)
        if hit is None:
            return None
        return hit, list(bits(hit.vertices))

    def finish(mask: int) -> frozenset:
        sub, old = g.induced_subgraph(mask)
        return frozenset(old[v] for v in _min_deletion_unchecked(sub))

    def packing(mask: int, hit, cap: int) -> int:
        count, rest = 1, mask & ~hit.vertices
        while count <= cap:
            more = find_small_obstruction(g, within=rest)
            if more is None:
                break
            count += 1
            rest &= ~more.vertices
        return count

    return BranchOps(
        key=lambda mask: mask,
        reduce=reduce,
        is_empty=lambda mask: mask == 0,
        find_hit=find_hit,
        remove=lambda mask, v: mask & ~(1 << v),
        finish=finish,
        packing=packing,
    )


def solve_branching(inst: Instance) -> Solution | None:
    """Minimum LRW1-deletion set of size at most k, or None."""
    g = inst.graph
    return branch_and_bound(g.full, inst.k, graph_ops(g))


def decide(inst: Instance) -> tuple[bool, Solution | None]:
    sol = solve_branching(inst)
    return sol is not None, sol


def certify(g: Graph, deletion: Sequence[int] | frozenset) -> bool:
    mask = 0
    for v in deletion:
        mask |= 1 << v
    return is_thread_graph(g.delete_vertices(mask)[0])


def trace_to_json(sol: Solution) -> list[dict]:
    out = []
    for hit, chosen in sol.branch_trace:
        if hit == "obstruction-free":
            out.append({"step": "obstruction-free", "deleted": list(chosen)})
        else:
            out.append({"step": "branch", "catalog_id": hit.catalog_id, "hit": list(bits(hit.vertices)) if hasattr(hit, "vertices") else hit, "chosen": chosen})
    return out
