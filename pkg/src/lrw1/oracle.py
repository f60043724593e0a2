"""Slow exact reference implementations.

Nothing here depends on split trees or thread decompositions, so these
functions can be used to check the fast code paths.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .graph import (
    Graph,
    bits,
    canonical_form_small,
    connected_components,
    cut_rank,
    cut_rank_at_most_one,
    mask_of,
)

LRW_MAX_N = 20
BRUTEFORCE_MAX_N = 18
ENUM_MAX_N = 8


class OracleSizeError(ValueError):
    """Input exceeds the size guard of an exponential oracle."""


def _width_feasible(g: Graph, comp: int, w: int) -> bool:
    """Is there an ordering of ``comp`` whose prefixes all have cut-rank <= w in g[comp]?"""
    if comp.bit_count() <= 1:
        return True
    sub, _ = g.induced_subgraph(comp)
    full = sub.full
    if w == 1:
        ok = lambda s: cut_rank_at_most_one(sub, s)  # noqa: E731
    else:
        ok = lambda s: cut_rank(sub, s) <= w  # noqa: E731
    seen = {0}
    stack = [0]
    while stack:
        s = stack.pop()
        rest = full & ~s
        for v in bits(rest):
            t = s | (1 << v)
            if t in seen:
                continue
            if t == full:
                return True
            if ok(t):
                seen.add(t)
                stack.append(t)
    return False


def linear_rankwidth_exact(g: Graph) -> int:
    """Exact linear rankwidth.

    Equivalent to the subset recursion f(S) = min_v max(f(S - v), cr(S)):
    width w is feasible iff the full set is reachable from the empty set
    through sets of cut-rank at most w.  Components are handled separately
    since the width of a disjoint union is the maximum over its parts.
    """
    if g.n > LRW_MAX_N:
        raise OracleSizeError(f"linear_rankwidth_exact supports n <= {LRW_MAX_N}, got {g.n}")
    best = 0
    for comp in connected_components(g):
        w = best
        while not _width_feasible(g, comp, w):
            w += 1
        best = w
    return best


def lrw_at_most_one(g: Graph) -> bool:
    if g.n > LRW_MAX_N:
        raise OracleSizeError(f"lrw_at_most_one supports n <= {LRW_MAX_N}, got {g.n}")
    return all(_width_feasible(g, c, 1) for c in connected_components(g))


def linear_rankwidth_by_orderings(g: Graph) -> int:
    """n! enumeration; only for cross-checking the subset search on tiny graphs."""
    from itertools import permutations

    if g.n > 8:
        raise OracleSizeError("ordering enumeration is limited to n <= 8")
    if g.n <= 1:
        return 0
    best = None
    for order in permutations(range(g.n)):
        s = 0
        width = 0
        for v in order[:-1]:
            s |= 1 << v
            width = max(width, cut_rank(g, s))
        best = width if best is None else min(best, width)
    return best


def min_deletion_set_bruteforce(g: Graph, k: int) -> frozenset[int] | None:
    """Smallest, then lexicographically first, S with |S| <= k and lrw(G - S) <= 1."""
    if g.n > BRUTEFORCE_MAX_N:
        raise OracleSizeError(f"min_deletion_set_bruteforce supports n <= {BRUTEFORCE_MAX_N}, got {g.n}")
    if k < 0:
        return None
    for size in range(min(k, g.n) + 1):
        for combo in combinations(range(g.n), size):
            rest = g.full & ~mask_of(combo)
            if all(_width_feasible(g, c, 1) for c in connected_components(g, rest)):
                return frozenset(combo)
    return None


def _extend(g: Graph, mask: int) -> Graph:
    n = g.n
    adj = list(g.adj)
    for u in bits(mask):
        adj[u] |= 1 << n
    adj.append(mask)
    return Graph(n + 1, tuple(adj))


@lru_cache(maxsize=None)
def _connected_reps(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph.empty(1),)
    found: dict[bytes, Graph] = {}
    for base in _connected_reps(n - 1):
        for mask in range(1, 1 << (n - 1)):
            h = _extend(base, mask)
            key = canonical_form_small(h)
            if key not in found:
                found[key] = h
    return tuple(found[key] for key in sorted(found))


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of connected graphs on n vertices."""
    if n > ENUM_MAX_N:
        raise OracleSizeError(f"enumerate_connected_graphs supports n <= {ENUM_MAX_N}, got {n}")
    if n < 1:
        return iter(())
    return iter(_connected_reps(n))


def is_minimal_obstruction(g: Graph) -> bool:
    if lrw_at_most_one(g):
        return False
    for v in range(g.n):
        if not lrw_at_most_one(g.delete_vertices(1 << v)[0]):
            return False
    return True


def derive_obstruction_catalog(max_n: int = ENUM_MAX_N) -> list[Graph]:
    """Connected graphs on <= max_n vertices that are vertex-minimal with lrw >= 2."""
    out = []
    for n in range(1, max_n + 1):
        for g in enumerate_connected_graphs(n):
            if is_minimal_obstruction(g):
                out.append(g)
    out.sort(key=lambda h: (h.n, h.m, canonical_form_small(h)))
    return out
