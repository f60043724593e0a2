"""Seeded instance generators and the vertex cover reduction."""
from __future__ import annotations

import random
from itertools import combinations
from typing import Literal

from .graph import Graph, mask_of
from .solver import Instance
from .thread import NecklaceDecomposition, ThreadBlock, ThreadDecomposition, merge

VC_MAX_N = 20


def _random_block_labels(rng: random.Random, size: int) -> list[str]:
    labels = ["R"] + [rng.choice(("L", "R", "LR")) for _ in range(size - 2)] + ["L"]
    if size > 2 and labels[1] == "L":
        labels[1] = rng.choice(("R", "LR"))
    return labels


def _random_blocks(rng: random.Random, arcs: int, size_range: tuple[int, int], cyclic: bool):
    lo, hi = size_range
    if lo < 2 or hi < lo:
        raise ValueError("block sizes must satisfy 2 <= low <= high")
    sizes = [rng.randint(lo, hi) for _ in range(arcs)]
    h = arcs if cyclic else arcs + 1
    anchors = list(range(h))
    nxt = h
    blocks = []
    for i, s in enumerate(sizes):
        inner = list(range(nxt, nxt + s - 2))
        nxt += s - 2
        order = [anchors[i]] + inner + [anchors[(i + 1) % h]]
        blocks.append((order, _random_block_labels(rng, s)))
    perm = list(range(nxt))
    rng.shuffle(perm)
    anchors = [perm[a] for a in anchors]
    blocks = [ThreadBlock(tuple(perm[v] for v in order), tuple(lab)) for order, lab in blocks]
    return anchors, blocks, nxt


def gen_thread_graph(blocks: int, block_size_range: tuple[int, int] = (2, 5), seed: int = 0) -> tuple[Graph, ThreadDecomposition]:
    """A connected thread graph built from random canonical blocks along a path."""
    if blocks < 1:
        raise ValueError("need at least one block")
    rng = random.Random(seed)
    anchors, bl, n = _random_blocks(rng, blocks, block_size_range, cyclic=False)
    g = merge(anchors, bl, n=n)
    return g, ThreadDecomposition(tuple(anchors), tuple(bl))


def gen_necklace(cycle_len: int, block_size_range: tuple[int, int] = (2, 5), seed: int = 0) -> tuple[Graph, NecklaceDecomposition]:
    """A necklace: random canonical blocks glued around a directed cycle."""
    if cycle_len < 3:
        raise ValueError("cycle length must be at least 3")
    rng = random.Random(seed)
    anchors, bl, n = _random_blocks(rng, cycle_len, block_size_range, cyclic=True)
    g = merge(anchors, bl, cyclic=True, n=n)
    return g, NecklaceDecomposition(tuple(anchors), tuple(bl))


def gen_planted(
    base: Literal["thread", "necklace"] = "thread",
    extra_vertices: int = 1,
    edge_prob: float = 0.3,
    seed: int = 0,
    size: int = 4,
    block_size_range: tuple[int, int] = (2, 4),
) -> Instance:
    """A thread or necklace base plus ``extra_vertices`` random extra vertices.

    Deleting the extras (and one anchor for a necklace base) restores a
    thread graph, so the optimum is at most ``extra_vertices`` (+1).  The
    instance budget is set to that bound.
    """
    rng = random.Random(seed)
    sub_seed = rng.randrange(2**32)
    if base == "thread":
        g0, _ = gen_thread_graph(size, block_size_range, sub_seed)
        bound = extra_vertices
    elif base == "necklace":
        g0, _ = gen_necklace(max(size, 3), block_size_range, sub_seed)
        bound = extra_vertices + 1
    else:
        raise ValueError(f"unknown base {base!r}")
    n0 = g0.n
    n = n0 + extra_vertices
    edges = list(g0.edges())
    for x in range(n0, n):
        for v in range(x):
            if rng.random() < edge_prob:
                edges.append((v, x))
    return Instance(Graph.from_edges(n, edges), bound)


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def random_connected_graph(n: int, p: float, seed: int) -> Graph:
    """A random spanning tree plus G(n, p) edges."""
    rng = random.Random(seed)
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph.from_edges(n, [(perm[u], perm[v]) for u, v in edges])


def vc_reduction(g: Graph) -> Graph:
    """Pendant per vertex, and each edge replaced by two disjoint paths of length 2.

    Vertex v keeps index v, its pendant is n + v, and the midpoints of the
    i-th edge are 2n + 2i and 2n + 2i + 1.
    """
    n = g.n
    edges = []
    for v in range(n):
        edges.append((v, n + v))
    for i, (u, v) in enumerate(g.edges()):
        a, b = 2 * n + 2 * i, 2 * n + 2 * i + 1
        edges += [(u, a), (a, v), (u, b), (b, v)]
    return Graph.from_edges(2 * n + 2 * g.m, edges)


def vertex_cover_bruteforce(g: Graph, k: int) -> frozenset[int] | None:
    """Minimum vertex cover of size at most k (lexicographically first among minimum ones)."""
    if g.n > VC_MAX_N:
        raise ValueError(f"vertex_cover_bruteforce supports n <= {VC_MAX_N}, got {g.n}")
    edges = g.edges()
    for size in range(min(k, g.n) + 1):
        for combo in combinations(range(g.n), size):
            m = mask_of(combo)
            if all(m >> u & 1 or m >> v & 1 for u, v in edges):
                return frozenset(combo)
    return None
