import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs, permuted, to_nx
from lrw1.graph import (
    is_bipartite,
    Graph,
    GraphError,
    are_isomorphic_small,
    blocks_and_cut_vertices,
    canonical_form_small,
    complete_graph,
    connected_components,
    cut_rank,
    cut_rank_at_most_one,
    cycle_graph,
    gf2_rank,
    mask_of,
    path_graph,
)


def rank_gf2_numpy(rows, width):
    """Plain row reduction over GF(2) on a 0/1 matrix, independent of the bitset code."""
    m = np.array([[(r >> j) & 1 for j in range(width)] for r in rows], dtype=np.uint8).reshape(len(rows), width)
    rank = 0
    for col in range(width):
        pivot = next((i for i in range(rank, m.shape[0]) if m[i, col]), None)
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        for i in range(m.shape[0]):
            if i != rank and m[i, col]:
                m[i] ^= m[rank]
        rank += 1
    return rank


def cut_rank_numpy(g, s):
    inside = [v for v in range(g.n) if s >> v & 1]
    outside = [v for v in range(g.n) if not s >> v & 1]
    rows = [sum(1 << j for j, w in enumerate(outside) if g.has_edge(v, w)) for v in inside]
    return rank_gf2_numpy(rows, len(outside)) if inside and outside else 0


# -- construction ------------------------------------------------------------------

def test_rejects_asymmetric_and_loops():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))
    with pytest.raises(GraphError):
        Graph(1, (0b1,))
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])


def test_names_length_checked():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 1)], names=["a"])


@given(graphs())
def test_edges_round_trip(g):
    assert Graph.from_edges(g.n, g.edges()) == g
    assert g.m == to_nx(g).number_of_edges()


# -- cut rank -------------------------------------------------------------------------

def test_cut_rank_examples():
    assert cut_rank(cycle_graph(5), 0) == 0
    assert cut_rank(complete_graph(5), 0b11) == 1
    assert cut_rank(cycle_graph(5), 0b11) == 2


@given(graphs(max_n=12), st.data())
def test_cut_rank_matches_numpy_and_is_symmetric(g, data):
    s = data.draw(st.integers(0, (1 << g.n) - 1)) if g.n else 0
    r = cut_rank(g, s)
    assert r == cut_rank_numpy(g, s)
    assert r == cut_rank(g, g.full & ~s)
    assert r <= min(s.bit_count(), g.n - s.bit_count())
    assert cut_rank_at_most_one(g, s) == (r <= 1)


@given(st.lists(st.integers(0, 255), max_size=10))
def test_gf2_rank_matches_numpy(rows):
    assert gf2_rank(rows) == rank_gf2_numpy(rows, 8)


# -- subgraphs and components ----------------------------------------------------------------

def test_induced_subgraph_examples():
    sub, old = cycle_graph(5).induced_subgraph(0b00111)
    assert sub == path_graph(3) and old == [0, 1, 2]
    assert complete_graph(4).induced_subgraph(0b1010)[0] == complete_graph(2)


def test_delete_vertices_records_mapping():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)], names=list("abcd"))
    h, old = g.delete_vertices(0b0010)
    assert old == [0, 2, 3]
    assert h.names == ("a", "c", "d")
    assert h.edges() == [(1, 2)]


def test_components_example():
    g = cycle_graph(9).disjoint_union(complete_graph(2))
    assert len(connected_components(g)) == 2


@given(graphs(max_n=12))
def test_components_match_networkx(g):
    ours = sorted(connected_components(g))
    theirs = sorted(mask_of(c) for c in nx.connected_components(to_nx(g)))
    assert ours == theirs


# -- blocks ----------------------------------------------------------------------------------

def test_block_examples():
    s = blocks_and_cut_vertices(path_graph(4))
    assert s.cut_vertices == 0b0110 and len(s.blocks) == 3
    s = blocks_and_cut_vertices(cycle_graph(5))
    assert s.cut_vertices == 0 and len(s.blocks) == 1
    bowtie = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    s = blocks_and_cut_vertices(bowtie)
    assert s.cut_vertices == 1 << 2 and len(s.blocks) == 2


@given(graphs(max_n=12))
def test_blocks_match_networkx(g):
    s = blocks_and_cut_vertices(g)
    h = to_nx(g)
    assert s.cut_vertices == mask_of(nx.articulation_points(h))
    nontrivial = sorted(b for b in s.blocks if b.bit_count() >= 2)
    assert nontrivial == sorted(mask_of(c) for c in nx.biconnected_components(h))
    for u, v in g.edges():
        assert sum(1 for b in s.blocks if b >> u & 1 and b >> v & 1) == 1


# -- canonical forms ----------------------------------------------------------------------------

def test_canonical_examples():
    p3 = path_graph(3)
    assert canonical_form_small(p3) == canonical_form_small(p3.relabel([2, 0, 1]))
    k3k1 = complete_graph(3).disjoint_union(Graph.empty(1))
    assert canonical_form_small(cycle_graph(4)) != canonical_form_small(k3k1)


def test_eleven_graphs_on_four_vertices():
    pairs = list(itertools.combinations(range(4), 2))
    forms = set()
    for mask in range(1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
        forms.add(canonical_form_small(Graph.from_edges(4, edges)))
    assert len(forms) == 11


def test_canonical_size_guard():
    with pytest.raises(ValueError):
        canonical_form_small(path_graph(11))


@given(graphs(max_n=8), st.integers(0, 10**6))
def test_canonical_invariant_under_permutation(g, seed):
    assert canonical_form_small(g) == canonical_form_small(permuted(g, seed))


@given(graphs(min_n=5, max_n=7), graphs(min_n=5, max_n=7))
def test_canonical_agrees_with_networkx(g, h):
    if g.n == h.n:
        assert are_isomorphic_small(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


@given(g=graphs(min_n=1, max_n=10))
def test_is_bipartite_matches_networkx(g):
    assert is_bipartite(g) == nx.is_bipartite(to_nx(g))
    within = g.full & ~1
    sub, _ = g.induced_subgraph(within)
    assert is_bipartite(g, within) == nx.is_bipartite(to_nx(sub))
