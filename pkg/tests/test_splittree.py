from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs, permuted
from lrw1.generators import gen_thread_graph, random_connected_graph
from lrw1.graph import Graph, complete_graph, cycle_graph, star_graph
from lrw1.oracle import enumerate_connected_graphs
from lrw1.splittree import (
    NotConnected,
    accessibility_graph,
    build_reduced_split_tree,
    find_split,
    internal_tree_is_path,
    is_reduced,
    is_split,
    node_kind,
)


def has_split_bruteforce(g):
    return any(is_split(g, a) for a in range(1, 1 << g.n) if a & 1)


def test_star_is_single_star_node():
    t = build_reduced_split_tree(star_graph(4))
    assert len(t.nodes) == 1
    (node,) = t.nodes.values()
    assert node_kind(node.label) == "star" and len(node.ends) == 5


def test_clique_is_single_clique_node():
    t = build_reduced_split_tree(complete_graph(4))
    assert [node_kind(n.label) for n in t.nodes.values()] == ["clique"]


def test_c5_is_single_prime_node():
    assert not has_split_bruteforce(cycle_graph(5))
    t = build_reduced_split_tree(cycle_graph(5))
    assert [node_kind(n.label) for n in t.nodes.values()] == ["prime"]
    assert accessibility_graph(t) == cycle_graph(5)


def test_two_vertices():
    t = build_reduced_split_tree(complete_graph(2))
    assert accessibility_graph(t) == complete_graph(2)


def test_rejects_disconnected():
    with pytest.raises(NotConnected):
        build_reduced_split_tree(Graph.empty(3))
    with pytest.raises(NotConnected):
        build_reduced_split_tree(Graph.empty(1))


@given(g=graphs(min_n=4, max_n=8, connected=True))
def test_find_split_is_complete(g):
    a = find_split(g)
    if a is None:
        assert not has_split_bruteforce(g)
    else:
        assert is_split(g, a)


@given(g=graphs(min_n=2, max_n=10, connected=True))
def test_round_trip_and_reduced(g):
    t = build_reduced_split_tree(g)
    assert accessibility_graph(t) == g
    assert is_reduced(t)
    for nid, node in t.nodes.items():
        assert len(node.ends) == node.label.n
        for e in node.ends:
            assert nid in t.tree_neighbours(e)


@given(g=graphs(min_n=3, max_n=9, connected=True), seed=st.integers(0, 10**6))
def test_tree_shape_independent_of_labelling(g, seed):
    def shape(h):
        t = build_reduced_split_tree(h)
        return Counter((node_kind(n.label), n.label.n) for n in t.nodes.values())

    assert shape(g) == shape(permuted(g, seed))


def test_random_connected_round_trip():
    for seed in range(100):
        g = random_connected_graph(8 + seed % 7, 0.15 + 0.05 * (seed % 5), seed)
        t = build_reduced_split_tree(g)
        assert accessibility_graph(t) == g and is_reduced(t)


def test_thread_graph_tree_is_a_degenerate_path():
    g, _ = gen_thread_graph(2, (3, 5), seed=11)
    t = build_reduced_split_tree(g)
    assert internal_tree_is_path(t) is not None
    assert all(node_kind(n.label) != "prime" for n in t.nodes.values())
    assert accessibility_graph(t) == g


@pytest.mark.slow
def test_round_trip_all_connected_up_to_eight():
    for n in range(2, 9):
        for g in enumerate_connected_graphs(n):
            t = build_reduced_split_tree(g)
            assert accessibility_graph(t) == g
            assert is_reduced(t)
