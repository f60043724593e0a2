import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from lrw1.generators import gen_planted, gen_thread_graph
from lrw1.graph import Graph, cycle_graph, gem, house
from lrw1.oracle import min_deletion_set_bruteforce
from lrw1.solver import Instance, certify, decide, solve_branching, trace_to_json


def test_instance_rejects_negative_budget():
    with pytest.raises(ValueError):
        Instance(house(), -1)


def test_thread_graph_needs_nothing():
    g, _ = gen_thread_graph(4, (2, 5), seed=0)
    sol = solve_branching(Instance(g, 0))
    assert sol is not None and sol.deletion_set == frozenset()


def test_house_needs_one():
    sol = solve_branching(Instance(house(), 1))
    assert sol is not None and len(sol) == 1 and certify(house(), sol.deletion_set)


def test_two_gems_need_two():
    g = gem().disjoint_union(gem())
    assert solve_branching(Instance(g, 1)) is None
    assert len(solve_branching(Instance(g, 2))) == 2


def test_cycle_examples():
    assert decide(Instance(cycle_graph(9), 1))[0]
    assert not decide(Instance(cycle_graph(9).disjoint_union(cycle_graph(9)), 1))[0]
    assert decide(Instance(Graph.empty(0), 0))[0]


@given(g=graphs(max_n=10), k=st.integers(0, 3))
def test_matches_bruteforce(g, k):
    sol = solve_branching(Instance(g, k))
    want = min_deletion_set_bruteforce(g, k)
    assert (sol is None) == (want is None)
    if sol is not None:
        assert len(sol) == len(want)
        assert certify(g, sol.deletion_set)


@given(seed=st.integers(0, 10**6), base=st.sampled_from(["thread", "necklace"]))
def test_planted_budget_is_enough(seed, base):
    inst = gen_planted(base, 2, 0.4, seed, size=3)
    sol = solve_branching(inst)
    assert sol is not None and len(sol) <= inst.k and certify(inst.graph, sol.deletion_set)


def test_branching_trace():
    g = house().disjoint_union(cycle_graph(5))
    sol = solve_branching(Instance(g, 2))
    branches = [step for step in sol.branch_trace if step[0] != "obstruction-free"]
    assert len(branches) == 2
    for hit, v in branches:
        assert hit.vertices.bit_count() <= 8 and hit.vertices >> v & 1
    data = trace_to_json(sol)
    assert all(step["step"] in ("branch", "obstruction-free") for step in data)
    assert sol.nodes_expanded >= 3
