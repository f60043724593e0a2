import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from lrw1.generators import gen_necklace, gen_thread_graph, random_graph
from lrw1.graph import Graph, complete_graph, cycle_graph, gem, house, mask_of, path_graph
from lrw1.kernel import (
    PAPER,
    TEST,
    KernelInvariantError,
    KernelState,
    No,
    Reduced,
    SetFamily,
    Thresholds,
    Unchanged,
    compute_T,
    contract_long_component,
    find_irrelevant_in_big_block,
    find_sunflower,
    kernelize,
    minimal_hitting_sets,
    mu,
    occurrence_family,
    rule_component_counts,
    rule_one_vertex,
    rule_remove_thread_components,
    rules_fired,
    structural_rules_unreachable,
    sunflower_bound,
    sunflower_compress,
)
from lrw1.obstructions import enumerate_obstruction_occurrences
from lrw1.oracle import min_deletion_set_bruteforce
from lrw1.thread import is_thread_graph


def hitting_sets_exhaustive(sets, k):
    """Inclusion-minimal hitting sets of size <= k, by checking every subset of the union."""
    universe = sorted(set().union(*sets)) if sets else []
    hitting = [frozenset(c) for r in range(k + 1) for c in itertools.combinations(universe, r)
               if all(set(c) & s for s in sets)]
    return {h for h in hitting if not any(o < h for o in hitting)}


def is_sunflower(sets):
    core = frozenset.intersection(*sets)
    return all(a & b == core for a, b in itertools.combinations(sets, 2))


def yes(g, k):
    return min_deletion_set_bruteforce(g, k) is not None


def outcome_yes(out):
    return isinstance(out, Reduced) and yes(out.graph, out.k)


def state(g, k, thresholds=TEST, t=None):
    s = KernelState.start(g, k, thresholds)
    if t is not None:
        s = KernelState(s.graph, k, thresholds, frozenset(str(v) for v in t))
    return s


# -- arithmetic ---------------------------------------------------------------------------

def test_mu_values():
    assert mu(0) == 8 * math.factorial(8) == 322560
    assert mu(1) == 82_575_361
    assert all(mu(k + 1) > mu(k) for k in range(10))
    with pytest.raises(ValueError):
        mu(-1)


def test_mu_is_exact_at_large_k():
    assert mu(100) == 8 * 40320 * 101 ** 8 + 100
    assert PAPER.resolve(5)["block_size"] == 7 * (mu(5) + 2) ** 2 + 1


def test_proven_thresholds_unreachable_at_desk_scale():
    for k in range(4):
        lim = PAPER.resolve(k)
        assert min(lim["block_size"], lim["component_blocks"], lim["isolated"]) >= mu(0)
        assert structural_rules_unreachable(322559, k)
    assert not structural_rules_unreachable(10**40, 0)


# -- rule 1 -----------------------------------------------------------------------------------

def test_rule1_drops_thread_components():
    g = cycle_graph(9).disjoint_union(complete_graph(5))
    out = rule_remove_thread_components(state(g, 1))
    assert isinstance(out, Reduced) and out.graph.n == 9 and out.graph.names == tuple(str(v) for v in range(9))


def test_rule1_thread_graph_becomes_empty():
    g, _ = gen_thread_graph(4, (2, 5), seed=3)
    out = rule_remove_thread_components(state(g, 0))
    assert out.graph.n == 0


def test_rule1_unchanged():
    assert isinstance(rule_remove_thread_components(state(cycle_graph(9), 1)), Unchanged)


# -- sunflowers ---------------------------------------------------------------------------------

def test_sunflower_small_family_kept():
    f = SetFamily.of(6, [{0, 1}, {2, 3}, {1, 2}])
    assert sunflower_compress(f, 1, d=2) == f


def test_sunflower_core_example():
    f = SetFamily.of(4, [{0, 1}, {0, 2}, {0, 3}])
    assert len(sunflower_compress(f, 1, d=2)) == 3  # 3 <= 2!(k+1)^2 = 8
    g = sunflower_compress(f, 1, d=2, bound=0)
    assert len(g) == 2
    assert minimal_hitting_sets(g, 1) == minimal_hitting_sets(f, 1) == {frozenset({0})}


def test_sunflower_rejects_large_sets():
    with pytest.raises(ValueError):
        sunflower_compress(SetFamily.of(4, [{0, 1, 2}]), 1, d=2)


def test_set_family_dedupes():
    assert len(SetFamily.of(3, [{0, 1}, {1, 0}, 0b11])) == 1
    with pytest.raises(ValueError):
        SetFamily.of(2, [{0, 5}])


@st.composite
def families(draw, max_d=4, max_sets=40, universe=10):
    d = draw(st.integers(1, max_d))
    sets = draw(st.lists(st.sets(st.integers(0, universe - 1), min_size=1, max_size=d), max_size=max_sets))
    return d, SetFamily.of(universe, sets)


@given(fam=families(), k=st.integers(0, 3), bound=st.sampled_from([None, 0, 3]))
def test_sunflower_preserves_minimal_hitting_sets(fam, k, bound):
    d, f = fam
    g = sunflower_compress(f, k, d=d, bound=bound)
    assert set(g.sets) <= set(f.sets)
    assert hitting_sets_exhaustive(g.as_sets(), k) == hitting_sets_exhaustive(f.as_sets(), k)
    if bound is None:
        assert len(g) <= sunflower_bound(k, d)


@given(fam=families(max_d=3, max_sets=60, universe=8), k=st.integers(0, 2))
def test_erdos_rado_guarantee(fam, k):
    d, f = fam
    found = find_sunflower(list(enumerate(f.sets)), k + 2)
    if len(f) > sunflower_bound(k, d):
        assert found is not None
    if found is not None:
        assert len(found) == k + 2 and is_sunflower([frozenset(f.as_sets()[i]) for i in found])


@given(fam=families(max_sets=15), k=st.integers(0, 2))
def test_minimal_hitting_sets_helper(fam, k):
    _, f = fam
    assert minimal_hitting_sets(f, k) == hitting_sets_exhaustive(f.as_sets(), k)


# -- the modulator T ----------------------------------------------------------------------------------

def test_T_of_a_necklace_is_one_vertex():
    t = compute_T(state(cycle_graph(9), 1, PAPER))
    assert t == frozenset({"0"})


def test_T_of_two_gems():
    t = compute_T(state(gem().disjoint_union(gem()), 1, PAPER))
    assert len(t) == 10


def test_T_says_no_for_two_long_cycles():
    assert isinstance(compute_T(state(cycle_graph(9).disjoint_union(cycle_graph(9)), 1, PAPER)), No)


@given(g=graphs(min_n=5, max_n=10), k=st.integers(0, 3), th=st.sampled_from([PAPER, TEST]))
def test_T_properties(g, k, th):
    s = state(g, k, th)
    t = compute_T(s)
    if isinstance(t, No):
        assert not yes(g, k)
        return
    s = KernelState(s.graph, k, th, t)
    tm = s.t_mask()
    assert is_thread_graph(g.delete_vertices(tm)[0])
    assert len(t) <= mu(k)
    # minimal hitting sets of the occurrences in G and of those inside G[T] agree
    inside = [h.vertices for h in enumerate_obstruction_occurrences(g) if h.vertices & ~tm == 0]
    full = occurrence_family(g).as_sets()
    assert hitting_sets_exhaustive(full, k) == hitting_sets_exhaustive([frozenset(b for b in range(g.n) if m >> b & 1) for m in inside], k)


# -- rule 2 ---------------------------------------------------------------------------------------

def test_rule2_house_with_forced_T():
    out = rule_one_vertex(state(house(), 1, t=[0]))
    assert isinstance(out, Reduced) and out.k == 0 and out.graph.n == 4
    assert out.state.T == frozenset()


def test_rule2_unchanged_when_T_covers_occurrences():
    assert isinstance(rule_one_vertex(state(house(), 1, t=range(5))), Unchanged)


def test_rule2_no_when_too_many_forced():
    g = house().disjoint_union(house())
    assert isinstance(rule_one_vertex(state(g, 1, t=[0, 5])), No)


# -- structural rules ----------------------------------------------------------------------------------

def test_irrelevant_vertex_in_big_block():
    g = complete_graph(8)  # a K_2 block widened by six LR vertices
    s = state(g, 0, t=[])
    w = find_irrelevant_in_big_block(s)
    assert w is not None and w not in (0, 7)
    assert yes(g, 0) == yes(g.delete_vertices(1 << w)[0], 0)
    assert find_irrelevant_in_big_block(state(g, 0, PAPER, t=[])) is None


def test_irrelevant_vertex_with_modulator():
    rng = random.Random(2)
    fired = 0
    for seed in range(60):
        g, _ = gen_thread_graph(1, (9, 10), seed)
        n = g.n
        extra = [(n, v) for v in range(n) if rng.random() < 0.3] + [(n, n + 1), (n + 1, rng.randrange(n))]
        h = Graph.from_edges(n + 2, g.edges() + extra)
        for k in (1, 2):
            out = compute_T(state(h, k))
            if isinstance(out, No):
                continue
            s = KernelState(state(h, k).graph, k, TEST, out)
            w = find_irrelevant_in_big_block(s)
            if w is None:
                continue
            assert str(w) not in out
            assert yes(h, k) == yes(h.delete_vertices(1 << w)[0], k)
            fired += 1
    assert fired > 0


def test_contract_chain():
    g = path_graph(15)  # 14 blocks, each a K_2
    th = Thresholds(block_size=6, component_blocks=12, isolated=3, sunflower=0, name="test")
    out = contract_long_component(state(g, 1, th, t=[]))
    assert isinstance(out, Reduced)
    assert out.graph.n == 14 and is_thread_graph(out.graph)
    assert yes(g, 1) == yes(out.graph, 1)
    assert isinstance(contract_long_component(state(g, 1, PAPER, t=[])), Unchanged)


def test_contract_long_cycle():
    g = cycle_graph(13)
    out = kernelize(g, 1, TEST)
    assert "contract" in rules_fired(out.state.trace)


def test_seven_block_neighbour_is_an_internal_error():
    g = path_graph(15)
    t = 15
    edges = g.edges() + [(t, v) for v in (0, 2, 4, 6, 8, 10, 12)]
    h = Graph.from_edges(16, edges)
    with pytest.raises(KernelInvariantError):
        contract_long_component(state(h, 1, t=[t]))


def test_isolated_vertices_rule():
    # T = {t1, t2} with five common neighbours that are isolated outside T
    g = Graph.from_edges(7, [(t, s) for t in (0, 1) for s in range(2, 7)])
    s = state(g, 1, t=[0, 1])
    w = rule_component_counts(s)
    assert isinstance(w, int) and w not in (0, 1)
    assert yes(g, 1) == yes(g.delete_vertices(1 << w)[0], 1)
    assert isinstance(rule_component_counts(state(g, 1, PAPER, t=[0, 1])), Unchanged)


def test_component_bound_is_checked():
    g = path_graph(2).disjoint_union(path_graph(2)).disjoint_union(path_graph(2)).disjoint_union(Graph.empty(1))
    edges = g.edges() + [(6, 0), (6, 2), (6, 4)]
    h = Graph.from_edges(7, edges)
    with pytest.raises(KernelInvariantError):
        rule_component_counts(state(h, 1, t=[6]))


# -- the pipeline -----------------------------------------------------------------------------------------

def test_kernelize_thread_graph():
    g, _ = gen_thread_graph(3, (2, 4), seed=0)
    out = kernelize(g, 2)
    assert isinstance(out, Reduced) and out.graph.n == 0 and out.k == 2


def test_kernelize_two_long_cycles():
    assert isinstance(kernelize(cycle_graph(9).disjoint_union(cycle_graph(9)), 1), No)


def test_kernelize_negative_budget():
    assert isinstance(kernelize(path_graph(2), -1), No)


@given(g=graphs(min_n=5, max_n=11), k=st.integers(0, 3), th=st.sampled_from([PAPER, TEST]))
def test_kernelize_preserves_answer(g, k, th):
    out = kernelize(g, k, th)
    assert outcome_yes(out) == yes(g, k)
    if isinstance(out, Reduced):
        assert out.k <= k
        if th is PAPER:
            assert rules_fired(out.state.trace) <= {"rule1", "rule2"}


def test_kernelize_on_necklaces():
    for seed in range(10):
        g, _ = gen_necklace(9, (2, 3), seed)
        g = g.disjoint_union(house())
        if g.n > 16:
            continue
        for k in (1, 2):
            assert outcome_yes(kernelize(g, k, TEST)) == yes(g, k)
