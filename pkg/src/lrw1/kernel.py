"""Polynomial kernel: sunflower compression, the modulator T and the reduction rules.

Vertex identity is carried by graph names, so T and traces survive the
dense relabelling done by every deletion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Union

from .graph import Graph, bits, connected_components
from .necklace import _min_deletion_unchecked
from .obstructions import DEFAULT_CAP, enumerate_obstruction_occurrences, find_small_obstruction
from .thread import canonical_thread_decomposition, is_thread_graph


class KernelInvariantError(AssertionError):
    """A bound guaranteed by the reduction rules was violated."""


def mu(k: int) -> int:
    """8 * 8! * (k+1)^8 + k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return 8 * math.factorial(8) * (k + 1) ** 8 + k


def sunflower_bound(k: int, d: int = 8) -> int:
    return math.factorial(d) * (k + 1) ** d


# -- thresholds ------------------------------------------------------------------

@dataclass(frozen=True)
class Thresholds:
    """Rule trigger sizes.  ``None`` means the formula in mu(k) for the current k."""

    block_size: int | None = None
    component_blocks: int | None = None
    isolated: int | None = None
    components: int | None = None
    sunflower: int | None = None
    name: str = "paper"

    def resolve(self, k: int) -> dict[str, int]:
        m = mu(k)
        return {
            "block_size": self.block_size if self.block_size is not None else (k + 2) * (m + 2) ** 2 + 1,
            "component_blocks": self.component_blocks if self.component_blocks is not None else 19 * (6 * m + 1),
            "isolated": self.isolated if self.isolated is not None else m * m * (k + 2) + 1,
            "components": self.components if self.components is not None else 2 * m,
            "sunflower": self.sunflower if self.sunflower is not None else sunflower_bound(k),
        }


PAPER = Thresholds()
# small enough that every structural rule fires on desk-scale graphs; safeness is checked against the oracle
TEST = Thresholds(block_size=6, component_blocks=10, isolated=3, components=None, sunflower=0, name="test")

CONTRACT_RUN = 9


# -- set families -------------------------------------------------------------------

@dataclass(frozen=True)
class SetFamily:
    universe: int
    sets: tuple[int, ...]  # bitmasks, duplicates removed, order kept

    @classmethod
    def of(cls, universe: int, sets: Iterable[Iterable[int] | int]) -> "SetFamily":
        seen: dict[int, None] = {}
        for s in sets:
            m = s if isinstance(s, int) else sum(1 << x for x in set(s))
            if m >> universe:
                raise ValueError("set element outside the universe")
            seen.setdefault(m, None)
        return cls(universe, tuple(seen))

    def __len__(self) -> int:
        return len(self.sets)

    def as_sets(self) -> list[frozenset[int]]:
        return [frozenset(bits(m)) for m in self.sets]


def find_sunflower(sets: list[tuple[int, int]], petals: int) -> list[int] | None:
    """Indices of ``petals`` sets forming a sunflower, by the Erdos-Rado recursion.

    ``sets`` holds (index, mask) pairs.  A greedy maximal disjoint subfamily
    either is large enough (empty core) or its union is small, so some
    element is frequent and we recurse on the sets containing it.
    """
    while True:
        chosen = []
        used = 0
        for i, m in sets:
            if m & used == 0:
                chosen.append(i)
                used |= m
                if len(chosen) == petals:
                    return chosen
        counts: dict[int, int] = {}
        for _, m in sets:
            for x in bits(m):
                counts[x] = counts.get(x, 0) + 1
        if not counts:
            return None
        x = max(counts, key=lambda e: (counts[e], -e))
        if counts[x] < petals:
            return None
        sets = [(i, m & ~(1 << x)) for i, m in sets if m >> x & 1]


def sunflower_compress(f: SetFamily, k: int, d: int = 8, bound: int | None = None) -> SetFamily:
    """Drop petals of (k+2)-sunflowers while the family is larger than ``bound``.

    Each dropped set belongs to a sunflower with k+2 petals, which keeps the
    minimal hitting sets of size at most k unchanged.  The default bound is
    d!(k+1)^d; a smaller bound (0 included) just compresses further.
    """
    if any(m.bit_count() > d for m in f.sets):
        raise ValueError(f"sets must have at most {d} elements")
    limit = sunflower_bound(k, d) if bound is None else bound
    sets = list(f.sets)
    while len(sets) > limit:
        flower = find_sunflower(list(enumerate(sets)), k + 2)
        if flower is None:
            break
        del sets[max(flower)]
    return SetFamily(f.universe, tuple(sets))


def minimal_hitting_sets(f: SetFamily, k: int) -> set[frozenset[int]]:
    """All inclusion-minimal hitting sets of size at most k (exhaustive)."""
    from itertools import combinations

    universe = 0
    for m in f.sets:
        universe |= m
    elems = list(bits(universe))
    out: set[frozenset[int]] = set()
    for size in range(k + 1):
        for combo in combinations(elems, size):
            x = sum(1 << e for e in combo)
            if not all(m & x for m in f.sets):
                continue
            if all(not all(m & (x & ~(1 << e)) for m in f.sets) for e in combo):
                out.add(frozenset(combo))
    return out


# -- kernel state and outcomes ---------------------------------------------------------

@dataclass(frozen=True)
class KernelState:
    graph: Graph  # always carries names
    k: int
    thresholds: Thresholds = PAPER
    T: frozenset[str] | None = None
    trace: tuple[tuple, ...] = ()
    cap: int = DEFAULT_CAP

    @classmethod
    def start(cls, g: Graph, k: int, thresholds: Thresholds = PAPER, cap: int = DEFAULT_CAP) -> "KernelState":
        if g.names is None:
            g = Graph(g.n, g.adj, tuple(str(v) for v in range(g.n)))
        return cls(g, k, thresholds, None, (), cap)

    def t_mask(self) -> int:
        if self.T is None:
            raise ValueError("T has not been computed")
        return sum(1 << v for v in range(self.graph.n) if self.graph.names[v] in self.T)

    def index_of(self, name: str) -> int:
        return self.graph.names.index(name)

    def limits(self) -> dict[str, int]:
        return self.thresholds.resolve(self.k)

    def with_step(self, step: tuple, **changes) -> "KernelState":
        return replace(self, trace=self.trace + (step,), **changes)


@dataclass(frozen=True)
class Reduced:
    state: KernelState

    @property
    def graph(self) -> Graph:
        return self.state.graph

    @property
    def k(self) -> int:
        return self.state.k


@dataclass(frozen=True)
class No:
    reason: str
    trace: tuple = ()


@dataclass(frozen=True)
class Unchanged:
    pass


KernelOutcome = Union[Reduced, No, Unchanged]
UNCHANGED = Unchanged()


def _delete(state: KernelState, mask: int) -> Graph:
    return state.graph.delete_vertices(mask)[0]


# -- Rule 1 -----------------------------------------------------------------------------

def rule_remove_thread_components(state: KernelState) -> KernelOutcome:
    g = state.graph
    drop = 0
    for comp in connected_components(g):
        sub, _ = g.induced_subgraph(comp)
        if is_thread_graph(sub):
            drop |= comp
    if not drop:
        return UNCHANGED
    names = sorted(g.names[v] for v in bits(drop))
    return Reduced(state.with_step(("rule1", names), graph=_delete(state, drop), T=None))


# -- the modulator T ------------------------------------------------------------------------

def occurrence_family(g: Graph, cap: int = DEFAULT_CAP) -> SetFamily:
    return SetFamily.of(g.n, [h.vertices for h in enumerate_obstruction_occurrences(g, cap)])


def compute_T(state: KernelState) -> Union[No, frozenset[str]]:
    """The modulator T, or No when the instance is certainly a no-instance."""
    g = state.graph
    f = occurrence_family(g, state.cap)
    fp = sunflower_compress(f, state.k, bound=state.limits()["sunflower"])
    t_prime = 0
    for m in fp.sets:
        t_prime |= m
    rest = g.full & ~t_prime
    if find_small_obstruction(g, within=rest) is not None:
        # an occurrence missed by T' means F has no hitting set of size <= k
        return No("an obstruction avoids every set kept by the sunflower compression", state.trace)
    sub, old = g.induced_subgraph(rest)
    y = _min_deletion_unchecked(sub)
    if len(y) >= state.k + 1:
        return No(f"the obstruction-free part needs {len(y)} > k deletions", state.trace)
    t = t_prime
    for v in y:
        t |= 1 << old[v]
    return frozenset(g.names[v] for v in bits(t))


# -- Rule 2 ------------------------------------------------------------------------------------

def single_intersection_vertices(g: Graph, t_mask: int, cap: int = DEFAULT_CAP) -> int:
    u = 0
    for h in enumerate_obstruction_occurrences(g, cap):
        inter = h.vertices & t_mask
        if inter and inter & (inter - 1) == 0:
            u |= inter
    return u


def rule_one_vertex(state: KernelState) -> KernelOutcome:
    t = state.t_mask()
    u = single_intersection_vertices(state.graph, t, state.cap)
    if not u:
        return UNCHANGED
    if u.bit_count() > state.k:
        return No(f"{u.bit_count()} vertices of T are forced but k={state.k}", state.trace)
    names = frozenset(state.graph.names[v] for v in bits(u))
    return Reduced(state.with_step(
        ("rule2", sorted(names)),
        graph=_delete(state, u),
        k=state.k - u.bit_count(),
        T=state.T - names,
    ))


# -- structural rules on G - T -------------------------------------------------------------------

def _components_outside_t(state: KernelState) -> tuple[Graph, list[int], list[int]]:
    g = state.graph
    rest = g.full & ~state.t_mask()
    sub, old = g.induced_subgraph(rest)
    return sub, old, connected_components(sub)


def _first(seq: Iterable[int], count: int) -> list[int]:
    out = []
    for v in seq:
        if len(out) == count:
            break
        out.append(v)
    return out


def find_irrelevant_in_big_block(state: KernelState) -> int | None:
    """An unmarked non-anchor vertex of a big thread block of G - T (host index), or None."""
    g = state.graph
    lim = state.limits()
    if lim["block_size"] > g.n:
        return None
    t_list = list(bits(state.t_mask()))
    sub, old, comps = _components_outside_t(state)
    keep = state.k + 2
    for comp in comps:
        if comp.bit_count() < lim["block_size"]:
            continue
        csub, cold = sub.induced_subgraph(comp)
        d = canonical_thread_decomposition(csub)
        for b in d.blocks:
            if len(b.order) < lim["block_size"]:
                continue
            host = [old[cold[v]] for v in b.order]
            inner = list(zip(host[1:-1], b.labels[1:-1]))
            marked: set[int] = set()
            for t in t_list:
                nb = [v for v, _ in inner if g.has_edge(t, v)]
                lab = dict(inner)
                marked.update(_first((v for v in nb if "R" in lab[v]), keep))
                marked.update(_first((v for v in reversed(nb) if "L" in lab[v]), keep))
            for i, t1 in enumerate(t_list):
                for t2 in t_list[i + 1:]:
                    common = [v for v in host if g.has_edge(t1, v) and g.has_edge(t2, v)]
                    marked.update(common[:keep])
            marked.update(_first((v for v, l in inner if "R" in l), keep))
            marked.update(_first((v for v, l in reversed(inner) if "L" in l), keep))
            free = sorted(v for v, _ in inner if v not in marked)
            if free:
                return free[0]
    return None


def _blocks_touched(g: Graph, t: int, host_blocks: list[list[int]]) -> list[int]:
    return [i for i, hb in enumerate(host_blocks) if any(g.has_edge(t, v) for v in hb)]


def contract_long_component(state: KernelState) -> KernelOutcome:
    """Replace a thread block deep inside a long untouched stretch by one vertex."""
    g = state.graph
    lim = state.limits()
    if lim["component_blocks"] > g.n:
        return UNCHANGED
    t_list = list(bits(state.t_mask()))
    sub, old, comps = _components_outside_t(state)
    for comp in comps:
        if comp.bit_count() < 2:
            continue
        csub, cold = sub.induced_subgraph(comp)
        d = canonical_thread_decomposition(csub)
        nblocks = len(d.blocks)
        if nblocks < lim["component_blocks"]:
            continue
        host_blocks = [[old[cold[v]] for v in b.order] for b in d.blocks]
        marked = [False] * nblocks
        for t in t_list:
            touched = _blocks_touched(g, t, host_blocks)
            if len(touched) > 6:
                raise KernelInvariantError(f"T vertex {g.names[t]} has neighbours in {len(touched)} blocks of one component")
            for i in touched:
                marked[i] = True
        # blocks are B_1..B_t; a run B_{j+1}..B_{j+m} with j >= 1, m >= 9, all unmarked
        run = 0
        for pos in range(1, nblocks):
            run = run + 1 if not marked[pos] else 0
            if run >= CONTRACT_RUN:
                start = pos - run + 1
                target = start + 4  # B_{j+5}
                return _contract_block(state, host_blocks[target])
    return UNCHANGED


def _contract_block(state: KernelState, block: list[int]) -> Reduced:
    g = state.graph
    x, y = block[0], block[-1]
    bmask = sum(1 << v for v in block)
    nbrs = (g.adj[x] | g.adj[y]) & ~bmask
    rest, old = g.delete_vertices(bmask)
    index = {v: i for i, v in enumerate(old)}
    n = rest.n
    adj = list(rest.adj) + [0]
    for v in bits(nbrs):
        i = index[v]
        adj[i] |= 1 << n
        adj[n] |= 1 << i
    zname = f"z({g.names[x]},{g.names[y]})"
    names = rest.names + (zname,)
    new = Graph(n + 1, tuple(adj), names)
    removed = sorted(g.names[v] for v in block)
    return Reduced(state.with_step(("contract", removed, zname), graph=new, T=None))


def rule_component_counts(state: KernelState) -> Union[int, No, Unchanged]:
    """An irrelevant isolated vertex of G - T (host index), or Unchanged."""
    g = state.graph
    lim = state.limits()
    t_mask = state.t_mask()
    t_list = list(bits(t_mask))
    sub, old, comps = _components_outside_t(state)
    nontrivial = sum(1 for c in comps if c.bit_count() >= 2)
    if nontrivial > 2 * len(t_list) or nontrivial > lim["components"]:
        raise KernelInvariantError(f"{nontrivial} non-trivial components outside T with |T|={len(t_list)}")
    isolated = [old[c.bit_length() - 1] for c in comps if c.bit_count() == 1]
    if len(isolated) < lim["isolated"]:
        return UNCHANGED
    keep = state.k + 2
    marked: set[int] = set()
    for i, t1 in enumerate(t_list):
        for t2 in t_list[i + 1:]:
            common = [v for v in isolated if g.has_edge(t1, v) and g.has_edge(t2, v)]
            marked.update(common[:keep])
    free = [v for v in isolated if v not in marked]
    return free[0] if free else UNCHANGED


# -- the pipeline ---------------------------------------------------------------------------------

def kernelize(g: Graph, k: int, thresholds: Thresholds = PAPER, cap: int = DEFAULT_CAP) -> Union[Reduced, No]:
    """Apply the rules to a fixpoint; returns No or the reduced instance (possibly unchanged)."""
    if k < 0:
        return No("negative budget")
    state = KernelState.start(g, k, thresholds, cap)
    while True:
        out = rule_remove_thread_components(state)
        if isinstance(out, Reduced):
            state = out.state
        if state.graph.n == 0:
            return Reduced(state)
        if state.T is None:
            t = compute_T(state)
            if isinstance(t, No):
                return No(t.reason, state.trace + (("compute_T", "no"),))
            state = state.with_step(("compute_T", len(t)), T=t)
        out = rule_one_vertex(state)
        if isinstance(out, No):
            return No(out.reason, state.trace + (("rule2", "no"),))
        if isinstance(out, Reduced):
            state = out.state
            continue
        w = find_irrelevant_in_big_block(state)
        if w is not None:
            state = _drop_irrelevant(state, w, "irrelevant_block")
            continue
        out = contract_long_component(state)
        if isinstance(out, Reduced):
            state = out.state
            continue
        w = rule_component_counts(state)
        if isinstance(w, int):
            state = _drop_irrelevant(state, w, "irrelevant_isolated")
            continue
        return Reduced(state)


def _drop_irrelevant(state: KernelState, w: int, rule: str) -> KernelState:
    name = state.graph.names[w]
    return state.with_step((rule, name), graph=_delete(state, 1 << w), T=None)


def rules_fired(trace: Iterable[tuple]) -> set[str]:
    return {step[0] for step in trace if step[0] != "compute_T"}


def structural_rules_unreachable(n: int, k: int) -> bool:
    """With the proven thresholds no structural rule can trigger on n vertices."""
    lim = PAPER.resolve(k)
    return min(lim["block_size"], lim["component_blocks"], lim["isolated"]) > n
