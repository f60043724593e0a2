"""Necklace recognition and minimum deletion on graphs free of the small obstructions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .graph import Graph, bits, blocks_and_cut_vertices, connected_components
from .obstructions import find_small_obstruction
from .thread import (
    NecklaceDecomposition,
    ThreadBlock,
    ThreadDecomposition,
    canonical_thread_decomposition,
    is_thread_graph,
    merge_decomposition,
    validate_thread_block,
)


class NotObnFree(ValueError):
    """The graph still contains one of the 21 small obstructions."""


@dataclass(frozen=True)
class Thread:
    decomposition: ThreadDecomposition
    kind = "thread"


@dataclass(frozen=True)
class Necklace:
    decomposition: NecklaceDecomposition
    kind = "necklace"


@dataclass(frozen=True)
class Other:
    kind = "other"


Classification = Union[Thread, Necklace, Other]


def _thread_without(g: Graph, v: int) -> bool:
    return is_thread_graph(g.delete_vertices(1 << v)[0])


def break_vertex(g: Graph) -> int | None:
    """Smallest v such that g - v is a thread graph."""
    for v in range(g.n):
        if _thread_without(g, v):
            return v
    return None


def classify_component(g: Graph) -> Classification:
    """Thread, Necklace (with a certificate) or Other for a connected graph."""
    if g.n == 1:
        return Thread(ThreadDecomposition((0,), ()))
    if is_thread_graph(g):
        return Thread(canonical_thread_decomposition(g))
    v = break_vertex(g)
    if v is None:
        return Other()
    cert = _necklace_certificate(g, v)
    return Necklace(cert) if cert is not None else Other()


def _necklace_certificate(g: Graph, v: int) -> NecklaceDecomposition | None:
    rest, old = g.delete_vertices(1 << v)
    main = max(connected_components(rest), key=lambda c: (c.bit_count(), -c))
    cand = 1 << v
    cut = blocks_and_cut_vertices(rest).cut_vertices & main
    for i in bits(cut):
        cand |= 1 << old[i]
    cand |= g.adj[v]
    anchors = 1 << v
    for u in bits(cand & ~(1 << v)):
        if _thread_without(g, u):
            anchors |= 1 << u
    cycle = _induced_cycle_order(g, anchors, v)
    if cycle is None:
        return None
    h = len(cycle)
    pos = {a: i for i, a in enumerate(cycle)}
    members: list[list[int]] = [[] for _ in range(h)]
    for comp in connected_components(g, g.full & ~anchors):
        touch = [pos[a] for a in bits(_neighbourhood(g, comp) & anchors)]
        if len(touch) == 1:
            if comp.bit_count() != 1:
                return None
            i = (touch[0] - 1) % h  # pendant: the block that ends at this anchor
        elif len(touch) == 2:
            a, b = sorted(touch)
            if b == a + 1:
                i = a
            elif a == 0 and b == h - 1:
                i = h - 1
            else:
                return None
        else:
            return None
        members[i].extend(bits(comp))
    blocks = []
    for i in range(h):
        b = _order_block(g, cycle[i], cycle[(i + 1) % h], sorted(members[i]))
        if b is None:
            return None
        blocks.append(b)
    d = NecklaceDecomposition(tuple(cycle), tuple(blocks))
    try:
        if merge_decomposition(d, g.n) != g or not d.is_canonical():
            return None
    except ValueError:
        return None
    return d


def _neighbourhood(g: Graph, s: int) -> int:
    out = 0
    for u in bits(s):
        out |= g.adj[u]
    return out & ~s


def _induced_cycle_order(g: Graph, anchors: int, start: int) -> list[int] | None:
    h = anchors.bit_count()
    if h < 3:
        return None
    for a in bits(anchors):
        if (g.adj[a] & anchors).bit_count() != 2:
            return None
    nbrs = list(bits(g.adj[start] & anchors))
    cycle = [start, min(nbrs)]
    while len(cycle) < h:
        cur, prev = cycle[-1], cycle[-2]
        nxt = [u for u in bits(g.adj[cur] & anchors) if u != prev]
        if len(nxt) != 1 or nxt[0] == start:
            return None
        cycle.append(nxt[0])
    if not g.has_edge(cycle[-1], start):
        return None
    return cycle


def _order_block(g: Graph, x: int, y: int, inner: list[int]) -> ThreadBlock | None:
    """Order a block's inner vertices greedily; labels follow from adjacency to x and y."""
    lab = {}
    for u in inner:
        s = ("L" if g.has_edge(u, x) else "") + ("R" if g.has_edge(u, y) else "")
        if not s:
            return None
        lab[u] = s
    remaining = list(inner)
    order = [x]
    while remaining:
        for u in remaining:
            ok = all(
                g.has_edge(u, w) == ("R" in lab[u] and "L" in lab[w])
                for w in remaining
                if w != u
            )
            if ok:
                order.append(u)
                remaining.remove(u)
                break
        else:
            return None
    order.append(y)
    lab[x] = "R"
    lab[y] = "L"
    b = ThreadBlock.from_mapping(order, lab)
    return b if validate_thread_block(b, canonical=True, graph=g) else None


def min_deletion_obn_free(g: Graph) -> frozenset[int]:
    """Minimum deletion set of a graph with no small obstruction: one vertex per necklace component."""
    if find_small_obstruction(g) is not None:
        raise NotObnFree("graph contains a small obstruction")
    return _min_deletion_unchecked(g)


def _min_deletion_unchecked(g: Graph) -> frozenset[int]:
    out = set()
    for comp in connected_components(g):
        sub, old = g.induced_subgraph(comp)
        if is_thread_graph(sub):
            continue
        v = break_vertex(sub)
        if v is None:
            raise AssertionError("internal error: obstruction-free component without a break vertex")
        out.add(old[v])
    return frozenset(out)


def classification_to_json(c: Classification, old_of: list[int] | None = None) -> dict:
    if isinstance(c, Other):
        return {"kind": "other"}
    d = c.decomposition
    if old_of is not None:
        d = d.relabel(old_of)
    return {"kind": c.kind, "decomposition": d.to_json()}


def classify_graph(g: Graph) -> list[tuple[list[int], Classification]]:
    """Classify every component; each entry carries the component's host vertex list."""
    out = []
    for comp in connected_components(g):
        sub, old = g.induced_subgraph(comp)
        out.append((old, classify_component(sub)))
    return out

