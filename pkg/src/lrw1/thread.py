"""Thread blocks, thread and necklace decompositions, and thread-graph recognition."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, bits, blocks_and_cut_vertices, connected_components, mask_of
from .splittree import (
    GraphLabelledTree,
    build_reduced_split_tree,
    build_split_tree_if_dh,
    internal_tree_is_path,
    is_degenerate,
    node_kind,
    star_center,
)

LABELS = ("L", "R", "LR")


class NotThreadGraph(ValueError):
    pass


class NotMergeable(ValueError):
    pass


@dataclass(frozen=True)
class ThreadBlock:
    """An ordering of vertices with an L/R/LR label per position."""

    order: tuple[int, ...]
    labels: tuple[str, ...]

    @classmethod
    def from_mapping(cls, order: Sequence[int], labels: dict[int, str]) -> "ThreadBlock":
        return cls(tuple(order), tuple(labels[v] for v in order))

    @property
    def first(self) -> int:
        return self.order[0]

    @property
    def last(self) -> int:
        return self.order[-1]

    @property
    def vertex_mask(self) -> int:
        return mask_of(self.order)

    def label(self, v: int) -> str:
        return self.labels[self.order.index(v)]

    def label_map(self) -> dict[int, str]:
        return dict(zip(self.order, self.labels))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i, v in enumerate(self.order):
            if "R" not in self.labels[i]:
                continue
            for j in range(i + 1, len(self.order)):
                if "L" in self.labels[j]:
                    out.append((v, self.order[j]))
        return out

    def to_json(self) -> dict:
        return {"order": list(self.order), "labels": {str(v): l for v, l in zip(self.order, self.labels)}}

    @classmethod
    def from_json(cls, data: dict) -> "ThreadBlock":
        return cls.from_mapping(data["order"], {int(k): v for k, v in data["labels"].items()})


def validate_thread_block(b: ThreadBlock, canonical: bool = False, graph: Graph | None = None) -> bool:
    """Check the thread block conditions; with ``graph``, also check its induced edges."""
    size = len(b.order)
    if size < 2 or len(b.labels) != size or len(set(b.order)) != size:
        return False
    if any(l not in LABELS for l in b.labels):
        return False
    if b.labels[0] != "R" or b.labels[-1] != "L":
        return False
    if canonical and size != 2 and b.labels[1] == "L":
        return False
    if graph is not None:
        if any(v < 0 or v >= graph.n for v in b.order):
            return False
        for i, v in enumerate(b.order):
            for j in range(i + 1, size):
                w = b.order[j]
                want = "R" in b.labels[i] and "L" in b.labels[j]
                if graph.has_edge(v, w) != want:
                    return False
    return True


@dataclass(frozen=True)
class ThreadDecomposition:
    """Anchors along a directed path; block i spans anchors i and i+1."""

    anchors: tuple[int, ...]
    blocks: tuple[ThreadBlock, ...]

    cyclic = False

    def arcs(self) -> list[tuple[int, int]]:
        h = len(self.anchors)
        if self.cyclic:
            return [(self.anchors[i], self.anchors[(i + 1) % h]) for i in range(h)]
        return [(self.anchors[i], self.anchors[i + 1]) for i in range(h - 1)]

    def vertices(self) -> int:
        m = mask_of(self.anchors)
        for b in self.blocks:
            m |= b.vertex_mask
        return m

    def is_canonical(self) -> bool:
        return all(validate_thread_block(b, canonical=True) for b in self.blocks)

    def to_json(self) -> dict:
        return {"anchors": list(self.anchors), "blocks": [b.to_json() for b in self.blocks]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict):
        return cls(tuple(data["anchors"]), tuple(ThreadBlock.from_json(b) for b in data["blocks"]))

    def relabel(self, old_of: Sequence[int]):
        """Map vertex ids through ``old_of`` (e.g. back to a host graph's indices)."""
        blocks = tuple(ThreadBlock(tuple(old_of[v] for v in b.order), b.labels) for b in self.blocks)
        return type(self)(tuple(old_of[v] for v in self.anchors), blocks)


@dataclass(frozen=True)
class NecklaceDecomposition(ThreadDecomposition):
    """Anchors along a directed cycle; the last block wraps back to the first anchor."""

    cyclic = True


def merge(anchors: Sequence[int], blocks: Sequence[ThreadBlock], cyclic: bool = False, n: int | None = None) -> Graph:
    """Glue blocks along the anchor path (or cycle) into one graph on vertices 0..n-1."""
    anchors = tuple(anchors)
    h = len(anchors)
    arcs = [(anchors[i], anchors[(i + 1) % h]) for i in range(h if cyclic else h - 1)]
    if cyclic and h < 3:
        raise NotMergeable("a cyclic decomposition needs at least 3 anchors")
    if len(set(anchors)) != h:
        raise NotMergeable("anchors repeat")
    if len(blocks) != len(arcs):
        raise NotMergeable(f"expected {len(arcs)} blocks, got {len(blocks)}")
    for (x, y), b in zip(arcs, blocks):
        if not validate_thread_block(b):
            raise NotMergeable(f"block {b.order} violates the thread block conditions")
        if b.first != x or b.last != y:
            raise NotMergeable(f"block {b.order} does not run from {x} to {y}")
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            shared = blocks[i].vertex_mask & blocks[j].vertex_mask
            if shared != mask_of(arcs[i]) & mask_of(arcs[j]):
                raise NotMergeable(f"blocks {i} and {j} overlap outside their shared anchors")
    if h == 1 and not blocks:
        verts = [anchors[0]]
    else:
        verts = [v for b in blocks for v in b.order]
    size = max(verts) + 1 if n is None else n
    if verts and max(verts) >= size:
        raise NotMergeable("vertex index exceeds n")
    edges = [e for b in blocks for e in b.edges()]
    return Graph.from_edges(size, edges)


def merge_decomposition(d: ThreadDecomposition, n: int | None = None) -> Graph:
    return merge(d.anchors, d.blocks, cyclic=d.cyclic, n=n)


# -- recognition -----------------------------------------------------------------

def _prunes_to_a_vertex(g: Graph) -> bool:
    """Pendant/twin pruning on bitmasks; succeeds iff the connected graph is distance-hereditary."""
    alive = g.full
    adj = list(g.adj)
    while alive & (alive - 1):
        progress = False
        open_seen: dict[int, int] = {}
        closed_seen: dict[int, int] = {}
        for u in bits(alive):
            row = adj[u] & alive
            if row.bit_count() <= 1 or row in open_seen or (row | (1 << u)) in closed_seen:
                alive &= ~(1 << u)
                progress = True
                continue
            open_seen[row] = u
            closed_seen[row | (1 << u)] = u
        if not progress:
            return False
    return True


def _component_is_thread(g: Graph) -> bool:
    if g.n <= 2:
        return True
    if not _prunes_to_a_vertex(g):
        return False
    t = build_split_tree_if_dh(g)
    if t is None:
        return False
    if not all(is_degenerate(node.label) for node in t.nodes.values()):
        return False
    return internal_tree_is_path(t) is not None


def is_thread_graph(g: Graph) -> bool:
    """Linear rankwidth at most one, decided component by component via split trees."""
    for comp in connected_components(g):
        sub, _ = g.induced_subgraph(comp)
        if not _component_is_thread(sub):
            return False
    return True


# -- canonical decomposition --------------------------------------------------------

def canonical_thread_decomposition(g: Graph) -> ThreadDecomposition:
    """Canonical thread decomposition of a connected thread graph with >= 2 vertices."""
    if g.n < 2 or len(connected_components(g)) != 1:
        raise NotThreadGraph("expected a connected graph with at least 2 vertices")
    if g.n == 2:
        return ThreadDecomposition((0, 1), (ThreadBlock((0, 1), ("R", "L")),))
    if not _component_is_thread(g):
        raise NotThreadGraph("graph has linear rankwidth greater than one")
    t = build_reduced_split_tree(g)
    d = _decompose_from_tree(g, t)
    if merge_decomposition(d, g.n) != g or not d.is_canonical():
        raise AssertionError("internal error: decomposition does not reproduce the graph")
    return d


def _decompose_from_tree(g: Graph, t: GraphLabelledTree) -> ThreadDecomposition:
    n = g.n
    spine = internal_tree_is_path(t)
    assert spine is not None
    if min(t.leaves_at(spine[-1])) < min(t.leaves_at(spine[0])):
        spine = spine[::-1]
    m = len(spine)
    pos = {nid: i for i, nid in enumerate(spine)}

    # star nodes whose centre marker leads to a leaf
    centres: list[tuple[int, int]] = []  # (spine position, leaf)
    orient: dict[int, str] = {}  # spine position -> "L", "R" or "LR" for ordinary leaves
    for i, nid in enumerate(spine):
        node = t.nodes[nid]
        kind = node_kind(node.label)
        if kind == "clique":
            orient[i] = "LR"
            continue
        c = star_center(node.label)
        target = node.ends[c]
        if target < n:
            centres.append((i, target))
            orient[i] = "R"  # pendants of the centre
        elif i > 0 and target == spine[i - 1]:
            orient[i] = "L"
        else:
            orient[i] = "R"

    w_mid = [leaf for _, leaf in centres]
    idx = [i for i, _ in centres]
    tcount = len(w_mid)
    first_leaves = t.leaves_at(spine[0])
    w0 = min(x for x in first_leaves if not w_mid or x != w_mid[0])
    last_leaves = t.leaves_at(spine[-1])
    taken = {w0} | ({w_mid[-1]} if w_mid else set())
    w_end = min(x for x in last_leaves if x not in taken)
    ws = [w0] + w_mid + [w_end]
    bounds = [-1] + idx + [m - 1]  # block j takes leaves at spine positions bounds[j] < l <= bounds[j+1]

    special = set(ws)
    members: list[list[int]] = [[] for _ in range(tcount + 1)]
    labels: list[dict[int, str]] = [{} for _ in range(tcount + 1)]
    for l, nid in enumerate(spine):
        j = next(j for j in range(tcount + 1) if bounds[j] < l <= bounds[j + 1])
        for x in t.leaves_at(nid):
            if x in special:
                continue
            members[j].append(x)
            labels[j][x] = "R" if (j < tcount and l == bounds[j + 1]) else orient[l]

    blocks = []
    for j in range(tcount + 1):
        order = [ws[j]] + members[j] + [ws[j + 1]]
        lab = dict(labels[j])
        lab[ws[j]] = "R"
        lab[ws[j + 1]] = "L"
        blocks.append(ThreadBlock.from_mapping(order, lab))
    return ThreadDecomposition(tuple(ws), tuple(blocks))


def decompose_components(g: Graph) -> list[ThreadDecomposition | int]:
    """Per-component decompositions in host indices; isolated vertices are reported as ints."""
    out: list[ThreadDecomposition | int] = []
    for comp in connected_components(g):
        if comp.bit_count() == 1:
            out.append(comp.bit_length() - 1)
            continue
        sub, old = g.induced_subgraph(comp)
        out.append(canonical_thread_decomposition(sub).relabel(old))
    return out


def anchors_match_cut_vertices(g: Graph, d: ThreadDecomposition) -> bool:
    """Interior anchors are exactly the cut vertices of g."""
    cut = blocks_and_cut_vertices(g).cut_vertices
    return mask_of(d.anchors[1:-1]) == cut
