"""Split decomposition: graph-labelled trees and their reduced form.

Tree nodes ``0..n-1`` are the leaves (one per graph vertex); internal nodes
get ids from ``n`` upward.  An internal node stores ``ends``, the tree
neighbour reached through each of its marker vertices, and ``label``, the
label graph on those markers (marker ``i`` is vertex ``i`` of ``label``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, bits, is_connected


class NotConnected(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    ends: tuple[int, ...]
    label: Graph

    def marker_to(self, neighbour: int) -> int:
        return self.ends.index(neighbour)

    @property
    def kind(self) -> str:
        return node_kind(self.label)

    def star_center(self) -> int | None:
        return star_center(self.label)


def is_clique(h: Graph) -> bool:
    full = h.full
    return all(h.adj[v] == full & ~(1 << v) for v in range(h.n))


def star_center(h: Graph) -> int | None:
    """Centre of a star label graph, or None if ``h`` is not a star on >= 3 vertices."""
    if h.n < 3:
        return None
    full = h.full
    for c in range(h.n):
        if h.adj[c] == full & ~(1 << c):
            if all(h.adj[v] == 1 << c for v in range(h.n) if v != c):
                return c
            return None
    return None


def node_kind(h: Graph) -> str:
    if is_clique(h):
        return "clique"
    if star_center(h) is not None:
        return "star"
    return "prime"


def is_degenerate(h: Graph) -> bool:
    return node_kind(h) != "prime"


# -- split finding --------------------------------------------------------------

def _pendant_or_twin_split(h: Graph) -> int | None:
    n = h.n
    for u in range(n):
        if h.adj[u].bit_count() == 1:
            w = h.adj[u].bit_length() - 1
            return (1 << u) | (1 << w)
    # twins share an open (false twins) or closed (true twins) neighbourhood
    open_seen: dict[int, int] = {}
    closed_seen: dict[int, int] = {}
    for u in range(n):
        row = h.adj[u]
        for seen, key in ((open_seen, row), (closed_seen, row | (1 << u))):
            if key in seen:
                return (1 << seen[key]) | (1 << u)
            seen[key] = u
    return None


def has_pendant_or_twins(h: Graph) -> bool:
    return h.n >= 4 and _pendant_or_twin_split(h) is not None


def find_split(h: Graph) -> int | None:
    """Return one side A of a split of the connected graph ``h``, or None if prime.

    The closure below keeps A inside the A-side of any split that separates
    x, y from a frontier vertex z, so trying every (y, z) with x = 0 is complete.
    """
    n = h.n
    if n < 4:
        return None
    quick = _pendant_or_twin_split(h)
    if quick is not None:
        return quick
    full = h.full
    x = 0
    for y in range(1, n):
        for z in range(1, n):
            if z == y:
                continue
            a = (1 << x) | (1 << y)
            changed = True
            while changed:
                changed = False
                k = h.adj[z] & a
                for u in bits(full & ~a & ~(1 << z)):
                    trace = h.adj[u] & a
                    if trace and trace != k:
                        a |= 1 << u
                        changed = True
                        break
            if (full & ~a).bit_count() >= 2:
                return a
    return None


def is_split(h: Graph, a: int) -> bool:
    """Brute-force definition check: frontier edges form a complete bipartite graph."""
    b = h.full & ~a
    if a.bit_count() < 2 or b.bit_count() < 2:
        return False
    fa = 0
    fb = 0
    for v in bits(a):
        if h.adj[v] & b:
            fa |= 1 << v
            fb |= h.adj[v] & b
    return all(h.adj[v] & b == fb for v in bits(fa))


# -- the tree ----------------------------------------------------------------

@dataclass(frozen=True)
class GraphLabelledTree:
    n_leaves: int
    nodes: dict[int, Node]
    leaf_parent: tuple[int, ...]

    def internal_ids(self) -> list[int]:
        return sorted(self.nodes)

    def tree_neighbours(self, t: int) -> tuple[int, ...]:
        if t < self.n_leaves:
            return (self.leaf_parent[t],) if self.leaf_parent[t] >= 0 else ()
        return self.nodes[t].ends

    def spine_neighbours(self, t: int) -> list[int]:
        return [u for u in self.nodes[t].ends if u >= self.n_leaves]

    def leaves_at(self, t: int) -> list[int]:
        return sorted(u for u in self.nodes[t].ends if u < self.n_leaves)


def _degree_ok(t: GraphLabelledTree) -> bool:
    return all(len(node.ends) == node.label.n for node in t.nodes.values())


def build_reduced_split_tree(g: Graph) -> GraphLabelledTree:
    """Reduced split tree of a connected graph with at least two vertices."""
    if g.n < 2 or not is_connected(g):
        raise NotConnected("split trees are built for connected graphs with at least 2 vertices")
    t = _build(g, stop_if_not_dh=False)
    assert t is not None
    return t


def build_split_tree_if_dh(g: Graph) -> GraphLabelledTree | None:
    """Reduced split tree, or None as soon as some label graph has no pendant and no twins.

    Label graphs are induced subgraphs of g, so None means g is not
    distance-hereditary (and hence not a thread graph).
    """
    return _build(g, stop_if_not_dh=True)


def _build(g: Graph, stop_if_not_dh: bool) -> GraphLabelledTree | None:
    n = g.n
    if n == 2:
        # two leaves joined directly; represented as a single clique node on two markers
        nodes = {2: Node((0, 1), g)}
        return GraphLabelledTree(2, nodes, (2, 2))
    nodes: dict[int, Node] = {n: Node(tuple(range(n)), g)}
    next_id = n + 1
    todo = [n]
    while todo:
        nid = todo.pop()
        node = nodes[nid]
        h = node.label
        if is_degenerate(h):
            continue
        if stop_if_not_dh:
            a = _pendant_or_twin_split(h)
            if a is None:
                return None
        else:
            a = find_split(h)
        if a is None:
            continue
        b = h.full & ~a
        na, nb = next_id, next_id + 1
        next_id += 2
        for side, this, other in ((a, na, nb), (b, nb, na)):
            sub, old = h.induced_subgraph(side)
            frontier = 0
            rest = h.full & ~side
            for i, v in enumerate(old):
                if h.adj[v] & rest:
                    frontier |= 1 << i
            k = sub.n
            adj = list(sub.adj) + [frontier]
            for i in bits(frontier):
                adj[i] |= 1 << k
            ends = tuple(node.ends[v] for v in old) + (other,)
            nodes[this] = Node(ends, Graph(k + 1, tuple(adj)))
            for e in ends[:-1]:
                _retarget(nodes, e, nid, this)
            todo.append(this)
        del nodes[nid]
    _join_degenerate(nodes, n)
    return _freeze(nodes, n)


def _retarget(nodes: dict[int, Node], t: int, old: int, new: int) -> None:
    if t not in nodes:
        return
    node = nodes[t]
    nodes[t] = Node(tuple(new if e == old else e for e in node.ends), node.label)


def node_join(p: Node, p_id: int, q: Node, q_id: int) -> Node:
    """Merge two adjacent nodes into one, removing the two linked markers."""
    mp = p.marker_to(q_id)
    mq = q.marker_to(p_id)
    keep_p = [i for i in range(p.label.n) if i != mp]
    keep_q = [i for i in range(q.label.n) if i != mq]
    size = len(keep_p) + len(keep_q)
    adj = [0] * size
    for a, i in enumerate(keep_p):
        for b, j in enumerate(keep_p):
            if p.label.has_edge(i, j):
                adj[a] |= 1 << b
    off = len(keep_p)
    for a, i in enumerate(keep_q):
        for b, j in enumerate(keep_q):
            if q.label.has_edge(i, j):
                adj[off + a] |= 1 << (off + b)
    for a, i in enumerate(keep_p):
        if not p.label.has_edge(i, mp):
            continue
        for b, j in enumerate(keep_q):
            if q.label.has_edge(j, mq):
                adj[a] |= 1 << (off + b)
                adj[off + b] |= 1 << a
    ends = tuple(p.ends[i] for i in keep_p) + tuple(q.ends[j] for j in keep_q)
    return Node(ends, Graph(size, tuple(adj)))


def _join_degenerate(nodes: dict[int, Node], n: int) -> None:
    changed = True
    while changed:
        changed = False
        for pid in sorted(nodes):
            p = nodes[pid]
            if not is_degenerate(p.label):
                continue
            for qid in p.ends:
                if qid < n or qid < pid:
                    continue
                q = nodes[qid]
                if not is_degenerate(q.label):
                    continue
                joined = node_join(p, pid, q, qid)
                if is_degenerate(joined.label):
                    nodes[pid] = joined
                    del nodes[qid]
                    for e in joined.ends:
                        _retarget(nodes, e, qid, pid)
                    changed = True
                    break
            if changed:
                break


def _freeze(nodes: dict[int, Node], n: int) -> GraphLabelledTree:
    # renumber internal nodes densely from n, in order of their smallest leaf reach
    order = sorted(nodes)
    remap = {old: n + i for i, old in enumerate(order)}
    remap.update({v: v for v in range(n)})
    frozen = {}
    parent = [-1] * n
    for old in order:
        node = nodes[old]
        ends = tuple(remap[e] for e in node.ends)
        frozen[remap[old]] = Node(ends, node.label)
        for e in ends:
            if e < n:
                parent[e] = remap[old]
    return GraphLabelledTree(n, frozen, tuple(parent))


def accessibility_graph(t: GraphLabelledTree) -> Graph:
    """Leaves x, y are adjacent iff consecutive markers on the x-y tree path are adjacent."""
    n = t.n_leaves
    adj = [0] * n
    for x in range(n):
        start = t.leaf_parent[x]
        if start < 0:
            continue
        # stack of (node, marker we entered through)
        stack = [(start, t.nodes[start].marker_to(x))]
        while stack:
            nid, m = stack.pop()
            node = t.nodes[nid]
            for j in bits(node.label.adj[m]):
                nxt = node.ends[j]
                if nxt < n:
                    adj[x] |= 1 << nxt
                else:
                    stack.append((nxt, t.nodes[nxt].marker_to(nid)))
    return Graph(n, tuple(adj))


def is_reduced(t: GraphLabelledTree) -> bool:
    """Every node prime or degenerate and no adjacent degenerate pair joins to a degenerate node."""
    if not _degree_ok(t):
        return False
    if t.n_leaves == 2:
        return True
    for nid, node in t.nodes.items():
        if node.label.n < 3 or not is_connected(node.label):
            return False
        if not is_degenerate(node.label) and find_split(node.label) is not None:
            return False
        for other in node.ends:
            if other < t.n_leaves or other < nid:
                continue
            q = t.nodes[other]
            if is_degenerate(node.label) and is_degenerate(q.label):
                if is_degenerate(node_join(node, nid, q, other).label):
                    return False
    return True


def internal_tree_is_path(t: GraphLabelledTree) -> list[int] | None:
    """The internal nodes in path order (either direction) if they induce a path, else None."""
    ids = t.internal_ids()
    if len(ids) == 1:
        return ids
    deg = {i: len(t.spine_neighbours(i)) for i in ids}
    if any(d > 2 for d in deg.values()):
        return None
    ends = [i for i in ids if deg[i] == 1]
    if len(ends) != 2:
        return None
    path = [ends[0]]
    prev = -1
    while len(path) < len(ids):
        cur = path[-1]
        nxt = [u for u in t.spine_neighbours(cur) if u != prev]
        if len(nxt) != 1:
            return None
        prev = cur
        path.append(nxt[0])
    return path


def iter_label_graphs(t: GraphLabelledTree) -> Iterable[Graph]:
    return (node.label for node in t.nodes.values())
