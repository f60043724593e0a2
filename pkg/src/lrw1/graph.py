"""Bitset graphs, GF(2) cut-rank and small-graph utilities.

Vertices are the integers ``0..n-1`` and a vertex set is a plain Python
``int`` used as a bitmask.  Every graph is immutable once built.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of the matrix whose rows are the given bit rows."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


class GraphError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph with one adjacency bitset per vertex."""

    n: int
    adj: tuple[int, ...]
    names: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour out of range")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        if self.names is not None and len(self.names) != self.n:
            raise GraphError("names length does not match vertex count")

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...], names: tuple[str, ...] | None = None) -> "Graph":
        # skips validation; only for adjacency derived from an already valid graph
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        object.__setattr__(g, "names", names)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], names: Sequence[str] | None = None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(names) if names is not None else None)

    @classmethod
    def empty(cls, n: int = 0) -> "Graph":
        return cls(n, (0,) * n)

    # -- basic queries --------------------------------------------------
    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def name(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"

    # -- derived graphs -------------------------------------------------
    def induced_subgraph(self, s: int) -> tuple["Graph", list[int]]:
        """Return ``G[s]`` relabelled densely, plus the new->old index list."""
        old = list(bits(s & self.full))
        index = {v: i for i, v in enumerate(old)}
        adj = []
        for v in old:
            row = 0
            for u in bits(self.adj[v] & s):
                row |= 1 << index[u]
            adj.append(row)
        names = tuple(self.names[v] for v in old) if self.names is not None else None
        return Graph._trusted(len(old), tuple(adj), names), old

    def delete_vertices(self, s: int) -> tuple["Graph", list[int]]:
        """``G \\ s`` relabelled densely; the list maps new index -> old index."""
        return self.induced_subgraph(self.full & ~s)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in bits(self.adj[v]):
                row |= 1 << perm[u]
            adj[perm[v]] = row
        names = None
        if self.names is not None:
            nm = [""] * self.n
            for v in range(self.n):
                nm[perm[v]] = self.names[v]
            names = tuple(nm)
        return Graph(self.n, tuple(adj), names)

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        adj = self.adj + tuple(row << shift for row in other.adj)
        return Graph(self.n + other.n, adj)

    def complement_mask(self, s: int) -> int:
        return self.full & ~s


# -- cut-rank -------------------------------------------------------------

def cut_rank(g: Graph, s: int) -> int:
    """GF(2) rank of the adjacency submatrix between ``s`` and its complement."""
    s &= g.full
    rest = g.full & ~s
    if not s or not rest:
        return 0
    if s.bit_count() > rest.bit_count():
        s, rest = rest, s
    return gf2_rank(g.adj[v] & rest for v in bits(s))


def cut_rank_at_most_one(g: Graph, s: int) -> bool:
    """Cheap test for ``cut_rank(g, s) <= 1``: nonzero rows must coincide."""
    rest = g.full & ~s
    seen = 0
    for v in bits(s):
        row = g.adj[v] & rest
        if row:
            if not seen:
                seen = row
            elif row != seen:
                return False
    return True


# -- connectivity -----------------------------------------------------------

def component_of(g: Graph, v: int, within: int | None = None) -> int:
    allowed = g.full if within is None else within
    comp = 1 << v
    frontier = comp
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.adj[u]
        nxt &= allowed & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def connected_components(g: Graph, within: int | None = None) -> list[int]:
    """Vertex masks of the components of ``g`` (or of ``g[within]``), by least vertex."""
    left = g.full if within is None else within & g.full
    comps = []
    while left:
        v = (left & -left).bit_length() - 1
        c = component_of(g, v, left)
        comps.append(c)
        left &= ~c
    return comps


def is_bipartite(g: Graph, within: int | None = None) -> bool:
    """Two-colourability of ``g`` (or ``g[within]``) by layered BFS on masks."""
    left = g.full if within is None else within & g.full
    while left:
        frontier = left & -left
        colour = [frontier, 0]
        seen, c = frontier, 0
        while frontier:
            nb = 0
            for u in bits(frontier):
                nb |= g.adj[u]
            nb &= left
            if nb & colour[c]:
                return False
            frontier = nb & ~seen
            colour[1 - c] |= frontier
            seen |= frontier
            c = 1 - c
        left &= ~seen
    return True


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or component_of(g, 0) == g.full


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; unreachable vertices get -1."""
    dist = [-1] * g.n
    dist[source] = 0
    seen = 1 << source
    frontier = seen
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for u in bits(frontier):
            nxt |= g.adj[u]
        nxt &= ~seen
        for u in bits(nxt):
            dist[u] = d
        seen |= nxt
        frontier = nxt
    return dist


@dataclass(frozen=True)
class BlockCutStructure:
    cut_vertices: int
    blocks: tuple[int, ...]
    # block-cut tree: block index -> cut vertices it contains
    tree: tuple[tuple[int, ...], ...]


def blocks_and_cut_vertices(g: Graph) -> BlockCutStructure:
    """Biconnected blocks (bridges included) and cut vertices via DFS lowpoints."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    blocks: list[int] = []
    cut = 0
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        if not g.adj[root]:
            disc[root] = timer
            timer += 1
            blocks.append(1 << root)
            continue
        disc[root] = low[root] = timer
        timer += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(bits(g.adj[root])))]
        root_children = 0
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if disc[u] == -1:
                    edge_stack.append((v, u))
                    disc[u] = low[u] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((u, v, iter(bits(g.adj[u]))))
                    advanced = True
                    break
                if u != parent and disc[u] < disc[v]:
                    edge_stack.append((v, u))
                    low[v] = min(low[v], disc[u])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != root:
                    cut |= 1 << parent
                block = 0
                while True:
                    a, b = edge_stack.pop()
                    block |= (1 << a) | (1 << b)
                    if (a, b) == (parent, v):
                        break
                blocks.append(block)
        if root_children >= 2:
            cut |= 1 << root
    tree = tuple(tuple(bits(b & cut)) for b in blocks)
    return BlockCutStructure(cut, tuple(blocks), tree)


# -- canonical form -----------------------------------------------------------

CANONICAL_MAX_N = 10


def _refine(g: Graph, colors: list[int]) -> list[int]:
    """Colour refinement; colours stay ordered so the result is label-free."""
    n = g.n
    ncolors = len(set(colors))
    while True:
        sig = []
        for v in range(n):
            nb = sorted(colors[u] for u in bits(g.adj[v]))
            sig.append((colors[v], tuple(nb)))
        order = sorted(set(sig))
        rank = {s: i for i, s in enumerate(order)}
        new = [rank[s] for s in sig]
        if len(order) == ncolors:
            return new
        colors, ncolors = new, len(order)


def _certificate(g: Graph, colors: list[int]) -> int:
    pos_to_v = [0] * g.n
    for v, c in enumerate(colors):
        pos_to_v[c] = v
    cert = 0
    for i in range(g.n):
        row = g.adj[pos_to_v[i]]
        for j in range(i + 1, g.n):
            cert = (cert << 1) | (row >> pos_to_v[j] & 1)
    return cert


def canonical_form_small(g: Graph) -> bytes:
    """Isomorphism-invariant byte string for graphs on at most 10 vertices.

    The form is the lexicographically largest upper-triangle adjacency string
    over all vertex orders that are compatible with the (refined) degree
    classes.  Interchangeable twins inside a class are tried only once.
    """
    n = g.n
    if n > CANONICAL_MAX_N:
        raise GraphError(f"canonical_form_small supports n <= {CANONICAL_MAX_N}, got {n}")
    if n == 0:
        return b"\x00"
    best = -1
    colors = _refine(g, [g.degree(v) for v in range(n)])
    stack = [colors]
    while stack:
        colors = stack.pop()
        if len(set(colors)) == n:
            c = _certificate(g, colors)
            if c > best:
                best = c
            continue
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        cell = [v for v in range(n) if colors[v] == target]
        tried: list[int] = []
        for v in cell:
            if any(_twins(g, v, u) for u in tried):
                continue
            tried.append(v)
            keyed = [(c, 0 if u == v else 1) if c == target else (c, 0) for u, c in enumerate(colors)]
            order = sorted(set(keyed))
            rank = {k: i for i, k in enumerate(order)}
            stack.append(_refine(g, [rank[k] for k in keyed]))
    nbits = n * (n - 1) // 2
    return bytes([n]) + best.to_bytes((nbits + 7) // 8 or 1, "big")


def _twins(g: Graph, u: int, v: int) -> bool:
    mask = ~((1 << u) | (1 << v))
    return (g.adj[u] & mask) == (g.adj[v] & mask)


def are_isomorphic_small(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_form_small(g) == canonical_form_small(h)


# -- named small graphs used throughout --------------------------------------

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def house() -> Graph:
    # square 0-1-2-3 with roof 4 over the edge 0-1
    return Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)])


def gem() -> Graph:
    # P4 0-1-2-3 plus a dominating vertex 4
    return Graph.from_edges(5, [(0, 1), (1, 2), (2, 3)] + [(4, i) for i in range(4)])


def domino() -> Graph:
    # 2x3 grid
    return Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)])
