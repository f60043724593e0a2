"""Detection and enumeration of the small obstructions for linear rankwidth one.

The 21 catalog graphs are shipped in ``data/catalog.json``; that file is
produced by :func:`catalog_records` from the exhaustive oracle and a test
checks the two agree.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterator

from .graph import Graph, bits, canonical_form_small, cycle_graph, domino, gem, house, is_bipartite

DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    """More obstruction occurrences than the configured cap."""


@dataclass(frozen=True)
class CatalogMember:
    id: int
    name: str
    graph: Graph
    canonical: bytes
    annotation: str = ""


@dataclass(frozen=True)
class ObstructionHit:
    catalog_id: int
    vertices: int
    mapping: tuple[int, ...]  # catalog vertex i -> host vertex

    def vertex_list(self) -> list[int]:
        return list(bits(self.vertices))

    def to_json(self, catalog: "ObstructionCatalog | None" = None) -> dict:
        cat = catalog or load_catalog()
        return {
            "catalog_id": self.catalog_id,
            "name": cat.members[self.catalog_id].name,
            "vertices": self.vertex_list(),
            "mapping": list(self.mapping),
        }


@dataclass(frozen=True)
class ObstructionCatalog:
    members: tuple[CatalogMember, ...]

    def __len__(self) -> int:
        return len(self.members)

    def by_name(self, name: str) -> CatalogMember:
        for m in self.members:
            if m.name == name:
                return m
        raise KeyError(name)

    def graphs(self) -> list[Graph]:
        return [m.graph for m in self.members]

    def identify(self, g: Graph) -> CatalogMember | None:
        if g.n > 8:
            return None
        key = canonical_form_small(g)
        for m in self.members:
            if m.canonical == key:
                return m
        return None


# -- naming -------------------------------------------------------------------

def alpha_graphs() -> list[Graph]:
    """The six 'diamond' cases: P5 minus its middle plus two common neighbours of v2, v4."""
    out = []
    # vertices: v1=0 v2=1 v4=2 v5=3 w1=4 w2=5
    for left, right in ((0, 0), (1, 0), (1, 1)):
        for ww in (0, 1):
            e = [(0, 1), (2, 3), (4, 1), (4, 2), (5, 1), (5, 2)]
            if left:
                e += [(0, 4), (0, 5)]
            if right:
                e += [(3, 4), (3, 5)]
            if ww:
                e.append((4, 5))
            out.append(Graph.from_edges(6, e))
    return out


def beta_graphs() -> list[Graph]:
    """A hub u with three pendant paths u-p_i-q_i, u adjacent to 0..3 of the q_i."""
    out = []
    for extra in range(4):
        e = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]
        e += [(0, 4 + i) for i in range(extra)]
        out.append(Graph.from_edges(7, e))
    return out


def _names() -> dict[bytes, tuple[str, str]]:
    named: dict[bytes, tuple[str, str]] = {}
    for h in range(5, 9):
        named[canonical_form_small(cycle_graph(h))] = (f"C{h}", "")
    for name, g in (("house", house()), ("gem", gem()), ("domino", domino())):
        named[canonical_form_small(g)] = (name, "")
    for i, g in enumerate(alpha_graphs(), 1):
        key = canonical_form_small(g)
        name, note = named.get(key, ("", ""))
        named[key] = (name, (note + " " if note else "") + f"alpha_{i}")
    for i, g in enumerate(beta_graphs(), 1):
        key = canonical_form_small(g)
        name, note = named.get(key, ("", ""))
        named[key] = (name, (note + " " if note else "") + f"beta_{i}")
    return named


def catalog_records(graphs: list[Graph]) -> list[dict]:
    """JSON records for the derived catalog, in the oracle's canonical order."""
    named = _names()
    recs = []
    for i, g in enumerate(graphs):
        key = canonical_form_small(g)
        name, note = named.get(key, ("", ""))
        recs.append({
            "id": i,
            "name": name or f"omega_{i:02d}",
            "annotation": note,
            "n": g.n,
            "edges": [list(e) for e in g.edges()],
            "canonical_form_hex": key.hex(),
        })
    return recs


@lru_cache(maxsize=1)
def load_catalog() -> ObstructionCatalog:
    text = resources.files("lrw1").joinpath("data/catalog.json").read_text()
    members = []
    for rec in json.loads(text):
        g = Graph.from_edges(rec["n"], [tuple(e) for e in rec["edges"]])
        members.append(CatalogMember(rec["id"], rec["name"], g, bytes.fromhex(rec["canonical_form_hex"]), rec.get("annotation", "")))
    return ObstructionCatalog(tuple(members))


# -- induced subgraph search ---------------------------------------------------------

@lru_cache(maxsize=None)
def _search_plan(pattern: Graph) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Pattern vertex order plus, per step, the adjacency bits to the earlier pattern vertices."""
    h = pattern.n
    order = [max(range(h), key=lambda v: (pattern.degree(v), -v))]
    while len(order) < h:
        placed = 0
        for v in order:
            placed |= 1 << v
        cand = [v for v in range(h) if v not in order]
        order.append(max(cand, key=lambda v: ((pattern.adj[v] & placed).bit_count(), pattern.degree(v), -v)))
    rel = tuple(tuple(int(pattern.has_edge(order[i], order[j])) for j in range(i)) for i in range(h))
    degs = tuple(pattern.degree(v) for v in order)
    return tuple(order), rel, degs


def iter_induced_embeddings(g: Graph, pattern: Graph, within: int | None = None) -> Iterator[tuple[int, ...]]:
    """All induced embeddings pattern -> g, as tuples indexed by pattern vertex."""
    h = pattern.n
    if h == 0:
        yield ()
        return
    allowed = g.full if within is None else within & g.full
    order, rel, degs = _search_plan(pattern)
    deg_ok: dict[int, int] = {}
    for d in set(degs):
        m = 0
        for v in bits(allowed):
            if (g.adj[v] & allowed).bit_count() >= d:
                m |= 1 << v
        deg_ok[d] = m
    image = [0] * h

    def rec(i: int, used: int) -> Iterator[tuple[int, ...]]:
        c = deg_ok[degs[i]] & ~used
        for j in range(i):
            if rel[i][j]:
                c &= g.adj[image[j]]
            else:
                c &= ~g.adj[image[j]]
            if not c:
                return
        for v in bits(c):
            image[i] = v
            if i == h - 1:
                out = [0] * h
                for k, p in enumerate(order):
                    out[p] = image[k]
                yield tuple(out)
            else:
                yield from rec(i + 1, used | (1 << v))

    yield from rec(0, 0)


@lru_cache(maxsize=None)
def _bipartite_pattern(h: Graph) -> bool:
    return is_bipartite(h)


def find_induced(g: Graph, pattern: Graph, within: int | None = None) -> tuple[int, ...] | None:
    return next(iter_induced_embeddings(g, pattern, within), None)


def find_small_obstruction(g: Graph, catalog: ObstructionCatalog | None = None, within: int | None = None) -> ObstructionHit | None:
    """First catalog occurrence, trying members in ID order (optionally inside ``within``)."""
    cat = catalog or load_catalog()
    host_bipartite = is_bipartite(g, within)
    for m in cat.members:
        if m.graph.n > g.n or m.graph.m > g.m:
            continue
        if host_bipartite and not _bipartite_pattern(m.graph):
            continue
        emb = find_induced(g, m.graph, within)
        if emb is not None:
            mask = 0
            for v in emb:
                mask |= 1 << v
            return ObstructionHit(m.id, mask, emb)
    return None


def enumerate_obstruction_occurrences(g: Graph, cap: int = DEFAULT_CAP, catalog: ObstructionCatalog | None = None) -> list[ObstructionHit]:
    """Every vertex set inducing a catalog member, one hit per set."""
    cat = catalog or load_catalog()
    seen: set[int] = set()
    hits = []
    for m in cat.members:
        if m.graph.n > g.n or m.graph.m > g.m:
            continue
        for emb in iter_induced_embeddings(g, m.graph):
            mask = 0
            for v in emb:
                mask |= 1 << v
            if mask in seen:
                continue
            seen.add(mask)
            hits.append(ObstructionHit(m.id, mask, emb))
            if len(hits) > cap:
                raise CapExceeded(f"more than {cap} obstruction occurrences")
    return hits


def find_long_induced_cycle(g: Graph, min_len: int = 9) -> list[int] | None:
    """An induced cycle with at least ``min_len`` vertices, found by induced-path extension."""
    if min_len < 4:
        raise ValueError("min_len must be at least 4")
    n = g.n
    for start in range(n):
        # only paths whose vertices are all > start, so each cycle is found from its least vertex
        allowed = g.full & ~((1 << (start + 1)) - 1)
        for second in bits(g.adj[start] & allowed):
            path = [start, second]
            blocked = (1 << start) | g.adj[start] | (1 << second)
            found = _extend_path(g, path, blocked, allowed, min_len)
            if found is not None:
                return found
    return None


def _extend_path(g: Graph, path: list[int], blocked: int, allowed: int, min_len: int) -> list[int] | None:
    # iterative DFS over induced paths start .. last; ``blocked`` holds path vertices and neighbours of inner ones
    start = path[0]
    stack = [(list(path), blocked)]
    while stack:
        p, blk = stack.pop()
        last = p[-1]
        for u in bits(g.adj[last] & allowed):
            if u in p:
                continue
            if g.adj[u] >> start & 1:
                # closes a cycle; it is induced iff u touches no inner path vertex other than last
                inner = 0
                for w in p[1:-1]:
                    inner |= 1 << w
                if not g.adj[u] & inner and len(p) + 1 >= min_len and len(p) >= 2:
                    return p + [u]
                continue
            if blk >> u & 1:
                continue
            nb = blk | (1 << u) | g.adj[last]
            stack.append((p + [u], nb))
    return None
