"""k-expressions: parsing, evaluation, an induced-subgraph DP and a solver driven by them.

Grammar (whitespace-insensitive, ``#`` starts a comment)::

    E := add(i, NAME) | un(E, E) | join(i, j, E) | ren(i, j, E)

``ren(i, j, E)`` renames label i to j.  Labels are positive integers.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterator, Union

from .graph import Graph, bits, connected_components
from .necklace import _min_deletion_unchecked
from .obstructions import ObstructionCatalog, load_catalog
from .solver import BranchOps, Solution, branch_and_bound
from .thread import ThreadDecomposition, is_thread_graph


class KExpressionError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"{msg} (line {line}, column {col})" if line else msg)
        self.line = line
        self.col = col


class UnknownVertex(KeyError):
    pass


@dataclass(frozen=True)
class Intro:
    label: int
    name: str


@dataclass(frozen=True)
class Union_:
    left: "KExpression"
    right: "KExpression"


@dataclass(frozen=True)
class Join:
    i: int
    j: int
    child: "KExpression"


@dataclass(frozen=True)
class Rename:
    i: int
    j: int
    child: "KExpression"


@dataclass(frozen=True)
class Empty:
    """Expression with no vertices, left behind when every vertex is deleted."""


EMPTY = Empty()
KExpression = Union[Intro, Union_, Join, Rename, Empty]


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(#[^\n]*)|([A-Za-z0-9_]+)|([(),]))")


def _tokenize(text: str) -> list[tuple[str, int, int]]:
    out = []
    pos = 0
    line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(p: int) -> tuple[int, int]:
        line = max(i for i, s in enumerate(line_starts) if s <= p)
        return line + 1, p - line_starts[line] + 1

    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            line, col = where(pos + len(text[pos:]) - len(text[pos:].lstrip()))
            raise KExpressionError(f"unexpected character {text[pos:].lstrip()[:1]!r}", line, col)
        if m.group(1) is None:
            tok = m.group(2) or m.group(3)
            start = m.start(2) if m.group(2) else m.start(3)
            out.append((tok, *where(start)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, k: int | None):
        self.toks = _tokenize(text)
        self.i = 0
        self.k = k
        self.names: set[str] = set()

    def peek(self) -> tuple[str, int, int]:
        if self.i >= len(self.toks):
            last = self.toks[-1] if self.toks else ("", 1, 1)
            return ("<end>", last[1], last[2])
        return self.toks[self.i]

    def take(self, want: str | None = None) -> tuple[str, int, int]:
        tok = self.peek()
        if tok[0] == "<end>":
            raise KExpressionError("unexpected end of input", tok[1], tok[2])
        if want is not None and tok[0] != want:
            raise KExpressionError(f"expected {want!r}, found {tok[0]!r}", tok[1], tok[2])
        self.i += 1
        return tok

    def label(self) -> int:
        tok, line, col = self.take()
        if not tok.isdigit() or int(tok) < 1:
            raise KExpressionError(f"expected a positive label, found {tok!r}", line, col)
        value = int(tok)
        if self.k is not None and value > self.k:
            raise KExpressionError(f"label {value} exceeds k={self.k}", line, col)
        return value

    def expr(self) -> KExpression:
        head, line, col = self.take()
        self.take("(")
        if head == "add":
            lab = self.label()
            self.take(",")
            name, nl, nc = self.take()
            if not name.isalnum():
                raise KExpressionError(f"bad vertex name {name!r}", nl, nc)
            if name in self.names:
                raise KExpressionError(f"vertex {name!r} introduced twice", nl, nc)
            self.names.add(name)
            node: KExpression = Intro(lab, name)
        elif head == "un":
            left = self.expr()
            self.take(",")
            node = Union_(left, self.expr())
        elif head in ("join", "ren"):
            i = self.label()
            self.take(",")
            j = self.label()
            if i == j:
                raise KExpressionError(f"{head} needs two distinct labels", line, col)
            self.take(",")
            child = self.expr()
            node = Join(i, j, child) if head == "join" else Rename(i, j, child)
        else:
            raise KExpressionError(f"unknown operation {head!r}", line, col)
        self.take(")")
        return node


def parse_kexpression(text: str, k: int | None = None) -> KExpression:
    p = _Parser(text, k)
    if not p.toks:
        raise KExpressionError("empty expression", 1, 1)
    e = p.expr()
    tok = p.peek()
    if tok[0] != "<end>":
        raise KExpressionError(f"trailing input {tok[0]!r}", tok[1], tok[2])
    return e


def format_kexpression(e: KExpression) -> str:
    if isinstance(e, Intro):
        return f"add({e.label},{e.name})"
    if isinstance(e, Union_):
        return f"un({format_kexpression(e.left)},{format_kexpression(e.right)})"
    if isinstance(e, Join):
        return f"join({e.i},{e.j},{format_kexpression(e.child)})"
    if isinstance(e, Rename):
        return f"ren({e.i},{e.j},{format_kexpression(e.child)})"
    raise KExpressionError("the empty expression has no text form")


# -- traversal helpers ------------------------------------------------------------

def _children(e: KExpression) -> tuple[KExpression, ...]:
    if isinstance(e, Union_):
        return (e.left, e.right)
    if isinstance(e, (Join, Rename)):
        return (e.child,)
    return ()


def postorder(e: KExpression) -> list[KExpression]:
    out = []
    stack: list[tuple[KExpression, bool]] = [(e, False)]
    while stack:
        node, done = stack.pop()
        if done:
            out.append(node)
            continue
        stack.append((node, True))
        for c in reversed(_children(node)):
            stack.append((c, False))
    return out


def vertex_names(e: KExpression) -> list[str]:
    return [node.name for node in postorder(e) if isinstance(node, Intro)]


def labels_used(e: KExpression) -> set[int]:
    out: set[int] = set()
    for node in postorder(e):
        if isinstance(node, Intro):
            out.add(node.label)
        elif isinstance(node, (Join, Rename)):
            out |= {node.i, node.j}
    return out


# -- evaluation --------------------------------------------------------------------

def eval_kexpression(e: KExpression) -> tuple[Graph, dict[str, int]]:
    """The labelled graph defined by ``e``; vertices are numbered in introduction order."""
    names = vertex_names(e)
    index = {nm: i for i, nm in enumerate(names)}
    n = len(names)
    adj = [0] * n
    # per node: label -> vertex mask
    results: dict[int, dict[int, int]] = {}
    for node in postorder(e):
        if isinstance(node, Empty):
            results[id(node)] = {}
        elif isinstance(node, Intro):
            results[id(node)] = {node.label: 1 << index[node.name]}
        elif isinstance(node, Union_):
            merged = dict(results.pop(id(node.left)))
            for lab, m in results.pop(id(node.right)).items():
                merged[lab] = merged.get(lab, 0) | m
            results[id(node)] = merged
        elif isinstance(node, Join):
            groups = results.pop(id(node.child))
            a, b = groups.get(node.i, 0), groups.get(node.j, 0)
            for v in bits(a):
                adj[v] |= b
            for v in bits(b):
                adj[v] |= a
            results[id(node)] = groups
        else:
            groups = dict(results.pop(id(node.child)))
            moved = groups.pop(node.i, 0)
            if moved:
                groups[node.j] = groups.get(node.j, 0) | moved
            results[id(node)] = groups
    final = results[id(e)]
    labels = {}
    for lab, m in final.items():
        for v in bits(m):
            labels[names[v]] = lab
    return Graph(n, tuple(adj), tuple(names)), labels


# -- the induced subgraph DP ------------------------------------------------------------

def _future_joins(e: KExpression) -> dict[int, frozenset[frozenset[int]]]:
    """For every node, the label pairs (in that node's labels) some ancestor will join."""
    out: dict[int, frozenset[frozenset[int]]] = {}
    stack: list[tuple[KExpression, frozenset[frozenset[int]]]] = [(e, frozenset())]
    while stack:
        node, pairs = stack.pop()
        out[id(node)] = pairs
        if isinstance(node, Union_):
            stack.append((node.left, pairs))
            stack.append((node.right, pairs))
        elif isinstance(node, Join):
            stack.append((node.child, pairs | {frozenset((node.i, node.j))}))
        elif isinstance(node, Rename):
            labs = {l for p in pairs for l in p} | {node.i, node.j}
            ren = lambda l: node.j if l == node.i else l  # noqa: E731
            below = set()
            for a in labs:
                for b in labs:
                    if a < b and ren(a) != ren(b) and frozenset((ren(a), ren(b))) in pairs:
                        below.add(frozenset((a, b)))
            stack.append((node.child, frozenset(below)))
    return out


def find_induced_subgraph_cwx(e: KExpression, h: Graph, prune: bool = True) -> dict[int, str] | None:
    """Induced copy of ``h`` in eval(e), as pattern vertex -> vertex name, or None.

    A state is (a, b): a[x] is the label of the image of pattern vertex x
    (0 when x is not mapped yet) and b is the set of pattern edges already
    present between mapped images.  States that can no longer complete are
    dropped: an unrealised pattern edge whose ends share a label, and, with
    ``prune``, anything the remaining ancestors cannot fix.
    """
    p = h.n
    if p == 0:
        return {}
    if p > 8:
        raise ValueError("pattern graphs are limited to 8 vertices")
    if isinstance(e, Empty):
        return None
    pedges = h.edges()
    eidx = {frozenset(uv): i for i, uv in enumerate(pedges)}
    all_edges = (1 << len(pedges)) - 1
    pairs = [(x, y) for x in range(p) for y in range(x + 1, p)]
    total = len(vertex_names(e))
    if total < p:
        return None
    future = _future_joins(e) if prune else None

    def alive(node_id: int, a: tuple[int, ...], b: int, size: int) -> bool:
        unmapped = a.count(0)
        if prune and unmapped > total - size:
            return False
        fut = future[node_id] if prune else None
        for x, y in pairs:
            ax, ay = a[x], a[y]
            if not ax or not ay:
                continue
            k = eidx.get(frozenset((x, y)))
            if k is not None:
                if b >> k & 1:
                    continue
                if ax == ay:
                    return False
                if prune and frozenset((ax, ay)) not in fut:
                    return False
            elif prune and ax != ay and frozenset((ax, ay)) in fut:
                return False
        return True

    tables: dict[int, dict] = {}  # node id -> {state: backpointer}, kept for witness recovery
    sizes: dict[int, int] = {}
    empty_a = (0,) * p
    for node in postorder(e):
        nid = id(node)
        table: dict = {}
        if isinstance(node, Intro):
            sizes[nid] = 1
            table[(empty_a, 0)] = None
            for x in range(p):
                a = tuple(node.label if i == x else 0 for i in range(p))
                if alive(nid, a, 0, 1):
                    table[(a, 0)] = ("intro", x, node.name)
        elif isinstance(node, Union_):
            lt, rt = tables[id(node.left)], tables[id(node.right)]
            sizes[nid] = sizes[id(node.left)] + sizes[id(node.right)]
            by_mask: dict[int, list] = {}
            for s in rt:
                m = sum(1 << i for i, v in enumerate(s[0]) if v)
                by_mask.setdefault(m, []).append(s)
            for s1 in lt:
                m1 = sum(1 << i for i, v in enumerate(s1[0]) if v)
                for m2, group in by_mask.items():
                    if m1 & m2:
                        continue
                    for s2 in group:
                        a = tuple(x or y for x, y in zip(s1[0], s2[0]))
                        b = s1[1] | s2[1]
                        if (a, b) not in table and alive(nid, a, b, sizes[nid]):
                            table[(a, b)] = ("union", s1, s2)
        elif isinstance(node, Join):
            child = tables[id(node.child)]
            sizes[nid] = sizes[id(node.child)]
            lab = {node.i, node.j}
            for s in child:
                a, b = s
                ok = True
                for x, y in pairs:
                    if a[x] and a[y] and a[x] != a[y] and {a[x], a[y]} == lab:
                        k = eidx.get(frozenset((x, y)))
                        if k is None:
                            ok = False
                            break
                        b |= 1 << k
                if ok and (a, b) not in table and alive(nid, a, b, sizes[nid]):
                    table[(a, b)] = ("child", s)
        elif isinstance(node, Rename):
            child = tables[id(node.child)]
            sizes[nid] = sizes[id(node.child)]
            for s in child:
                a = tuple(node.j if v == node.i else v for v in s[0])
                st = (a, s[1])
                if st not in table and alive(nid, a, s[1], sizes[nid]):
                    table[st] = ("child", s)
        else:
            sizes[nid] = 0
            table[(empty_a, 0)] = None
        tables[nid] = table
    root = tables[id(e)]
    for (a, b) in root:
        if all(a) and b == all_edges:
            return _trace_witness(e, (a, b), tables)
    return None


def _trace_witness(e: KExpression, state, back: dict[int, dict]) -> dict[int, str]:
    out: dict[int, str] = {}
    stack = [(e, state)]
    while stack:
        node, st = stack.pop()
        ptr = back[id(node)][st]
        if ptr is None:
            continue
        if ptr[0] == "intro":
            out[ptr[1]] = ptr[2]
        elif ptr[0] == "union":
            stack.append((node.left, ptr[1]))
            stack.append((node.right, ptr[2]))
        else:
            stack.append((node.child, ptr[1]))
    return out


def find_induced_naive(g: Graph, h: Graph) -> dict[int, int] | None:
    """Plain backtracking reference for the DP."""
    from .obstructions import find_induced

    emb = find_induced(g, h)
    return None if emb is None else dict(enumerate(emb))


# -- deletion and solving ------------------------------------------------------------------

def delete_vertex_in_expression(e: KExpression, name: str) -> KExpression:
    """Expression for eval(e) minus ``name``; empty unions collapse, an emptied tree becomes EMPTY."""
    if name not in set(vertex_names(e)):
        raise UnknownVertex(name)
    return _delete(e, {name})


def delete_vertices_in_expression(e: KExpression, names: set[str]) -> KExpression:
    return _delete(e, set(names))


def _delete(e: KExpression, names: set[str]) -> KExpression:
    rebuilt: dict[int, KExpression] = {}
    for node in postorder(e):
        if isinstance(node, Intro):
            out = EMPTY if node.name in names else node
        elif isinstance(node, Union_):
            l, r = rebuilt.pop(id(node.left)), rebuilt.pop(id(node.right))
            if isinstance(l, Empty):
                out = r
            elif isinstance(r, Empty):
                out = l
            elif l is node.left and r is node.right:
                out = node
            else:
                out = Union_(l, r)
        elif isinstance(node, (Join, Rename)):
            c = rebuilt.pop(id(node.child))
            if isinstance(c, Empty):
                out = EMPTY
            elif c is node.child:
                out = node
            else:
                out = type(node)(node.i, node.j, c)
        else:
            out = node
        rebuilt[id(node)] = out
    return rebuilt[id(e)]


def cwx_ops(catalog: ObstructionCatalog | None = None, prune: bool = True) -> BranchOps[KExpression]:
    cat = catalog or load_catalog()

    def reduce(e: KExpression) -> KExpression:
        if isinstance(e, Empty):
            return e
        g, _ = eval_kexpression(e)
        drop = set()
        for comp in connected_components(g):
            sub, _ = g.induced_subgraph(comp)
            if is_thread_graph(sub):
                drop |= {g.names[v] for v in bits(comp)}
        return _delete(e, drop) if drop else e

    def find_hit(e: KExpression):
        for m in cat.members:
            w = find_induced_subgraph_cwx(e, m.graph, prune=prune)
            if w is not None:
                verts = sorted(w.values(), key=_name_key)
                return (m.id, tuple(w[i] for i in range(m.graph.n))), verts
        return None

    def finish(e: KExpression) -> frozenset:
        g, _ = eval_kexpression(e)
        return frozenset(g.names[v] for v in _min_deletion_unchecked(g))

    return BranchOps(
        key=lambda e: frozenset(vertex_names(e)) if not isinstance(e, Empty) else frozenset(),
        reduce=reduce,
        is_empty=lambda e: isinstance(e, Empty),
        find_hit=find_hit,
        remove=lambda e, v: _delete(e, {v}),
        finish=finish,
    )


def _name_key(name: str):
    return (0, int(name)) if name.isdigit() else (1, name)


def solve_branching_cwx(e: KExpression, k: int, prune: bool = True) -> Solution | None:
    """Same search as the graph solver, with obstructions found by the expression DP."""
    return branch_and_bound(e, k, cwx_ops(prune=prune))


# -- expression generators ---------------------------------------------------------------

def random_kexpression(n: int, k: int, seed: int, join_prob: float = 0.8, linear_prob: float = 0.5) -> KExpression:
    """A random expression on vertices v0..v{n-1} using labels 1..k.

    With probability ``linear_prob`` the tree is a caterpillar (one new
    vertex per union), which yields paths and cycles more often than
    balanced shapes do.
    """
    if k < 2 and n > 1:
        raise ValueError("need at least two labels")
    rng = random.Random(seed)
    names = [f"v{i}" for i in range(n)]
    rng.shuffle(names)
    linear = rng.random() < linear_prob

    def decorate(node: KExpression) -> KExpression:
        for _ in range(rng.randint(1, 3)):
            i, j = rng.sample(range(1, k + 1), 2)
            node = Join(i, j, node) if rng.random() < join_prob else Rename(i, j, node)
        return node

    def build(vs: list[str]) -> KExpression:
        if len(vs) == 1:
            return Intro(rng.randint(1, k), vs[0])
        cut = len(vs) - 1 if linear else rng.randint(1, len(vs) - 1)
        return decorate(Union_(build(vs[:cut]), build(vs[cut:])))

    return build(names)


def layout_expression(g: Graph, order: list[int], names: list[str] | None = None) -> KExpression:
    """A linear 3-expression following a vertex order of width at most one.

    Label 1 holds the vertices that still see the rest of the order, label 2
    the finished ones, label 3 the newest vertex.
    """
    nm = names or [f"v{v}" for v in range(g.n)]
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must list every vertex once")
    expr: KExpression | None = None
    placed = 0
    active = 0
    for v in order:
        rest = g.full & ~placed & ~(1 << v)
        node: KExpression = Intro(3, nm[v])
        if expr is not None:
            node = Union_(expr, node)
            sees_active = bool(active) and g.adj[v] & active == active
            if g.adj[v] & placed != (active if sees_active else 0):
                raise ValueError("order has width greater than one")
            if sees_active:
                node = Join(1, 3, node)
        placed |= 1 << v
        old_row = 0
        for a in bits(active):
            old_row = g.adj[a] & rest
            break
        new_row = g.adj[v] & rest
        if old_row and new_row and old_row != new_row:
            raise ValueError("order has width greater than one")
        if active and not old_row:
            node = Rename(1, 2, node)
            active = 0
        if new_row:
            node = Rename(3, 1, node)
            active |= 1 << v
        else:
            node = Rename(3, 2, node)
        expr = node
    return expr if expr is not None else EMPTY


def thread_layout(d: ThreadDecomposition) -> list[int]:
    """Vertex order of width one: the blocks' orders concatenated along the anchor path."""
    order: list[int] = []
    seen: set[int] = set()
    if not d.blocks:
        return list(d.anchors)
    for b in d.blocks:
        for v in b.order:
            if v not in seen:
                seen.add(v)
                order.append(v)
    return order


def thread_graph_expression(g: Graph, decompositions: list) -> KExpression:
    """3-expression of a thread graph given its per-component decompositions (or isolated ints)."""
    order: list[int] = []
    for d in decompositions:
        order.extend([d] if isinstance(d, int) else thread_layout(d))
    return layout_expression(g, order)


def iter_intros(e: KExpression) -> Iterator[Intro]:
    return (node for node in postorder(e) if isinstance(node, Intro))
