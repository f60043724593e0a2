"""Graph files: a DIMACS-like text format and a JSON form.

    c any comment
    c name 3 hub        optional vertex name (1-indexed)
    p lrw1 <n> <m>
    e <u> <v>           1-indexed, one line per edge
"""
from __future__ import annotations

import json
import warnings
from pathlib import Path

from .graph import Graph


class GraphFormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


class DuplicateEdgeWarning(UserWarning):
    pass


def parse_dimacs(text: str) -> Graph:
    n = None
    declared_m = 0
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    names: dict[int, str] = {}
    edge_lines = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts:
            continue
        tag = parts[0]
        if tag == "c":
            if len(parts) == 4 and parts[1] == "name":
                try:
                    names[int(parts[2])] = parts[3]
                except ValueError:
                    raise GraphFormatError(f"bad name line {raw.strip()!r}", lineno) from None
            continue
        if tag == "p":
            if n is not None:
                raise GraphFormatError("second header line", lineno)
            if len(parts) != 4 or parts[1] != "lrw1":
                raise GraphFormatError("header must be 'p lrw1 <n> <m>'", lineno)
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError("n and m must be integers", lineno) from None
            if n < 0 or declared_m < 0:
                raise GraphFormatError("n and m must be non-negative", lineno)
            continue
        if tag == "e":
            if n is None:
                raise GraphFormatError("edge before header", lineno)
            if len(parts) != 3:
                raise GraphFormatError("edge line must be 'e <u> <v>'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("edge endpoints must be integers", lineno) from None
            for x in (u, v):
                if not 1 <= x <= n:
                    raise GraphFormatError(f"vertex {x} out of range 1..{n}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at {u}", lineno)
            edge_lines += 1
            key = (min(u, v) - 1, max(u, v) - 1)
            if key in seen:
                warnings.warn(f"line {lineno}: duplicate edge {u} {v} ignored", DuplicateEdgeWarning, stacklevel=2)
                continue
            seen.add(key)
            edges.append(key)
            continue
        raise GraphFormatError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'p lrw1 <n> <m>' header")
    for i in names:
        if not 1 <= i <= n:
            raise GraphFormatError(f"name given for vertex {i} out of range 1..{n}")
    if edge_lines != declared_m:
        warnings.warn(f"header declares {declared_m} edges, file has {edge_lines} edge lines", stacklevel=2)
    full_names = None
    if names:
        full_names = tuple(names.get(v + 1, str(v)) for v in range(n))
    return Graph.from_edges(n, edges, full_names)


def format_dimacs(g: Graph) -> str:
    lines = []
    if g.names is not None:
        lines += [f"c name {v + 1} {g.names[v]}" for v in range(g.n)]
    lines.append(f"p lrw1 {g.n} {g.m}")
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def graph_to_json(g: Graph) -> dict:
    out = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    if g.names is not None:
        out["names"] = list(g.names)
    return out


def graph_from_json(data: dict) -> Graph:
    try:
        n = int(data["n"])
        edges = [(int(u), int(v)) for u, v in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"bad JSON graph: {exc}") from None
    names = data.get("names")
    return Graph.from_edges(n, set((min(e), max(e)) for e in edges), names)


def parse_graph(text: str, fmt: str = "dimacs") -> Graph:
    if fmt == "json":
        try:
            return graph_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise GraphFormatError(exc.msg, exc.lineno) from None
    if fmt != "dimacs":
        raise ValueError(f"unknown graph format {fmt!r}")
    return parse_dimacs(text)


def format_graph(g: Graph, fmt: str = "dimacs") -> str:
    if fmt == "json":
        return json.dumps(graph_to_json(g)) + "\n"
    return format_dimacs(g)


def read_graph(path: str | Path, fmt: str = "dimacs") -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"), fmt)


def write_graph(g: Graph, path: str | Path, fmt: str = "dimacs") -> None:
    Path(path).write_text(format_graph(g, fmt), encoding="utf-8")
