"""Command line interface: ``lrw1 <command> ...`` (or ``python -m lrw1``).

Exit codes: 0 solved/recognized, 1 no-instance, 2 input error, 3 resource guard tripped.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import io
from .cwx import KExpressionError, parse_kexpression, solve_branching_cwx
from .generators import gen_necklace, gen_planted, gen_thread_graph, vc_reduction
from .graph import Graph, GraphError
from .kernel import PAPER, TEST, No, kernelize
from .necklace import classification_to_json, classify_graph
from .obstructions import DEFAULT_CAP, CapExceeded, catalog_records, find_small_obstruction, load_catalog
from .oracle import OracleSizeError, derive_obstruction_catalog, linear_rankwidth_exact, min_deletion_set_bruteforce
from .solver import Instance, solve_branching, trace_to_json

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class _Emit:
    def __init__(self, args):
        self.args = args

    def graph(self, g: Graph) -> None:
        self.text(io.format_graph(g, self.args.format).rstrip("\n"))

    def result(self, data, summary: str) -> None:
        self.text(json.dumps(data, indent=2) if self.args.json else summary)

    def text(self, s: str) -> None:
        if self.args.out:
            Path(self.args.out).write_text(s + "\n", encoding="utf-8")
        else:
            print(s)


def _load(args) -> Graph:
    g = io.read_graph(args.graph, args.format)
    if g.names is None and args.format == "dimacs":
        # report vertices by their 1-indexed file numbers
        g = Graph(g.n, g.adj, tuple(str(v + 1) for v in range(g.n)))
    return g


def _names(g: Graph, vs) -> list[str]:
    return sorted((g.name(v) for v in vs), key=lambda s: (not s.isdigit(), int(s) if s.isdigit() else 0, s))


# -- commands ------------------------------------------------------------------------

def cmd_recognize(args, out: _Emit) -> int:
    g = _load(args)
    comps = classify_graph(g)
    kinds = [c.kind for _, c in comps]
    thread = all(k == "thread" for k in kinds)
    data = {"thread_graph": thread, "components": [{"vertices": _names(g, old), "kind": c.kind} for old, c in comps]}
    out.result(data, "thread" if thread else "not thread (" + ", ".join(sorted(set(kinds) - {"thread"})) + ")")
    return EXIT_OK if thread else EXIT_NO


def cmd_decompose(args, out: _Emit) -> int:
    g = _load(args)
    comps = classify_graph(g)
    data = [dict(classification_to_json(c, old), vertices=list(old)) for old, c in comps]
    lines = []
    for old, c in comps:
        lines.append(f"{c.kind}: {len(old)} vertices")
    out.result(data, "\n".join(lines))
    return EXIT_OK if all(c.kind != "other" for _, c in comps) else EXIT_NO


def cmd_solve(args, out: _Emit) -> int:
    t0 = time.perf_counter()
    if args.engine == "cwx":
        if not args.expr:
            raise _InputError("--engine cwx needs --expr FILE")
        e = parse_kexpression(Path(args.expr).read_text(encoding="utf-8"))
        sol = solve_branching_cwx(e, args.k)
        deleted = sorted(sol.deletion_set) if sol else None
    else:
        if not args.graph:
            raise _InputError("solve needs a graph file")
        g = _load(args)
        sol = solve_branching(Instance(g, args.k))
        deleted = _names(g, sol.deletion_set) if sol else None
    ms = (time.perf_counter() - t0) * 1000
    data = {
        "decision": sol is not None,
        "deletion_set": deleted,
        "nodes_expanded": sol.nodes_expanded if sol else None,
        "time_ms": round(ms, 3),
    }
    if sol is not None and args.engine == "branch" and args.trace:
        data["trace"] = trace_to_json(sol)
    summary = f"YES {' '.join(deleted)}".rstrip() if sol else f"NO (k={args.k})"
    out.result(data, summary)
    return EXIT_OK if sol else EXIT_NO


def cmd_kernelize(args, out: _Emit) -> int:
    g = _load(args)
    th = TEST if args.thresholds == "test" else PAPER
    res = kernelize(g, args.k, th, args.cap)
    if isinstance(res, No):
        data = {"outcome": "no", "reason": res.reason, "trace": [list(s) for s in res.trace]}
        out.result(data, f"NO: {res.reason}")
        return EXIT_NO
    h = res.graph
    data = {
        "outcome": "reduced",
        "graph": io.graph_to_json(h),
        "k": res.k,
        "trace": [list(s) for s in res.state.trace],
    }
    out.result(data, f"kernel: n={h.n} m={h.m} k={res.k}")
    return EXIT_OK


def cmd_find_obstruction(args, out: _Emit) -> int:
    g = _load(args)
    hit = find_small_obstruction(g)
    if hit is None:
        out.result(None, "none")
        return EXIT_OK
    data = hit.to_json()
    data["vertices"] = _names(g, data["vertices"])
    out.result(data, f"{data['name']}: {' '.join(data['vertices'])}")
    return EXIT_OK


def cmd_oracle(args, out: _Emit) -> int:
    if args.what == "catalog":
        if args.derive:
            recs = catalog_records(derive_obstruction_catalog())
        else:
            recs = [
                {"n": m.graph.n, "edges": [list(e) for e in m.graph.edges()], "name": m.name,
                 "annotation": m.annotation, "canonical_form_hex": m.canonical.hex()}
                for m in load_catalog().members
            ]
        data = [
            {"n": r["n"], "edges": r["edges"], "canonical_form_hex": r["canonical_form_hex"],
             "names": [r["name"]] + r["annotation"].split()}
            for r in recs
        ]
        out.text(json.dumps(data, indent=2))
        return EXIT_OK
    if not args.graph:
        raise _InputError(f"oracle {args.what} needs a graph file")
    g = _load(args)
    if args.what == "lrw":
        w = linear_rankwidth_exact(g)
        out.result({"lrw": w}, str(w))
        return EXIT_OK
    if args.k is None:
        raise _InputError("oracle solve needs --k")
    s = min_deletion_set_bruteforce(g, args.k)
    data = {"decision": s is not None, "deletion_set": _names(g, s) if s is not None else None}
    out.result(data, f"YES {' '.join(data['deletion_set'])}".rstrip() if s is not None else f"NO (k={args.k})")
    return EXIT_OK if s is not None else EXIT_NO


def cmd_gen(args, out: _Emit) -> int:
    lo, hi = args.block_size
    if args.kind == "thread":
        g, d = gen_thread_graph(args.blocks, (lo, hi), args.seed)
    elif args.kind == "necklace":
        g, d = gen_necklace(args.cycle_len, (lo, hi), args.seed)
    elif args.kind == "planted":
        inst = gen_planted(args.base, args.extra, args.p, args.seed, size=args.blocks, block_size_range=(lo, hi))
        g = inst.graph
        if args.format == "json":
            out.text(json.dumps(dict(io.graph_to_json(g), k=inst.k)))
        else:
            out.text(f"c budget {inst.k}\n" + io.format_dimacs(g).rstrip("\n"))
        return EXIT_OK
    else:
        if not args.graph:
            raise _InputError("gen vc needs a graph file")
        g = vc_reduction(_load(args))
    out.graph(g)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------

class _InputError(ValueError):
    pass


def _pair(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected LO,HI") from None
    if not 2 <= lo <= hi:
        raise argparse.ArgumentTypeError("need 2 <= LO <= HI")
    return lo, hi


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global flags; SUPPRESS keeps them from clobbering values given earlier
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=d(0), help="seed for generators (default 0)")
    common.add_argument("--format", choices=("dimacs", "json"), default=d("dimacs"), help="graph file format")
    common.add_argument("--out", default=d(None), help="write the result here instead of stdout")
    common.add_argument("--json", action="store_true", default=d(False), help="emit results as JSON")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    p = argparse.ArgumentParser(prog="lrw1", description="Linear rankwidth-1 vertex deletion toolkit",
                                parents=[_global_flags(suppress=False)])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("recognize", parents=[common], help="is the graph a thread graph (lrw <= 1)?")
    s.add_argument("graph")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("decompose", parents=[common], help="thread / necklace decomposition per component")
    s.add_argument("graph")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("solve", parents=[common], help="minimum deletion set of size <= k")
    s.add_argument("graph", nargs="?")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--engine", choices=("branch", "cwx"), default="branch")
    s.add_argument("--expr", help="k-expression file (cwx engine)")
    s.add_argument("--trace", action="store_true", help="include the branching trace in JSON output")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("kernelize", parents=[common], help="apply the kernel reduction rules")
    s.add_argument("graph")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--thresholds", choices=("paper", "test"), default="paper")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max obstruction occurrences to enumerate")
    s.set_defaults(func=cmd_kernelize)

    s = sub.add_parser("find-obstruction", parents=[common], help="one induced small obstruction, if any")
    s.add_argument("graph")
    s.set_defaults(func=cmd_find_obstruction)

    s = sub.add_parser("oracle", parents=[common], help="brute-force reference computations")
    s.add_argument("what", choices=("lrw", "solve", "catalog"))
    s.add_argument("graph", nargs="?")
    s.add_argument("--k", type=int)
    s.add_argument("--derive", action="store_true", help="catalog: re-derive by enumeration instead of loading")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gen", parents=[common], help="generate a graph")
    s.add_argument("kind", choices=("thread", "necklace", "planted", "vc"))
    s.add_argument("graph", nargs="?", help="input graph (vc)")
    s.add_argument("--blocks", type=int, default=4)
    s.add_argument("--cycle-len", type=int, default=9)
    s.add_argument("--block-size", type=_pair, default=(2, 4), metavar="LO,HI")
    s.add_argument("--base", choices=("thread", "necklace"), default="thread")
    s.add_argument("--extra", type=int, default=1)
    s.add_argument("--p", type=float, default=0.3)
    s.set_defaults(func=cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Emit(args)
    try:
        return args.func(args, out)
    except (OracleSizeError, CapExceeded) as exc:
        print(f"lrw1: resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (io.GraphFormatError, GraphError, KExpressionError, _InputError, OSError, ValueError) as exc:
        print(f"lrw1: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
