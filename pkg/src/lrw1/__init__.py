"""Linear rankwidth-1 vertex deletion: recognition, obstructions, FPT solvers and a kernel."""
from .graph import Graph, GraphError
from .thread import (
    NecklaceDecomposition,
    ThreadBlock,
    ThreadDecomposition,
    canonical_thread_decomposition,
    is_thread_graph,
    merge,
)
from .necklace import Necklace, Other, Thread, classify_component, min_deletion_obn_free
from .obstructions import find_small_obstruction, load_catalog
from .solver import Instance, Solution, solve_branching
from .cwx import eval_kexpression, find_induced_subgraph_cwx, parse_kexpression, solve_branching_cwx
from .kernel import PAPER, TEST, Thresholds, kernelize, mu, sunflower_compress
from .io import read_graph, write_graph

__version__ = "0.1.0"
