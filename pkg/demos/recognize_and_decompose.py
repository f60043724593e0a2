"""Build a thread graph from random blocks, recognize it, and take it apart again.

Then wrap the construction around a cycle: the result is a necklace, which is
not a thread graph, but becomes one after deleting any anchor.
"""
from lrw1 import canonical_thread_decomposition, classify_component, is_thread_graph
from lrw1.generators import gen_necklace, gen_thread_graph
from lrw1.oracle import linear_rankwidth_exact
from lrw1.thread import merge_decomposition

g, _ = gen_thread_graph(blocks=4, block_size_range=(2, 4), seed=7)
print(f"thread graph: n={g.n} m={g.m}, lrw={linear_rankwidth_exact(g)}, recognized={is_thread_graph(g)}")

d = canonical_thread_decomposition(g)
print("anchors:", d.anchors)
for b in d.blocks:
    print("  block", list(zip(b.order, b.labels)))
print("merging the blocks gives back the graph:", merge_decomposition(d, g.n) == g)

nk, _ = gen_necklace(cycle_len=9, block_size_range=(2, 3), seed=7)
c = classify_component(nk)
print(f"\nnecklace: n={nk.n}, thread={is_thread_graph(nk)}, classified as {c.kind}")
a = c.decomposition.anchors[0]
print(f"deleting anchor {a} leaves a thread graph:", is_thread_graph(nk.delete_vertices(1 << a)[0]))
