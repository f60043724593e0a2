"""The 21 small obstructions to linear rankwidth one, and how to find them."""
from lrw1.graph import Graph
from lrw1.obstructions import enumerate_obstruction_occurrences, find_long_induced_cycle, find_small_obstruction, load_catalog

cat = load_catalog()
print(f"{len(cat.members)} obstructions:")
for m in cat.members:
    note = f" ({m.annotation})" if m.annotation else ""
    print(f"  {m.name:>10}{note}: n={m.graph.n} m={m.graph.m}")

# a ladder with its middle rung missing: the rim around the gap is a 6-hole
ladder = Graph.from_edges(10, [(i, i + 1) for i in range(4)] + [(i, i + 1) for i in range(5, 9)]
                          + [(i, i + 5) for i in range(5) if i != 2])
hit = find_small_obstruction(ladder)
print("\nfirst hit in the ladder:", cat.members[hit.catalog_id].name, hit.vertex_list())
print("all occurrences:", len(enumerate_obstruction_occurrences(ladder)))

big_hole = Graph.from_edges(11, [(i, (i + 1) % 11) for i in range(11)])
print("an 11-cycle has no small obstruction:", find_small_obstruction(big_hole) is None,
      "but has a long hole:", find_long_induced_cycle(big_hole))
