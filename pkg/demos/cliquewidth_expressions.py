"""Describe a graph by a 3-expression, search it for obstructions, and solve on it."""
from lrw1 import eval_kexpression, find_induced_subgraph_cwx, parse_kexpression, solve_branching_cwx
from lrw1.graph import path_graph, complete_graph

text = ("join(1,3, un( ren(3,2, join(2,3, un( join(1,2, un(add(1,a),add(2,b))),"
        " join(1,3, un(add(3,c),add(1,d))) ))), add(3,e)))")
e = parse_kexpression(text)
g, labels = eval_kexpression(e)
print("edges:", sorted("".join(sorted(g.name(x) for x in uv)) for uv in g.edges()))
print("final labels:", labels)

print("induced P4:", find_induced_subgraph_cwx(e, path_graph(4)))
print("triangle:", find_induced_subgraph_cwx(e, complete_graph(3)))

sol = solve_branching_cwx(e, 1)
print("delete to reach a thread graph:", sorted(sol.deletion_set))
