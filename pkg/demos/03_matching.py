from paley_ricci import build_field, build_graph
from paley_ricci.matching import (
    edge_neighborhood,
    maximum_matching,
    perfect_matching_via_sorting,
    sort_cells,
    transport_matching,
    validate_matching,
)

# edge 0-1 in P(25, 2): split the neighbors into exclusive and common parts
F = build_field(5, 2)
G = build_graph(F, 2)
nb = edge_neighborhood(G, 0, 1)
print("N_0     :", nb.n_x)
print("N_1     :", nb.n_y)
print("common  :", nb.common)

# group N_0 and N_1 by their theta coordinate; each group is complete bipartite
for cell in sort_cells(G):
    if cell.left:
        print("tail", cell.tail, "left", cell.left, "right", cell.right)

M = perfect_matching_via_sorting(G)
print("sorting matching:", M.pairs)
print("problems:", validate_matching(G, M))
print("augmenting-path maximum has size", len(maximum_matching(G, 0, 1)))

# an affine map moves the matching to any other edge
x, y = 7, int(F.add(7, int(G.shifts[3])))
T = transport_matching(G, M, x, y)
print(f"moved to edge {x}-{y}:", T.pairs, validate_matching(G, T))

# P(13, 2) has no sorting (GF(13) has no coordinates); it still has a perfect matching
G13 = build_graph(build_field(13), 2)
print("P(13,2) maximum matching on 0-1:", maximum_matching(G13, 0, 1).pairs)
