import warnings

from paley_ricci import build_field, build_graph
from paley_ricci.curvature import (
    curvature_formula,
    curvature_from_matching,
    curvature_transport_oracle,
    curvature_record,
)
from paley_ricci.simple_graph import complete_graph

# complete graphs: every edge has curvature n/(n-1)
for n in (3, 5, 8):
    print(f"K_{n}:", curvature_transport_oracle(complete_graph(n), 0, 1))

# quadratic Paley graphs: closed form, matching route and optimal transport
for p, n in [(3, 2), (5, 2), (7, 2), (3, 4)]:
    G = build_graph(build_field(p, n), 2)
    r = curvature_record(G, 0, 1)
    print(f"P({G.q},2): formula {r.formula_value}  matching {r.matching_value}  transport {r.transport_value}")

# P(13, 2): 2 does not divide (13-1)/(13-1) = 1, so the closed form is only advisory
G = build_graph(build_field(13), 2)
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    value = curvature_formula(G, 0, 1)
print("P(13,2) formula:", value, "| warning:", caught[0].category.__name__)
print("P(13,2) matching:", curvature_from_matching(G, 0, 1), "transport:", curvature_transport_oracle(G, 0, 1))

# disconnected P(9,4) is three triangles: each edge looks like an edge of K_3
G = build_graph(build_field(3, 2), 4)
print("P(9,4):", {curvature_transport_oracle(G, x, y) for x, y in G.edges()})

# outside the hypothesis: in P(49, 3) the edge 0-1 has no perfect matching and
# the closed form overshoots the transport value
G = build_graph(build_field(7, 2), 3)
r = curvature_record(G, 0, 1)
print("P(49,3):", r.csv_row())
