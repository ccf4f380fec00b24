from paley_ricci import build_field, build_graph, connected_by_bfs, connected_by_theorem

# P(q, k): join x and y when x - y is a nonzero k-th power
F = build_field(3, 4)
for k in (2, 4, 5, 10, 20, 40):
    G = build_graph(F, k)
    r = connected_by_bfs(G)
    print(f"P(81,{k:>2}): degree {G.degree:>2}  theorem says connected={connected_by_theorem(G.params)!s:5}"
          f"  BFS finds {r.component_count} component(s)")

# when disconnected, every component is a translated copy of P(p^a, k')
G = build_graph(F, 20)
r = connected_by_bfs(G)
print()
print(f"P(81,20): a={r.a}, k'={r.k_prime}, {r.component_count} components of size {len(r.components[0])}")
print("component of 0:", r.components[0].tolist())
print("equals GF(9) inside GF(81):", F.subfield_elements(2).tolist())
print("structure checks passed:", r.verified)
print(r.to_json())
