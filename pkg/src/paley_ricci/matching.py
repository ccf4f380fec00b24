"""Perfect matchings between the exclusive neighborhoods of an edge.

For an edge ``xy`` the neighbors split as ``Γ(x) = N_x ⊔ common ⊔ {y}`` and
``Γ(y) = N_y ⊔ common ⊔ {x}``. When every nonzero element of GF(p) is a k-th
power, the elements of ``N_0`` and ``N_1`` (edge ``01``) can be grouped by
their coordinates on ``theta, ..., theta^(n-1)``: within a group any two
elements differ by a nonzero prime-field scalar, so each group is a complete
bipartite graph with equally many vertices on both sides. Pairing inside
groups gives a perfect matching, and the affine map ``t -> (y-x) t + x``
moves it to any other edge.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import DegenerateN1, NotAnEdge, PreconditionViolated
from .finite_field import build_field, prime_subfield_in_kpowers, theta_k_subfield_degree
from .paley_graph import PaleyGraph, build_graph, connected_by_theorem

__all__ = [
    "EdgeNeighborhood",
    "SortCell",
    "Matching",
    "edge_neighborhood",
    "sort_cells",
    "perfect_matching_via_sorting",
    "transport_matching",
    "maximum_matching",
    "max_matching_oracle",
    "validate_matching",
]


@dataclass(frozen=True)
class EdgeNeighborhood:
    edge: tuple[int, int]
    n_x: tuple[int, ...]
    n_y: tuple[int, ...]
    common: tuple[int, ...]


@dataclass(frozen=True)
class SortCell:
    tail: tuple[int, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]

    @property
    def balanced(self) -> bool:
        return len(self.left) == len(self.right)


@dataclass(frozen=True)
class Matching:
    edge: tuple[int, int]
    pairs: tuple[tuple[int, int], ...]
    method: str = "sorting"

    def __len__(self):
        return len(self.pairs)

    def to_dict(self) -> dict:
        return {"edge": list(self.edge), "pairs": [list(pr) for pr in self.pairs], "method": self.method}

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "Matching":
        return cls(
            edge=tuple(data["edge"]),
            pairs=tuple(tuple(pr) for pr in data["pairs"]),
            method=data["method"],
        )


def edge_neighborhood(G, x: int, y: int) -> EdgeNeighborhood:
    x, y = int(x), int(y)
    if x == y or not G.is_edge(x, y):
        raise NotAnEdge(f"{x}-{y} is not an edge")
    gx = set(G.neighbors(x).tolist())
    gy = set(G.neighbors(y).tolist())
    common = gx & gy
    return EdgeNeighborhood(
        edge=(x, y),
        n_x=tuple(sorted(gx - common - {y})),
        n_y=tuple(sorted(gy - common - {x})),
        common=tuple(sorted(common)),
    )


def _check_sorting_hypothesis(G: PaleyGraph) -> None:
    F = G.field
    if F.n == 1:
        raise DegenerateN1("GF(p) has no nonzero coordinate tails; use max_matching_oracle")
    if not prime_subfield_in_kpowers(F, G.k):
        raise PreconditionViolated(
            f"GF({F.p})^x is not inside the {G.k}-th powers of GF({F.q})"
        )


def sort_cells(G: PaleyGraph) -> list[SortCell]:
    """Group ``N_0`` and ``N_1`` of the edge ``01`` by theta-coordinate tails.

    One cell per nonzero tail ``(a_1, ..., a_{n-1})``, in lexicographic order;
    cells may be empty.
    """
    _check_sorting_hypothesis(G)
    F = G.field
    nb = edge_neighborhood(G, 0, 1)
    coords = F.theta_coords
    left, right = defaultdict(list), defaultdict(list)
    for u in nb.n_x:
        left[tuple(int(c) for c in coords[u, 1:])].append(u)
    for v in nb.n_y:
        right[tuple(int(c) for c in coords[v, 1:])].append(v)
    cells = []
    for tail in product(range(F.p), repeat=F.n - 1):
        if any(tail):
            cells.append(SortCell(tail, tuple(sorted(left[tail])), tuple(sorted(right[tail]))))
    return cells


def perfect_matching_via_sorting(G: PaleyGraph) -> Matching:
    """Perfect matching between ``N_0`` and ``N_1`` built from the sorting cells.

    Both sides of a cell are sorted by vertex index and paired positionally.
    A disconnected graph is handled on the component of 0, which is
    P(p^a, k') carried into G by the subfield embedding; complete components
    (``k' == 1``) give the empty matching.
    """
    if not connected_by_theorem(G.params):
        return _matching_via_component(G)
    pairs = []
    for cell in sort_cells(G):
        if not cell.balanced:
            raise RuntimeError(f"unbalanced sorting cell {cell.tail}: {len(cell.left)} vs {len(cell.right)}")
        pairs.extend(zip(cell.left, cell.right))
    return Matching((0, 1), tuple(sorted(pairs)), "sorting")


def _matching_via_component(G: PaleyGraph) -> Matching:
    F = G.field
    if not prime_subfield_in_kpowers(F, G.k):
        raise PreconditionViolated(
            f"GF({F.p})^x is not inside the {G.k}-th powers of GF({F.q})"
        )
    a = theta_k_subfield_degree(F, G.k)
    k_prime = G.k * (F.p**a - 1) // (F.q - 1)
    if k_prime == 1:
        return Matching((0, 1), (), "sorting")
    Fa = build_field(F.p, a)
    sub = perfect_matching_via_sorting(build_graph(Fa, k_prime))
    emb = F.embed_subfield(Fa)
    # the embedding fixes 0 and 1, so the edge 01 is preserved
    return Matching((0, 1), tuple(sorted((int(emb[u]), int(emb[v])) for u, v in sub.pairs)), "sorting")


def transport_matching(G: PaleyGraph, M: Matching, x: int, y: int) -> Matching:
    """Carry a matching for the edge ``01`` to the edge ``xy`` via ``t -> (y-x) t + x``."""
    x, y = int(x), int(y)
    if x == y or not G.is_edge(x, y):
        raise NotAnEdge(f"{x}-{y} is not an edge")
    if tuple(M.edge) != (0, 1):
        raise ValueError(f"expected a matching for the edge (0, 1), got {M.edge}")
    F = G.field
    scale = F.sub(y, x)
    if not M.pairs:
        return Matching((x, y), (), M.method)
    arr = np.asarray(M.pairs, dtype=np.int64)
    moved = F.add(F.mul(scale, arr), x)
    return Matching((x, y), tuple((int(u), int(v)) for u, v in moved), M.method)


def maximum_matching(G, x: int, y: int) -> Matching:
    """Maximum-cardinality matching between ``N_x`` and ``N_y`` (Hopcroft-Karp)."""
    nb = edge_neighborhood(G, x, y)
    if not nb.n_x or not nb.n_y:
        return Matching(nb.edge, (), "augmenting")
    left = np.asarray(nb.n_x)
    right = np.asarray(nb.n_y)
    bi = csr_matrix(np.asarray(G.is_edge(left[:, None], right[None, :]), dtype=np.int8))
    match = maximum_bipartite_matching(bi, perm_type="column")
    pairs = tuple((int(left[i]), int(right[j])) for i, j in enumerate(match) if j >= 0)
    return Matching(nb.edge, pairs, "augmenting")


def max_matching_oracle(G, x: int, y: int) -> int:
    return len(maximum_matching(G, x, y))


def validate_matching(G, M: Matching) -> list[str]:
    """Problems that keep ``M`` from being a perfect matching of ``N_x`` onto ``N_y``."""
    x, y = M.edge
    nb = edge_neighborhood(G, x, y)
    problems = []
    lefts = [u for u, _ in M.pairs]
    rights = [v for _, v in M.pairs]
    if sorted(lefts) != list(nb.n_x):
        problems.append("left endpoints are not exactly N_x")
    if sorted(rights) != list(nb.n_y):
        problems.append("right endpoints are not exactly N_y")
    bad = [pr for pr in M.pairs if not G.is_edge(*pr)]
    if bad:
        problems.append(f"{len(bad)} pairs are not edges, e.g. {bad[0]}")
    return problems
