"""Generalized Paley graphs P(q, k) and their connected components.

Vertices are the field indices ``0 .. q-1``; ``x ~ y`` iff ``x - y`` is a
nonzero k-th power. The graph is a Cayley graph of the additive group, so
adjacency is one subtraction and a bitmap lookup and shortest-path distances
are translation invariant.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import BadCongruence
from .finite_field import (
    FieldParams,
    FieldStructure,
    KPowerSubgroup,
    build_field,
    divisors,
    kth_power_subgroup,
    theta_k_subfield_degree,
)

__all__ = [
    "PaleyParams",
    "PaleyGraph",
    "ComponentReport",
    "SufficientChecks",
    "build_graph",
    "neighbors",
    "connected_by_theorem",
    "connected_by_bfs",
    "check_component_structure",
    "smallest_a_refinement",
    "sufficient_connectivity_checks",
    "affine_edge_map",
    "edge_transitivity_spotcheck",
]


@dataclass(frozen=True)
class PaleyParams:
    field: FieldParams
    k: int

    def __post_init__(self):
        q, k = self.field.q, self.k
        if k < 1:
            raise BadCongruence(f"k={k} must be positive")
        if k >= 2 and (q - 1) % (2 * k):
            raise BadCongruence(f"q={q} is not 1 mod 2k={2 * k}")

    @property
    def p(self):
        return self.field.p

    @property
    def n(self):
        return self.field.n

    @property
    def q(self):
        return self.field.q


class PaleyGraph:
    """P(q, k) over a fixed :class:`FieldStructure`.

    No edge list is stored; ``mask`` is the connection-set bitmap.
    """

    def __init__(self, F: FieldStructure, k: int):
        self.field = F
        self.params = PaleyParams(F.params, int(k))
        self.connection_set: KPowerSubgroup = kth_power_subgroup(F, self.params.k)
        self.mask = self.connection_set.mask
        self.shifts = np.asarray(self.connection_set.members, dtype=np.int64)

    def __repr__(self):
        return f"PaleyGraph(q={self.q}, k={self.k})"

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def order(self) -> int:
        return self.field.q

    @property
    def degree(self) -> int:
        return (self.q - 1) // self.k

    @property
    def edge_count(self) -> int:
        return self.q * self.degree // 2

    def vertices(self):
        return range(self.q)

    def is_edge(self, x, y):
        out = self.mask[self.field.sub(x, y)]
        return bool(out) if np.ndim(out) == 0 else out

    def neighbors(self, x) -> np.ndarray:
        return np.sort(self.field.add(int(x), self.shifts))

    def edges(self):
        """Yield every edge once as ``(x, y)`` with ``x < y``."""
        for x in range(self.q):
            for y in self.neighbors(x):
                if y > x:
                    yield x, int(y)

    def adjacency_matrix(self, vertices=None) -> np.ndarray:
        vs = np.arange(self.q) if vertices is None else np.asarray(vertices)
        return self.mask[self.field.sub(vs[:, None], vs[None, :])]

    @cached_property
    def distances_from_zero(self) -> np.ndarray:
        """Breadth-first distances from vertex 0; -1 marks unreachable vertices."""
        dist = _bfs(self, 0)
        dist.setflags(write=False)
        return dist

    def distance(self, u, v):
        out = self.distances_from_zero[self.field.sub(v, u)]
        return int(out) if np.ndim(out) == 0 else out

    def component_labels(self) -> np.ndarray:
        labels = np.full(self.q, -1, dtype=np.int64)
        current = 0
        for start in range(self.q):
            if labels[start] < 0:
                labels[_bfs(self, start) >= 0] = current
                current += 1
        return labels


def _bfs(G: PaleyGraph, source: int) -> np.ndarray:
    dist = np.full(G.q, -1, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        reach = np.unique(G.field.add(frontier[:, None], G.shifts[None, :]))
        frontier = reach[dist[reach] < 0]
        dist[frontier] = level
    return dist


def build_graph(F: FieldStructure, k: int) -> PaleyGraph:
    return PaleyGraph(F, k)


def neighbors(G: PaleyGraph, x) -> np.ndarray:
    return G.neighbors(x)


def connected_by_theorem(params: PaleyParams) -> bool:
    """Connectivity from divisibility alone.

    P(q, k) is disconnected exactly when ``(q-1)/(p^a-1)`` divides ``k`` for
    some proper divisor ``a`` of ``n``.
    """
    p, n, q, k = params.p, params.n, params.q, params.k
    return not any(k % ((q - 1) // (p**a - 1)) == 0 for a in divisors(n) if a < n)


@dataclass
class ComponentReport:
    p: int
    n: int
    k: int
    q: int
    connected: bool
    a: int
    k_prime: int
    component_count: int
    components: list = field(repr=False)
    theta_index: int = 0
    modulus_coeffs: tuple = ()
    verified: bool | None = None
    problems: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "k": self.k,
            "q": self.q,
            "connected": self.connected,
            "a": self.a,
            "k_prime": self.k_prime,
            "component_count": self.component_count,
            "theta_index": self.theta_index,
            "modulus_coeffs": list(self.modulus_coeffs),
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def connected_by_bfs(G: PaleyGraph, verify: bool = True) -> ComponentReport:
    """Exact components by breadth-first search.

    With ``verify`` the component structure is checked against the subfield
    description (see :func:`check_component_structure`); the outcome lands in
    ``report.verified`` and ``report.problems``.
    """
    F, k = G.field, G.k
    labels = G.component_labels()
    count = int(labels.max()) + 1
    comps = [np.flatnonzero(labels == c) for c in range(count)]
    comps.sort(key=lambda c: int(c[0]))
    a = theta_k_subfield_degree(F, k) if G.q > 1 else 1
    report = ComponentReport(
        p=F.p, n=F.n, k=k, q=F.q,
        connected=count == 1,
        a=a,
        k_prime=k * (F.p**a - 1) // (F.q - 1),
        component_count=count,
        components=comps,
        theta_index=F.theta,
        modulus_coeffs=F.modulus,
    )
    if verify:
        report.problems = check_component_structure(G, report)
        report.verified = not report.problems
    return report


def check_component_structure(G: PaleyGraph, report: ComponentReport) -> list[str]:
    """Compare BFS components with the subfield description; return mismatches.

    For a disconnected graph every component must have ``p^a`` vertices, the
    component of 0 must be the subfield GF(p^a), and each component must be
    edge-identical to P(p^a, k') under the subfield embedding followed by a
    translation to the component's smallest vertex.
    """
    F = G.field
    problems = []
    if report.connected != connected_by_theorem(G.params):
        problems.append("BFS verdict disagrees with the divisibility criterion")
    if report.connected:
        if report.a != F.n:
            problems.append(f"connected but smallest subfield degree a={report.a} < n")
        return problems
    size = F.p**report.a
    if report.component_count != F.q // size:
        problems.append(f"{report.component_count} components, expected {F.q // size}")
    if any(len(c) != size for c in report.components):
        problems.append(f"component sizes differ from p^a={size}")
    sub_elems = F.subfield_elements(report.a)
    if not np.array_equal(report.components[0], sub_elems):
        problems.append("component of 0 is not the subfield GF(p^a)")
    if report.k_prime < 1:
        problems.append(f"k'={report.k_prime} < 1")
        return problems
    Fa = build_field(F.p, report.a)
    H = build_graph(Fa, report.k_prime)
    emb = F.embed_subfield(Fa)
    H_adj = H.adjacency_matrix()
    for comp in report.components:
        rep = int(comp[0])
        image = F.add(emb, rep)
        if not np.array_equal(np.sort(image), comp):
            problems.append(f"component at {rep} is not the translated subfield")
            continue
        if not np.array_equal(G.adjacency_matrix(image), H_adj):
            problems.append(f"component at {rep} is not edge-identical to P({Fa.q},{report.k_prime})")
    return problems


def smallest_a_refinement(params: PaleyParams) -> list[tuple[int, int, bool]]:
    """For each proper divisor ``b > a`` with ``(q-1)/(p^b-1) | k``, report
    ``(b, k_b, P(p^b, k_b) is disconnected)``, checked by BFS.
    """
    p, n, q, k = params.p, params.n, params.q, params.k
    hits = [b for b in divisors(n) if b < n and k % ((q - 1) // (p**b - 1)) == 0]
    out = []
    for b in hits[1:]:
        kb = k * (p**b - 1) // (q - 1)
        Gb = build_graph(build_field(p, b), kb)
        out.append((b, kb, bool(Gb.component_labels().max() > 0)))
    return out


@dataclass(frozen=True)
class SufficientChecks:
    simple: bool
    km: bool


def sufficient_connectivity_checks(params: PaleyParams) -> SufficientChecks:
    """Two sufficient conditions for connectivity: ``k < sqrt(q) + 1`` and ``k | n``."""
    k, q, n = params.k, params.q, params.n
    return SufficientChecks(simple=(k - 1) ** 2 < q, km=n % k == 0)


def affine_edge_map(G: PaleyGraph, e1, e2) -> tuple[int, int]:
    """Coefficients ``(a, b)`` of ``t -> a t + b`` sending edge ``e1`` onto ``e2``."""
    F = G.field
    (x1, y1), (x2, y2) = e1, e2
    a = F.mul(F.sub(y2, x2), F.inv(F.sub(y1, x1)))
    b = F.sub(x2, F.mul(a, x1))
    return a, b


def edge_transitivity_spotcheck(G: PaleyGraph, sample_size: int, seed: int = 0) -> bool:
    """Check that affine maps carry sampled edges onto each other and preserve adjacency.

    ``sample_size`` edge pairs are drawn; each map is tested on ``sample_size``
    random vertices and all their neighbors. If ``sample_size`` reaches
    ``edge_count**2`` every ordered edge pair and every vertex is used.
    """
    F = G.field
    rng = np.random.default_rng(seed)
    all_edges = list(G.edges())
    if sample_size >= len(all_edges) ** 2:
        pairs = [(e1, e2) for e1 in all_edges for e2 in all_edges]
        test_vertices = np.arange(G.q)
    else:
        idx = rng.integers(len(all_edges), size=(sample_size, 2))
        pairs = [(all_edges[i], all_edges[j]) for i, j in idx]
        test_vertices = rng.integers(G.q, size=min(sample_size, G.q))
    nbrs = F.add(test_vertices[:, None], G.shifts[None, :])
    for e1, e2 in pairs:
        a, b = affine_edge_map(G, e1, e2)
        phi = lambda t: F.add(F.mul(a, t), b)  # noqa: E731
        if phi(e1[0]) != e2[0] or phi(e1[1]) != e2[1]:
            return False
        if not np.all(G.is_edge(phi(test_vertices)[:, None], phi(nbrs))):
            return False
    return True
