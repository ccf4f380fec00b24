"""Condensed (Lin-Lu-Yau) Ricci curvature of edges, computed three ways.

* :func:`curvature_formula` -- ``(2 + |common|) / d`` with ``d = (q-1)/k``;
  the closed form claimed when ``k | (q-1)/(p-1)``.
* :func:`curvature_from_matching` -- ``(2 + |common| - (|N_x| - m)) / d``
  with ``m`` a maximum matching size between ``N_x`` and ``N_y``.
* :func:`curvature_transport_oracle` -- straight from the definition, by
  exact optimal transport.

For a ``d``-regular graph the lazy-walk curvature ``kappa_alpha`` is linear in
the idleness ``alpha`` on ``[1/(d+1), 1]``, so the limit curvature
``lim kappa_alpha / (1 - alpha)`` equals the ratio at ``alpha = 1/(d+1)``.
There the lazy measure is uniform on the closed neighborhood, and after
scaling by ``d (d+1)`` every atom carries the same integer mass; the
transport problem is then an assignment problem with integer costs and is
solved exactly. All values are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DisconnectedPair, HypothesisNotClaimed, NotAnEdge
from .matching import edge_neighborhood, max_matching_oracle
from .paley_graph import PaleyGraph

__all__ = [
    "CSV_COLUMNS",
    "CurvatureRecord",
    "formula_claimed",
    "nabla_size",
    "curvature_formula",
    "curvature_from_matching",
    "curvature_transport_oracle",
    "wasserstein1_exact",
    "curvature_positivity_complete_check",
    "curvature_record",
]

CSV_COLUMNS = (
    "p", "n", "k", "q", "x", "y", "nabla",
    "formula_num", "formula_den",
    "matching_num", "matching_den",
    "transport_num", "transport_den",
    "agree",
)


def _require_edge(G, x, y):
    if x == y or not G.is_edge(x, y):
        raise NotAnEdge(f"{x}-{y} is not an edge")


def formula_claimed(G) -> bool:
    """Whether ``k | (q-1)/(p-1)``, the hypothesis under which the closed form holds.

    Explicit test-double graphs (complete graphs) always qualify.
    """
    if not isinstance(G, PaleyGraph):
        return G.degree == G.order - 1
    F = G.field
    return ((F.q - 1) // (F.p - 1)) % G.k == 0


def nabla_size(G, x: int, y: int) -> int:
    """Number of common neighbors of the endpoints of the edge ``xy``."""
    _require_edge(G, x, y)
    return int(np.intersect1d(G.neighbors(x), G.neighbors(y), assume_unique=True).size)


def curvature_formula(G, x: int, y: int) -> Fraction:
    """``(k/(q-1)) (2 + |common|)``.

    Outside ``k | (q-1)/(p-1)`` the value is still returned, with a
    :class:`HypothesisNotClaimed` warning.
    """
    common = nabla_size(G, x, y)
    if not formula_claimed(G):
        warnings.warn(
            f"closed curvature formula is not claimed for {G!r}; value is advisory",
            HypothesisNotClaimed,
            stacklevel=2,
        )
    return Fraction(2 + common, G.degree)


def curvature_from_matching(G, x: int, y: int) -> Fraction:
    nb = edge_neighborhood(G, x, y)
    m = max_matching_oracle(G, x, y)
    return Fraction(2 + len(nb.common) - (len(nb.n_x) - m), G.degree)


def wasserstein1_exact(supply, demand, cost) -> int:
    """Exact minimum transport cost for integer masses and integer costs.

    ``supply`` and ``demand`` are integer mass vectors with equal totals and
    ``cost[i, j]`` the integer ground cost. Equal atoms reduce to an
    assignment problem; anything else goes to network simplex.
    """
    supply = np.asarray(supply, dtype=np.int64)
    demand = np.asarray(demand, dtype=np.int64)
    cost = np.asarray(cost, dtype=np.int64)
    if supply.sum() != demand.sum():
        raise ValueError("supply and demand totals differ")
    atoms = np.concatenate([supply, demand])
    if atoms.size and np.all(atoms == atoms[0]) and supply.size == demand.size:
        rows, cols = linear_sum_assignment(cost)
        return int(atoms[0]) * int(cost[rows, cols].sum())
    flow = nx.DiGraph()
    for i, s in enumerate(supply):
        flow.add_node(("s", i), demand=-int(s))
    for j, t in enumerate(demand):
        flow.add_node(("t", j), demand=int(t))
    for i in range(supply.size):
        for j in range(demand.size):
            flow.add_edge(("s", i), ("t", j), weight=int(cost[i, j]))
    total, _ = nx.network_simplex(flow)
    return int(total)


def curvature_transport_oracle(G, x: int, y: int) -> Fraction:
    """Limit curvature of the edge ``xy`` by exact optimal transport.

    ``kappa = (1 - W1(mu_x, mu_y)) / (1 - alpha)`` at ``alpha = 1/(d+1)``,
    where ``mu_v`` keeps mass ``alpha`` at ``v`` and spreads ``(1-alpha)/d``
    over its neighbors, and ``W1`` uses shortest-path distances.
    """
    x, y = int(x), int(y)
    _require_edge(G, x, y)
    d = G.degree
    alpha = Fraction(1, d + 1)
    scale = d * (d + 1)
    center = alpha * scale
    spread = (1 - alpha) / d * scale
    assert center.denominator == 1 and spread.denominator == 1

    bx = np.concatenate([[x], G.neighbors(x)])
    by = np.concatenate([[y], G.neighbors(y)])
    supply = np.array([int(center)] + [int(spread)] * d)
    demand = np.array([int(center)] + [int(spread)] * d)
    cost = np.asarray(G.distance(bx[:, None], by[None, :]), dtype=np.int64)
    if np.any(cost < 0):
        raise DisconnectedPair(f"supports of {x} and {y} lie in different components")

    w1 = Fraction(wasserstein1_exact(supply, demand, cost), scale)
    return (1 - w1) / (1 - alpha)


def curvature_positivity_complete_check(G) -> bool:
    """Whether every edge has curvature above 1 (by the oracle).

    Raises ``AssertionError`` if the answer disagrees with ``G`` being complete.
    """
    positive = all(curvature_transport_oracle(G, x, y) > 1 for x, y in G.edges())
    complete = G.degree == G.order - 1
    if positive != complete:
        raise AssertionError(f"curvature > 1 on all edges is {positive} but completeness is {complete}")
    return positive


@dataclass(frozen=True)
class CurvatureRecord:
    p: int
    n: int
    k: int
    q: int
    x: int
    y: int
    nabla: int
    formula_value: Fraction
    matching_value: Fraction | None = None
    transport_value: Fraction | None = None
    claimed: bool = True

    @property
    def agree(self) -> bool:
        values = {v for v in (self.formula_value, self.matching_value, self.transport_value) if v is not None}
        return len(values) == 1

    def csv_row(self) -> list:
        def parts(v):
            return ("", "") if v is None else (v.numerator, v.denominator)

        return [
            self.p, self.n, self.k, self.q, self.x, self.y, self.nabla,
            *parts(self.formula_value),
            *parts(self.matching_value),
            *parts(self.transport_value),
            str(self.agree).lower(),
        ]

    def to_dict(self) -> dict:
        return dict(zip(CSV_COLUMNS, self.csv_row()))


def curvature_record(G: PaleyGraph, x: int, y: int, *, oracle: bool = True, matching: bool = True) -> CurvatureRecord:
    F = G.field
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisNotClaimed)
        formula = curvature_formula(G, x, y)
    return CurvatureRecord(
        p=F.p, n=F.n, k=G.k, q=F.q, x=int(x), y=int(y),
        nabla=nabla_size(G, x, y),
        formula_value=formula,
        matching_value=curvature_from_matching(G, x, y) if matching else None,
        transport_value=curvature_transport_oracle(G, x, y) if oracle else None,
        claimed=formula_claimed(G),
    )
