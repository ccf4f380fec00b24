import json

import networkx as nx
import numpy as np
import pytest

from paley_ricci.errors import DegenerateN1, NotAnEdge, PreconditionViolated
from paley_ricci.finite_field import prime_subfield_in_kpowers
from paley_ricci.matching import (
    Matching,
    edge_neighborhood,
    max_matching_oracle,
    maximum_matching,
    perfect_matching_via_sorting,
    sort_cells,
    transport_matching,
    validate_matching,
)
from paley_ricci.paley_graph import connected_by_theorem
from paley_ricci.simple_graph import complete_graph

from conftest import admissible, graph


def test_neighborhood_examples():
    nb = edge_neighborhood(graph(3, 2, 2), 0, 1)
    assert len(nb.common) == 1 and len(nb.n_x) == len(nb.n_y) == 2
    nb = edge_neighborhood(complete_graph(4), 0, 3)
    assert nb.n_x == nb.n_y == () and len(nb.common) == 2
    nb = edge_neighborhood(graph(13, 1, 2), 0, 1)
    assert len(nb.common) == (13 - 5) // 4
    with pytest.raises(NotAnEdge):
        edge_neighborhood(graph(13, 1, 2), 0, 2)
    with pytest.raises(NotAnEdge):
        edge_neighborhood(graph(13, 1, 2), 3, 3)


@pytest.mark.parametrize("p,n,k", admissible(200))
def test_neighborhood_decomposition(p, n, k):
    G = graph(p, n, k)
    for x, y in [(0, 1), (2 % G.q, int(G.field.add(2 % G.q, int(G.shifts[-1]))))]:
        nb = edge_neighborhood(G, x, y)
        gx, gy = set(G.neighbors(x).tolist()), set(G.neighbors(y).tolist())
        assert set(nb.n_x) | set(nb.common) | {y} == gx
        assert set(nb.n_y) | set(nb.common) | {x} == gy
        assert len(nb.n_x) + len(nb.common) + 1 == len(gx)
        assert len(nb.n_x) == len(nb.n_y)


def test_sort_cells_p9():
    G = graph(3, 2, 2)
    cells = sort_cells(G)
    assert [c.tail for c in cells] == [(1,), (2,)]
    assert sum(len(c.left) for c in cells) == 2
    for c in cells:
        for v in c.left + c.right:
            assert tuple(G.field.theta_coords[v, 1:]) == c.tail


def test_sort_cells_preconditions():
    with pytest.raises(DegenerateN1):
        sort_cells(graph(13, 1, 2))
    with pytest.raises(PreconditionViolated):
        sort_cells(graph(5, 2, 4))  # (25-1)/(5-1) = 6 is not a multiple of 4


def _sorting_instances(cap):
    out = []
    for p, n, k in admissible(cap):
        G = graph(p, n, k)
        if n >= 2 and connected_by_theorem(G.params) and prime_subfield_in_kpowers(G.field, k):
            out.append((p, n, k))
    return out


@pytest.mark.parametrize("p,n,k", _sorting_instances(800))
def test_cells_partition_balance_and_completeness(p, n, k):
    G = graph(p, n, k)
    F = G.field
    nb = edge_neighborhood(G, 0, 1)
    cells = sort_cells(G)
    lefts = [v for c in cells for v in c.left]
    rights = [v for c in cells for v in c.right]
    assert sorted(lefts) == list(nb.n_x) and sorted(rights) == list(nb.n_y)
    for c in cells:
        assert len(c.left) == len(c.right)
        for u in c.left:
            for v in c.right:
                assert G.is_edge(u, v)
                # same tail means the difference is a nonzero prime-field scalar
                assert 0 < F.sub(u, v) < F.p
    # cells are cosets of the prime field, whatever the basis
    for c in cells:
        members = c.left + c.right
        if members:
            base = members[0]
            coset = {F.add(base, b) for b in range(F.p)}
            assert set(members) <= coset


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_sorting_matching_quadratic_even_power(p):
    G = graph(p, 2, 2)
    M = perfect_matching_via_sorting(G)
    assert validate_matching(G, M) == []
    assert len(M) == len(edge_neighborhood(G, 0, 1).n_x) == max_matching_oracle(G, 0, 1)


def test_sorting_matching_p9():
    M = perfect_matching_via_sorting(graph(3, 2, 2))
    assert M.pairs == ((3, 4), (6, 7))


@pytest.mark.parametrize("p,n,k", [(3, 2, 4), (5, 2, 6), (3, 4, 20), (3, 4, 40), (3, 4, 10)])
def test_sorting_matching_disconnected(p, n, k):
    G = graph(p, n, k)
    assert not connected_by_theorem(G.params)
    M = perfect_matching_via_sorting(G)
    assert validate_matching(G, M) == []
    assert len(M) == max_matching_oracle(G, 0, 1)


def test_empty_matching_for_complete_components():
    assert perfect_matching_via_sorting(graph(3, 2, 4)).pairs == ()
    assert max_matching_oracle(complete_graph(5), 0, 1) == 0


def test_transport_examples():
    G = graph(3, 2, 2)
    M = perfect_matching_via_sorting(G)
    assert transport_matching(G, M, 0, 1).pairs == M.pairs
    theta_sq = G.field.pow(G.field.theta, 2)
    T = transport_matching(G, M, 0, theta_sq)
    assert validate_matching(G, T) == []

    G13 = graph(13, 1, 2)
    M13 = maximum_matching(G13, 0, 1)
    T = transport_matching(G13, M13, 1, 4)
    assert T.pairs == tuple((int((3 * u + 1) % 13), int((3 * v + 1) % 13)) for u, v in M13.pairs)
    assert validate_matching(G13, T) == []
    with pytest.raises(NotAnEdge):
        transport_matching(G13, M13, 0, 2)


@pytest.mark.parametrize("p,n,k", _sorting_instances(2500)[:12])
def test_transport_to_every_edge_from_zero(p, n, k):
    G = graph(p, n, k)
    M = perfect_matching_via_sorting(G)
    rng = np.random.default_rng(p + n + k)
    for x in rng.integers(G.q, size=4):
        for s in rng.choice(G.shifts, size=3):
            y = G.field.add(int(x), int(s))
            assert validate_matching(G, transport_matching(G, M, int(x), y)) == []


@pytest.mark.parametrize("p,n,k", admissible(150))
def test_maximum_matching_against_networkx(p, n, k):
    G = graph(p, n, k)
    nb = edge_neighborhood(G, 0, 1)
    H = nx.Graph()
    H.add_nodes_from(("L", u) for u in nb.n_x)
    H.add_nodes_from(("R", v) for v in nb.n_y)
    H.add_edges_from((("L", u), ("R", v)) for u in nb.n_x for v in nb.n_y if G.is_edge(u, v))
    expected = len(nx.max_weight_matching(H, maxcardinality=True))
    M = maximum_matching(G, 0, 1)
    assert len(M) == expected
    assert all(G.is_edge(u, v) for u, v in M.pairs)
    assert len({u for u, _ in M.pairs}) == len({v for _, v in M.pairs}) == len(M)


def test_matching_json_roundtrip():
    M = perfect_matching_via_sorting(graph(5, 2, 2))
    data = json.loads(M.to_json())
    assert set(data) == {"edge", "pairs", "method"}
    assert data["method"] == "sorting" and data["edge"] == [0, 1]
    assert Matching.from_dict(data) == M
    A = maximum_matching(graph(13, 1, 2), 0, 1)
    assert json.loads(A.to_json())["method"] == "augmenting"


def test_validate_matching_reports_problems():
    G = graph(3, 2, 2)
    bad = Matching((0, 1), ((3, 7), (6, 4)), "sorting")
    assert validate_matching(G, bad) == ["2 pairs are not edges, e.g. (3, 7)"]
    short = validate_matching(G, Matching((0, 1), ((3, 4),), "sorting"))
    assert len(short) == 2 and all("not exactly" in p for p in short)
