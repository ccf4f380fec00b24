"""Generalized Paley graphs over GF(p^n): connectivity, neighborhood matchings
and exact condensed Ricci curvature."""
from .curvature import (
    CurvatureRecord,
    curvature_formula,
    curvature_from_matching,
    curvature_positivity_complete_check,
    curvature_record,
    curvature_transport_oracle,
    formula_claimed,
    nabla_size,
)
from .errors import *  # noqa: F401,F403
from .finite_field import (
    FieldElement,
    FieldParams,
    FieldStructure,
    KPowerSubgroup,
    build_field,
    corollary_kn_check,
    is_kth_power,
    kth_power_subgroup,
    prime_subfield_in_kpowers,
    theta_k_subfield_degree,
)
from .matching import (
    EdgeNeighborhood,
    Matching,
    SortCell,
    edge_neighborhood,
    max_matching_oracle,
    maximum_matching,
    perfect_matching_via_sorting,
    sort_cells,
    transport_matching,
    validate_matching,
)
from .paley_graph import (
    ComponentReport,
    PaleyGraph,
    PaleyParams,
    build_graph,
    connected_by_bfs,
    connected_by_theorem,
    edge_transitivity_spotcheck,
    neighbors,
    sufficient_connectivity_checks,
)
from .simple_graph import SimpleGraph, complete_graph

__version__ = "0.1.0"
