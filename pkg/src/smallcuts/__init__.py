"""Near-minimum cut enumeration and approximation-set similarity for complete graphs."""
from ._backend import available as available_backends
from .enumeration import (
    ApproximationSet,
    EnumerationConfig,
    approximation_set,
    brute_force_approximation_set,
    contract,
    recursive_contract,
    stoer_wagner_min_cut,
)
from .graph import (
    ContractionState,
    Cut,
    Graph,
    WeightedCut,
    canonicalize,
    contract_edge,
    cut_weight,
    parse_graph,
    read_graph,
    write_graph,
)
from .similarity import (
    SimilarityReport,
    build_tables,
    composed_cuts,
    crossing,
    expected_intersection,
    intersect_sets,
    sweep_rho_star,
    unexpected_similarity,
)

__version__ = "0.1.0"
