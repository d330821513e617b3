"""Low-stretch spanning trees of weighted multigraphs via star decompositions."""
from .decomposition import (
    DELTA,
    ConePartition,
    CutInvariantError,
    CutRecord,
    StarDecomposition,
    ball_cut,
    cone,
    cone_cut,
    cone_decomp,
    imp_cone_decomp,
    imp_star_decomp,
    star_decomp,
)
from .edgelist import EdgeListError, format_edge_list, parse_edge_list, read_edge_list, write_edge_list
from .generators import generate
from .graph import (
    ContractionResult,
    DisconnectedGraphError,
    DistanceField,
    GraphError,
    Subgraph,
    WeightedMultigraph,
    ball,
    ball_shell,
    boundary_of,
    build_graph,
    contract_short_edges,
    cost_of,
    induced_subgraph,
    multi_source_distances,
    radius_from,
    volume_of,
)
from .metrics import (
    Report,
    StretchReport,
    stretch_bound,
    stretch_report,
    validate_star_decomposition,
    validate_tree,
)
from .tree import (
    BuilderParams,
    BuildStats,
    SpanningTree,
    build_tree,
    imp_low_stretch_tree,
    low_stretch_tree,
    unweighted_low_stretch_tree,
)

__version__ = "0.1.0"
