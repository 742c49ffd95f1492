"""Overlapping community detection by two-step cluster expansion.

Step 1 builds a disjoint partition (Louvain or spectral); step 2 grows each
community by admitting outside vertices whose connectivity beats a
theta-scaled null, a cosine bound in a walk embedding, or a neighbor
fraction. Covers are scored with overlap-aware modularity and ONMI.
"""

from ._kernels import BACKEND, warmup
from .bench import (
    ALGORITHMS,
    PlantedParams,
    SweepReport,
    SweepRow,
    default_grid,
    load_lfr,
    planted_overlap_graph,
    run_algorithm,
    sweep,
)
from .graph import (
    Cover,
    Graph,
    GraphFormatError,
    Partition,
    graph_from_edges,
    load_cover,
    load_edge_list,
    strongly_connected,
    write_cover,
    write_edge_list,
)
from .metrics import (
    belonging_coefficients,
    onmi,
    overlap_modularity_avg,
    overlap_modularity_q0,
    theta_modularity,
)
from .overlap import (
    MembershipDecision,
    OverlapParams,
    OverlapResult,
    baseline_parameterized_overlap,
    cosine_overlap,
    delta_q_theta,
    delta_q_theta_directed,
    delta_q_theta_stationary,
    di_cosine_overlap,
    di_paramet_d_modularity_overlap,
    di_paramet_sd_modularity_overlap,
    paramet_modularity_overlap,
)
from .partition import ClusteringConfig, louvain, modularity, spectral_partition
from .walks import (
    ConvergenceError,
    Embedding,
    StationaryDistribution,
    diplacian,
    diplacian_embedding,
    embedding_to_csv,
    stationary_distribution,
    walk_profile,
    walktrap_embedding,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BACKEND",
    "ClusteringConfig",
    "ConvergenceError",
    "Cover",
    "Embedding",
    "Graph",
    "GraphFormatError",
    "MembershipDecision",
    "OverlapParams",
    "OverlapResult",
    "Partition",
    "PlantedParams",
    "StationaryDistribution",
    "SweepReport",
    "SweepRow",
    "__version__",
    "baseline_parameterized_overlap",
    "belonging_coefficients",
    "cosine_overlap",
    "default_grid",
    "delta_q_theta",
    "delta_q_theta_directed",
    "delta_q_theta_stationary",
    "di_cosine_overlap",
    "di_paramet_d_modularity_overlap",
    "di_paramet_sd_modularity_overlap",
    "diplacian",
    "diplacian_embedding",
    "embedding_to_csv",
    "graph_from_edges",
    "load_cover",
    "load_edge_list",
    "load_lfr",
    "louvain",
    "modularity",
    "onmi",
    "overlap_modularity_avg",
    "overlap_modularity_q0",
    "paramet_modularity_overlap",
    "planted_overlap_graph",
    "run_algorithm",
    "spectral_partition",
    "stationary_distribution",
    "strongly_connected",
    "sweep",
    "theta_modularity",
    "walk_profile",
    "walktrap_embedding",
    "warmup",
    "write_cover",
    "write_edge_list",
]
