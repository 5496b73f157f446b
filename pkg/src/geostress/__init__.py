"""geostress: weighted squared-stress embedding of finite metric spaces.

One objective, sum_ij w_ij (||x_i - x_j||^2 - d_ij^2)^2, covers
least-square scaling (all weights 1), nonlinear mapping (weights decay
with distance) and the distance geometry problem (boolean weights).
"""

from .model import (
    Constant,
    DistanceGraph,
    DistanceMatrix,
    ExpDecay,
    Heaviside,
    PointCloud,
    PowerDecay,
    SammonInverse,
    TanhSigmoid,
    ValidationError,
    WeightMatrix,
    build_weight_matrix,
    center,
    eval_weight,
    graph_from_weights,
    is_connected,
    parse_weight_family,
    threshold_graph,
)
from .stress import dgp_residual, stress, stress_gradient
from .linalg import classical_mds, euclidean_embeddability, gram_from_distances, symmetric_eigen
from .isomap import DisconnectedGraphError, all_pairs_shortest_paths, isomap_embed
from .optimize import (
    OptimConfig,
    OptimResult,
    basin_hopping,
    local_minimize,
    multi_start_solutions,
    solution_sample,
    solve_nlm,
)
from .compare import congruence_distance, hausdorff_points, solution_set_distance
from .experiments import (
    continuity_sweep,
    gen_ring,
    heaviside_convergence,
    rigidity_demo,
    zero_weight_demo,
)
from .estimator import StressEmbedding

__version__ = "0.1.0"

__all__ = [
    "Constant",
    "DistanceGraph",
    "DistanceMatrix",
    "DisconnectedGraphError",
    "ExpDecay",
    "Heaviside",
    "OptimConfig",
    "OptimResult",
    "PointCloud",
    "PowerDecay",
    "SammonInverse",
    "StressEmbedding",
    "TanhSigmoid",
    "ValidationError",
    "WeightMatrix",
    "all_pairs_shortest_paths",
    "basin_hopping",
    "build_weight_matrix",
    "center",
    "classical_mds",
    "congruence_distance",
    "continuity_sweep",
    "dgp_residual",
    "euclidean_embeddability",
    "eval_weight",
    "gen_ring",
    "gram_from_distances",
    "graph_from_weights",
    "hausdorff_points",
    "heaviside_convergence",
    "is_connected",
    "isomap_embed",
    "local_minimize",
    "multi_start_solutions",
    "parse_weight_family",
    "rigidity_demo",
    "solution_sample",
    "solution_set_distance",
    "solve_nlm",
    "stress",
    "stress_gradient",
    "symmetric_eigen",
    "threshold_graph",
    "zero_weight_demo",
]
