"""Machine-part cell formation via correlation similarity and PCA angles."""

from .clustering import (
    CellSolution,
    ClusterConfig,
    ClusteringError,
    SolveResult,
    assign_parts,
    circular_distance,
    cluster_machines,
    line_distance,
    machine_angles,
    run_pipeline,
    solve,
)
from .estimator import CellFormation
from .export import (
    AssignmentError,
    assignment_from_export,
    build_solution_export,
    format_assignment,
    parse_assignment,
    score_assignment,
    solution_from_assignment,
)
from .instance import (
    Instance,
    InstanceError,
    builtin_instances,
    parse_instance,
    serialize_instance,
)
from .metrics import (
    MetricsReport,
    block_view,
    enumerate_partition_scores,
    oracle_best_partition,
    score,
    solution_from_arrays,
)
from .similarity import (
    MachineStats,
    SimilarityMatrix,
    StandardizedMatrix,
    correlation_matrix,
    machine_stats,
    round_half_away,
    similarity_csv,
    similarity_from_instance,
    standardize,
)
from .spectral import (
    ConvergenceError,
    EigenSystem,
    PrincipalPlane,
    eigendecompose,
    jacobi_eigh,
    principal_plane,
)

__version__ = "0.1.0"

__all__ = [
    "AssignmentError",
    "CellFormation",
    "CellSolution",
    "ClusterConfig",
    "ClusteringError",
    "ConvergenceError",
    "EigenSystem",
    "Instance",
    "InstanceError",
    "MachineStats",
    "MetricsReport",
    "PrincipalPlane",
    "SimilarityMatrix",
    "SolveResult",
    "StandardizedMatrix",
    "assign_parts",
    "assignment_from_export",
    "block_view",
    "build_solution_export",
    "builtin_instances",
    "circular_distance",
    "cluster_machines",
    "correlation_matrix",
    "eigendecompose",
    "enumerate_partition_scores",
    "format_assignment",
    "jacobi_eigh",
    "line_distance",
    "machine_angles",
    "machine_stats",
    "oracle_best_partition",
    "parse_assignment",
    "parse_instance",
    "principal_plane",
    "round_half_away",
    "run_pipeline",
    "score",
    "score_assignment",
    "serialize_instance",
    "similarity_csv",
    "similarity_from_instance",
    "solution_from_arrays",
    "solution_from_assignment",
    "solve",
    "standardize",
]
