"""ANP decision engine: dependency networks, pairwise judgments,
consistency gates, and limit-supermatrix priority rankings."""

from .errors import AnpError
from .judgments import (
    ComparisonMatrix,
    ConsistencyReport,
    Judgment,
    PriorityVector,
    SaatyValue,
    aggregate_experts,
    build_matrix,
    consistency,
    priority_vector_eig,
    priority_vector_gm,
    random_index,
    worst_triad,
)
from .network import (
    Cluster,
    ComparisonContext,
    DecisionNetwork,
    DependencyLink,
    Element,
    comparison_contexts,
    load_network,
    load_railway_model,
    network_from_dict,
    network_to_dict,
    railway_model_path,
    validate_network,
)
from .session import Session, SessionStore, questionnaire, run_pipeline
from .supermatrix import (
    ClusterWeightMatrix,
    RankedPriorities,
    Supermatrix,
    assemble_unweighted,
    cluster_weight_matrix,
    extract_rank,
    limit_supermatrix,
    weight_supermatrix,
)

__version__ = "0.1.0"

__all__ = [
    "AnpError",
    "Cluster",
    "ClusterWeightMatrix",
    "ComparisonContext",
    "ComparisonMatrix",
    "ConsistencyReport",
    "DecisionNetwork",
    "DependencyLink",
    "Element",
    "Judgment",
    "PriorityVector",
    "RankedPriorities",
    "SaatyValue",
    "Session",
    "SessionStore",
    "Supermatrix",
    "aggregate_experts",
    "assemble_unweighted",
    "build_matrix",
    "cluster_weight_matrix",
    "comparison_contexts",
    "consistency",
    "extract_rank",
    "limit_supermatrix",
    "load_network",
    "load_railway_model",
    "network_from_dict",
    "network_to_dict",
    "priority_vector_eig",
    "priority_vector_gm",
    "questionnaire",
    "railway_model_path",
    "random_index",
    "run_pipeline",
    "validate_network",
    "weight_supermatrix",
    "worst_triad",
]
