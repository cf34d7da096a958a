"""Community detection in undirected networks, aided by link prediction."""

from .benchmarks import GnConfig, LfrConfig, generate_gn, generate_lfr, realized_mixing
from .community import MergeTrace, fast_greedy, modularity
from .errors import (
    CdlpError,
    ConfigError,
    ContractError,
    DegenerateStageError,
    EmptyGraphError,
    GenerationError,
    InputError,
)
from .evaluation import aggregate, nmi
from .graph import Graph, Partition, build_graph, common_neighbors
from .linkpred import (
    MutationPlan,
    ScoredPair,
    a_index,
    cn_score,
    d_index,
    plan_additions,
    plan_removals,
)
from .pipeline import (
    PipelineConfig,
    PipelineResult,
    run_baseline1,
    run_baseline2_cn,
    run_cdlp,
)

__version__ = "0.1.0"

__all__ = [
    "CdlpError", "ConfigError", "ContractError", "DegenerateStageError",
    "EmptyGraphError", "GenerationError", "GnConfig", "Graph", "InputError",
    "LfrConfig", "MergeTrace", "MutationPlan", "Partition", "PipelineConfig",
    "PipelineResult", "ScoredPair", "a_index", "aggregate", "build_graph",
    "cn_score", "common_neighbors", "d_index", "fast_greedy", "generate_gn",
    "generate_lfr", "modularity", "nmi", "plan_additions", "plan_removals",
    "realized_mixing", "run_baseline1", "run_baseline2_cn", "run_cdlp",
]
