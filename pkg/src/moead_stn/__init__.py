"""Component-wise MOEA/D with anytime metrics and trajectory networks.

The package provides constrained DASCMOP benchmark problems, simplex
weight generators, a pluggable MOEA/D core with an unbounded external
archive, hypervolume/IGD/variance metrics, a Search Trajectory Network
toolkit, and an experiment harness comparing a tuned base configuration
against six single-component variants.
"""

from .decomposition import (
    NeighborhoodTable,
    WeightVector,
    build_neighborhood,
    generate_sld,
    generate_sobol,
    generate_uniform_design,
    sld_divisions_for,
    weights_matrix,
)
from .harness import (
    DeltaRow,
    ExperimentResult,
    VariantSpec,
    base_config,
    config_component_diff,
    delta_table,
    report,
    run_experiment,
    run_single,
    variant_config,
    variant_specs,
)
from .metrics import (
    MetricsRow,
    anytime_accumulated_hv,
    hypervolume,
    igd,
    pearson_matrix,
    population_variance,
)
from .moead import (
    Archive,
    Checkpoint,
    Config,
    IterationSnapshot,
    RunTrace,
    Solution,
    final_population_front,
    load_config,
    run,
    save_config,
    write_checkpoint_csv,
)
from .problems import (
    PROBLEM_IDS,
    Evaluation,
    ProblemInstance,
    evaluate,
    evaluate_batch,
    get_problem,
    reference_front,
    violation,
)
from .stn import (
    STNGraph,
    TrajectoryPoint,
    build_stn,
    build_stn_from_points,
    export_graph,
    extract_trajectories,
    import_graph,
    locate,
    merge_stn,
    read_trajectory_csv,
    select_representatives,
    stn_metrics,
    stn_weights,
    write_trajectory_csv,
)

__version__ = "0.1.0"

__all__ = [
    "PROBLEM_IDS",
    "Archive",
    "Checkpoint",
    "Config",
    "DeltaRow",
    "Evaluation",
    "ExperimentResult",
    "IterationSnapshot",
    "MetricsRow",
    "NeighborhoodTable",
    "ProblemInstance",
    "RunTrace",
    "STNGraph",
    "Solution",
    "TrajectoryPoint",
    "VariantSpec",
    "WeightVector",
    "anytime_accumulated_hv",
    "base_config",
    "build_neighborhood",
    "build_stn",
    "build_stn_from_points",
    "config_component_diff",
    "delta_table",
    "evaluate",
    "evaluate_batch",
    "export_graph",
    "extract_trajectories",
    "final_population_front",
    "generate_sld",
    "generate_sobol",
    "generate_uniform_design",
    "get_problem",
    "hypervolume",
    "igd",
    "import_graph",
    "load_config",
    "locate",
    "merge_stn",
    "pearson_matrix",
    "population_variance",
    "read_trajectory_csv",
    "reference_front",
    "report",
    "run",
    "run_experiment",
    "run_single",
    "save_config",
    "select_representatives",
    "sld_divisions_for",
    "stn_metrics",
    "stn_weights",
    "variant_config",
    "variant_specs",
    "violation",
    "weights_matrix",
    "write_checkpoint_csv",
    "write_trajectory_csv",
]
