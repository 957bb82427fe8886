"""Experiment harness for the component-ablation study.

Defines the tuned base configuration and its six single-component
variants, runs the full (problem, variant, seed) grid, and emits the
per-run metrics table, per-problem delta table, pooled correlation
matrix, trajectory-network summaries, and merged network exports.
"""

from __future__ import annotations

import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import csvio, metrics, moead, problems, stn
from .metrics import METRICS_HEADER, MetricsRow
from .moead import Config

VARIANT_NAMES = (
    "base",
    "decomposition",
    "popsize",
    "update",
    "neighborhood",
    "operators",
    "no-restart",
)

VARIANT_OVERRIDES = {
    "decomposition": {"decomposition": "sld"},
    "popsize": {"population_size": 300},
    "update": {"nr": 2},
    "neighborhood": {"T": 20, "delta": 0.9},
    "operators": {"de_F": 0.5, "pm_eta": 20.0, "pm_prob": 0.3},
    "no-restart": {"restart": False},
}

# Algorithm component groups for the single-component invariant; budget
# is an execution parameter, not a component, and is excluded.
COMPONENT_GROUPS = {
    "decomposition": ("decomposition",),
    "population": ("population_size",),
    "aggregation": ("aggregation",),
    "update": ("update", "nr"),
    "neighborhood": ("T", "delta"),
    "operators": ("de_F", "pm_eta", "pm_prob"),
    "partial-update": ("partial_update",),
    "restart": ("restart",),
}

DEFAULT_SEEDS = tuple(range(1, 11))
ENV_OUT_DIR = "MOEAD_STN_OUT"

METRICS_FILE = "metrics.csv"
DELTAS_FILE = "deltas.csv"
CORRELATION_FILE = "correlation.csv"
STN_SUMMARY_FILE = "stn_summary.csv"

DELTAS_HEADER = [
    "problem",
    "variant",
    "delta_hv",
    "delta_igd",
    "delta_nodes",
    "delta_variance",
    "shared_nodes",
]
STN_SUMMARY_HEADER = ["problem", "variant", "stn_nodes", "stn_edges", "shared_vs_base"]
CORRELATION_COLUMNS = [
    "hv_over_max",
    "igd",
    "stn_nodes",
    "stn_edges",
    "shared_nodes",
    "population_variance",
]


def base_config() -> Config:
    """The tuned base configuration.

    Uniform Design decomposition, population 100, Weighted Tchebycheff
    aggregation, restricted update with nr = 13, neighborhood T = 18
    with delta = 0.5831, DE F = 0.705, polynomial mutation eta = 57.0443
    with probability 0.303, restart enabled, budget 100000 evaluations.

    Returns:
        The base Config.
    """
    return Config()


def variant_config(name: str) -> Config:
    """Configuration of a named variant.

    Every non-base variant equals the base configuration with exactly
    one component group replaced: decomposition -> SLD, popsize -> 300,
    update -> nr = 2, neighborhood -> T = 20 / delta = 0.9, operators ->
    F = 0.5 / eta = 20 / prob = 0.3, no-restart -> restart disabled.

    Args:
        name: One of VARIANT_NAMES.

    Returns:
        The variant's Config.

    Raises:
        ValueError: For an unknown variant name.
    """
    if name not in VARIANT_NAMES:
        raise ValueError(f"unknown variant {name!r}; expected one of {VARIANT_NAMES}")
    if name == "base":
        return base_config()
    return replace(base_config(), **VARIANT_OVERRIDES[name])


def config_component_diff(a: Config, b: Config) -> list[str]:
    """Names of the component groups in which two configurations differ.

    Args:
        a: First configuration.
        b: Second configuration.

    Returns:
        List of differing group names, in COMPONENT_GROUPS order.
    """
    diff = []
    for group, names in COMPONENT_GROUPS.items():
        if any(getattr(a, field) != getattr(b, field) for field in names):
            diff.append(group)
    return diff


@dataclass(frozen=True)
class VariantSpec:
    """A named variant and its configuration.

    Non-base variants must differ from the base configuration in exactly
    one component group.

    Attributes:
        name: Variant name from VARIANT_NAMES.
        config: The variant's configuration.
    """

    name: str
    config: Config

    def __post_init__(self):
        if self.name not in VARIANT_NAMES:
            raise ValueError(f"unknown variant {self.name!r}; expected one of {VARIANT_NAMES}")
        diff = config_component_diff(base_config(), self.config)
        if self.name == "base":
            if diff:
                raise ValueError(f"base variant alters component groups {diff}")
        elif len(diff) != 1:
            raise ValueError(
                f"variant {self.name!r} must differ from base in exactly one "
                f"component group, found {diff or 'none'}"
            )


def variant_specs(names=None, budget: int | None = None) -> list[VariantSpec]:
    """Build VariantSpec objects for the named variants.

    Args:
        names: Variant names; defaults to all seven.
        budget: Optional evaluation budget applied to every variant.

    Returns:
        List of VariantSpec in the given order.
    """
    if names is None:
        names = VARIANT_NAMES
    specs = []
    for name in names:
        config = variant_config(name)
        if budget is not None:
            config = replace(config, budget=budget)
        specs.append(VariantSpec(name=name, config=config))
    return specs


@dataclass(frozen=True)
class DeltaRow:
    """Per-problem differences of one variant against base.

    Delta values are variant minus base of seed-median metrics; the
    shared-node count is the only absolute entry, taken from the merged
    trajectory network of the pair.  Missing inputs leave None cells.
    """

    problem: str
    variant: str
    delta_hv: float | None
    delta_igd: float | None
    delta_nodes: float | None
    delta_variance: float | None
    shared_nodes: int | None


def _median(values) -> float | None:
    present = [float(v) for v in values if v is not None and math.isfinite(float(v))]
    if not present:
        return None
    return float(np.median(present))


def _sub(a: float | None, b: float | None) -> float | None:
    if a is None or b is None:
        return None
    return a - b


def delta_table(
    base_rows: list[MetricsRow],
    variant_rows: list[MetricsRow],
    pooled_nodes: dict[str, tuple[int | None, int | None]] | None = None,
) -> list[DeltaRow]:
    """Per-problem seed-median deltas of one variant against base.

    Args:
        base_rows: MetricsRow list of the base variant.
        variant_rows: MetricsRow list of one other variant.
        pooled_nodes: Optional problem -> (base_nodes, variant_nodes)
            node counts of the all-seed trajectory networks; when absent,
            delta_nodes falls back to the difference of per-seed medians.

    Returns:
        One DeltaRow per problem, in first-seen variant_rows order.
    """
    by_problem_base: dict[str, list[MetricsRow]] = {}
    for row in base_rows:
        by_problem_base.setdefault(row.problem, []).append(row)
    by_problem_var: dict[str, list[MetricsRow]] = {}
    for row in variant_rows:
        by_problem_var.setdefault(row.problem, []).append(row)

    deltas = []
    for problem, rows in by_problem_var.items():
        base = by_problem_base.get(problem, [])
        variant = rows[0].variant
        if pooled_nodes is not None and problem in pooled_nodes:
            nodes_b, nodes_v = pooled_nodes[problem]
            delta_nodes = _sub(nodes_v, nodes_b)
        else:
            delta_nodes = _sub(
                _median(r.stn_nodes for r in rows), _median(r.stn_nodes for r in base)
            )
        shared = _median(r.shared_nodes for r in rows)
        deltas.append(
            DeltaRow(
                problem=problem,
                variant=variant,
                delta_hv=_sub(_median(r.final_hv for r in rows), _median(r.final_hv for r in base)),
                delta_igd=_sub(_median(r.igd for r in rows), _median(r.igd for r in base)),
                delta_nodes=delta_nodes,
                delta_variance=_sub(
                    _median(r.population_variance for r in rows),
                    _median(r.population_variance for r in base),
                ),
                shared_nodes=None if shared is None else int(shared),
            )
        )
    return deltas


def default_out_dir() -> str:
    """Output directory: the MOEAD_STN_OUT variable or ./moead_stn_out."""
    return os.environ.get(ENV_OUT_DIR, "moead_stn_out")


def checkpoint_csv_name(problem: str, variant: str, seed: int) -> str:
    """Deterministic per-run checkpoint file name."""
    return f"{problem}_{variant}_{seed}.csv"


def merged_graph_name(problem: str, a: str, b: str) -> str:
    """Deterministic merged-network file name for a variant pair."""
    return f"{problem}_{a}_vs_{b}.graphml"


def trajectory_csv_name(problem: str, variant: str) -> str:
    """Deterministic all-seed trajectory file name."""
    return f"{problem}_{variant}_trajectories.csv"


def _run_cell(problem_id: str, variant_name: str, seed: int, budget: int | None, out_dir: str) -> dict:
    """Execute one grid cell and distill everything later stages need."""
    problem = problems.get_problem(problem_id)
    config = variant_config(variant_name)
    if budget is not None:
        config = replace(config, budget=budget)
    trace = moead.run(config, problem, seed)
    moead.write_checkpoint_csv(
        trace, os.path.join(out_dir, checkpoint_csv_name(problem_id, variant_name, seed))
    )
    reference = problems.reference_front(problem)
    vectors = stn.stn_weights(stn.STN_VECTOR_COUNT, problem.num_objectives)
    points = stn.extract_trajectories(trace, vectors, reference=reference)
    front = moead.final_population_front(trace, feasible_only=False)
    igd_value = metrics.igd(front, reference)
    return {
        "problem": problem_id,
        "variant": variant_name,
        "seed": seed,
        "points": points,
        "front": front,
        "accumulated_hv": metrics.anytime_accumulated_hv(trace.checkpoints),
        "igd": igd_value if math.isfinite(igd_value) else None,
        "population_variance": metrics.population_variance(trace.snapshots[-1].X),
    }


@dataclass
class ExperimentResult:
    """Everything run_experiment produced, for programmatic use.

    Attributes:
        out_dir: Directory all files were written to.
        metrics_rows: One MetricsRow per grid cell, in grid order.
        delta_rows: DeltaRow list over all non-base variants.
        correlation: Pooled correlation matrix, or None when fewer than
            three complete rows were available.
        correlation_columns: Metric names labeling the matrix.
        failures: (problem, variant, seed, message) of failed runs.
    """

    out_dir: str
    metrics_rows: list[MetricsRow]
    delta_rows: list[DeltaRow]
    correlation: np.ndarray | None
    correlation_columns: list[str]
    failures: list[tuple[str, str, int, str]]


def _normalize_problems(problem_ids) -> list[str]:
    if problem_ids is None:
        return list(problems.PROBLEM_IDS)
    return list(dict.fromkeys(problems.get_problem(p).id for p in problem_ids))


def _normalize_variants(variant_names) -> list[str]:
    if variant_names is None:
        return list(VARIANT_NAMES)
    for name in variant_names:
        if name not in VARIANT_NAMES:
            raise ValueError(f"unknown variant {name!r}; expected one of {VARIANT_NAMES}")
    return list(dict.fromkeys(variant_names))


def _write_metrics_csv(path: str, rows: list[MetricsRow]) -> None:
    csvio.write_csv(
        path,
        METRICS_HEADER,
        (
            [
                r.problem,
                r.variant,
                r.seed,
                r.final_hv,
                r.hv_over_max,
                r.accumulated_hv,
                r.igd,
                r.population_variance,
                r.stn_nodes,
                r.stn_edges,
                r.shared_nodes,
            ]
            for r in rows
        ),
    )


def _write_deltas_csv(path: str, rows: list[DeltaRow]) -> None:
    csvio.write_csv(
        path,
        DELTAS_HEADER,
        (
            [
                r.problem,
                r.variant,
                r.delta_hv,
                r.delta_igd,
                r.delta_nodes,
                r.delta_variance,
                r.shared_nodes,
            ]
            for r in rows
        ),
    )


def _write_correlation_csv(path: str, matrix: np.ndarray | None, columns: list[str]) -> None:
    header = ["metric"] + list(columns)
    rows = []
    if matrix is not None:
        for i, name in enumerate(columns):
            rows.append([name] + [matrix[i, j] for j in range(len(columns))])
    csvio.write_csv(path, header, rows)


def correlation_from_rows(rows: list[MetricsRow]) -> tuple[np.ndarray | None, list[str]]:
    """Pooled Pearson matrix over all complete metric rows.

    Rows with any missing correlation column are dropped; None is
    returned when fewer than three complete rows remain.

    Args:
        rows: MetricsRow list, typically the whole grid.

    Returns:
        Tuple (matrix or None, column names).
    """
    data = []
    for row in rows:
        values = [getattr(row, name) for name in CORRELATION_COLUMNS]
        if any(v is None or not math.isfinite(float(v)) for v in values):
            continue
        data.append([float(v) for v in values])
    if len(data) < 3:
        return None, list(CORRELATION_COLUMNS)
    matrix, columns = metrics.pearson_matrix(np.asarray(data), CORRELATION_COLUMNS)
    return matrix, columns


def run_experiment(
    problem_ids=None,
    variant_names=None,
    seeds=None,
    out_dir: str | None = None,
    jobs: int = 1,
    budget: int | None = None,
) -> ExperimentResult:
    """Run the full grid and write every report artifact.

    For each (problem, variant, seed) cell one run is executed and its
    checkpoint curve written to `<problem>_<variant>_<seed>.csv`.  Per
    (problem, variant) an all-seed trajectory network is built and its
    trajectories written to `<problem>_<variant>_trajectories.csv`; per
    non-base variant the network is merged with the base network and
    exported to `<problem>_<variant>_vs_base.graphml`.  The final HV of
    each run is computed on its final-population nondominated front
    after min-max scaling by the union of those fronts of its problem
    across the whole grid, so runs of one problem share one scale.
    metrics.csv, deltas.csv, correlation.csv and stn_summary.csv
    summarize the grid.

    Failed runs are recorded as rows with empty metric cells and never
    abort the grid.

    Args:
        problem_ids: Problems to run; defaults to all nine.
        variant_names: Variants to run; defaults to all seven.
        seeds: Seeds per cell; defaults to 1..10.
        out_dir: Output directory; defaults to MOEAD_STN_OUT or
            ./moead_stn_out.
        jobs: Worker processes; 1 runs sequentially.
        budget: Optional evaluation budget overriding every variant.

    Returns:
        ExperimentResult with all rows and the failure list.
    """
    problem_order = _normalize_problems(problem_ids)
    variant_order = _normalize_variants(variant_names)
    seed_order = [int(s) for s in (DEFAULT_SEEDS if seeds is None else seeds)]
    if not seed_order:
        raise ValueError("at least one seed is required")
    out_dir = out_dir or default_out_dir()
    os.makedirs(out_dir, exist_ok=True)

    cells = [
        (pid, vname, seed)
        for pid in problem_order
        for vname in variant_order
        for seed in seed_order
    ]
    payloads: dict[tuple[str, str, int], dict | None] = {}
    failures: list[tuple[str, str, int, str]] = []

    def _record(cell, payload, error):
        if error is None:
            payloads[cell] = payload
        else:
            payloads[cell] = None
            failures.append((*cell, error))
            print(f"run failed for {cell}: {error}", file=sys.stderr)

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {
                cell: pool.submit(_run_cell, cell[0], cell[1], cell[2], budget, out_dir)
                for cell in cells
            }
            for cell, future in futures.items():
                error = future.exception()
                if error is None:
                    _record(cell, future.result(), None)
                else:
                    _record(cell, None, str(error))
    else:
        for cell in cells:
            try:
                _record(cell, _run_cell(cell[0], cell[1], cell[2], budget, out_dir), None)
            except Exception as exc:
                _record(cell, None, str(exc))

    metrics_rows: list[MetricsRow] = []
    stn_summary_rows: list[list] = []
    pooled_nodes: dict[tuple[str, str], int] = {}
    shared_counts: dict[tuple[str, str], int] = {}

    for pid in problem_order:
        m = problems.get_problem(pid).num_objectives
        max_hv = metrics.FINAL_REF_COORD**m
        fronts = [
            payloads[(pid, vname, seed)]["front"]
            for vname in variant_order
            for seed in seed_order
            if payloads[(pid, vname, seed)] is not None
        ]
        union = np.vstack([f for f in fronts if f.shape[0] > 0]) if fronts else np.empty((0, m))
        if union.shape[0] > 0:
            fmin = union.min(axis=0)
            span = union.max(axis=0) - fmin
            span = np.where(span > 0, span, 1.0)
        else:
            fmin = np.zeros(m)
            span = np.ones(m)

        graphs: dict[str, stn.STNGraph] = {}
        for vname in variant_order:
            points = []
            for seed in seed_order:
                payload = payloads[(pid, vname, seed)]
                if payload is not None:
                    points.extend(payload["points"])
            if points:
                graphs[vname] = stn.build_stn_from_points(points)
                stn.write_trajectory_csv(
                    os.path.join(out_dir, trajectory_csv_name(pid, vname)), points
                )

        for vname in variant_order:
            if vname == "base" or vname not in graphs or "base" not in graphs:
                continue
            merged = stn.merge_stn(graphs[vname], graphs["base"])
            shared_counts[(pid, vname)] = stn.stn_metrics(merged)[2]
            stn.export_graph(
                merged, os.path.join(out_dir, merged_graph_name(pid, vname, "base"))
            )

        for vname in variant_order:
            graph = graphs.get(vname)
            nodes_edges = stn.stn_metrics(graph)[:2] if graph is not None else (None, None)
            if graph is not None:
                pooled_nodes[(pid, vname)] = nodes_edges[0]
            stn_summary_rows.append(
                [pid, vname, nodes_edges[0], nodes_edges[1], shared_counts.get((pid, vname))]
            )
            for seed in seed_order:
                payload = payloads[(pid, vname, seed)]
                if payload is None:
                    metrics_rows.append(
                        MetricsRow(pid, vname, seed, None, None, None, None, None, None, None, None)
                    )
                    continue
                front = payload["front"]
                if front.shape[0] > 0:
                    scaled = (front - fmin) / span
                    final_hv = metrics.hypervolume(scaled, metrics.final_reference(m))
                else:
                    final_hv = 0.0
                seed_graph = stn.build_stn_from_points(payload["points"])
                seed_nodes, seed_edges, _ = stn.stn_metrics(seed_graph)
                metrics_rows.append(
                    MetricsRow(
                        problem=pid,
                        variant=vname,
                        seed=seed,
                        final_hv=final_hv,
                        hv_over_max=final_hv / max_hv,
                        accumulated_hv=payload["accumulated_hv"],
                        igd=payload["igd"],
                        population_variance=payload["population_variance"],
                        stn_nodes=seed_nodes,
                        stn_edges=seed_edges,
                        shared_nodes=shared_counts.get((pid, vname), 0),
                    )
                )

    delta_rows: list[DeltaRow] = []
    base_rows = [r for r in metrics_rows if r.variant == "base"]
    for vname in variant_order:
        if vname == "base":
            continue
        variant_rows = [r for r in metrics_rows if r.variant == vname]
        nodes_by_problem = {
            pid: (pooled_nodes.get((pid, "base")), pooled_nodes.get((pid, vname)))
            for pid in problem_order
        }
        delta_rows.extend(delta_table(base_rows, variant_rows, nodes_by_problem))

    correlation, corr_columns = correlation_from_rows(metrics_rows)

    _write_metrics_csv(os.path.join(out_dir, METRICS_FILE), metrics_rows)
    csvio.write_csv(os.path.join(out_dir, STN_SUMMARY_FILE), STN_SUMMARY_HEADER, stn_summary_rows)
    _write_deltas_csv(os.path.join(out_dir, DELTAS_FILE), delta_rows)
    _write_correlation_csv(os.path.join(out_dir, CORRELATION_FILE), correlation, corr_columns)

    return ExperimentResult(
        out_dir=out_dir,
        metrics_rows=metrics_rows,
        delta_rows=delta_rows,
        correlation=correlation,
        correlation_columns=corr_columns,
        failures=failures,
    )


def _parse_optional_float(text: str) -> float | None:
    return float(text) if text else None


def _parse_optional_int(text: str) -> int | None:
    return int(text) if text else None


def read_metrics_csv(path: str) -> list[MetricsRow]:
    """Read a metrics.csv written by run_experiment.

    Args:
        path: File path.

    Returns:
        List of MetricsRow with empty cells restored as None.
    """
    header, rows = csvio.read_csv(path)
    if header != METRICS_HEADER:
        raise ValueError(f"unexpected metrics header {header!r} in {path}")
    out = []
    for row in rows:
        out.append(
            MetricsRow(
                problem=row[0],
                variant=row[1],
                seed=int(row[2]),
                final_hv=_parse_optional_float(row[3]),
                hv_over_max=_parse_optional_float(row[4]),
                accumulated_hv=_parse_optional_float(row[5]),
                igd=_parse_optional_float(row[6]),
                population_variance=_parse_optional_float(row[7]),
                stn_nodes=_parse_optional_int(row[8]),
                stn_edges=_parse_optional_int(row[9]),
                shared_nodes=_parse_optional_int(row[10]),
            )
        )
    return out


def report(in_dir: str) -> tuple[list[DeltaRow], np.ndarray | None, list[str]]:
    """Recompute deltas.csv and correlation.csv from stored run metrics.

    Reads metrics.csv and stn_summary.csv from in_dir and rewrites the
    two derived tables deterministically.

    Args:
        in_dir: Directory holding a completed experiment.

    Returns:
        Tuple (delta rows, correlation matrix or None, column names).
    """
    metrics_rows = read_metrics_csv(os.path.join(in_dir, METRICS_FILE))
    summary_path = os.path.join(in_dir, STN_SUMMARY_FILE)
    pooled_nodes: dict[tuple[str, str], int] = {}
    if os.path.exists(summary_path):
        header, rows = csvio.read_csv(summary_path)
        if header != STN_SUMMARY_HEADER:
            raise ValueError(f"unexpected summary header {header!r} in {summary_path}")
        for row in rows:
            nodes = _parse_optional_int(row[2])
            if nodes is not None:
                pooled_nodes[(row[0], row[1])] = nodes

    problem_order = list(dict.fromkeys(r.problem for r in metrics_rows))
    variant_order = [
        v for v in VARIANT_NAMES if any(r.variant == v for r in metrics_rows)
    ]
    base_rows = [r for r in metrics_rows if r.variant == "base"]
    delta_rows: list[DeltaRow] = []
    for vname in variant_order:
        if vname == "base":
            continue
        variant_rows = [r for r in metrics_rows if r.variant == vname]
        nodes_by_problem = {
            pid: (pooled_nodes.get((pid, "base")), pooled_nodes.get((pid, vname)))
            for pid in problem_order
        }
        delta_rows.extend(delta_table(base_rows, variant_rows, nodes_by_problem))

    correlation, corr_columns = correlation_from_rows(metrics_rows)
    _write_deltas_csv(os.path.join(in_dir, DELTAS_FILE), delta_rows)
    _write_correlation_csv(os.path.join(in_dir, CORRELATION_FILE), correlation, corr_columns)
    return delta_rows, correlation, corr_columns


def run_single(
    problem_id: str,
    variant_name: str = "base",
    seed: int = 1,
    budget: int | None = None,
    out_dir: str | None = None,
) -> dict:
    """Run one configuration once and write its checkpoint curve.

    The final HV is scaled by this run's own final-population front
    (there is no union of compared fronts in a single run), so it is
    comparable only across identically scaled runs.

    Args:
        problem_id: Benchmark problem id.
        variant_name: Variant name, default base.
        seed: RNG seed.
        budget: Optional evaluation budget override.
        out_dir: Output directory; defaults to MOEAD_STN_OUT or
            ./moead_stn_out.

    Returns:
        Dict with final_hv, hv_over_max, accumulated_hv, igd,
        population_variance, stn_nodes, stn_edges, checkpoint_path.
    """
    out_dir = out_dir or default_out_dir()
    os.makedirs(out_dir, exist_ok=True)
    payload = _run_cell(problems.get_problem(problem_id).id, variant_name, seed, budget, out_dir)
    problem = problems.get_problem(problem_id)
    m = problem.num_objectives
    front = payload["front"]
    if front.shape[0] > 0:
        fmin = front.min(axis=0)
        span = front.max(axis=0) - fmin
        span = np.where(span > 0, span, 1.0)
        final_hv = metrics.hypervolume((front - fmin) / span, metrics.final_reference(m))
    else:
        final_hv = 0.0
    graph = stn.build_stn_from_points(payload["points"])
    nodes, edges, _ = stn.stn_metrics(graph)
    return {
        "problem": payload["problem"],
        "variant": variant_name,
        "seed": seed,
        "final_hv": final_hv,
        "hv_over_max": final_hv / metrics.FINAL_REF_COORD**m,
        "accumulated_hv": payload["accumulated_hv"],
        "igd": payload["igd"],
        "population_variance": payload["population_variance"],
        "stn_nodes": nodes,
        "stn_edges": edges,
        "checkpoint_path": os.path.join(
            out_dir, checkpoint_csv_name(payload["problem"], variant_name, seed)
        ),
    }
