"""Search Trajectory Network construction, merging, metrics, and export.

A Search Trajectory Network (STN) is a directed graph whose nodes are
discretized decision-space locations visited by representative solutions
and whose edges are transitions between consecutive locations.  Networks
built from single-algorithm run traces can be merged pairwise to compare
which regions two algorithm configurations share.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import cdist

from . import csvio
from .decomposition import WeightVector, generate_uniform_design, weights_matrix
from .moead import RunTrace, effective_wt_weights

CELL_PRECISION = 0.1
STN_VECTOR_COUNT = 5
OPTIMAL_TOL = 1e-3

OWNER_A = "A"
OWNER_B = "B"
OWNER_SHARED = "shared"

TRAJECTORY_HEADER = ["run", "vector", "iteration", "cell_key", "agg_value", "feasible"]

GRAPH_FORMATS = ("graphml", "dot")


def locate(x, precision: float = CELL_PRECISION) -> tuple[int, ...]:
    """Map a decision vector to its grid cell.

    Cells are half-open hypercubes ``[k * precision, (k + 1) * precision)``
    along every coordinate, so the index is ``floor(x_d / precision)``.

    Args:
        x: Decision vector.
        precision: Cell side length, positive.

    Returns:
        Tuple of per-coordinate integer cell indices.
    """
    if precision <= 0:
        raise ValueError(f"precision must be positive, got {precision}")
    arr = np.asarray(x, dtype=float).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValueError("decision vector contains non-finite values")
    return tuple(int(k) for k in np.floor(arr / precision))


def cell_key(cell: tuple[int, ...]) -> str:
    """Serialize a cell index tuple to its canonical string key."""
    return ":".join(str(int(k)) for k in cell)


def parse_cell_key(key: str) -> tuple[int, ...]:
    """Parse a canonical cell key string back into an index tuple."""
    return tuple(int(part) for part in key.split(":"))


def stn_weights(n: int = STN_VECTOR_COUNT, m: int = 2) -> list[WeightVector]:
    """Generate the fixed tracking vectors used to pick representatives.

    Uniform Design vectors are used regardless of the decomposition the
    traced algorithm ran with, so that paired configurations are measured
    with identical instruments.

    Args:
        n: Number of tracking vectors, at least 2.
        m: Number of objectives.

    Returns:
        List of ``n`` weight vectors on the ``m``-simplex.
    """
    return generate_uniform_design(n, m)


def _aggregation_table(objectives: np.ndarray, weights, z: np.ndarray | None) -> np.ndarray:
    """Weighted Tchebycheff values for every (vector, member) pair.

    Returns an array of shape (n_vectors, n_members).
    """
    F = np.asarray(objectives, dtype=float)
    W = weights_matrix(weights) if isinstance(weights, list) else np.asarray(weights, dtype=float)
    if W.ndim == 1:
        W = W[None, :]
    W_eff = np.apply_along_axis(effective_wt_weights, 1, W)
    if z is None:
        z = np.zeros(F.shape[1])
    diff = np.abs(F[None, :, :] - np.asarray(z, dtype=float)[None, None, :])
    return np.max(W_eff[:, None, :] * diff, axis=2)


def _argmin_newest(values: np.ndarray, births: np.ndarray) -> int:
    """Index of the minimum value; ties go to the largest birth tick, then lowest index."""
    n = values.shape[0]
    order = np.lexsort((np.arange(n), -np.asarray(births), values))
    return int(order[0])


def select_representatives(objectives: np.ndarray, births: np.ndarray, weights, z: np.ndarray | None = None) -> np.ndarray:
    """Pick one representative population member per tracking vector.

    The representative for a vector is the member minimizing the Weighted
    Tchebycheff aggregation on that vector; ties are broken by the newest
    member (largest birth tick), then by the lowest index.

    Args:
        objectives: Scaled objective matrix, shape (N, m), N >= 1.
        births: Birth tick per member, shape (N,).
        weights: Tracking vectors: list of WeightVector or array (n, m).
        z: Reference point, defaults to the origin.

    Returns:
        Integer array of member indices, one per tracking vector.
    """
    F = np.asarray(objectives, dtype=float)
    if F.ndim != 2 or F.shape[0] == 0:
        raise ValueError("objectives must be a nonempty (N, m) matrix")
    A = _aggregation_table(F, weights, z)
    births = np.asarray(births)
    return np.array([_argmin_newest(A[v], births) for v in range(A.shape[0])], dtype=int)


@dataclass(frozen=True)
class TrajectoryPoint:
    """One representative observation in a run trajectory.

    Attributes:
        run: Run identifier (the run's seed).
        vector: Tracking vector index.
        iteration: Iteration the observation was taken at.
        cell: Grid cell of the representative's decision vector.
        agg_value: Aggregation value of the representative.
        feasible: Whether the representative met the feasibility tolerance.
        optimal: Whether the representative is feasible and lies within
            OPTIMAL_TOL of the reference front in scaled objective space.
            Not serialized to CSV.
    """

    run: int
    vector: int
    iteration: int
    cell: tuple[int, ...]
    agg_value: float
    feasible: bool
    optimal: bool = False


def _front_scaling(reference: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    ref = np.asarray(reference, dtype=float)
    fmin = ref.min(axis=0)
    span = ref.max(axis=0) - fmin
    span = np.where(span > 0, span, 1.0)
    return (ref - fmin) / span, fmin, span


def extract_trajectories(
    trace: RunTrace,
    stn_vectors: list[WeightVector] | None = None,
    precision: float = CELL_PRECISION,
    reference: np.ndarray | None = None,
    optimal_tol: float = OPTIMAL_TOL,
) -> list[TrajectoryPoint]:
    """Turn one run trace into per-vector location trajectories.

    For every recorded iteration and tracking vector, the representative
    is selected from the snapshot population and projected onto the cell
    grid.  Points are emitted ordered by iteration, grouped per vector.

    Args:
        trace: Completed run trace with iteration snapshots.
        stn_vectors: Tracking vectors; defaults to ``stn_weights``.
        precision: Cell side length.
        reference: Optional raw reference front used to flag near-optimal
            representatives.
        optimal_tol: Euclidean tolerance in scaled objective space.

    Returns:
        Flat list of TrajectoryPoint, grouped by vector and ordered by
        iteration within each group.
    """
    if not trace.snapshots:
        raise ValueError("trace has no iteration snapshots")
    m = trace.snapshots[0].F_raw.shape[1]
    if stn_vectors is None:
        stn_vectors = stn_weights(STN_VECTOR_COUNT, m)
    W = weights_matrix(stn_vectors)
    ref_scaled = fmin = span = None
    if reference is not None:
        ref_scaled, fmin, span = _front_scaling(reference)

    n_vec = W.shape[0]
    per_vector: list[list[TrajectoryPoint]] = [[] for _ in range(n_vec)]
    for snap in trace.snapshots:
        A = _aggregation_table(snap.F_scaled, W, None)
        reps = np.array([_argmin_newest(A[v], snap.birth) for v in range(n_vec)], dtype=int)
        feas = snap.V[reps] <= trace.feasibility_eps
        optimal = np.zeros(n_vec, dtype=bool)
        if ref_scaled is not None:
            pts = (snap.F_raw[reps] - fmin) / span
            dists = cdist(pts, ref_scaled).min(axis=1)
            optimal = feas & (dists <= optimal_tol)
        for v in range(n_vec):
            r = int(reps[v])
            per_vector[v].append(
                TrajectoryPoint(
                    run=trace.seed,
                    vector=v,
                    iteration=snap.t,
                    cell=locate(snap.X[r], precision),
                    agg_value=float(A[v, r]),
                    feasible=bool(feas[v]),
                    optimal=bool(optimal[v]),
                )
            )
    points: list[TrajectoryPoint] = []
    for group in per_vector:
        points.extend(group)
    return points


@dataclass
class STNNode:
    """Attributes of one visited location."""

    visits: int = 0
    is_start: bool = False
    is_end: bool = False
    is_optimal: bool = False
    owner: str | None = None


@dataclass
class STNEdge:
    """Attributes of one directed transition between locations."""

    count: int = 0
    owner: str | None = None
    count_a: int = 0
    count_b: int = 0


@dataclass
class STNGraph:
    """Directed graph of visited locations.

    Built graphs are treated as immutable; merge operations return new
    graphs.  ``merged`` marks graphs produced by ``merge_stn``, whose
    nodes and edges carry owner attributes.
    """

    precision: float = CELL_PRECISION
    nodes: dict[str, STNNode] = field(default_factory=dict)
    edges: dict[tuple[str, str], STNEdge] = field(default_factory=dict)
    merged: bool = False
    num_trajectories: int = 0


def _accumulate_trajectory(graph: STNGraph, points: list[TrajectoryPoint]) -> None:
    """Fold one iteration-ordered trajectory into the graph.

    Consecutive repeats of a location are compressed to a single stay, so
    a stay contributes one visit and no self-loop edge.
    """
    compressed: list[TrajectoryPoint] = []
    for point in points:
        if compressed and point.cell == compressed[-1].cell:
            continue
        compressed.append(point)
    if not compressed:
        return
    keys = [cell_key(p.cell) for p in compressed]
    for key, point in zip(keys, compressed):
        node = graph.nodes.setdefault(key, STNNode())
        node.visits += 1
        node.is_optimal = node.is_optimal or point.optimal
    graph.nodes[keys[0]].is_start = True
    graph.nodes[keys[-1]].is_end = True
    for src, dst in zip(keys[:-1], keys[1:]):
        edge = graph.edges.setdefault((src, dst), STNEdge())
        edge.count += 1
    graph.num_trajectories += 1


def build_stn_from_points(points: list[TrajectoryPoint], precision: float = CELL_PRECISION) -> STNGraph:
    """Build a graph from trajectory points of one algorithm configuration.

    Points are grouped by (run, vector) and ordered by iteration; each
    group forms one trajectory folded into the shared graph.

    Args:
        points: Trajectory points, possibly from several runs.
        precision: Cell side length the points were located with.

    Returns:
        The accumulated STNGraph.
    """
    graph = STNGraph(precision=precision)
    groups: dict[tuple[int, int], list[TrajectoryPoint]] = {}
    for point in points:
        groups.setdefault((point.run, point.vector), []).append(point)
    for key in sorted(groups):
        trajectory = sorted(groups[key], key=lambda p: p.iteration)
        _accumulate_trajectory(graph, trajectory)
    return graph


def build_stn(
    traces: list[RunTrace],
    stn_vectors: list[WeightVector] | None = None,
    precision: float = CELL_PRECISION,
    reference: np.ndarray | None = None,
    optimal_tol: float = OPTIMAL_TOL,
) -> STNGraph:
    """Build the STN of one algorithm configuration from its run traces.

    Args:
        traces: Nonempty list of traces from the same configuration and
            problem.
        stn_vectors: Tracking vectors; defaults to ``stn_weights``.
        precision: Cell side length.
        reference: Optional raw reference front for optimal-node flags.
        optimal_tol: Euclidean tolerance in scaled objective space.

    Returns:
        Union graph over all runs and tracking vectors.
    """
    if not traces:
        raise ValueError("at least one run trace is required")
    points: list[TrajectoryPoint] = []
    for trace in traces:
        points.extend(
            extract_trajectories(
                trace,
                stn_vectors=stn_vectors,
                precision=precision,
                reference=reference,
                optimal_tol=optimal_tol,
            )
        )
    return build_stn_from_points(points, precision=precision)


def merge_stn(g_a: STNGraph, g_b: STNGraph) -> STNGraph:
    """Merge the graphs of two configurations into one owner-labelled graph.

    Nodes and edges present in both inputs get owner "shared"; the rest
    keep owner "A" or "B".  Visit and traversal counts are summed, with
    per-owner edge counts preserved.

    Args:
        g_a: First graph, unmerged.
        g_b: Second graph, unmerged, same precision.

    Returns:
        New merged STNGraph.
    """
    if g_a.merged or g_b.merged:
        raise ValueError("can only merge unmerged graphs")
    if g_a.precision != g_b.precision:
        raise ValueError(
            f"precision mismatch: {g_a.precision} vs {g_b.precision}"
        )
    merged = STNGraph(precision=g_a.precision, merged=True)
    merged.num_trajectories = g_a.num_trajectories + g_b.num_trajectories
    for key in sorted(set(g_a.nodes) | set(g_b.nodes)):
        in_a = key in g_a.nodes
        in_b = key in g_b.nodes
        node = STNNode(owner=OWNER_SHARED if in_a and in_b else (OWNER_A if in_a else OWNER_B))
        for source in (g_a.nodes.get(key), g_b.nodes.get(key)):
            if source is None:
                continue
            node.visits += source.visits
            node.is_start = node.is_start or source.is_start
            node.is_end = node.is_end or source.is_end
            node.is_optimal = node.is_optimal or source.is_optimal
        merged.nodes[key] = node
    for key in sorted(set(g_a.edges) | set(g_b.edges)):
        edge_a = g_a.edges.get(key)
        edge_b = g_b.edges.get(key)
        edge = STNEdge(
            count=(edge_a.count if edge_a else 0) + (edge_b.count if edge_b else 0),
            owner=OWNER_SHARED if edge_a and edge_b else (OWNER_A if edge_a else OWNER_B),
            count_a=edge_a.count if edge_a else 0,
            count_b=edge_b.count if edge_b else 0,
        )
        merged.edges[key] = edge
    return merged


def stn_metrics(graph: STNGraph) -> tuple[int, int, int]:
    """Count unique nodes, unique directed edges, and shared nodes.

    Shared nodes are zero for unmerged graphs.

    Args:
        graph: Graph to summarize.

    Returns:
        Tuple (nodes, edges, shared).
    """
    shared = sum(1 for node in graph.nodes.values() if node.owner == OWNER_SHARED)
    return len(graph.nodes), len(graph.edges), shared


def _infer_format(path: str, fmt: str | None) -> str:
    if fmt is not None:
        name = fmt.lower()
        if name not in GRAPH_FORMATS:
            raise ValueError(f"unknown graph format {fmt!r}; expected one of {GRAPH_FORMATS}")
        return name
    ext = os.path.splitext(path)[1].lower()
    if ext == ".graphml":
        return "graphml"
    if ext in (".dot", ".gv"):
        return "dot"
    raise ValueError(f"cannot infer graph format from path {path!r}; pass fmt explicitly")


def _to_networkx(graph: STNGraph):
    import networkx as nx

    G = nx.DiGraph()
    G.graph["precision"] = float(graph.precision)
    G.graph["merged"] = bool(graph.merged)
    G.graph["num_trajectories"] = int(graph.num_trajectories)
    for key in sorted(graph.nodes):
        node = graph.nodes[key]
        G.add_node(
            key,
            visits=int(node.visits),
            is_start=bool(node.is_start),
            is_end=bool(node.is_end),
            is_optimal=bool(node.is_optimal),
            owner=node.owner or "",
        )
    for (src, dst) in sorted(graph.edges):
        edge = graph.edges[(src, dst)]
        G.add_edge(
            src,
            dst,
            count=int(edge.count),
            owner=edge.owner or "",
            count_a=int(edge.count_a),
            count_b=int(edge.count_b),
        )
    return G


def _from_networkx(G) -> STNGraph:
    graph = STNGraph(
        precision=float(G.graph.get("precision", CELL_PRECISION)),
        merged=bool(G.graph.get("merged", False)),
        num_trajectories=int(G.graph.get("num_trajectories", 0)),
    )
    for key, data in G.nodes(data=True):
        graph.nodes[str(key)] = STNNode(
            visits=int(data.get("visits", 0)),
            is_start=bool(data.get("is_start", False)),
            is_end=bool(data.get("is_end", False)),
            is_optimal=bool(data.get("is_optimal", False)),
            owner=data.get("owner") or None,
        )
    for src, dst, data in G.edges(data=True):
        graph.edges[(str(src), str(dst))] = STNEdge(
            count=int(data.get("count", 0)),
            owner=data.get("owner") or None,
            count_a=int(data.get("count_a", 0)),
            count_b=int(data.get("count_b", 0)),
        )
    return graph


_DOT_BOOL = {"true": True, "false": False}


def _dot_quote(value) -> str:
    if isinstance(value, bool):
        return '"true"' if value else '"false"'
    return '"' + str(value).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _write_dot(graph: STNGraph, path: str) -> None:
    lines = ["digraph stn {"]
    lines.append(
        "  graph [precision={0}, merged={1}, num_trajectories={2}];".format(
            _dot_quote(repr(float(graph.precision))),
            _dot_quote(graph.merged),
            _dot_quote(graph.num_trajectories),
        )
    )
    for key in sorted(graph.nodes):
        node = graph.nodes[key]
        lines.append(
            "  {0} [visits={1}, is_start={2}, is_end={3}, is_optimal={4}, owner={5}];".format(
                _dot_quote(key),
                _dot_quote(node.visits),
                _dot_quote(node.is_start),
                _dot_quote(node.is_end),
                _dot_quote(node.is_optimal),
                _dot_quote(node.owner or ""),
            )
        )
    for (src, dst) in sorted(graph.edges):
        edge = graph.edges[(src, dst)]
        lines.append(
            "  {0} -> {1} [count={2}, owner={3}, count_a={4}, count_b={5}];".format(
                _dot_quote(src),
                _dot_quote(dst),
                _dot_quote(edge.count),
                _dot_quote(edge.owner or ""),
                _dot_quote(edge.count_a),
                _dot_quote(edge.count_b),
            )
        )
    lines.append("}")
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


def _split_dot_attrs(body: str) -> dict[str, str]:
    attrs: dict[str, str] = {}
    i = 0
    while i < len(body):
        eq = body.find("=", i)
        if eq < 0:
            break
        name = body[i:eq].strip().strip(",").strip()
        j = body.find('"', eq) + 1
        value = []
        while j < len(body):
            ch = body[j]
            if ch == "\\":
                value.append(body[j + 1])
                j += 2
                continue
            if ch == '"':
                break
            value.append(ch)
            j += 1
        attrs[name] = "".join(value)
        i = j + 1
    return attrs


def _read_dot(path: str) -> STNGraph:
    graph = STNGraph()
    with open(path, "r", encoding="utf-8") as handle:
        for raw_line in handle:
            line = raw_line.strip()
            if not line or line in ("digraph stn {", "}"):
                continue
            if not line.endswith("];"):
                continue
            head, _, body = line[:-2].partition("[")
            attrs = _split_dot_attrs(body)
            head = head.strip()
            if head == "graph":
                graph.precision = float(attrs.get("precision", CELL_PRECISION))
                graph.merged = _DOT_BOOL.get(attrs.get("merged", "false"), False)
                graph.num_trajectories = int(attrs.get("num_trajectories", 0))
            elif "->" in head:
                src, _, dst = head.partition("->")
                key = (src.strip().strip('"'), dst.strip().strip('"'))
                graph.edges[key] = STNEdge(
                    count=int(attrs.get("count", 0)),
                    owner=attrs.get("owner") or None,
                    count_a=int(attrs.get("count_a", 0)),
                    count_b=int(attrs.get("count_b", 0)),
                )
            else:
                graph.nodes[head.strip('"')] = STNNode(
                    visits=int(attrs.get("visits", 0)),
                    is_start=_DOT_BOOL.get(attrs.get("is_start", "false"), False),
                    is_end=_DOT_BOOL.get(attrs.get("is_end", "false"), False),
                    is_optimal=_DOT_BOOL.get(attrs.get("is_optimal", "false"), False),
                    owner=attrs.get("owner") or None,
                )
    return graph


def export_graph(graph: STNGraph, path: str, fmt: str | None = None) -> None:
    """Write a graph to GraphML or DOT.

    The format is inferred from the file extension (.graphml, .dot, .gv)
    unless ``fmt`` is given.  Node attributes are visit counts, owner, and
    start/end/optimal flags; edge attributes are traversal counts and
    owner.  Both formats round-trip through ``import_graph``.

    Args:
        graph: Graph to export.
        path: Output file path.
        fmt: Optional explicit format, "graphml" or "dot".
    """
    name = _infer_format(path, fmt)
    if name == "graphml":
        import networkx as nx

        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        nx.write_graphml(_to_networkx(graph), path)
    else:
        _write_dot(graph, path)


def import_graph(path: str, fmt: str | None = None) -> STNGraph:
    """Read a graph previously written by ``export_graph``.

    Args:
        path: Input file path.
        fmt: Optional explicit format, "graphml" or "dot".

    Returns:
        The reconstructed STNGraph.
    """
    name = _infer_format(path, fmt)
    if name == "graphml":
        import networkx as nx

        return _from_networkx(nx.read_graphml(path))
    return _read_dot(path)


def write_trajectory_csv(path: str, points: list[TrajectoryPoint]) -> None:
    """Write trajectory points to CSV.

    Columns are ``run,vector,iteration,cell_key,agg_value,feasible``; the
    feasible flag is serialized as 0/1.  The in-memory optimal flag is not
    part of the interchange format.

    Args:
        path: Output file path.
        points: Points to serialize, written in the given order.
    """
    rows = [
        [p.run, p.vector, p.iteration, cell_key(p.cell), p.agg_value, int(p.feasible)]
        for p in points
    ]
    csvio.write_csv(path, TRAJECTORY_HEADER, rows)


def read_trajectory_csv(path: str) -> list[TrajectoryPoint]:
    """Read trajectory points written by ``write_trajectory_csv``.

    Args:
        path: Input file path.

    Returns:
        List of TrajectoryPoint with optimal flags cleared.
    """
    header, rows = csvio.read_csv(path)
    if header != TRAJECTORY_HEADER:
        raise ValueError(f"unexpected trajectory header {header!r} in {path}")
    points = []
    for row in rows:
        points.append(
            TrajectoryPoint(
                run=int(row[0]),
                vector=int(row[1]),
                iteration=int(row[2]),
                cell=parse_cell_key(row[3]),
                agg_value=float(row[4]),
                feasible=bool(int(row[5])),
            )
        )
    return points
