"""Performance metrics: hypervolume, anytime accumulated hypervolume,
IGD, population variance and metric correlations.

Hypervolume is exact: a sort-and-sweep for two objectives and an
incremental dimension sweep for three.  All functions are pure.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

ANYTIME_INTERVAL = 1000
ANYTIME_REF_COORD = 11.0
FINAL_REF_COORD = 1.1

METRICS_HEADER = [
    "problem",
    "variant",
    "seed",
    "final_hv",
    "hv_over_max",
    "accumulated_hv",
    "igd",
    "population_variance",
    "stn_nodes",
    "stn_edges",
    "shared_nodes",
]


@dataclass(frozen=True)
class MetricsRow:
    """All per-run metrics of one (problem, variant, seed) cell.

    Missing values (for example IGD of an empty approximation set or a
    failed run) are stored as None and serialized as empty CSV cells.

    Attributes:
        problem: Benchmark problem id.
        variant: Algorithm variant name.
        seed: RNG seed of the run.
        final_hv: Hypervolume of the final-population nondominated
            front after union min-max scaling, reference 1.1 per
            objective.
        hv_over_max: final_hv divided by the maximum attainable value
            1.1 ** m.
        accumulated_hv: Sum of archive hypervolumes over the anytime
            checkpoints, reference 11 per objective on raw objectives.
        igd: Inverted generational distance of the final population
            front to the reference front, raw objectives.
        population_variance: Decision-space dispersion of the final
            population.
        stn_nodes: Node count of the single-run trajectory network.
        stn_edges: Edge count of the single-run trajectory network.
        shared_nodes: Shared-node count of the merged pair network this
            run belongs to (0 for rows with no merge partner).
    """

    problem: str
    variant: str
    seed: int
    final_hv: float | None
    hv_over_max: float | None
    accumulated_hv: float | None
    igd: float | None
    population_variance: float | None
    stn_nodes: int | None
    stn_edges: int | None
    shared_nodes: int | None


def anytime_reference(m: int) -> np.ndarray:
    """Reference point 11^m of the anytime hypervolume protocol."""
    return np.full(m, ANYTIME_REF_COORD)


def final_reference(m: int) -> np.ndarray:
    """Reference point 1.1^m of the final scaled hypervolume."""
    return np.full(m, FINAL_REF_COORD)


def nondominated_mask(F: np.ndarray) -> np.ndarray:
    """Boolean mask of the rows of F not dominated by any other row."""
    F = np.asarray(F, dtype=float)
    n = F.shape[0]
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        le = np.all(F <= F[i], axis=1)
        lt = np.any(F < F[i], axis=1)
        if np.any(le & lt):
            keep[i] = False
    return keep


def _hv_2d(P: np.ndarray, ref: np.ndarray) -> float:
    order = np.lexsort((P[:, 1], P[:, 0]))
    f1 = P[order, 0]
    f2 = P[order, 1]
    running = np.minimum.accumulate(f2)
    prev = np.concatenate(([ref[1]], running[:-1]))
    mask = f2 < prev
    return float(np.sum((ref[0] - f1[mask]) * (prev[mask] - f2[mask])))


class _Staircase:
    """Mutually nondominated 2D point set with incremental area.

    Tracks the area dominated between the points and a fixed reference
    corner; insertion updates the area in amortized O(log n) plus the
    cost of removing newly dominated points.
    """

    def __init__(self, ref1: float, ref2: float):
        self.ref1 = ref1
        self.ref2 = ref2
        self.f1: list[float] = []
        self.f2: list[float] = []
        self.area = 0.0

    def insert(self, a: float, b: float) -> None:
        f1, f2 = self.f1, self.f2
        i = bisect_left(f1, a)
        if i > 0 and f2[i - 1] <= b:
            return
        if i < len(f1) and f1[i] == a and f2[i] <= b:
            return
        j = i
        while j < len(f1) and f2[j] >= b:
            j += 1
        prev2 = self.ref2 if i == 0 else f2[i - 1]
        removed = 0.0
        last2 = prev2
        for t in range(i, j):
            removed += (self.ref1 - f1[t]) * (last2 - f2[t])
            last2 = f2[t]
        if j < len(f1):
            removed += (self.ref1 - f1[j]) * (last2 - f2[j])
            added_next = (self.ref1 - f1[j]) * (b - f2[j])
        else:
            added_next = 0.0
        self.area += (self.ref1 - a) * (prev2 - b) + added_next - removed
        f1[i:j] = [a]
        f2[i:j] = [b]


def _hv_3d(P: np.ndarray, ref: np.ndarray) -> float:
    order = np.lexsort((P[:, 1], P[:, 0], P[:, 2]))
    P = P[order]
    stair = _Staircase(ref[0], ref[1])
    volume = 0.0
    n = P.shape[0]
    for i in range(n):
        stair.insert(P[i, 0], P[i, 1])
        z_next = P[i + 1, 2] if i + 1 < n else ref[2]
        volume += stair.area * (z_next - P[i, 2])
    return float(volume)


def hypervolume(points: np.ndarray, ref: np.ndarray) -> float:
    """Exact hypervolume dominated by a point set up to a reference.

    Args:
        points: Array (n, m) with m in {2, 3}; rows not componentwise
            <= ref are discarded.
        ref: Reference point of length m.

    Returns:
        The dominated volume; 0.0 when no point contributes.

    Raises:
        ValueError: On unsupported dimension or shape mismatch.
    """
    P = np.asarray(points, dtype=float)
    ref = np.asarray(ref, dtype=float)
    if P.ndim != 2 or P.shape[1] not in (2, 3):
        raise ValueError(f"expected (n, 2) or (n, 3) points, got shape {P.shape}")
    if ref.shape != (P.shape[1],):
        raise ValueError(f"reference point must have length {P.shape[1]}")
    P = P[np.all(P <= ref, axis=1)]
    if P.shape[0] == 0:
        return 0.0
    if P.shape[1] == 2:
        return _hv_2d(P, ref)
    return _hv_3d(P, ref)


def anytime_accumulated_hv(checkpoints: list, interval: int = ANYTIME_INTERVAL, ref: np.ndarray | None = None) -> float:
    """Sum of archive hypervolumes over the 1000-evaluation checkpoints.

    Args:
        checkpoints: Sequence of checkpoint records; each record either
            already carries a precomputed ``hv`` attribute or is a bare
            point set to evaluate against ``ref``.
        interval: Checkpoint spacing in evaluations (metadata only;
            the run loop produces one record per crossed multiple).
        ref: Reference point for bare point sets; defaults to 11^m.

    Returns:
        The accumulated hypervolume.
    """
    total = 0.0
    for entry in checkpoints:
        hv = getattr(entry, "hv", None)
        if hv is not None:
            total += hv
            continue
        F = np.asarray(entry, dtype=float)
        if F.size == 0:
            continue
        r = anytime_reference(F.shape[1]) if ref is None else ref
        total += hypervolume(F, r)
    return total


def igd(approx: np.ndarray, ref_set: np.ndarray) -> float:
    """Inverted generational distance of an approximation set.

    Args:
        approx: Approximation points (n, m); an empty set yields the
            +infinity sentinel (serialized as a missing value).
        ref_set: Reference front points (k, m), nonempty.

    Returns:
        Mean Euclidean distance from each reference point to its
        nearest approximation point.
    """
    ref_set = np.asarray(ref_set, dtype=float)
    if ref_set.ndim != 2 or ref_set.shape[0] == 0:
        raise ValueError("reference set must be a nonempty (k, m) array")
    approx = np.asarray(approx, dtype=float)
    if approx.size == 0:
        return float("inf")
    if approx.ndim != 2 or approx.shape[1] != ref_set.shape[1]:
        raise ValueError("approximation and reference dimensions differ")
    return float(np.mean(cdist(ref_set, approx).min(axis=1)))


def population_variance(X: np.ndarray) -> float:
    """Dispersion of a population in the decision space.

    Args:
        X: Decision matrix (N, D) with N >= 2.

    Returns:
        Mean over the D dimensions of the per-dimension sample
        variance.

    Raises:
        ValueError: When fewer than two rows are given.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 2:
        raise ValueError("population variance needs at least two rows")
    return float(np.mean(np.var(X, axis=0, ddof=1)))


def pearson_matrix(rows: np.ndarray, columns: list[str]) -> tuple[np.ndarray, list[str]]:
    """Pairwise Pearson correlation over metric columns.

    Args:
        rows: Array (n, k) of metric values, n >= 3, no missing values.
        columns: The k metric names, returned unchanged for labeling.

    Returns:
        Tuple (matrix, columns); the matrix is symmetric with unit
        diagonal, and entries touching a zero-variance column are NaN
        (serialized as missing).
    """
    data = np.asarray(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] != len(columns):
        raise ValueError("rows must be (n, k) matching the column names")
    if data.shape[0] < 3:
        raise ValueError("need at least 3 rows for a correlation matrix")
    if not np.all(np.isfinite(data)):
        raise ValueError("missing values in selected columns")
    centered = data - data.mean(axis=0)
    sd = np.sqrt(np.sum(centered**2, axis=0))
    k = len(columns)
    matrix = np.full((k, k), np.nan)
    cov = centered.T @ centered
    with np.errstate(invalid="ignore", divide="ignore"):
        denom = np.outer(sd, sd)
        valid = denom > 0.0
        matrix[valid] = cov[valid] / denom[valid]
    np.fill_diagonal(matrix, 1.0)
    return matrix, list(columns)
