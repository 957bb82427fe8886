"""Decomposition weight vector generators and neighborhood relations.

Three generators are provided: Uniform Design (good lattice points
selected by centered L2 discrepancy), Simplex-Lattice Design, and
Sobol low-discrepancy points mapped onto the simplex.  All generators
return vectors on the unit simplex and are pure functions of their
arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd

import numpy as np
from scipy.spatial.distance import cdist
from scipy.stats import qmc

SIMPLEX_TOL = 1e-9


@dataclass(frozen=True)
class WeightVector:
    """One subproblem weight vector.

    Attributes:
        index: Subproblem id.
        weights: Nonnegative vector of length m summing to 1.
    """

    index: int
    weights: np.ndarray


def _wrap(W: np.ndarray) -> list[WeightVector]:
    return [WeightVector(index=i, weights=row) for i, row in enumerate(W)]


def weights_matrix(vectors: list[WeightVector]) -> np.ndarray:
    """Stack a list of WeightVectors into an (n, m) array."""
    return np.array([v.weights for v in vectors], dtype=float)


def _centered_l2_discrepancy(U: np.ndarray) -> float:
    """Centered L2 discrepancy of a design in the unit cube."""
    n, s = U.shape
    shifted = np.abs(U - 0.5)
    prod1 = np.prod(1.0 + 0.5 * shifted - 0.5 * shifted**2, axis=1)
    term1 = (13.0 / 12.0) ** s
    term2 = (2.0 / n) * np.sum(prod1)
    cross = (
        1.0
        + 0.5 * shifted[:, None, :]
        + 0.5 * shifted[None, :, :]
        - 0.5 * np.abs(U[:, None, :] - U[None, :, :])
    )
    term3 = np.sum(np.prod(cross, axis=2)) / n**2
    return term1 - term2 + term3


def _good_lattice_points(n: int, s: int) -> np.ndarray:
    """Good-lattice-point design of n runs in s dimensions.

    Candidate generators are the powers of each multiplier coprime
    with n; the design minimizing the centered L2 discrepancy wins,
    ties broken by the smaller multiplier.  When no multiplier yields
    s distinct coordinates (every unit mod n has too small an order),
    the modified construction builds the (n+1)-run lattice and drops
    its last run.
    """
    i = np.arange(n, dtype=float)
    if s == 1:
        return ((i + 0.5) / n)[:, None]
    best = None
    best_cd2 = np.inf
    for a in range(1, n):
        if gcd(a, n) != 1:
            continue
        h = np.empty(s, dtype=np.int64)
        h[0] = 1
        for j in range(1, s):
            h[j] = (h[j - 1] * a) % n
        if len(set(h.tolist())) < s:
            continue
        U = ((np.outer(i, h) % n) + 0.5) / n
        cd2 = _centered_l2_discrepancy(U)
        if cd2 < best_cd2 - 1e-15:
            best_cd2 = cd2
            best = U
    if best is None:
        return _good_lattice_points(n + 1, s)[:n]
    return best


def _cube_to_simplex(U: np.ndarray) -> np.ndarray:
    """Map (m-1)-dimensional cube points to the m-simplex.

    Uses the stick-breaking transform, which carries a uniform design
    in the cube to a uniform design on the simplex.
    """
    n, s = U.shape
    m = s + 1
    W = np.empty((n, m))
    remaining = np.ones(n)
    for j in range(s):
        frac = U[:, j] ** (1.0 / (m - 1 - j))
        W[:, j] = remaining * (1.0 - frac)
        remaining = remaining * frac
    W[:, m - 1] = remaining
    return W


def generate_uniform_design(n: int, m: int) -> list[WeightVector]:
    """Uniform Design weight vectors.

    Args:
        n: Number of vectors, n >= m.
        m: Number of objectives, m >= 2.

    Returns:
        Exactly n WeightVectors on the unit simplex, deterministic for
        fixed (n, m).

    Raises:
        ValueError: When n < m or m < 2.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if n < m:
        raise ValueError(f"need at least m={m} vectors, got n={n}")
    U = _good_lattice_points(n, m - 1)
    return _wrap(_cube_to_simplex(U))


def sld_divisions_for(N: int, m: int) -> int:
    """Smallest division count h whose lattice has at least N points."""
    h = 1
    while comb(h + m - 1, m - 1) < N:
        h += 1
    return h


def generate_sld(h: int, m: int) -> list[WeightVector]:
    """Simplex-Lattice Design weight vectors.

    Args:
        h: Number of divisions per objective, h >= 1.
        m: Number of objectives, m >= 2.

    Returns:
        All C(h+m-1, m-1) vectors with components from {0, 1/h, .., 1}
        summing to 1, in lexicographic order.

    Raises:
        ValueError: When h < 1 or m < 2.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")

    rows: list[tuple[int, ...]] = []

    def compose(prefix: tuple[int, ...], remaining: int, slots: int) -> None:
        if slots == 1:
            rows.append(prefix + (remaining,))
            return
        for k in range(remaining + 1):
            compose(prefix + (k,), remaining - k, slots - 1)

    compose((), h, m)
    W = np.array(rows, dtype=float) / h
    return _wrap(W)


def _sorted_spacings(U: np.ndarray) -> np.ndarray:
    """Map cube points to the simplex via sorted uniform spacings."""
    n, s = U.shape
    S = np.sort(U, axis=1)
    padded = np.column_stack([np.zeros(n), S, np.ones(n)])
    return np.diff(padded, axis=1)


def generate_sobol(n: int, m: int) -> list[WeightVector]:
    """Sobol sequence weight vectors.

    Draws unscrambled Sobol points in (m-1) dimensions (a power-of-two
    block, truncated to n) and maps them to the simplex through the
    sorted-uniform-spacings transform.

    Args:
        n: Number of vectors, n >= 1.
        m: Number of objectives, m >= 2.

    Returns:
        n deterministic WeightVectors on the unit simplex.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    sampler = qmc.Sobol(d=m - 1, scramble=False)
    size = 1
    while size < n:
        size *= 2
    U = sampler.random(size)[:n]
    return _wrap(_sorted_spacings(U))


@dataclass(frozen=True)
class NeighborhoodTable:
    """Nearest-neighbor structure over the weight vectors.

    Attributes:
        indices: Array (N, T); row i lists the T nearest subproblem
            indices of subproblem i by Euclidean weight distance,
            self first, ties broken by lower index.
        T: Neighborhood size.
        delta: Probability of restricting mating to the neighborhood.
    """

    indices: np.ndarray
    T: int
    delta: float


def build_neighborhood(vectors: list[WeightVector], T: int, delta: float = 1.0) -> NeighborhoodTable:
    """Build the T-nearest-neighbor table of a weight vector set.

    Args:
        vectors: Weight vectors of the subproblems.
        T: Neighborhood size, 1 <= T <= len(vectors).
        delta: Neighborhood mating probability stored on the table.

    Returns:
        NeighborhoodTable with each subproblem first in its own list.

    Raises:
        ValueError: When T is out of range.
    """
    n = len(vectors)
    if not 1 <= T <= n:
        raise ValueError(f"T must be in [1, {n}], got {T}")
    W = weights_matrix(vectors)
    dist = cdist(W, W)
    # Stable sort keeps equal distances in index order, the tie rule.
    order = np.argsort(dist, axis=1, kind="stable")
    table = np.empty((n, T), dtype=np.int64)
    for i in range(n):
        row = order[i]
        row = row[row != i]
        table[i, 0] = i
        table[i, 1:] = row[: T - 1]
    return NeighborhoodTable(indices=table, T=T, delta=delta)
