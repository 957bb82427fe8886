"""DAS-CMOP constrained multiobjective benchmark problems.

Implements the nine DASCMOP problems with difficulty-adjustable
constraints.  DASCMOP1-6 have two objectives and eleven constraints,
DASCMOP7-9 have three objectives and seven constraints.  The constraint
layout of every problem is controlled by a difficulty triplet
(eta, zeta, gamma) tuning diversity-, feasibility- and
convergence-hardness; triplets are addressed by an integer index
between 1 and 16.

Sign convention: ``constraint_values <= 0`` means satisfied.  The
aggregate violation of a solution is the sum of the positive
constraint values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

N_VARS = 30
LOWER = 0.0
UPPER = 1.0

PROBLEM_IDS = tuple(f"DASCMOP{i}" for i in range(1, 10))

# (eta, zeta, gamma) triplets addressed by 1-based index.
DIFFICULTY_TRIPLETS = {
    1: (0.25, 0.0, 0.0),
    2: (0.0, 0.25, 0.0),
    3: (0.0, 0.0, 0.25),
    4: (0.25, 0.25, 0.25),
    5: (0.5, 0.0, 0.0),
    6: (0.0, 0.5, 0.0),
    7: (0.0, 0.0, 0.5),
    8: (0.5, 0.5, 0.5),
    9: (0.75, 0.0, 0.0),
    10: (0.0, 0.75, 0.0),
    11: (0.0, 0.0, 0.75),
    12: (0.75, 0.75, 0.75),
    13: (0.0, 1.0, 0.0),
    14: (0.5, 1.0, 0.0),
    15: (0.0, 1.0, 0.5),
    16: (0.5, 1.0, 0.5),
}
DEFAULT_DIFFICULTY = 16

# Ellipse exclusion zones of the two-objective problems, given in
# objective space: centers (p_k, q_k), rotation theta, axis scales.
ELLIPSE_P = np.array([0.0, 1.0, 0.0, 1.0, 2.0, 0.0, 1.0, 2.0, 3.0])
ELLIPSE_Q = np.array([1.5, 0.5, 2.5, 1.5, 0.5, 3.5, 2.5, 1.5, 0.5])
ELLIPSE_THETA = -0.25 * np.pi
ELLIPSE_A = 0.3
ELLIPSE_B = 1.2

# Sphere exclusion zones of the three-objective problems: unit-vector
# centers plus the simplex center direction.
SPHERE_CENTERS = np.array(
    [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [1.0 / np.sqrt(3.0), 1.0 / np.sqrt(3.0), 1.0 / np.sqrt(3.0)],
    ]
)

CONSTRAINT_FREQ = 20.0


@dataclass(frozen=True)
class ProblemInstance:
    """Immutable description of one DASCMOP problem.

    Attributes:
        id: Problem name, one of ``DASCMOP1`` .. ``DASCMOP9``.
        num_objectives: 2 for DASCMOP1-6, 3 for DASCMOP7-9.
        num_constraints: 11 for DASCMOP1-6, 7 for DASCMOP7-9.
        num_variables: Dimension of the decision space.
        bounds: Array of shape (num_variables, 2) with [lower, upper]
            per variable.
        difficulty_triplet: 1-based index into DIFFICULTY_TRIPLETS.
    """

    id: str
    num_objectives: int
    num_constraints: int
    num_variables: int
    bounds: np.ndarray
    difficulty_triplet: int = DEFAULT_DIFFICULTY

    @property
    def difficulty(self) -> tuple[float, float, float]:
        """Return the (eta, zeta, gamma) values of this instance."""
        return DIFFICULTY_TRIPLETS[self.difficulty_triplet]


@dataclass(frozen=True)
class Evaluation:
    """Result of evaluating one decision vector.

    Attributes:
        objectives: Objective vector of length num_objectives.
        constraint_values: Raw constraint values, <= 0 means satisfied.
        violation: Sum of the positive constraint values.
    """

    objectives: np.ndarray
    constraint_values: np.ndarray
    violation: float


def get_problem(problem_id: str | int, difficulty_triplet: int = DEFAULT_DIFFICULTY) -> ProblemInstance:
    """Build a ProblemInstance for one DASCMOP problem.

    Args:
        problem_id: Name like ``"DASCMOP3"`` or the plain index 3.
        difficulty_triplet: 1-based difficulty index, default 16.

    Returns:
        A frozen ProblemInstance.

    Raises:
        ValueError: For unknown problem ids or difficulty indices.
    """
    if isinstance(problem_id, str) and problem_id.strip().isdigit():
        problem_id = int(problem_id.strip())
    if isinstance(problem_id, int):
        problem_id = f"DASCMOP{problem_id}"
    problem_id = problem_id.upper()
    if problem_id not in PROBLEM_IDS:
        raise ValueError(f"unknown problem id: {problem_id!r}")
    if difficulty_triplet not in DIFFICULTY_TRIPLETS:
        raise ValueError(f"difficulty triplet index must be in 1..16, got {difficulty_triplet}")
    index = int(problem_id[len("DASCMOP"):])
    m = 2 if index <= 6 else 3
    num_constraints = 11 if index <= 6 else 7
    bounds = np.column_stack(
        [np.full(N_VARS, LOWER), np.full(N_VARS, UPPER)]
    )
    bounds.setflags(write=False)
    return ProblemInstance(
        id=problem_id,
        num_objectives=m,
        num_constraints=num_constraints,
        num_variables=N_VARS,
        bounds=bounds,
        difficulty_triplet=difficulty_triplet,
    )


def _difficulty_constants(problem: ProblemInstance) -> tuple[float, float, float, float]:
    """Return the derived constants (b, d, e, r) of the constraint set."""
    eta, zeta, gamma = problem.difficulty
    b = 2.0 * eta - 1.0
    d = 0.5 if zeta > 0.0 else 0.0
    e = d - np.log(zeta) if zeta > 0.0 else 1e30
    r = 0.5 * gamma
    return b, d, e, r


def _g1(X: np.ndarray) -> np.ndarray:
    """Smooth distance function linking x2..xD to x1."""
    return np.sum((X[:, 1:] - np.sin(0.5 * np.pi * X[:, :1])) ** 2, axis=1)


def _g2(X: np.ndarray, first: int) -> np.ndarray:
    """Multimodal (Rastrigin-like) distance function over x[first:]."""
    z = X[:, first:] - 0.5
    terms = z**2 - np.cos(CONSTRAINT_FREQ * np.pi * z)
    return (X.shape[1] - first) + np.sum(terms, axis=1)


def _g3(X: np.ndarray) -> np.ndarray:
    """Smooth distance function linking x3..xD to x1 and x2."""
    n = X.shape[1]
    j = np.arange(3, n + 1, dtype=float)
    link = np.cos(0.25 * np.pi * (j / n) * (X[:, :1] + X[:, 1:2]))
    return np.sum((X[:, 2:] - link) ** 2, axis=1)


def _constraints_two_obj(problem: ProblemInstance, x1: np.ndarray, g: np.ndarray, F: np.ndarray) -> np.ndarray:
    """Raw feasibility functions c_k >= 0 of the two-objective problems."""
    b, d, e, r = _difficulty_constants(problem)
    n = x1.shape[0]
    c = np.empty((n, 11))
    c[:, 0] = np.sin(CONSTRAINT_FREQ * np.pi * x1) - b
    c[:, 1] = (e - g) * (g - d)
    cos_t = np.cos(ELLIPSE_THETA)
    sin_t = np.sin(ELLIPSE_THETA)
    df1 = F[:, :1] - ELLIPSE_P[None, :]
    df2 = F[:, 1:2] - ELLIPSE_Q[None, :]
    u = df1 * cos_t - df2 * sin_t
    w = df1 * sin_t + df2 * cos_t
    c[:, 2:] = u**2 / ELLIPSE_A + w**2 / ELLIPSE_B - r
    return c


def _constraints_three_obj(problem: ProblemInstance, x1: np.ndarray, x2: np.ndarray, g: np.ndarray, F: np.ndarray) -> np.ndarray:
    """Raw feasibility functions c_k >= 0 of the three-objective problems."""
    b, d, e, r = _difficulty_constants(problem)
    n = x1.shape[0]
    c = np.empty((n, 7))
    c[:, 0] = np.sin(CONSTRAINT_FREQ * np.pi * x1) - b
    c[:, 1] = np.cos(CONSTRAINT_FREQ * np.pi * x2) - b
    c[:, 2] = (e - g) * (g - d)
    diff = F[:, None, :] - SPHERE_CENTERS[None, :, :]
    c[:, 3:] = np.sum(diff**2, axis=2) - r**2
    return c


def evaluate_batch(problem: ProblemInstance, X: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Evaluate a batch of decision vectors.

    Args:
        problem: Problem instance.
        X: Array of shape (n, num_variables), all rows within bounds.

    Returns:
        Tuple (F, C, V): objectives (n, m), constraint values (n, k)
        with <= 0 satisfied, and violations (n,).

    Raises:
        ValueError: On dimension mismatch or out-of-bounds rows.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != problem.num_variables:
        raise ValueError(
            f"expected shape (n, {problem.num_variables}), got {X.shape}"
        )
    if X.size and (X.min() < LOWER - 1e-12 or X.max() > UPPER + 1e-12):
        raise ValueError("decision vectors outside bounds; repair before evaluating")

    index = int(problem.id[len("DASCMOP"):])
    x1 = X[:, 0]
    if index <= 6:
        g = _g1(X) if index <= 3 else _g2(X, 1)
        f1 = x1 + g
        if index in (1, 4):
            h = 1.0 - x1**2
        elif index in (2, 5):
            h = 1.0 - np.sqrt(x1)
        else:
            h = 1.0 - np.sqrt(x1) + 0.5 * np.abs(np.sin(5.0 * np.pi * x1))
        F = np.column_stack([f1, h + g])
        c = _constraints_two_obj(problem, x1, g, F)
    else:
        x2 = X[:, 1]
        g = _g2(X, 2) if index in (7, 8) else _g3(X)
        if index == 7:
            F = np.column_stack([x1 * x2 + g, x1 * (1.0 - x2) + g, 1.0 - x1 + g])
        else:
            F = np.column_stack(
                [
                    np.cos(0.5 * np.pi * x1) * np.cos(0.5 * np.pi * x2) + g,
                    np.cos(0.5 * np.pi * x1) * np.sin(0.5 * np.pi * x2) + g,
                    np.sin(0.5 * np.pi * x1) + g,
                ]
            )
        c = _constraints_three_obj(problem, x1, x2, g, F)

    C = -c
    V = np.sum(np.maximum(C, 0.0), axis=1)
    return F, C, V


def evaluate(problem: ProblemInstance, x: np.ndarray) -> Evaluation:
    """Evaluate a single decision vector.

    Args:
        problem: Problem instance.
        x: Vector of length num_variables, within bounds.

    Returns:
        Evaluation with objectives, raw constraint values and the
        aggregate violation.

    Raises:
        ValueError: On dimension mismatch or out-of-bounds input.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != problem.num_variables:
        raise ValueError(
            f"expected vector of length {problem.num_variables}, got shape {x.shape}"
        )
    F, C, V = evaluate_batch(problem, x[None, :])
    return Evaluation(objectives=F[0], constraint_values=C[0], violation=float(V[0]))


def violation(constraint_values: np.ndarray) -> float:
    """Aggregate constraint values into a scalar violation.

    Args:
        constraint_values: Raw constraint values, <= 0 satisfied.

    Returns:
        Sum of the positive entries; 0.0 for fully feasible input.
    """
    cv = np.asarray(constraint_values, dtype=float)
    if not np.all(np.isfinite(cv)):
        raise ValueError("constraint values must be finite")
    return float(np.sum(np.maximum(cv, 0.0)))


# ---------------------------------------------------------------------------
# Reference fronts
# ---------------------------------------------------------------------------

# Synthesis parameters, frozen so that the shipped CSV files can be
# regenerated bit-identically.
FRONT_GRID_2D = 200001
FRONT_GRID_3D = 601
FRONT_SUBSAMPLE_3D = 6000
FRONT_TARGET_2D = 1000
FRONT_TARGET_3D = 1500


def _nondominated_mask(F: np.ndarray) -> np.ndarray:
    """Boolean mask of rows not dominated by any other row."""
    n = F.shape[0]
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        if not keep[i]:
            continue
        le = np.all(F <= F[i], axis=1)
        lt = np.any(F < F[i], axis=1)
        dominators = le & lt
        if dominators.any():
            keep[i] = False
    return keep


def _stride_indices(n: int, target: int) -> np.ndarray:
    """Deterministic subsample of n indices down to about target."""
    if n <= target:
        return np.arange(n)
    step = int(np.ceil(n / target))
    idx = np.arange(0, n, step)
    if idx[-1] != n - 1:
        idx = np.append(idx, n - 1)
    return idx


def synthesize_reference_front(problem: ProblemInstance) -> np.ndarray:
    """Construct the feasible Pareto front of a problem numerically.

    The front is sampled on a dense grid of the position variables.
    On the feasible set the distance function g equals the feasibility
    shell value, so the front is parameterized by the position
    variables alone; the grid is filtered by the raw constraints and a
    nondominated filter.

    Args:
        problem: Problem instance (difficulty triplet 16 is the tested
            configuration; other triplets work if their feasible shell
            is g = d).

    Returns:
        Array (k, m) of objective vectors, sorted lexicographically.
    """
    index = int(problem.id[len("DASCMOP"):])
    _, d, _, _ = _difficulty_constants(problem)
    g_shell = d
    if index <= 6:
        x1 = np.linspace(0.0, 1.0, FRONT_GRID_2D)
        if index in (1, 4):
            h = 1.0 - x1**2
        elif index in (2, 5):
            h = 1.0 - np.sqrt(x1)
        else:
            h = 1.0 - np.sqrt(x1) + 0.5 * np.abs(np.sin(5.0 * np.pi * x1))
        F = np.column_stack([x1 + g_shell, h + g_shell])
        g = np.full(x1.shape, g_shell)
        c = _constraints_two_obj(problem, x1, g, F)
        feasible = np.all(c >= 0.0, axis=1)
        F = F[feasible]
        F = F[_stride_indices(F.shape[0], 20 * FRONT_TARGET_2D)]
        F = F[_nondominated_mask(F)]
        F = F[_stride_indices(F.shape[0], FRONT_TARGET_2D)]
    else:
        axis = np.linspace(0.0, 1.0, FRONT_GRID_3D)
        x1, x2 = np.meshgrid(axis, axis, indexing="ij")
        x1 = x1.ravel()
        x2 = x2.ravel()
        if index == 7:
            F = np.column_stack(
                [x1 * x2 + g_shell, x1 * (1.0 - x2) + g_shell, 1.0 - x1 + g_shell]
            )
        else:
            F = np.column_stack(
                [
                    np.cos(0.5 * np.pi * x1) * np.cos(0.5 * np.pi * x2) + g_shell,
                    np.cos(0.5 * np.pi * x1) * np.sin(0.5 * np.pi * x2) + g_shell,
                    np.sin(0.5 * np.pi * x1) + g_shell,
                ]
            )
        g = np.full(x1.shape, g_shell)
        c = _constraints_three_obj(problem, x1, x2, g, F)
        feasible = np.all(c >= 0.0, axis=1)
        F = F[feasible]
        F = np.unique(F, axis=0)
        F = F[_stride_indices(F.shape[0], FRONT_SUBSAMPLE_3D)]
        F = F[_nondominated_mask(F)]
        F = F[_stride_indices(F.shape[0], FRONT_TARGET_3D)]
    order = np.lexsort(tuple(F[:, j] for j in reversed(range(F.shape[1]))))
    return F[order]


def front_csv_name(problem: ProblemInstance) -> str:
    """File name of the shipped reference front for a problem."""
    return f"{problem.id}.csv"


def reference_front(problem: ProblemInstance) -> np.ndarray:
    """Load the shipped reference Pareto front of a problem.

    Args:
        problem: Problem instance.

    Returns:
        Array (k, m) of reference objective vectors.

    Raises:
        FileNotFoundError: When the data file is absent; the message
            names the expected path.
        ValueError: When the file is empty or has a wrong column count.
    """
    from importlib import resources

    name = front_csv_name(problem)
    root = resources.files("moead_stn.data") / "fronts" / name
    if not root.is_file():
        raise FileNotFoundError(f"reference front data file missing: {root}")
    text = root.read_text().strip().splitlines()
    expected_header = ",".join(f"f{j + 1}" for j in range(problem.num_objectives))
    if not text or text[0].strip() != expected_header:
        raise ValueError(
            f"reference front {name}: expected header {expected_header!r}"
        )
    rows = [line.split(",") for line in text[1:] if line.strip()]
    if not rows:
        raise ValueError(f"reference front {name}: no data points")
    if any(len(row) != problem.num_objectives for row in rows):
        raise ValueError(
            f"reference front {name}: every row must have {problem.num_objectives} columns"
        )
    return np.array(rows, dtype=float)
