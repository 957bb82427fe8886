"""Generational MOEA/D core with pluggable components.

Executes the decomposition-based template: initialize population and
weight vectors, then iterate neighborhood mating, DE plus polynomial
mutation variation, penalized scalarized replacement, archive
maintenance and optional periodic restart, until the evaluation budget
is exhausted.  Every run is a pure function of (config, problem, seed)
and records a full RunTrace.

Constraints are handled by a dynamic penalty added to the scalarized
value: f_agg + (C*t)^alpha * v(x) with C = 0.05, alpha = 2 and t the
iteration index.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace

import numpy as np

from . import metrics
from .csvio import write_csv
from .decomposition import (
    WeightVector,
    build_neighborhood,
    generate_sld,
    generate_sobol,
    generate_uniform_design,
    sld_divisions_for,
    weights_matrix,
)
from .problems import ProblemInstance, evaluate_batch

DECOMPOSITIONS = ("uniform", "sld", "sobol")
AGGREGATIONS = ("wt", "awt")
UPDATES = ("restricted", "best")
PARTIAL_FRACTIONS = (0.10, 0.15, 0.20, 0.25)

RESTART_PERIOD = 20000
DEFAULT_BUDGET = 100000
PENALTY_C = 0.05
PENALTY_ALPHA = 2.0
WEIGHT_EPS = 1e-6

# Numerical-zero tolerance under which a violation counts as feasible
# for archive admission and feasibility flags.  Violations are sums of
# squared band offsets, so float dust appears whenever a solution sits
# on the feasibility shell up to rounding; anything above this level is
# a genuine violation and stays out of the archive.
FEASIBILITY_EPS = 1e-10

CHECKPOINT_INTERVAL = metrics.ANYTIME_INTERVAL


@dataclass(frozen=True)
class Config:
    """Complete component selection for one MOEA/D instance.

    Attributes:
        decomposition: Weight generator, one of uniform | sld | sobol.
        population_size: Requested number of subproblems N.
        aggregation: Scalarizer, wt (weighted Tchebycheff) or awt
            (adjusted weighted Tchebycheff).
        update: Replacement policy, restricted (within neighborhood)
            or best (over the whole population).
        nr: Replacement cap per candidate.
        T: Neighborhood size.
        delta: Probability of mating within the neighborhood.
        de_F: Differential evolution scale factor.
        pm_eta: Polynomial mutation distribution index.
        pm_prob: Per-variable polynomial mutation probability.
        partial_update: Fraction of subproblems updated per iteration,
            or None to update all of them.
        restart: Whether to re-randomize the population every
            RESTART_PERIOD evaluations.
        budget: Total evaluation budget.
    """

    decomposition: str = "uniform"
    population_size: int = 100
    aggregation: str = "wt"
    update: str = "restricted"
    nr: int = 13
    T: int = 18
    delta: float = 0.5831
    de_F: float = 0.705
    pm_eta: float = 57.0443
    pm_prob: float = 0.303
    partial_update: float | None = None
    restart: bool = True
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.decomposition not in DECOMPOSITIONS:
            raise ValueError(f"decomposition must be one of {DECOMPOSITIONS}")
        if self.aggregation not in AGGREGATIONS:
            raise ValueError(f"aggregation must be one of {AGGREGATIONS}")
        if self.update not in UPDATES:
            raise ValueError(f"update must be one of {UPDATES}")
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if self.nr < 1:
            raise ValueError("nr must be >= 1")
        if self.T < 1:
            raise ValueError("T must be >= 1")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError("delta must be in [0, 1]")
        if not 0.1 <= self.de_F <= 1.0:
            raise ValueError("de_F must be in [0.1, 1]")
        if not 1.0 <= self.pm_eta <= 100.0:
            raise ValueError("pm_eta must be in [1, 100]")
        if not 0.0 <= self.pm_prob <= 1.0:
            raise ValueError("pm_prob must be in [0, 1]")
        if self.partial_update is not None and not any(
            abs(self.partial_update - p) < 1e-12 for p in PARTIAL_FRACTIONS
        ):
            raise ValueError(f"partial_update must be None or one of {PARTIAL_FRACTIONS}")
        if self.budget < 1:
            raise ValueError("budget must be >= 1")


def load_config(path: str) -> Config:
    """Read a Config from a flat TOML file, one key per component.

    Unknown keys are rejected; absent keys keep their defaults.
    ``partial_update`` may be a fraction, ``false`` or absent.
    """
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    with open(path, "rb") as handle:
        data = tomllib.load(handle)
    known = {f.name for f in fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if data.get("partial_update") is False:
        data["partial_update"] = None
    return Config(**data)


def save_config(config: Config, path: str) -> None:
    """Write a Config as a flat TOML file."""
    lines = []
    for f in fields(Config):
        value = getattr(config, f.name)
        if value is None:
            continue
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, str):
            text = f'"{value}"'
        elif isinstance(value, float):
            text = repr(float(value))
        else:
            text = str(value)
        lines.append(f"{f.name} = {text}")
    with open(path, "w", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


@dataclass(frozen=True)
class Solution:
    """One evaluated solution.

    Attributes:
        x: Decision vector.
        objectives: Raw objective vector.
        violation: Aggregate constraint violation.
        birth_tick: Iteration at which the solution was created.
    """

    x: np.ndarray
    objectives: np.ndarray
    violation: float
    birth_tick: int


@dataclass
class IterationSnapshot:
    """Population state at the end of one iteration."""

    t: int
    t_evals: int
    X: np.ndarray
    F_raw: np.ndarray
    F_scaled: np.ndarray
    V: np.ndarray
    birth: np.ndarray


@dataclass
class Checkpoint:
    """Archive summary recorded when t_evals crosses a 1000 multiple."""

    evals: int
    hv: float
    archive_size: int
    archive_objectives: np.ndarray


@dataclass
class RunTrace:
    """Complete record of one seeded run."""

    problem_id: str
    config: Config
    seed: int
    feasibility_eps: float
    realized_population_size: int
    snapshots: list[IterationSnapshot] = field(default_factory=list)
    checkpoints: list[Checkpoint] = field(default_factory=list)
    restart_evals: list[int] = field(default_factory=list)
    final_archive: np.ndarray | None = None
    total_evaluations: int = 0


# ---------------------------------------------------------------------------
# Scalarization
# ---------------------------------------------------------------------------


def scale_objectives(raw: np.ndarray) -> np.ndarray:
    """Min-max scale an objective matrix to [0, 1] per column.

    Constant columns map to 0 everywhere.
    """
    raw = np.asarray(raw, dtype=float)
    if raw.ndim != 2 or raw.shape[0] < 1:
        raise ValueError("need a nonempty (n, m) objective matrix")
    mins = raw.min(axis=0)
    span = raw.max(axis=0) - mins
    span = np.where(span > 0.0, span, 1.0)
    return (raw - mins) / span


def _weights_of(w) -> np.ndarray:
    if isinstance(w, WeightVector):
        return w.weights
    return np.asarray(w, dtype=float)


def effective_wt_weights(w) -> np.ndarray:
    """Weights with zero components replaced by WEIGHT_EPS."""
    wv = _weights_of(w)
    return np.where(wv == 0.0, WEIGHT_EPS, wv)


def awt_weights(w) -> np.ndarray:
    """Adjusted weights: componentwise inverse, renormalized to sum 1."""
    wv = effective_wt_weights(w)
    inv = 1.0 / wv
    return inv / inv.sum()


def aggregate_wt(f_scaled: np.ndarray, w, z: np.ndarray | None = None) -> float:
    """Weighted Tchebycheff value of a scaled objective vector."""
    f = np.asarray(f_scaled, dtype=float)
    zz = np.zeros_like(f) if z is None else np.asarray(z, dtype=float)
    return float(np.max(effective_wt_weights(w) * np.abs(f - zz)))


def aggregate_awt(f_scaled: np.ndarray, w, z: np.ndarray | None = None) -> float:
    """Adjusted weighted Tchebycheff value of a scaled objective vector."""
    f = np.asarray(f_scaled, dtype=float)
    zz = np.zeros_like(f) if z is None else np.asarray(z, dtype=float)
    return float(np.max(awt_weights(w) * np.abs(f - zz)))


def penalize(f_agg: float, t: int, v: float) -> float:
    """Dynamic constraint penalty: f_agg + (C*t)^alpha * v."""
    return f_agg + (PENALTY_C * t) ** PENALTY_ALPHA * v


# ---------------------------------------------------------------------------
# Variation
# ---------------------------------------------------------------------------


def select_update_set(N: int, partial: float | None, rng: np.random.Generator) -> np.ndarray:
    """Subproblem indices updated this iteration.

    Without partial update all N indices are returned; with a fraction
    p, ceil(p*N) distinct indices are sampled uniformly and returned in
    ascending order.
    """
    if partial is None:
        return np.arange(N)
    count = int(np.ceil(partial * N))
    return np.sort(rng.choice(N, size=count, replace=False))


def variation_de(i: int, pool: np.ndarray, pop_X: np.ndarray, F: float, rng: np.random.Generator, bounds: np.ndarray) -> np.ndarray:
    """DE/rand/1 candidate for subproblem i from a mating pool.

    Falls back to the whole population when the pool has fewer than
    three members.  Out-of-bounds components are truncated.
    """
    pool = np.asarray(pool)
    if pool.shape[0] < 3:
        pool = np.arange(pop_X.shape[0])
    keys = rng.random(pool.shape[0])
    r1, r2, r3 = pool[np.argsort(keys, kind="stable")[:3]]
    v = pop_X[r1] + F * (pop_X[r2] - pop_X[r3])
    return np.clip(v, bounds[:, 0], bounds[:, 1])


def variation_polymut(x: np.ndarray, eta: float, prob: float, bounds: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Bounded polynomial mutation applied per component."""
    return _polymut_batch(x[None, :], eta, prob, bounds, rng)[0]


def _polymut_batch(X: np.ndarray, eta: float, prob: float, bounds: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    lo = bounds[:, 0]
    hi = bounds[:, 1]
    span = hi - lo
    mask = rng.random(X.shape) < prob
    u = rng.random(X.shape)
    delta1 = (X - lo) / span
    delta2 = (hi - X) / span
    mut_pow = 1.0 / (eta + 1.0)
    lower_branch = u < 0.5
    val_lo = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - delta1) ** (eta + 1.0)
    val_hi = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - delta2) ** (eta + 1.0)
    deltaq = np.where(lower_branch, val_lo**mut_pow - 1.0, 1.0 - val_hi**mut_pow)
    Y = np.where(mask, X + deltaq * span, X)
    return np.clip(Y, lo, hi)


def _de_batch(sel: np.ndarray, pools_nbhd: np.ndarray, use_nbhd: np.ndarray, pop_X: np.ndarray, F: float, rng: np.random.Generator, bounds: np.ndarray) -> np.ndarray:
    """Vectorized DE/rand/1 over a batch of subproblems.

    Parents are three distinct indices drawn from each subproblem's
    mating pool (its neighborhood row or the whole population) via
    random-key ordering, matching the single-candidate operator.
    """
    k = sel.shape[0]
    N = pop_X.shape[0]
    parents = np.empty((k, 3), dtype=np.int64)
    nb_rows = np.nonzero(use_nbhd)[0]
    gl_rows = np.nonzero(~use_nbhd)[0]
    if nb_rows.size:
        keys = rng.random((nb_rows.size, pools_nbhd.shape[1]))
        pick = np.argsort(keys, axis=1, kind="stable")[:, :3]
        parents[nb_rows] = np.take_along_axis(
            pools_nbhd[sel[nb_rows]], pick, axis=1
        )
    if gl_rows.size:
        keys = rng.random((gl_rows.size, N))
        parents[gl_rows] = np.argsort(keys, axis=1, kind="stable")[:, :3]
    r1, r2, r3 = parents[:, 0], parents[:, 1], parents[:, 2]
    V = pop_X[r1] + F * (pop_X[r2] - pop_X[r3])
    return np.clip(V, bounds[:, 0], bounds[:, 1])


# ---------------------------------------------------------------------------
# Population update
# ---------------------------------------------------------------------------


@dataclass
class PopulationState:
    """Mutable arrays of the incumbent population."""

    X: np.ndarray
    F_raw: np.ndarray
    V: np.ndarray
    birth: np.ndarray


def _apply_replacement(state: PopulationState, j: int, cand_X: np.ndarray, cand_F: np.ndarray, cand_v: float, tick: int) -> None:
    state.X[j] = cand_X
    state.F_raw[j] = cand_F
    state.V[j] = cand_v
    state.birth[j] = tick


def update_restricted(
    state: PopulationState,
    sel: np.ndarray,
    cand_X: np.ndarray,
    cand_F: np.ndarray,
    cand_V: np.ndarray,
    neighborhood: np.ndarray,
    nr: int,
    pen_cand: np.ndarray,
    pen_inc: np.ndarray,
    rng: np.random.Generator,
    tick: int,
) -> int:
    """Neighborhood-restricted replacement.

    Each candidate scans the neighborhood of its subproblem in random
    order and replaces incumbents whose penalized scalarized value it
    strictly improves, stopping after nr replacements.  Candidates are
    processed sequentially against the updated incumbents.

    Returns:
        Number of replacements performed.
    """
    k = sel.shape[0]
    T = neighborhood.shape[1]
    scan = rng.permuted(np.tile(np.arange(T), (k, 1)), axis=1)
    pen_inc_list = pen_inc.tolist()
    total = 0
    for i in range(k):
        nbhd = neighborhood[sel[i]]
        row = pen_cand[i]
        done = 0
        for pos in scan[i]:
            j = int(nbhd[pos])
            value = row[j]
            if value < pen_inc_list[j]:
                _apply_replacement(state, j, cand_X[i], cand_F[i], cand_V[i], tick)
                pen_inc_list[j] = value
                total += 1
                done += 1
                if done == nr:
                    break
    pen_inc[:] = pen_inc_list
    return total


def update_best(
    state: PopulationState,
    sel: np.ndarray,
    cand_X: np.ndarray,
    cand_F: np.ndarray,
    cand_V: np.ndarray,
    nr: int,
    pen_cand: np.ndarray,
    pen_inc: np.ndarray,
    tick: int,
) -> int:
    """Whole-population replacement of the nr largest improvements.

    Each candidate targets the nr subproblems where it improves the
    incumbent penalized value the most; later candidates are compared
    against already-updated incumbents.

    Returns:
        Number of replacements performed.
    """
    k = sel.shape[0]
    N = pen_inc.shape[0]
    order_index = np.arange(N)
    total = 0
    for i in range(k):
        diff = pen_inc - pen_cand[i]
        order = np.lexsort((order_index, -diff))
        for j in order[:nr]:
            if diff[j] <= 0.0:
                break
            _apply_replacement(state, j, cand_X[i], cand_F[i], cand_V[i], tick)
            pen_inc[j] = pen_cand[i, j]
            total += 1
    return total


# ---------------------------------------------------------------------------
# Archive
# ---------------------------------------------------------------------------


class Archive:
    """Unbounded external archive of feasible nondominated solutions.

    Feasibility is violation <= feasibility_eps; dominance uses raw
    objectives.  The archive never influences the search.
    """

    def __init__(self, num_objectives: int, feasibility_eps: float = FEASIBILITY_EPS):
        self.m = num_objectives
        self.eps = feasibility_eps
        if self.m == 2:
            self._f1: list[float] = []
            self._f2: list[float] = []
        else:
            self._F = np.empty((0, self.m))

    @property
    def size(self) -> int:
        return len(self._f1) if self.m == 2 else self._F.shape[0]

    def points(self) -> np.ndarray:
        """Objective vectors of the archive, deterministically ordered."""
        if self.m == 2:
            return np.column_stack([self._f1, self._f2]) if self._f1 else np.empty((0, 2))
        return self._F.copy()

    def update(self, F: np.ndarray, V: np.ndarray) -> int:
        """Insert the feasible rows of a candidate batch.

        Dominated members are removed; duplicates and dominated
        candidates are rejected.

        Returns:
            Number of candidates admitted.
        """
        F = np.asarray(F, dtype=float)
        V = np.asarray(V, dtype=float)
        feas = V <= self.eps
        if not feas.any():
            return 0
        F = F[feas]
        if self.m == 2:
            return self._update_2d(F)
        return self._update_generic(F)

    def _update_2d(self, F: np.ndarray) -> int:
        from bisect import bisect_left

        f1s, f2s = self._f1, self._f2
        admitted = 0
        for a, b in F:
            a = float(a)
            b = float(b)
            i = bisect_left(f1s, a)
            if i > 0 and f2s[i - 1] <= b:
                continue
            if i < len(f1s) and f1s[i] == a and f2s[i] <= b:
                continue
            j = i
            while j < len(f1s) and f2s[j] >= b:
                j += 1
            f1s[i:j] = [a]
            f2s[i:j] = [b]
            admitted += 1
        return admitted

    def _update_generic(self, F: np.ndarray) -> int:
        A = self._F
        keep_rows = []
        for row in F:
            if A.shape[0]:
                le = np.all(A <= row, axis=1)
                if np.any(le & np.any(A < row, axis=1)) or np.any(
                    le & np.all(A == row, axis=1)
                ):
                    continue
            dominated_in_batch = False
            for other in keep_rows:
                if np.all(other <= row) and (np.any(other < row) or np.all(other == row)):
                    dominated_in_batch = True
                    break
            if dominated_in_batch:
                continue
            keep_rows = [
                other
                for other in keep_rows
                if not (np.all(row <= other) and np.any(row < other))
            ]
            keep_rows.append(row)
        if not keep_rows:
            return 0
        New = np.array(keep_rows)
        if A.shape[0]:
            dominated = np.zeros(A.shape[0], dtype=bool)
            for row in New:
                dominated |= np.all(row <= A, axis=1) & np.any(row < A, axis=1)
            A = A[~dominated]
        merged = np.vstack([A, New]) if A.shape[0] else New
        order = np.lexsort(tuple(merged[:, j] for j in reversed(range(self.m))))
        self._F = merged[order]
        return New.shape[0]

    def hypervolume(self, ref: np.ndarray) -> float:
        if self.size == 0:
            return 0.0
        return metrics.hypervolume(self.points(), ref)


def archive_update(archive: Archive, F: np.ndarray, V: np.ndarray) -> Archive:
    """Functional wrapper over Archive.update."""
    archive.update(F, V)
    return archive


# ---------------------------------------------------------------------------
# Restart
# ---------------------------------------------------------------------------


def restart_due(t_evals: int, since: int = 0, period: int = RESTART_PERIOD) -> bool:
    """True when t_evals crossed a period multiple after ``since``."""
    return t_evals // period > since // period


def restart_population(problem: ProblemInstance, N: int, rng: np.random.Generator) -> np.ndarray:
    """Fresh uniform-random population within bounds."""
    lo = problem.bounds[:, 0]
    span = problem.bounds[:, 1] - lo
    return lo + rng.random((N, problem.num_variables)) * span


# ---------------------------------------------------------------------------
# Run loop
# ---------------------------------------------------------------------------


def decomposition_vectors(config: Config, m: int) -> list[WeightVector]:
    """Weight vectors for a config; SLD rounds N up to a full lattice."""
    if config.decomposition == "uniform":
        return generate_uniform_design(config.population_size, m)
    if config.decomposition == "sld":
        h = sld_divisions_for(config.population_size, m)
        return generate_sld(h, m)
    return generate_sobol(config.population_size, m)


def run(
    config: Config,
    problem: ProblemInstance,
    seed: int,
    feasibility_eps: float = FEASIBILITY_EPS,
) -> RunTrace:
    """Execute one seeded MOEA/D run.

    Args:
        config: Component selection.
        problem: Problem instance.
        seed: RNG seed; identical (config, problem, seed) inputs yield
            bit-identical traces.
        feasibility_eps: Violation tolerance for archive admission.

    Returns:
        RunTrace with per-iteration snapshots, checkpoint summaries,
        restart events and the final archive.

    Raises:
        ValueError: When the budget cannot cover initialization.
    """
    m = problem.num_objectives
    vectors = decomposition_vectors(config, m)
    N = len(vectors)
    if config.budget < N:
        raise ValueError(
            f"budget {config.budget} cannot initialize population of {N}"
        )
    if config.T > N:
        raise ValueError(f"T={config.T} exceeds population size {N}")

    W = weights_matrix(vectors)
    if config.aggregation == "wt":
        W_eff = np.where(W == 0.0, WEIGHT_EPS, W)
    else:
        W_nonzero = np.where(W == 0.0, WEIGHT_EPS, W)
        inv = 1.0 / W_nonzero
        W_eff = inv / inv.sum(axis=1, keepdims=True)
    neighborhood = build_neighborhood(vectors, config.T, config.delta).indices

    rng = np.random.default_rng(seed)
    bounds = problem.bounds
    trace = RunTrace(
        problem_id=problem.id,
        config=config,
        seed=seed,
        feasibility_eps=feasibility_eps,
        realized_population_size=N,
    )
    archive = Archive(m, feasibility_eps)
    next_checkpoint = CHECKPOINT_INTERVAL

    def record_checkpoints(t_evals: int) -> int:
        nonlocal next_checkpoint
        while next_checkpoint <= t_evals:
            pts = archive.points()
            hv = metrics.hypervolume(pts, metrics.anytime_reference(m)) if pts.size else 0.0
            trace.checkpoints.append(
                Checkpoint(
                    evals=next_checkpoint,
                    hv=hv,
                    archive_size=archive.size,
                    archive_objectives=pts,
                )
            )
            next_checkpoint += CHECKPOINT_INTERVAL
        return next_checkpoint

    def snapshot(t: int, t_evals: int, state: PopulationState) -> None:
        trace.snapshots.append(
            IterationSnapshot(
                t=t,
                t_evals=t_evals,
                X=state.X.copy(),
                F_raw=state.F_raw.copy(),
                F_scaled=scale_objectives(state.F_raw),
                V=state.V.copy(),
                birth=state.birth.copy(),
            )
        )

    X = restart_population(problem, N, rng)
    F_raw, _, V = evaluate_batch(problem, X)
    t_evals = N
    state = PopulationState(X=X, F_raw=F_raw, V=V, birth=np.zeros(N, dtype=np.int64))
    archive.update(F_raw, V)
    record_checkpoints(t_evals)
    snapshot(0, t_evals, state)

    t = 0
    last_restart = 0
    while t_evals < config.budget:
        t += 1
        sel = select_update_set(N, config.partial_update, rng)
        remaining = config.budget - t_evals
        if sel.shape[0] > remaining:
            sel = sel[:remaining]
        k = sel.shape[0]

        use_nbhd = rng.random(k) < config.delta
        if config.T < 3:
            use_nbhd = np.zeros(k, dtype=bool)
        cand_X = _de_batch(sel, neighborhood, use_nbhd, state.X, config.de_F, rng, bounds)
        cand_X = _polymut_batch(cand_X, config.pm_eta, config.pm_prob, bounds, rng)
        cand_F, _, cand_V = evaluate_batch(problem, cand_X)
        t_evals += k

        combined = np.vstack([state.F_raw, cand_F])
        scaled = scale_objectives(combined)
        pop_s = scaled[:N]
        cand_s = scaled[N:]
        pen = (PENALTY_C * t) ** PENALTY_ALPHA
        agg_inc = np.max(np.abs(pop_s) * W_eff, axis=1)
        pen_inc = agg_inc + pen * state.V
        agg_cand = np.max(np.abs(cand_s)[:, None, :] * W_eff[None, :, :], axis=2)
        pen_cand = agg_cand + pen * cand_V[:, None]

        if config.update == "restricted":
            update_restricted(
                state, sel, cand_X, cand_F, cand_V, neighborhood,
                config.nr, pen_cand, pen_inc, rng, t,
            )
        else:
            update_best(
                state, sel, cand_X, cand_F, cand_V,
                config.nr, pen_cand, pen_inc, t,
            )

        archive.update(cand_F, cand_V)
        record_checkpoints(t_evals)

        if (
            config.restart
            and restart_due(t_evals, last_restart)
            and config.budget - t_evals >= N
        ):
            state.X = restart_population(problem, N, rng)
            state.F_raw, _, state.V = evaluate_batch(problem, state.X)
            state.birth = np.full(N, t, dtype=np.int64)
            t_evals += N
            last_restart = t_evals
            trace.restart_evals.append(t_evals)
            archive.update(state.F_raw, state.V)
            record_checkpoints(t_evals)

        snapshot(t, t_evals, state)

    trace.final_archive = archive.points()
    trace.total_evaluations = t_evals
    return trace


def write_checkpoint_csv(trace: RunTrace, path: str) -> None:
    """Write the checkpoint summary CSV (evals, hv, archive_size)."""
    write_csv(
        path,
        ["evals", "hv", "archive_size"],
        [(c.evals, float(c.hv), c.archive_size) for c in trace.checkpoints],
    )


def final_population_front(trace: RunTrace, feasible_only: bool) -> np.ndarray:
    """Nondominated front of the final population's raw objectives.

    Args:
        trace: Completed run trace.
        feasible_only: Keep only members with violation within the
            trace's feasibility tolerance.

    Returns:
        Array (k, m), possibly empty when feasible_only filters all.
    """
    last = trace.snapshots[-1]
    F = last.F_raw
    if feasible_only:
        F = F[last.V <= trace.feasibility_eps]
    if F.shape[0] == 0:
        return F.copy()
    F = F[metrics.nondominated_mask(F)]
    order = np.lexsort(tuple(F[:, j] for j in reversed(range(F.shape[1]))))
    return F[order]
