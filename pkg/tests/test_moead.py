"""Tests of the MOEA/D core: config, scalarization, update, archive, run."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moead_stn import metrics, moead, problems
from moead_stn.moead import Archive, Config, PopulationState


def base_config(**overrides):
    return Config(**overrides)


# ---------------------------------------------------------------------------
# Config
# ---------------------------------------------------------------------------


def test_config_defaults_are_tuned_base():
    cfg = Config()
    assert cfg.decomposition == "uniform"
    assert cfg.population_size == 100
    assert cfg.aggregation == "wt"
    assert cfg.update == "restricted"
    assert cfg.nr == 13
    assert cfg.T == 18
    assert cfg.delta == 0.5831
    assert cfg.de_F == 0.705
    assert cfg.pm_eta == 57.0443
    assert cfg.pm_prob == 0.303
    assert cfg.partial_update is None
    assert cfg.restart is True
    assert cfg.budget == 100000


@pytest.mark.parametrize(
    "kwargs",
    [
        {"decomposition": "random"},
        {"aggregation": "ws"},
        {"update": "elitist"},
        {"population_size": 1},
        {"nr": 0},
        {"T": 0},
        {"delta": 1.5},
        {"de_F": 0.05},
        {"pm_eta": 0.5},
        {"pm_prob": -0.1},
        {"partial_update": 0.5},
        {"budget": 0},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        Config(**kwargs)


def test_config_accepts_partial_fractions():
    for p in moead.PARTIAL_FRACTIONS:
        assert Config(partial_update=p).partial_update == p


def test_config_toml_round_trip(tmp_path):
    cfg = Config(decomposition="sld", population_size=50, partial_update=0.15, budget=5000)
    path = str(tmp_path / "cfg.toml")
    moead.save_config(cfg, path)
    assert moead.load_config(path) == cfg


def test_config_toml_round_trip_none_partial(tmp_path):
    cfg = Config()
    path = str(tmp_path / "cfg.toml")
    moead.save_config(cfg, path)
    assert moead.load_config(path) == cfg


def test_load_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "cfg.toml"
    path.write_text('decomposition = "uniform"\ncrossover = 0.9\n')
    with pytest.raises(ValueError, match="crossover"):
        moead.load_config(str(path))


def test_load_config_partial_false_means_none(tmp_path):
    path = tmp_path / "cfg.toml"
    path.write_text("partial_update = false\n")
    assert moead.load_config(str(path)).partial_update is None


# ---------------------------------------------------------------------------
# Scaling and scalarization
# ---------------------------------------------------------------------------


def test_scale_objectives_unit_box():
    raw = np.array([[0.0, 10.0], [5.0, 20.0], [10.0, 15.0]])
    scaled = moead.scale_objectives(raw)
    np.testing.assert_allclose(scaled[:, 0], [0.0, 0.5, 1.0])
    np.testing.assert_allclose(scaled[:, 1], [0.0, 1.0, 0.5])


def test_scale_objectives_constant_column():
    raw = np.array([[3.0, 1.0], [3.0, 2.0]])
    scaled = moead.scale_objectives(raw)
    np.testing.assert_array_equal(scaled[:, 0], [0.0, 0.0])


def test_scale_objectives_errors():
    with pytest.raises(ValueError):
        moead.scale_objectives(np.empty((0, 2)))
    with pytest.raises(ValueError):
        moead.scale_objectives(np.ones(3))


def test_effective_wt_weights_zero_replacement():
    w = moead.effective_wt_weights(np.array([1.0, 0.0]))
    np.testing.assert_array_equal(w, [1.0, moead.WEIGHT_EPS])


def test_aggregate_wt_example():
    value = moead.aggregate_wt(np.array([0.5, 0.3]), np.array([1.0, 0.0]))
    assert value == 0.5


def test_aggregate_wt_with_reference():
    value = moead.aggregate_wt(
        np.array([0.5, 0.3]), np.array([0.5, 0.5]), z=np.array([0.1, 0.1])
    )
    assert value == pytest.approx(0.2)


def test_awt_weights_inverse_normalized():
    w = moead.awt_weights(np.array([0.2, 0.8]))
    np.testing.assert_allclose(w, [0.8, 0.2])
    assert moead.awt_weights(np.array([0.5, 0.5])).tolist() == [0.5, 0.5]


def test_aggregate_awt_prefers_balanced_on_skewed_weight():
    f = np.array([0.9, 0.1])
    w = np.array([0.9, 0.1])
    assert moead.aggregate_awt(f, w) != moead.aggregate_wt(f, w)
    np.testing.assert_allclose(sum(moead.awt_weights(w)), 1.0)


def test_penalize_example():
    assert moead.penalize(1.0, 20, 2.0) == 3.0
    assert moead.penalize(1.0, 0, 5.0) == 1.0
    assert moead.penalize(0.25, 7, 0.0) == 0.25


def test_penalize_monotone_in_time_and_violation():
    assert moead.penalize(1.0, 30, 2.0) > moead.penalize(1.0, 20, 2.0)
    assert moead.penalize(1.0, 20, 3.0) > moead.penalize(1.0, 20, 2.0)


# ---------------------------------------------------------------------------
# Selection and variation
# ---------------------------------------------------------------------------


def test_select_update_set_full():
    rng = np.random.default_rng(0)
    np.testing.assert_array_equal(moead.select_update_set(7, None, rng), np.arange(7))


@pytest.mark.parametrize("p,count", [(0.10, 10), (0.15, 15), (0.20, 20), (0.25, 25)])
def test_select_update_set_partial(p, count):
    rng = np.random.default_rng(1)
    sel = moead.select_update_set(100, p, rng)
    assert sel.shape == (count,)
    assert len(set(sel.tolist())) == count
    assert np.all(np.diff(sel) > 0)


def test_variation_stays_in_bounds():
    problem = problems.get_problem(1)
    rng = np.random.default_rng(5)
    X = rng.random((20, 30))
    for i in range(20):
        child = moead.variation_de(i, np.arange(20), X, 0.9, rng, problem.bounds)
        assert np.all(child >= problem.bounds[:, 0])
        assert np.all(child <= problem.bounds[:, 1])
        mutated = moead.variation_polymut(child, 20.0, 1.0, problem.bounds, rng)
        assert np.all(mutated >= problem.bounds[:, 0])
        assert np.all(mutated <= problem.bounds[:, 1])


def test_variation_de_small_pool_falls_back():
    problem = problems.get_problem(1)
    rng = np.random.default_rng(6)
    X = rng.random((5, 30))
    child = moead.variation_de(0, np.array([0, 1]), X, 0.5, rng, problem.bounds)
    assert child.shape == (30,)
    assert np.all((child >= 0.0) & (child <= 1.0))


def test_polymut_zero_probability_identity():
    problem = problems.get_problem(1)
    rng = np.random.default_rng(7)
    X = rng.random((4, 30))
    out = moead._polymut_batch(X, 30.0, 0.0, problem.bounds, rng)
    np.testing.assert_array_equal(out, X)


# ---------------------------------------------------------------------------
# Update strategies
# ---------------------------------------------------------------------------


def make_state(N):
    return PopulationState(
        X=np.zeros((N, 3)),
        F_raw=np.ones((N, 2)),
        V=np.zeros(N),
        birth=np.zeros(N, dtype=np.int64),
    )


def test_update_restricted_caps_at_nr():
    rng = np.random.default_rng(11)
    state = make_state(3)
    neighborhood = np.array([[0, 1, 2]])
    pen_inc = np.array([10.0, 10.0, 10.0])
    pen_cand = np.array([[1.0, 1.0, 1.0]])
    sel = np.array([0])
    cand_X = np.full((1, 3), 0.5)
    cand_F = np.full((1, 2), 0.5)
    cand_V = np.zeros(1)
    n = moead.update_restricted(
        state, sel, cand_X, cand_F, cand_V, neighborhood, 1, pen_cand, pen_inc, rng, 3
    )
    assert n == 1
    assert np.sum(pen_inc == 1.0) == 1
    replaced = int(np.where(pen_inc == 1.0)[0][0])
    assert state.birth[replaced] == 3
    np.testing.assert_array_equal(state.F_raw[replaced], [0.5, 0.5])


def test_update_restricted_replaces_all_with_large_nr():
    rng = np.random.default_rng(12)
    state = make_state(3)
    neighborhood = np.array([[0, 1, 2]])
    pen_inc = np.array([10.0, 10.0, 10.0])
    pen_cand = np.array([[1.0, 2.0, 3.0]])
    n = moead.update_restricted(
        state,
        np.array([0]),
        np.full((1, 3), 0.5),
        np.full((1, 2), 0.5),
        np.zeros(1),
        neighborhood,
        13,
        pen_cand,
        pen_inc,
        rng,
        1,
    )
    assert n == 3
    np.testing.assert_array_equal(pen_inc, [1.0, 2.0, 3.0])


def test_update_restricted_strict_improvement_only():
    rng = np.random.default_rng(13)
    state = make_state(2)
    neighborhood = np.array([[0, 1]])
    pen_inc = np.array([5.0, 5.0])
    pen_cand = np.array([[5.0, 5.0]])
    n = moead.update_restricted(
        state,
        np.array([0]),
        np.zeros((1, 3)),
        np.zeros((1, 2)),
        np.zeros(1),
        neighborhood,
        2,
        pen_cand,
        pen_inc,
        rng,
        1,
    )
    assert n == 0
    np.testing.assert_array_equal(pen_inc, [5.0, 5.0])


def test_update_restricted_scans_only_neighborhood():
    rng = np.random.default_rng(14)
    state = make_state(4)
    neighborhood = np.array([[0, 1], [1, 0], [2, 3], [3, 2]])
    pen_inc = np.array([10.0, 10.0, 10.0, 10.0])
    pen_cand = np.array([[1.0, 1.0, 1.0, 1.0]])
    n = moead.update_restricted(
        state,
        np.array([0]),
        np.zeros((1, 3)),
        np.zeros((1, 2)),
        np.zeros(1),
        neighborhood,
        4,
        pen_cand,
        pen_inc,
        rng,
        1,
    )
    assert n == 2
    np.testing.assert_array_equal(pen_inc, [1.0, 1.0, 10.0, 10.0])


def test_update_best_picks_largest_improvements():
    state = make_state(3)
    pen_inc = np.array([10.0, 10.0, 10.0])
    pen_cand = np.array([[9.0, 8.0, 10.0]])
    n = moead.update_best(
        state,
        np.array([0]),
        np.zeros((1, 3)),
        np.zeros((1, 2)),
        np.zeros(1),
        1,
        pen_cand,
        pen_inc,
        2,
    )
    assert n == 1
    np.testing.assert_array_equal(pen_inc, [10.0, 8.0, 10.0])
    assert state.birth[1] == 2


def test_update_best_tie_breaks_by_lower_index():
    state = make_state(3)
    pen_inc = np.array([10.0, 10.0, 10.0])
    pen_cand = np.array([[9.0, 9.0, 9.0]])
    moead.update_best(
        state,
        np.array([0]),
        np.zeros((1, 3)),
        np.zeros((1, 2)),
        np.zeros(1),
        1,
        pen_cand,
        pen_inc,
        1,
    )
    np.testing.assert_array_equal(pen_inc, [9.0, 10.0, 10.0])


def test_update_best_strict_and_sequential():
    state = make_state(2)
    pen_inc = np.array([5.0, 6.0])
    pen_cand = np.array([[4.0, 6.0], [3.5, 5.0]])
    n = moead.update_best(
        state,
        np.array([0, 1]),
        np.zeros((2, 3)),
        np.zeros((2, 2)),
        np.zeros(2),
        2,
        pen_cand,
        pen_inc,
        1,
    )
    # candidate 0 improves only subproblem 0; candidate 1 then improves both
    assert n == 3
    np.testing.assert_array_equal(pen_inc, [3.5, 5.0])


# ---------------------------------------------------------------------------
# Archive
# ---------------------------------------------------------------------------


def oracle_archive(batches, eps):
    points = []
    for F, V in batches:
        for row, v in zip(F, V):
            if v <= eps:
                points.append(tuple(row))
    if not points:
        return np.empty((0, len(batches[0][0][0])))
    unique = np.unique(np.array(points), axis=0)
    return unique[metrics.nondominated_mask(unique)]


def sorted_rows(F):
    if F.shape[0] == 0:
        return F
    order = np.lexsort(tuple(F[:, j] for j in reversed(range(F.shape[1]))))
    return F[order]


@pytest.mark.parametrize("m", [2, 3])
def test_archive_matches_brute_force_oracle(m):
    rng = np.random.default_rng(100 + m)
    for _ in range(30):
        archive = Archive(m, feasibility_eps=0.1)
        batches = []
        hv_prev = 0.0
        for _ in range(8):
            n = int(rng.integers(1, 12))
            F = np.round(rng.random((n, m)) * 4, 1)
            V = rng.choice([0.0, 0.0, 0.5], size=n)
            batches.append((F, V))
            archive.update(F, V)
            pts = archive.points()
            # mutually nondominated at every step
            assert np.all(metrics.nondominated_mask(pts)) or pts.shape[0] == 0
            # monotone hypervolume
            hv = archive.hypervolume(np.full(m, 11.0))
            assert hv >= hv_prev - 1e-12
            hv_prev = hv
        expected = oracle_archive(batches, 0.1)
        np.testing.assert_array_equal(sorted_rows(archive.points()), sorted_rows(expected))


def test_archive_rejects_infeasible():
    archive = Archive(2, feasibility_eps=1e-10)
    n = archive.update(np.array([[0.5, 0.5]]), np.array([2e-10]))
    assert n == 0 and archive.size == 0
    n = archive.update(np.array([[0.5, 0.5]]), np.array([1e-10]))
    assert n == 1 and archive.size == 1


def test_archive_rejects_duplicates_and_dominated():
    archive = Archive(2)
    assert archive.update(np.array([[1.0, 2.0]]), np.zeros(1)) == 1
    assert archive.update(np.array([[1.0, 2.0]]), np.zeros(1)) == 0
    assert archive.update(np.array([[1.5, 2.5]]), np.zeros(1)) == 0
    assert archive.update(np.array([[1.0, 1.5]]), np.zeros(1)) == 1
    assert archive.size == 1


def test_archive_points_sorted_ascending():
    archive = Archive(2)
    archive.update(
        np.array([[3.0, 0.1], [1.0, 2.0], [2.0, 1.0]]), np.zeros(3)
    )
    pts = archive.points()
    assert np.all(np.diff(pts[:, 0]) > 0)
    assert np.all(np.diff(pts[:, 1]) < 0)


def test_archive_update_wrapper_returns_archive():
    archive = Archive(2)
    out = moead.archive_update(archive, np.array([[1.0, 1.0]]), np.zeros(1))
    assert out is archive and archive.size == 1


@settings(max_examples=60, deadline=None)
@given(
    batch=st.lists(
        st.tuples(
            st.integers(min_value=0, max_value=30),
            st.integers(min_value=0, max_value=30),
            st.booleans(),
        ),
        min_size=1,
        max_size=40,
    )
)
def test_archive_property_2d(batch):
    archive = Archive(2, feasibility_eps=0.0)
    F = np.array([[a / 10, b / 10] for a, b, _ in batch])
    V = np.array([0.0 if ok else 1.0 for _, _, ok in batch])
    archive.update(F, V)
    expected = oracle_archive([(F, V)], 0.0)
    np.testing.assert_array_equal(sorted_rows(archive.points()), sorted_rows(expected))


# ---------------------------------------------------------------------------
# Restart
# ---------------------------------------------------------------------------


def test_restart_due_period_boundaries():
    assert not moead.restart_due(19999)
    assert moead.restart_due(20000)
    assert moead.restart_due(20001)
    assert not moead.restart_due(39999, since=20100)
    assert moead.restart_due(40000, since=20100)
    assert not moead.restart_due(500, since=0, period=1000)
    assert moead.restart_due(1000, since=0, period=1000)


def test_restart_period_constant():
    assert moead.RESTART_PERIOD == 20000
    assert moead.DEFAULT_BUDGET == 100000


def test_restart_population_bounds_and_determinism():
    problem = problems.get_problem(1)
    a = moead.restart_population(problem, 50, np.random.default_rng(3))
    b = moead.restart_population(problem, 50, np.random.default_rng(3))
    np.testing.assert_array_equal(a, b)
    assert a.shape == (50, 30)
    assert np.all((a >= 0.0) & (a <= 1.0))


# ---------------------------------------------------------------------------
# Decomposition plumbing
# ---------------------------------------------------------------------------


def test_decomposition_vectors_counts():
    assert len(moead.decomposition_vectors(Config(), 2)) == 100
    assert len(moead.decomposition_vectors(Config(decomposition="sobol"), 2)) == 100
    assert len(moead.decomposition_vectors(Config(decomposition="sld"), 2)) == 100
    # SLD rounds up to the next full lattice
    assert len(moead.decomposition_vectors(Config(decomposition="sld"), 3)) == 105


# ---------------------------------------------------------------------------
# Run loop
# ---------------------------------------------------------------------------


SMALL = dict(population_size=20, T=5, budget=3000)


def test_run_budget_accounting():
    trace = moead.run(Config(**SMALL), problems.get_problem(1), seed=1)
    assert trace.total_evaluations == 3000
    assert trace.realized_population_size == 20
    assert [c.evals for c in trace.checkpoints] == [1000, 2000, 3000]
    assert trace.snapshots[0].t == 0
    assert trace.snapshots[0].t_evals == 20
    assert trace.snapshots[-1].t_evals == 3000


def test_run_checkpoint_hv_nondecreasing():
    trace = moead.run(Config(**SMALL), problems.get_problem(1), seed=2)
    hvs = [c.hv for c in trace.checkpoints]
    assert all(b >= a for a, b in zip(hvs, hvs[1:]))


def test_run_degenerate_budget_equals_population():
    trace = moead.run(
        Config(population_size=20, T=5, budget=20), problems.get_problem(1), seed=3
    )
    assert trace.total_evaluations == 20
    assert len(trace.snapshots) == 1
    assert trace.checkpoints == []


def test_run_budget_below_population_rejected():
    with pytest.raises(ValueError):
        moead.run(Config(population_size=20, T=5, budget=19), problems.get_problem(1), 1)


def test_run_T_larger_than_population_rejected():
    with pytest.raises(ValueError):
        moead.run(Config(population_size=10, T=18, budget=100), problems.get_problem(1), 1)


def test_run_restart_events():
    cfg = Config(population_size=20, T=5, budget=45000)
    trace = moead.run(cfg, problems.get_problem(1), seed=4)
    assert len(trace.restart_evals) == 2
    assert 20000 < trace.restart_evals[0] <= 20000 + 2 * 20
    assert 40000 < trace.restart_evals[1] <= 40000 + 2 * 20
    no_restart = moead.run(
        Config(population_size=20, T=5, budget=45000, restart=False),
        problems.get_problem(1),
        seed=4,
    )
    assert no_restart.restart_evals == []


def test_run_partial_update_runs():
    cfg = Config(population_size=20, T=5, budget=500, partial_update=0.25)
    trace = moead.run(cfg, problems.get_problem(1), seed=5)
    # generations advance by ceil(0.25 * 20) = 5 evaluations
    assert trace.snapshots[1].t_evals - trace.snapshots[0].t_evals == 5
    assert trace.total_evaluations == 500


def test_run_variant_configs_execute():
    problem = problems.get_problem(7)
    for overrides in (
        {"aggregation": "awt"},
        {"update": "best", "nr": 2},
        {"decomposition": "sobol"},
    ):
        cfg = Config(population_size=20, T=5, budget=200, **overrides)
        trace = moead.run(cfg, problem, seed=6)
        assert trace.total_evaluations == 200
        assert trace.snapshots[-1].F_raw.shape[1] == 3


def test_run_snapshot_scaled_objectives_in_unit_box():
    trace = moead.run(Config(**SMALL), problems.get_problem(1), seed=7)
    for snap in trace.snapshots[:: len(trace.snapshots) // 5]:
        assert snap.F_scaled.min() >= 0.0
        assert snap.F_scaled.max() <= 1.0
        assert snap.X.shape == (20, 30)
        assert snap.V.shape == (20,)


def test_run_archive_is_feasible_and_nondominated():
    trace = moead.run(Config(**SMALL), problems.get_problem(1), seed=8)
    for cp in trace.checkpoints:
        pts = cp.archive_objectives
        if pts.shape[0]:
            assert np.all(metrics.nondominated_mask(pts))
        assert cp.archive_size == pts.shape[0]


def test_run_deterministic_traces(tmp_path):
    cfg = Config(**SMALL)
    problem = problems.get_problem(1)
    a = moead.run(cfg, problem, seed=9)
    b = moead.run(cfg, problem, seed=9)
    np.testing.assert_array_equal(a.snapshots[-1].X, b.snapshots[-1].X)
    np.testing.assert_array_equal(a.snapshots[-1].F_raw, b.snapshots[-1].F_raw)
    pa = str(tmp_path / "a.csv")
    pb = str(tmp_path / "b.csv")
    moead.write_checkpoint_csv(a, pa)
    moead.write_checkpoint_csv(b, pb)
    assert open(pa, "rb").read() == open(pb, "rb").read()


def test_run_different_seeds_differ():
    cfg = Config(**SMALL)
    problem = problems.get_problem(1)
    a = moead.run(cfg, problem, seed=1)
    b = moead.run(cfg, problem, seed=2)
    assert not np.array_equal(a.snapshots[-1].X, b.snapshots[-1].X)


def test_final_population_front_shape_and_order():
    trace = moead.run(Config(**SMALL), problems.get_problem(1), seed=10)
    front = moead.final_population_front(trace, feasible_only=False)
    assert front.ndim == 2 and front.shape[1] == 2
    assert front.shape[0] >= 1
    assert np.all(metrics.nondominated_mask(front))
    assert np.all(np.diff(front[:, 0]) >= 0)
    feasible = moead.final_population_front(trace, feasible_only=True)
    assert feasible.shape[0] <= front.shape[0] or feasible.shape[0] <= 20


def test_feasibility_eps_constant():
    assert moead.FEASIBILITY_EPS == 1e-10
