"""Metric tests, including the hypervolume oracle suite.

Exactness trials draw coordinates from the dyadic grid {j/64} with an
integer reference point, so both the sweep implementation and the
inclusion-exclusion oracle work in exactly representable floats and
must agree bit for bit.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import dyadic_points, hv_inclusion_exclusion, hv_monte_carlo

from moead_stn import metrics

EXACT_TRIALS = 1000
MC_RTOL = 0.01
GRID_DENOM = 64


# ---------------------------------------------------------------------------
# Hypervolume: worked examples
# ---------------------------------------------------------------------------


def test_hv_single_point_examples():
    assert metrics.hypervolume(np.array([[0.0, 0.0]]), np.array([11.0, 11.0])) == 121.0
    assert (
        metrics.hypervolume(np.array([[0.0, 0.0, 0.0]]), np.array([11.0, 11.0, 11.0]))
        == 1331.0
    )
    assert metrics.hypervolume(np.array([[1.0, 1.0]]), np.array([11.0, 11.0])) == 100.0


def test_hv_empty_and_outside():
    ref = np.array([11.0, 11.0])
    assert metrics.hypervolume(np.empty((0, 2)), ref) == 0.0
    assert metrics.hypervolume(np.array([[12.0, 0.5], [0.5, 11.5]]), ref) == 0.0


def test_hv_dominated_point_no_effect():
    ref = np.array([11.0, 11.0])
    base = np.array([[1.0, 2.0], [3.0, 0.5]])
    with_dominated = np.vstack([base, [4.0, 5.0]])
    assert metrics.hypervolume(base, ref) == metrics.hypervolume(with_dominated, ref)


def test_hv_monotone_added_nondominated():
    ref = np.array([11.0, 11.0])
    base = np.array([[2.0, 2.0]])
    more = np.vstack([base, [1.0, 5.0]])
    assert metrics.hypervolume(more, ref) > metrics.hypervolume(base, ref)


def test_hv_reference_helpers():
    np.testing.assert_array_equal(metrics.anytime_reference(2), [11.0, 11.0])
    np.testing.assert_array_equal(metrics.anytime_reference(3), [11.0, 11.0, 11.0])
    np.testing.assert_array_equal(metrics.final_reference(2), [1.1, 1.1])
    np.testing.assert_array_equal(metrics.final_reference(3), [1.1, 1.1, 1.1])


# ---------------------------------------------------------------------------
# Hypervolume: inclusion-exclusion exactness, 1000 trials (criterion harness)
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("m", [2, 3])
def test_hv_exact_against_inclusion_exclusion(m):
    rng = np.random.default_rng(90125 + m)
    ref = np.full(m, 11.0)
    for _ in range(EXACT_TRIALS // 2):
        n = int(rng.integers(1, 6))
        points = dyadic_points(rng, n, m)
        expected = hv_inclusion_exclusion(points, ref)
        assert metrics.hypervolume(points, ref) == expected


def test_hv_exact_with_duplicates_and_ties():
    rng = np.random.default_rng(5150)
    ref = np.array([11.0, 11.0])
    for _ in range(200):
        base = dyadic_points(rng, 3, 2)
        points = np.vstack([base, base[0], [base[1][0], base[2][1]]])
        expected = hv_inclusion_exclusion(points, ref)
        assert metrics.hypervolume(points, ref) == expected


# ---------------------------------------------------------------------------
# Hypervolume: Monte-Carlo cross-check, 10^6 samples
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("m,seed", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_hv_matches_monte_carlo(m, seed):
    rng = np.random.default_rng(7000 + 10 * m + seed)
    n = int(rng.integers(5, 21))
    points = rng.uniform(0.0, 10.0, size=(n, m))
    ref = np.full(m, 11.0)
    exact = metrics.hypervolume(points, ref)
    estimate = hv_monte_carlo(points, ref, rng)
    assert estimate == pytest.approx(exact, rel=MC_RTOL)


@pytest.mark.parametrize("m", [2, 3])
def test_hv_within_maximum_bound(m):
    rng = np.random.default_rng(24601 + m)
    ref = np.full(m, 11.0)
    bound = 11.0**m
    for _ in range(50):
        points = rng.uniform(0.0, 11.0, size=(rng.integers(1, 30), m))
        hv = metrics.hypervolume(points, ref)
        assert 0.0 <= hv <= bound


@settings(max_examples=80, deadline=None)
@given(
    data=st.lists(
        st.tuples(
            st.integers(min_value=0, max_value=700),
            st.integers(min_value=0, max_value=700),
        ),
        min_size=1,
        max_size=5,
    )
)
def test_hv_property_exact_2d(data):
    points = np.array(data, dtype=float) / GRID_DENOM
    ref = np.array([11.0, 11.0])
    assert metrics.hypervolume(points, ref) == hv_inclusion_exclusion(points, ref)


# ---------------------------------------------------------------------------
# Accumulated anytime hypervolume
# ---------------------------------------------------------------------------


class _Record:
    def __init__(self, hv):
        self.hv = hv


def test_accumulated_hv_empty():
    assert metrics.anytime_accumulated_hv([]) == 0.0
    assert metrics.anytime_accumulated_hv([np.empty((0, 2))] * 5) == 0.0


def test_accumulated_hv_constant_archive():
    archive = np.array([[1.0, 1.0]])
    value = metrics.hypervolume(archive, metrics.anytime_reference(2))
    total = metrics.anytime_accumulated_hv([archive] * 7)
    assert total == pytest.approx(7 * value)


def test_accumulated_hv_uses_precomputed_records():
    records = [_Record(2.5), _Record(0.0), _Record(1.5)]
    assert metrics.anytime_accumulated_hv(records) == 4.0


def test_accumulated_hv_checkpoint_count_contract():
    assert metrics.ANYTIME_INTERVAL == 1000
    # budget 100000 with one record per crossed multiple -> 100 summands
    records = [_Record(1.0) for _ in range(100_000 // metrics.ANYTIME_INTERVAL)]
    assert metrics.anytime_accumulated_hv(records) == 100.0


# ---------------------------------------------------------------------------
# IGD
# ---------------------------------------------------------------------------


def test_igd_zero_on_identical_sets():
    ref = np.array([[0.0, 1.0], [1.0, 0.0], [0.5, 0.5]])
    assert metrics.igd(ref.copy(), ref) == 0.0


def test_igd_two_point_example():
    ref = np.array([[0.0, 1.0], [1.0, 0.0]])
    approx = np.array([[0.0, 1.0]])
    assert metrics.igd(approx, ref) == pytest.approx((0.0 + np.sqrt(2.0)) / 2.0)


def test_igd_monotone_under_added_cover():
    rng = np.random.default_rng(8)
    ref = rng.random((30, 2))
    approx = rng.random((5, 2))
    before = metrics.igd(approx, ref)
    after = metrics.igd(np.vstack([approx, ref[0]]), ref)
    assert after <= before


def test_igd_empty_approx_is_infinite():
    ref = np.array([[0.0, 1.0]])
    assert metrics.igd(np.empty((0, 2)), ref) == float("inf")


def test_igd_errors():
    with pytest.raises(ValueError):
        metrics.igd(np.array([[0.0, 1.0]]), np.empty((0, 2)))
    with pytest.raises(ValueError):
        metrics.igd(np.array([[0.0, 1.0, 2.0]]), np.array([[0.0, 1.0]]))


def test_igd_zero_iff_all_ref_covered():
    ref = np.array([[0.0, 1.0], [1.0, 0.0]])
    almost = np.array([[0.0, 1.0], [1.0, 1e-11]])
    assert metrics.igd(almost, ref) > 0.0
    covered = np.array([[0.0, 1.0], [1.0, 1e-13]])
    assert metrics.igd(covered, ref) <= 1e-12


# ---------------------------------------------------------------------------
# Population variance
# ---------------------------------------------------------------------------


def test_population_variance_identical_rows():
    assert metrics.population_variance(np.ones((10, 30))) == 0.0


def test_population_variance_single_binary_dim():
    X = np.full((2, 30), 0.25)
    X[0, 4] = 0.0
    X[1, 4] = 1.0
    assert metrics.population_variance(X) == pytest.approx(0.5 / 30)


def test_population_variance_scaling_law():
    rng = np.random.default_rng(99)
    X = rng.random((20, 6))
    base = metrics.population_variance(X)
    assert metrics.population_variance(3.0 * X) == pytest.approx(9.0 * base)


def test_population_variance_uses_sample_estimator():
    X = np.array([[0.0], [1.0]])
    assert metrics.population_variance(X) == pytest.approx(0.5)


def test_population_variance_errors():
    with pytest.raises(ValueError):
        metrics.population_variance(np.ones((1, 5)))


# ---------------------------------------------------------------------------
# Pearson correlation matrix
# ---------------------------------------------------------------------------


def test_pearson_self_and_negation():
    rng = np.random.default_rng(3)
    col = rng.random(10)
    rows = np.column_stack([col, -col, rng.random(10)])
    matrix, names = metrics.pearson_matrix(rows, ["a", "b", "c"])
    assert names == ["a", "b", "c"]
    np.testing.assert_allclose(np.diag(matrix), 1.0)
    assert matrix[0, 1] == pytest.approx(-1.0)
    np.testing.assert_allclose(matrix, matrix.T)


def test_pearson_constant_column_missing():
    rows = np.column_stack([np.ones(5), np.arange(5.0)])
    matrix, _ = metrics.pearson_matrix(rows, ["const", "ramp"])
    assert np.isnan(matrix[0, 1]) and np.isnan(matrix[1, 0])
    assert matrix[1, 1] == 1.0


def test_pearson_errors():
    with pytest.raises(ValueError):
        metrics.pearson_matrix(np.ones((2, 2)), ["a", "b"])
    with pytest.raises(ValueError):
        metrics.pearson_matrix(np.array([[1.0, np.nan]] * 3), ["a", "b"])
    with pytest.raises(ValueError):
        metrics.pearson_matrix(np.ones((4, 3)), ["a", "b"])


# ---------------------------------------------------------------------------
# Nondominated mask
# ---------------------------------------------------------------------------


def test_nondominated_mask_basic():
    F = np.array([[0.0, 1.0], [1.0, 0.0], [0.5, 0.5], [0.6, 0.6], [0.0, 1.0]])
    mask = metrics.nondominated_mask(F)
    assert mask.tolist() == [True, True, True, False, True]


def test_nondominated_mask_single_point():
    assert metrics.nondominated_mask(np.array([[1.0, 2.0]])).tolist() == [True]


def test_hypervolume_returns_python_float():
    hv2 = metrics.hypervolume(np.array([[1.0, 1.0]]), np.array([11.0, 11.0]))
    hv3 = metrics.hypervolume(
        np.array([[1.0, 1.0, 1.0]]), np.array([11.0, 11.0, 11.0])
    )
    assert type(hv2) is float
    assert type(hv3) is float
