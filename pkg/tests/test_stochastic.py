import math

import numpy as np
import pytest

from flickerkit.errors import DegenerateInputError, InputError
from flickerkit.palette import distance_matrix
from flickerkit.stochastic import (build_tables, column_normalize, column_stats,
                                   normal_cdf, pair_probability, row_stats,
                                   z_score_columns, z_score_rows)

from golden import (CLEAN_PROB_COL, CLEAN_PROB_ROW, REFERENCE_COL_MEAN,
                    REFERENCE_COL_STDDEV, REFERENCE_COL_STOCHASTIC,
                    REFERENCE_COL_VARIANCE, REFERENCE_ROW_STATS,
                    REFERENCE_Z_COL)


@pytest.fixture(scope="module")
def tables():
    return build_tables()


@pytest.fixture(scope="module")
def tables_lookup():
    return build_tables("table")


# --- golden table reproduction ---------------------------------------------

def test_col_stochastic_matches_reference(tables):
    ref = np.array(REFERENCE_COL_STOCHASTIC)
    assert np.abs(tables.col_stochastic - ref).max() <= 1e-5


def test_col_stats_match_reference(tables):
    assert np.abs(tables.col_stats.mean - np.array(REFERENCE_COL_MEAN)).max() <= 1e-5
    assert np.abs(tables.col_stats.variance - np.array(REFERENCE_COL_VARIANCE)).max() <= 1e-5
    assert np.abs(tables.col_stats.stddev - np.array(REFERENCE_COL_STDDEV)).max() <= 1e-5


def test_z_col_matches_reference(tables):
    ref = np.array(REFERENCE_Z_COL)
    assert np.abs(tables.z_col - ref).max() <= 1e-5


def test_row_stats_match_reference(tables):
    for i, (s, m, v, sd) in enumerate(REFERENCE_ROW_STATS):
        assert abs(tables.row_stats.sum[i] - s) <= 1e-5
        assert abs(tables.row_stats.mean[i] - m) <= 1e-5
        assert abs(tables.row_stats.variance[i] - v) <= 1e-5
        assert abs(tables.row_stats.stddev[i] - sd) <= 1e-5


def test_prob_col_clean_entries(tables_lookup):
    for i, j, want in CLEAN_PROB_COL:
        assert tables_lookup.prob_col[i, j] == pytest.approx(want, abs=1e-3)


def test_prob_row_clean_entries(tables_lookup):
    for i, j, want in CLEAN_PROB_ROW:
        assert tables_lookup.prob_row[i, j] == pytest.approx(want, abs=1e-3)


# --- structural invariants ---------------------------------------------------

def test_columns_sum_to_one(tables):
    sums = tables.col_stochastic.sum(axis=0)
    assert np.abs(sums - 1.0).max() <= 1e-12
    assert (tables.col_stochastic >= 0.0).all()


def test_z_col_standardized(tables):
    assert np.abs(tables.z_col.mean(axis=0)).max() <= 1e-12
    assert np.abs(tables.z_col.var(axis=0) - 1.0).max() <= 1e-9


def test_z_row_standardized(tables):
    assert np.abs(tables.z_row.mean(axis=1)).max() <= 1e-12
    assert np.abs(tables.z_row.var(axis=1) - 1.0).max() <= 1e-9


@pytest.mark.parametrize("mode", ["exact", "table"])
def test_prob_entries_in_open_unit_interval(mode):
    t = build_tables(mode)
    for table in (t.prob_col, t.prob_row):
        assert (table > 0.0).all()
        assert (table < 1.0).all()


def test_tables_are_immutable(tables):
    with pytest.raises(ValueError):
        tables.col_stochastic[0, 0] = 99.0


def test_build_tables_is_cached(tables):
    assert build_tables() is tables


# --- normal_cdf ---------------------------------------------------------------

def test_cdf_at_zero():
    assert normal_cdf(0.0) == 0.5


def test_cdf_symmetry():
    for z in np.linspace(-5, 5, 101):
        assert abs(normal_cdf(z) + normal_cdf(-z) - 1.0) <= 1e-12


def test_cdf_strictly_increasing():
    grid = np.linspace(-8, 8, 401)
    values = [normal_cdf(z) for z in grid]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_cdf_lookup_mode_truncates_to_grid():
    # the grid snap drops the third decimal of the magnitude
    assert normal_cdf(-1.52753, "table") == normal_cdf(-1.52)
    assert normal_cdf(1.52753, "table") == normal_cdf(1.52)
    assert normal_cdf(-1.52, "table") == normal_cdf(-1.52)
    assert normal_cdf(0.0049, "table") == 0.5


def test_cdf_rejects_bad_input():
    with pytest.raises(InputError):
        normal_cdf(float("nan"))
    with pytest.raises(InputError):
        normal_cdf(float("inf"))
    with pytest.raises(InputError):
        normal_cdf(0.0, mode="bogus")


# --- operations on generic matrices -----------------------------------------

def test_column_normalize_rejects_zero_column():
    m = np.ones((3, 3))
    m[:, 1] = 0.0
    with pytest.raises(DegenerateInputError):
        column_normalize(m)


def test_z_scores_reject_zero_spread():
    flat = np.ones((4, 4))
    with pytest.raises(DegenerateInputError):
        z_score_columns(flat)
    with pytest.raises(DegenerateInputError):
        z_score_rows(flat)


def test_population_variance_convention():
    m = np.array([[1.0], [2.0], [3.0], [4.0]])
    stats = column_stats(m)
    assert stats.mean[0] == 2.5
    assert stats.variance[0] == 1.25  # divide by N, not N-1
    rstats = row_stats(m.T)
    assert rstats.sum[0] == 10.0
    assert rstats.variance[0] == 1.25


# --- pair probabilities -------------------------------------------------------

def test_pair_probability_examples():
    assert pair_probability(0, 7) == 0.1            # Black -> White
    assert pair_probability(0, 1) == pytest.approx(0.029412, abs=1e-6)
    assert pair_probability(1, 0) == pytest.approx(0.035714, abs=1e-6)
    for c in range(8):
        assert pair_probability(c, c) == 0.0        # zero diagonal survives normalization


def test_pair_probability_sources(tables_lookup):
    assert pair_probability(0, 0, source="prob_col", mode="table") == \
        tables_lookup.prob_col[0, 0]
    assert pair_probability(1, 0, source="prob_row", mode="table") == \
        tables_lookup.prob_row[1, 0]
    with pytest.raises(InputError):
        pair_probability(0, 0, source="nope")


# --- bit-for-bit equivalence with a straightforward reimplementation ---------

def _naive_tables():
    d = [[0.0 if i == j else (i + j) / 2.0 for j in range(8)] for i in range(8)]
    col = [[0.0] * 8 for _ in range(8)]
    for j in range(8):
        s = 0.0
        for i in range(8):
            s += d[i][j]
        for i in range(8):
            col[i][j] = d[i][j] / s
    cmean, csd = [0.0] * 8, [0.0] * 8
    for j in range(8):
        s = 0.0
        for i in range(8):
            s += col[i][j]
        mu = s / 8
        q = 0.0
        for i in range(8):
            dev = col[i][j] - mu
            q += dev * dev
        cmean[j], csd[j] = mu, math.sqrt(q / 8)
    z_col = [[(col[i][j] - cmean[j]) / csd[j] for j in range(8)] for i in range(8)]
    rsum, rmean, rvar, rsd = [0.0] * 8, [0.0] * 8, [0.0] * 8, [0.0] * 8
    for i in range(8):
        s = 0.0
        for j in range(8):
            s += col[i][j]
        mu = s / 8
        q = 0.0
        for j in range(8):
            dev = col[i][j] - mu
            q += dev * dev
        rsum[i], rmean[i], rvar[i], rsd[i] = s, mu, q / 8, math.sqrt(q / 8)
    z_row = [[(col[i][j] - rmean[i]) / rsd[i] for j in range(8)] for i in range(8)]
    phi = lambda z: 0.5 * math.erfc(-z / math.sqrt(2.0))
    prob_col = [[phi(z_col[i][j]) for j in range(8)] for i in range(8)]
    prob_row = [[phi(z_row[i][j]) for j in range(8)] for i in range(8)]
    return d, col, z_col, prob_col, rsum, rmean, rvar, rsd, z_row, prob_row


def test_bitwise_equal_to_naive_double_loops(tables):
    d, col, z_col, prob_col, rsum, rmean, rvar, rsd, z_row, prob_row = _naive_tables()
    assert (tables.distance == np.array(d)).all()
    assert (tables.col_stochastic == np.array(col)).all()
    assert (tables.z_col == np.array(z_col)).all()
    assert (tables.prob_col == np.array(prob_col)).all()
    assert (tables.row_stats.sum == np.array(rsum)).all()
    assert (tables.row_stats.mean == np.array(rmean)).all()
    assert (tables.row_stats.variance == np.array(rvar)).all()
    assert (tables.row_stats.stddev == np.array(rsd)).all()
    assert (tables.z_row == np.array(z_row)).all()
    assert (tables.prob_row == np.array(prob_row)).all()


def test_distance_feeds_pipeline(tables):
    assert (tables.distance == distance_matrix()).all()
    assert (column_normalize(distance_matrix()) == tables.col_stochastic).all()
