"""Transition statistics over the eight-color palette.

From the color distance matrix we derive, in order: the column-stochastic
matrix (each column normalized to sum 1), per-column and per-row statistics,
column- and row-standardized z tables, and their normal-CDF probabilities.
All statistics use the population convention (divide by N).

The arithmetic deliberately runs as plain sequential loops: the tables are
8x8, and ordered summation keeps every entry bit-identical to a
straightforward reimplementation, which the test suite exploits.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegenerateInputError, InputError
from .palette import distance_matrix

# "exact" evaluates the continuous CDF; "table" emulates a two-decimal
# statistical-table lookup (magnitude truncated to the grid).
CDF_MODES = ("exact", "table")

# Probability tables the detector can read pairs from.
SOURCES = ("col_stochastic", "prob_col", "prob_row")

_SQRT2 = math.sqrt(2.0)


def normal_cdf(z, mode="exact"):
    """Standard normal CDF of z.

    exact: continuous evaluation via erfc, good to a few ulps.
    table: z is first snapped to the two-decimal grid of a printed
    statistics table by truncating its magnitude (a reader scanning the
    1.5 row / 0.02 column drops the third decimal), then evaluated.
    """
    z = float(z)
    if not math.isfinite(z):
        raise InputError(f"normal_cdf needs a finite z, got {z!r}")
    if mode not in CDF_MODES:
        raise InputError(f"unknown CDF mode {mode!r}, expected one of {CDF_MODES}")
    if mode == "table":
        # the 1e-9 nudge absorbs binary representation error so that an
        # intended 1.52 never truncates down to 1.51
        z = math.copysign(math.floor(abs(z) * 100.0 + 1e-9) / 100.0, z)
    return 0.5 * math.erfc(-z / _SQRT2)


@dataclass(frozen=True)
class ColumnStats:
    """Per-column mean / population variance / standard deviation."""

    mean: np.ndarray
    variance: np.ndarray
    stddev: np.ndarray


@dataclass(frozen=True)
class RowStats:
    """Per-row sum / mean / population variance / standard deviation."""

    sum: np.ndarray
    mean: np.ndarray
    variance: np.ndarray
    stddev: np.ndarray


def column_normalize(matrix):
    """Divide each column by its sum so every column sums to exactly 1."""
    m = np.asarray(matrix, dtype=np.float64)
    rows, cols = m.shape
    out = np.zeros_like(m)
    for j in range(cols):
        s = 0.0
        for i in range(rows):
            s += m[i, j]
        if s <= 0.0:
            raise DegenerateInputError(f"column {j} has non-positive sum {s}")
        for i in range(rows):
            out[i, j] = m[i, j] / s
    return out


def column_stats(matrix):
    """Mean, population variance and stddev of each column."""
    m = np.asarray(matrix, dtype=np.float64)
    rows, cols = m.shape
    mean = np.zeros(cols)
    var = np.zeros(cols)
    sd = np.zeros(cols)
    for j in range(cols):
        s = 0.0
        for i in range(rows):
            s += m[i, j]
        mu = s / rows
        q = 0.0
        for i in range(rows):
            d = m[i, j] - mu
            q += d * d
        mean[j] = mu
        var[j] = q / rows
        sd[j] = math.sqrt(q / rows)
    return ColumnStats(mean=mean, variance=var, stddev=sd)


def z_score_columns(matrix):
    """Standardize each column: (entry - column mean) / column stddev."""
    m = np.asarray(matrix, dtype=np.float64)
    rows, cols = m.shape
    stats = column_stats(m)
    out = np.zeros_like(m)
    for j in range(cols):
        if stats.stddev[j] == 0.0:
            raise DegenerateInputError(f"column {j} has zero standard deviation")
        for i in range(rows):
            out[i, j] = (m[i, j] - stats.mean[j]) / stats.stddev[j]
    return out


def row_stats(matrix):
    """Sum, mean, population variance and stddev of each row."""
    m = np.asarray(matrix, dtype=np.float64)
    rows, cols = m.shape
    total = np.zeros(rows)
    mean = np.zeros(rows)
    var = np.zeros(rows)
    sd = np.zeros(rows)
    for i in range(rows):
        s = 0.0
        for j in range(cols):
            s += m[i, j]
        mu = s / cols
        q = 0.0
        for j in range(cols):
            d = m[i, j] - mu
            q += d * d
        total[i] = s
        mean[i] = mu
        var[i] = q / cols
        sd[i] = math.sqrt(q / cols)
    return RowStats(sum=total, mean=mean, variance=var, stddev=sd)


def z_score_rows(matrix):
    """Standardize each row: (entry - row mean) / row stddev."""
    m = np.asarray(matrix, dtype=np.float64)
    rows, cols = m.shape
    stats = row_stats(m)
    out = np.zeros_like(m)
    for i in range(rows):
        if stats.stddev[i] == 0.0:
            raise DegenerateInputError(f"row {i} has zero standard deviation")
        for j in range(cols):
            out[i, j] = (m[i, j] - stats.mean[i]) / stats.stddev[i]
    return out


def _cdf_elementwise(z, mode):
    out = np.zeros_like(z)
    rows, cols = z.shape
    for i in range(rows):
        for j in range(cols):
            out[i, j] = normal_cdf(z[i, j], mode)
    return out


@dataclass(frozen=True)
class StochasticTables:
    """Every derived table, computed once and frozen.

    col_stochastic is the detector's default probability source: its zero
    diagonal means identical colors never read as flicker, while the
    CDF-based tables carry small nonzero diagonals.
    """

    mode: str
    distance: np.ndarray
    col_stochastic: np.ndarray
    col_stats: ColumnStats
    z_col: np.ndarray
    prob_col: np.ndarray
    row_stats: RowStats
    z_row: np.ndarray
    prob_row: np.ndarray

    def source(self, name):
        """Look up one of the pair-probability tables by name."""
        if name not in SOURCES:
            raise InputError(f"unknown probability source {name!r}, expected one of {SOURCES}")
        return getattr(self, name)


def _freeze(arr):
    arr.flags.writeable = False
    return arr


@lru_cache(maxsize=None)
def build_tables(mode="exact"):
    """Compute all tables for the given CDF mode; results are cached and immutable."""
    if mode not in CDF_MODES:
        raise InputError(f"unknown CDF mode {mode!r}, expected one of {CDF_MODES}")
    dist = distance_matrix()
    col = column_normalize(dist)
    cstats = column_stats(col)
    z_col = z_score_columns(col)
    prob_col = _cdf_elementwise(z_col, mode)
    rstats = row_stats(col)
    z_row = z_score_rows(col)
    prob_row = _cdf_elementwise(z_row, mode)
    for a in (dist, col, z_col, prob_col, z_row, prob_row,
              cstats.mean, cstats.variance, cstats.stddev,
              rstats.sum, rstats.mean, rstats.variance, rstats.stddev):
        _freeze(a)
    return StochasticTables(
        mode=mode,
        distance=dist,
        col_stochastic=col,
        col_stats=cstats,
        z_col=z_col,
        prob_col=prob_col,
        row_stats=rstats,
        z_row=z_row,
        prob_row=prob_row,
    )


def pair_probability(a, b, source="col_stochastic", mode="exact"):
    """Probability assigned to the ordered color pair (a, b).

    a indexes the row (pixel from the earlier frame), b the column (pixel
    from the later frame).
    """
    tables = build_tables(mode)
    return float(tables.source(source)[int(a), int(b)])
