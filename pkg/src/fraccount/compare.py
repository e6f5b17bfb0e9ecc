"""Counting-scheme comparison: rankings, rank deltas, correlations, QAP.

The comparison battery quantifies how much the choice of counting scheme
moves entities around: competition-ranked tables with per-entity rank
deltas, Pearson/Spearman correlation of the underlying vectors, per-metric
percentage differences of the degree battery, and the quadratic assignment
permutation test for matrix-level similarity.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

import numpy as np
from scipy.stats import rankdata
from scipy.stats import t as t_dist

from .metrics import DegreeStats, DegreeVectorStats


class CorrelationError(ValueError):
    """Raised when a correlation is undefined (zero variance, too few points)."""


@dataclass(frozen=True)
class RankRow:
    entity: str
    value: float
    rank: int


@dataclass(frozen=True)
class RankTable:
    """Entities sorted by descending value with competition ranks.

    Ties share the smallest applicable rank and the next distinct value
    skips ranks; tied entities are listed alphabetically.
    """

    rows: tuple[RankRow, ...]

    def rank_of(self, entity: str) -> int:
        for row in self.rows:
            if row.entity == entity:
                return row.rank
        raise KeyError(entity)

    def entities(self) -> frozenset[str]:
        return frozenset(row.entity for row in self.rows)


class RankShift(NamedTuple):
    old_rank: int
    new_rank: int
    delta: int  # positive = the entity rises under the second ranking


@dataclass(frozen=True)
class QapResult:
    observed_r: float
    permutations: int
    p_value: float
    seed: int


def rank_vector(values: Mapping[str, float]) -> RankTable:
    """Rank entities by value, descending, with competition ranking."""
    if not values:
        raise ValueError("rank_vector needs at least one entity")
    ordered = sorted(values.items(), key=lambda item: (-item[1], item[0]))
    rows = []
    for position, (entity, value) in enumerate(ordered, start=1):
        if rows and value == rows[-1].value:
            rank = rows[-1].rank
        else:
            rank = position
        rows.append(RankRow(entity=entity, value=float(value), rank=rank))
    return RankTable(rows=tuple(rows))


def rank_delta(first: RankTable, second: RankTable) -> dict[str, RankShift]:
    """Per-entity rank movement between two rankings of the same entities.

    delta = old rank - new rank, so moving from 125th to 68th is +57.
    """
    a, b = first.entities(), second.entities()
    if a != b:
        diff = sorted(a.symmetric_difference(b))
        raise ValueError(f"rankings cover different entities: {diff}")
    shifts = {}
    for row in first.rows:
        old = row.rank
        new = second.rank_of(row.entity)
        shifts[row.entity] = RankShift(old_rank=old, new_rank=new, delta=old - new)
    return shifts


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    xc = x - x.mean()
    yc = y - y.mean()
    denom = np.sqrt((xc @ xc) * (yc @ yc))
    if denom == 0:
        raise CorrelationError("zero variance: correlation undefined")
    return float(np.clip((xc @ yc) / denom, -1.0, 1.0))


def correlate(
    a: Sequence[float] | np.ndarray,
    b: Sequence[float] | np.ndarray,
    method: str = "pearson",
) -> tuple[float, float]:
    """Pearson or Spearman correlation with a two-sided t-test p-value.

    Spearman is Pearson on average ranks (ties get the mean rank); the
    p-value comes from the t distribution with n - 2 degrees of freedom.
    """
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("inputs must be 1-D vectors of equal length")
    n = x.size
    if n < 3:
        raise CorrelationError("need at least 3 observations")
    if method == "spearman":
        x = rankdata(x, method="average")
        y = rankdata(y, method="average")
    elif method != "pearson":
        raise ValueError(f"unknown correlation method {method!r}")
    r = _pearson(x, y)
    if abs(r) == 1.0:
        return r, 0.0
    t = r * np.sqrt((n - 2) / (1.0 - r * r))
    p = 2.0 * float(t_dist.sf(abs(t), n - 2))
    return r, p


def _offdiag_values(matrix: np.ndarray) -> np.ndarray:
    mask = ~np.eye(matrix.shape[0], dtype=bool)
    return matrix[mask]


def qap_correlation(
    a: np.ndarray,
    b: np.ndarray,
    permutations: int,
    seed: int,
    *,
    two_sided: bool = False,
    workers: int = 1,
) -> QapResult:
    """Quadratic assignment permutation test for matrix correlation.

    The observed statistic is the Pearson correlation over corresponding
    off-diagonal cells; the null distribution relabels the nodes of ``b``
    (rows and columns permuted together) ``permutations`` times.  The
    one-sided p-value counts permuted r >= observed (``two_sided`` counts
    |r| >= |observed|) under the (1 + count) / (permutations + 1) estimator,
    so it is never exactly zero.

    Every replica draws its permutation from an independent stream keyed by
    (seed, replica index), so the result is identical at any ``workers``
    degree.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise ValueError("matrices must be square and of equal shape")
    n = a.shape[0]
    if n < 3:
        raise ValueError("QAP needs at least 3 nodes")
    if permutations < 1:
        raise ValueError("permutations must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")

    mask = ~np.eye(n, dtype=bool)
    observed = _pearson(a[mask], b[mask])
    a_values = a[mask]

    def count_chunk(start: int, stop: int) -> int:
        hits = 0
        for replica in range(start, stop):
            rng = np.random.default_rng([seed, replica])
            perm = rng.permutation(n)
            permuted = b[np.ix_(perm, perm)]
            r = _pearson(a_values, permuted[mask])
            if two_sided:
                if abs(r) >= abs(observed):
                    hits += 1
            elif r >= observed:
                hits += 1
        return hits

    if workers == 1:
        count = count_chunk(0, permutations)
    else:
        bounds = np.linspace(0, permutations, workers + 1).astype(int)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(count_chunk, int(lo), int(hi))
                for lo, hi in zip(bounds[:-1], bounds[1:])
            ]
            count = sum(f.result() for f in futures)

    p_value = (1 + count) / (permutations + 1)
    return QapResult(observed_r=observed, permutations=permutations, p_value=p_value, seed=seed)


_AGGREGATE_FIELDS = (
    ("mean", "mean"),
    ("stdDev", "std_dev"),
    ("sum", "sum"),
    ("variance", "variance"),
    ("ssq", "ssq"),
    ("mcssq", "mcssq"),
    ("eucNorm", "euc_norm"),
    ("minimum", "minimum"),
    ("maximum", "maximum"),
    ("nOfObs", "n_of_obs"),
)

_COLUMNS = (
    ("degree", "degree_summary"),
    ("nrmDegree", "nrm_summary"),
    ("share", "share_summary"),
)


def _pct_diff(base: float | None, other: float | None) -> float | None:
    if base is None or other is None or base == 0:
        return None
    return (other - base) / base * 100.0


def metric_difference(
    integer_stats: DegreeStats,
    fractional_stats: DegreeStats,
) -> dict[str, dict[str, float | None] | float | None]:
    """Percentage change of every degree-battery aggregate between schemes.

    Each aggregate row carries (fractional - integer) / integer * 100 for
    the degree, nrmDegree and share columns; undefined cells (either side
    absent, or an integer value of zero) are None, printed as N.A.
    """
    if tuple(integer_stats.entities) != tuple(fractional_stats.entities):
        raise ValueError("degree statistics were computed on different entity sets")

    table: dict[str, dict[str, float | None] | float | None] = {}
    for row_name, attr in _AGGREGATE_FIELDS:
        row: dict[str, float | None] = {}
        for col_name, summary_attr in _COLUMNS:
            left: DegreeVectorStats | None = getattr(integer_stats, summary_attr)
            right: DegreeVectorStats | None = getattr(fractional_stats, summary_attr)
            base = getattr(left, attr) if left is not None else None
            other = getattr(right, attr) if right is not None else None
            row[col_name] = _pct_diff(base, other)
        table[row_name] = row
    table["networkCentralization"] = _pct_diff(
        integer_stats.network_centralization, fractional_stats.network_centralization
    )
    table["blauHeterogeneity"] = _pct_diff(
        integer_stats.blau_heterogeneity, fractional_stats.blau_heterogeneity
    )
    table["normalizedIQV"] = _pct_diff(
        integer_stats.normalized_iqv, fractional_stats.normalized_iqv
    )
    return table
