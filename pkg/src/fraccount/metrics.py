"""Whole-network cohesion measures and the degree-statistics battery.

Cohesion (density, closure, geodesic summaries, Freeman centralization, ...)
is computed on the binarized graph; the degree battery supports binary and
valued networks with normalized degrees, shares, Blau heterogeneity and the
normalized IQV, all expressed the way UCInet-style reports print them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .counting import CoauthorshipNetwork, binarize


@dataclass(frozen=True)
class GeodesicSummary:
    """Geodesic-distance statistics over ordered node pairs of a binary graph."""

    avg_distance: float
    sd_distance: float
    wiener: float  # sum of geodesic distances over reachable ordered pairs
    diameter: int
    compactness: float  # mean reciprocal distance over all ordered pairs
    reachable_ordered_pairs: int
    dependency_sum: float  # sum of (d(s,t) - 1) over reachable ordered pairs


@dataclass(frozen=True)
class DegreeVectorStats:
    """Aggregates of one degree-battery column (degree, nrmDegree or share)."""

    mean: float
    std_dev: float
    sum: float
    variance: float
    ssq: float
    mcssq: float
    euc_norm: float
    minimum: float
    maximum: float
    n_of_obs: int


@dataclass(frozen=True)
class DegreeStats:
    """Per-entity degree battery plus whole-network concentration measures.

    ``network_centralization``, ``blau_heterogeneity`` and ``normalized_iqv``
    are percentages; they are None when undefined (fewer than three nodes,
    or an empty network for the share-based measures).
    """

    entities: tuple[str, ...]
    mode: str  # "valued" | "binary"
    degree: np.ndarray
    nrm_degree: np.ndarray  # percent of the maximum attainable degree
    share: np.ndarray | None
    degree_summary: DegreeVectorStats
    nrm_summary: DegreeVectorStats
    share_summary: DegreeVectorStats | None
    network_centralization: float | None
    blau_heterogeneity: float | None
    normalized_iqv: float | None


@dataclass(frozen=True)
class CohesionReport:
    """The 12-measure whole-network cohesion battery of a binarized network."""

    density: float
    avg_degree: float
    h_index: int
    compactness: float
    closure: float
    avg_distance: float
    sd_distance: float
    wiener: float
    diameter: int
    deg_centralization: float | None
    nulls: float
    dependency_sum: float


def _binary_matrix(net: CoauthorshipNetwork) -> np.ndarray:
    m = (np.asarray(net.matrix) > 0).astype(float)
    np.fill_diagonal(m, 0.0)
    return m


def _offdiag(matrix: np.ndarray) -> np.ndarray:
    mask = ~np.eye(matrix.shape[0], dtype=bool)
    return matrix[mask]


# --- aggregate-level formulas (shared by degree_stats and consistency checks)


def density_from_degree_sum(degree_sum: float, n: int) -> float:
    return degree_sum / (n * (n - 1)) if n >= 2 else 0.0


def blau_from_aggregates(ssq: float, total: float) -> float:
    """Blau heterogeneity in percent from a vector's sum of squares and sum."""
    return ssq / total**2 * 100.0


def iqv_from_blau(blau_pct: float, n: int) -> float:
    """Normalized IQV in percent, rescaling Blau heterogeneity against 1/n."""
    herf = blau_pct / 100.0
    return (herf - 1.0 / n) / (1.0 - 1.0 / n) * 100.0


def centralization_from_normalized(nrm_sum: float, nrm_max: float, n: int) -> float:
    """Network centralization in percent from normalized-degree sum and maximum."""
    return (n * nrm_max - nrm_sum) / (n - 2)


def freeman_centralization(degrees: np.ndarray) -> float:
    """Freeman degree centralization of a binary graph (1.0 for a star)."""
    n = degrees.size
    return float((n * degrees.max() - degrees.sum()) / ((n - 1) * (n - 2)))


# --- whole-network measures


def all_pairs_geodesics(net: CoauthorshipNetwork) -> GeodesicSummary:
    """BFS geodesics from every node, summarized over ordered pairs.

    Unreachable pairs are excluded from the distance moments and contribute
    zero reciprocal distance to compactness; ``dependency_sum`` totals the
    intermediaries on shortest paths, sum of (d(s,t) - 1) over reachable
    ordered pairs.  Valued input is binarized first.

    The BFS runs level-synchronously from all sources at once: the sparse
    adjacency matrix expands a dense frontier per distance level, so the
    work is a handful of sparse-dense products even for thousands of nodes.
    """
    adjacency = _binary_matrix(net)
    n = adjacency.shape[0]
    if n < 2:
        return GeodesicSummary(0.0, 0.0, 0.0, 0, 0.0, 0, 0.0)

    adj = sp.csr_matrix(adjacency.astype(np.float32))
    reached = np.eye(n, dtype=bool)
    frontier = np.eye(n, dtype=np.float32)
    # histogram of finite off-diagonal distances, indexed by level
    level_counts: list[int] = []
    level = 0
    while True:
        level += 1
        nxt = (adj @ frontier) > 0
        nxt &= ~reached
        count = int(nxt.sum())
        if count == 0:
            break
        level_counts.append(count)
        reached |= nxt
        frontier = nxt.astype(np.float32)

    reachable = sum(level_counts)
    if reachable == 0:
        return GeodesicSummary(0.0, 0.0, 0.0, 0, 0.0, 0, 0.0)
    levels = np.arange(1, len(level_counts) + 1, dtype=float)
    counts = np.asarray(level_counts, dtype=float)
    wiener = float(levels @ counts)
    avg = wiener / reachable
    var = float(((levels - avg) ** 2) @ counts) / reachable
    compactness = float((1.0 / levels) @ counts) / (n * (n - 1))
    return GeodesicSummary(
        avg_distance=avg,
        sd_distance=math.sqrt(var),
        wiener=wiener,
        diameter=len(level_counts),
        compactness=compactness,
        reachable_ordered_pairs=reachable,
        dependency_sum=wiener - reachable,
    )


def density_degree(net: CoauthorshipNetwork) -> tuple[float, float, float]:
    """(density, average binary degree, proportion of null dyads)."""
    adjacency = _binary_matrix(net)
    n = adjacency.shape[0]
    if n < 2:
        return 0.0, 0.0, 0.0
    off = _offdiag(adjacency)
    density = float(off.sum()) / (n * (n - 1))
    avg_degree = float(adjacency.sum()) / n
    nulls = float((off == 0).sum()) / (n * (n - 1))
    return density, avg_degree, nulls


def h_index_degrees(net: CoauthorshipNetwork) -> int:
    """Largest h such that h vertices have binary degree at least h."""
    degrees = np.sort(_binary_matrix(net).sum(axis=1))[::-1]
    h = 0
    for i, d in enumerate(degrees, start=1):
        if d >= i:
            h = i
        else:
            break
    return h


def closure(net: CoauthorshipNetwork) -> float:
    """Transitivity: ordered closed two-paths over all ordered two-paths."""
    adjacency = _binary_matrix(net)
    degrees = adjacency.sum(axis=1)
    two_paths = float((degrees * (degrees - 1)).sum())
    if two_paths == 0:
        return 0.0
    a = sp.csr_matrix(adjacency)
    closed = float((a @ a).multiply(a).sum())  # trace(A^3) without the cube
    return closed / two_paths


def degree_stats(net: CoauthorshipNetwork, mode: str = "valued") -> DegreeStats:
    """Degree battery for a valued or binarized network.

    Degrees are row sums; nrmDegree divides by (n-1) times the largest
    off-diagonal cell (1 for binary graphs) and is expressed in percent;
    share is each node's fraction of total degree.  Aggregates use
    population variance.
    """
    if mode not in ("valued", "binary"):
        raise ValueError(f"unknown degree mode {mode!r}")
    matrix = _binary_matrix(net) if mode == "binary" else np.asarray(net.matrix, dtype=float)
    n = matrix.shape[0]
    degrees = matrix.sum(axis=1)
    max_cell = float(_offdiag(matrix).max()) if n >= 2 else 0.0
    if n >= 2 and max_cell > 0:
        nrm = degrees / ((n - 1) * max_cell) * 100.0
    else:
        nrm = np.zeros(n)
    total = float(degrees.sum())
    share = degrees / total if total > 0 else None

    centralization = (
        centralization_from_normalized(float(nrm.sum()), float(nrm.max()), n) if n >= 3 else None
    )
    if total > 0:
        blau = blau_from_aggregates(float(degrees @ degrees), total)
        iqv = iqv_from_blau(blau, n) if n >= 2 else None
    else:
        blau = None
        iqv = None

    return DegreeStats(
        entities=net.entities,
        mode=mode,
        degree=degrees,
        nrm_degree=nrm,
        share=share,
        degree_summary=_vector_stats(degrees),
        nrm_summary=_vector_stats(nrm),
        share_summary=_vector_stats(share) if share is not None else None,
        network_centralization=centralization,
        blau_heterogeneity=blau,
        normalized_iqv=iqv,
    )


def _vector_stats(values: np.ndarray) -> DegreeVectorStats:
    n = values.size
    mean = float(values.mean()) if n else 0.0
    ssq = float(values @ values)
    mcssq = ssq - n * mean**2
    variance = mcssq / n if n else 0.0
    return DegreeVectorStats(
        mean=mean,
        std_dev=math.sqrt(max(variance, 0.0)),
        sum=float(values.sum()),
        variance=variance,
        ssq=ssq,
        mcssq=mcssq,
        euc_norm=math.sqrt(ssq),
        minimum=float(values.min()) if n else 0.0,
        maximum=float(values.max()) if n else 0.0,
        n_of_obs=n,
    )


def cohesion_report(net: CoauthorshipNetwork) -> CohesionReport:
    """Assemble the cohesion battery; the network is binarized internally.

    Integer and fractional projections of one corpus therefore yield
    identical reports: the measures see only the binary graph structure.
    """
    bin_net = binarize(net)
    n = bin_net.n
    geo = all_pairs_geodesics(bin_net)
    density, avg_degree, nulls = density_degree(bin_net)
    degrees = _binary_matrix(bin_net).sum(axis=1)
    centralization = freeman_centralization(degrees) if n >= 3 else None
    return CohesionReport(
        density=density,
        avg_degree=avg_degree,
        h_index=h_index_degrees(bin_net),
        compactness=geo.compactness,
        closure=closure(bin_net),
        avg_distance=geo.avg_distance,
        sd_distance=geo.sd_distance,
        wiener=geo.wiener,
        diameter=geo.diameter,
        deg_centralization=centralization,
        nulls=nulls,
        dependency_sum=geo.dependency_sum,
    )
