"""File exporters and report serialization: Pajek, CSV tables, JSON dicts."""

from __future__ import annotations

import csv
import io
from typing import IO, Mapping, Sequence

import numpy as np

from .compare import QapResult, RankShift, RankTable
from .counting import CoauthorshipNetwork, OccurrenceMatrix, ProductionCredit
from .metrics import CohesionReport, DegreeStats, DegreeVectorStats


def _weight(value: float) -> str:
    """Edge weight with up to 6 significant digits; integral values print bare."""
    if float(value) == int(value):
        return str(int(value))
    return f"{value:.6g}"


def _cell(value: float) -> str:
    if float(value) == int(value):
        return str(int(value))
    return repr(float(value))


def export_pajek(net: CoauthorshipNetwork, stream: IO[str] | None = None) -> str:
    """Write a network in Pajek .net format (vertices, then upper-triangle edges)."""
    lines = [f"*Vertices {net.n}"]
    for i, label in enumerate(net.entities, start=1):
        escaped = label.replace('"', "'")
        lines.append(f'{i} "{escaped}"')
    lines.append("*Edges")
    matrix = np.asarray(net.matrix)
    for i in range(net.n):
        for j in range(i + 1, net.n):
            w = matrix[i, j]
            if w != 0:
                lines.append(f"{i + 1} {j + 1} {_weight(w)}")
    text = "\n".join(lines) + "\n"
    if stream is not None:
        stream.write(text)
    return text


def read_pajek(source: IO[str] | str) -> tuple[tuple[str, ...], np.ndarray]:
    """Minimal Pajek reader: (labels, symmetric matrix) from a .net file."""
    text = source if isinstance(source, str) else source.read()
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines or not lines[0].lower().startswith("*vertices"):
        raise ValueError("not a Pajek file: missing *Vertices header")
    n = int(lines[0].split()[1])
    labels = []
    for line in lines[1 : 1 + n]:
        first_quote = line.find('"')
        last_quote = line.rfind('"')
        if first_quote < 0 or last_quote <= first_quote:
            raise ValueError(f"bad vertex line: {line!r}")
        labels.append(line[first_quote + 1 : last_quote])
    if len(labels) != n:
        raise ValueError("vertex count does not match header")
    matrix = np.zeros((n, n))
    edges_at = 1 + n
    if edges_at >= len(lines) or not lines[edges_at].lower().startswith("*edges"):
        raise ValueError("missing *Edges section")
    for line in lines[edges_at + 1 :]:
        parts = line.split()
        i, j = int(parts[0]) - 1, int(parts[1]) - 1
        w = float(parts[2]) if len(parts) > 2 else 1.0
        matrix[i, j] = w
        matrix[j, i] = w
    return tuple(labels), matrix


def export_matrix_csv(
    labels: Sequence[str],
    matrix: np.ndarray,
    stream: IO[str] | None = None,
) -> str:
    """Square labeled matrix as RFC-4180 CSV: header row of labels, one row per label."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] != len(labels):
        raise ValueError("matrix must be square with one label per row")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([""] + list(labels))
    for label, row in zip(labels, matrix):
        writer.writerow([label] + [_cell(v) for v in row])
    text = buffer.getvalue()
    if stream is not None:
        stream.write(text)
    return text


def occurrence_csv(occ: OccurrenceMatrix, stream: IO[str] | None = None) -> str:
    """2-mode occurrence matrix as CSV: documents down the rows, entities across."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([""] + list(occ.entities))
    for doc_id, row in zip(occ.documents, occ.counts):
        writer.writerow([doc_id] + [str(int(v)) for v in row])
    text = buffer.getvalue()
    if stream is not None:
        stream.write(text)
    return text


# --- JSON report dictionaries (camelCase field names as reported)


def cohesion_json(report: CohesionReport) -> dict:
    return {
        "density": report.density,
        "avgDegree": report.avg_degree,
        "hIndex": report.h_index,
        "compactness": report.compactness,
        "closure": report.closure,
        "avgDistance": report.avg_distance,
        "sdDistance": report.sd_distance,
        "wiener": report.wiener,
        "diameter": report.diameter,
        "degCentralization": report.deg_centralization,
        "nulls": report.nulls,
        "dependencySum": report.dependency_sum,
    }


def _summary_json(summary: DegreeVectorStats | None) -> dict | None:
    if summary is None:
        return None
    return {
        "mean": summary.mean,
        "stdDev": summary.std_dev,
        "sum": summary.sum,
        "variance": summary.variance,
        "ssq": summary.ssq,
        "mcssq": summary.mcssq,
        "eucNorm": summary.euc_norm,
        "minimum": summary.minimum,
        "maximum": summary.maximum,
        "nOfObs": summary.n_of_obs,
    }


def degree_stats_json(stats: DegreeStats, include_vectors: bool = True) -> dict:
    payload = {
        "mode": stats.mode,
        "degreeSummary": _summary_json(stats.degree_summary),
        "nrmDegreeSummary": _summary_json(stats.nrm_summary),
        "shareSummary": _summary_json(stats.share_summary),
        "networkCentralization": stats.network_centralization,
        "blauHeterogeneity": stats.blau_heterogeneity,
        "normalizedIQV": stats.normalized_iqv,
    }
    if include_vectors:
        payload["entities"] = list(stats.entities)
        payload["degree"] = [float(v) for v in stats.degree]
        payload["nrmDegree"] = [float(v) for v in stats.nrm_degree]
        payload["share"] = (
            [float(v) for v in stats.share] if stats.share is not None else None
        )
    return payload


def rank_table_json(table: RankTable) -> list[dict]:
    return [
        {"rank": row.rank, "entity": row.entity, "value": row.value} for row in table.rows
    ]


def rank_delta_json(shifts: Mapping[str, RankShift]) -> list[dict]:
    ordered = sorted(shifts.items(), key=lambda item: (-item[1].delta, item[0]))
    return [
        {
            "entity": entity,
            "oldRank": shift.old_rank,
            "newRank": shift.new_rank,
            "delta": shift.delta,
        }
        for entity, shift in ordered
    ]


def qap_json(result: QapResult) -> dict:
    return {
        "observedR": result.observed_r,
        "permutations": result.permutations,
        "pValue": result.p_value,
        "seed": result.seed,
    }


def credits_json(credits: Sequence[ProductionCredit]) -> list[dict]:
    return [
        {"entity": c.entity, "credit": c.credit, "scheme": c.scheme.name} for c in credits
    ]


# --- CSV mirrors of the published table layouts


_COHESION_ROWS = (
    ("Density", "density"),
    ("Avg Degree", "avg_degree"),
    ("H-Index", "h_index"),
    ("Compactness", "compactness"),
    ("Closure", "closure"),
    ("Avg Distance", "avg_distance"),
    ("SD Distance", "sd_distance"),
    ("Wiener Index", "wiener"),
    ("Diameter", "diameter"),
    ("Deg Centralization", "deg_centralization"),
    ("Nulls", "nulls"),
    ("Dependency Sum", "dependency_sum"),
)

_BATTERY_ROWS = (
    ("Mean", "mean"),
    ("Std Dev", "std_dev"),
    ("Sum", "sum"),
    ("Variance", "variance"),
    ("SSQ", "ssq"),
    ("MCSSQ", "mcssq"),
    ("Euc Norm", "euc_norm"),
    ("Minimum", "minimum"),
    ("Maximum", "maximum"),
    ("N of Obs", "n_of_obs"),
)

_DIFF_KEYS = (
    "mean", "stdDev", "sum", "variance", "ssq", "mcssq",
    "eucNorm", "minimum", "maximum", "nOfObs",
)


def _na(value: float | None) -> str:
    return "N.A." if value is None else repr(float(value))


def cohesion_csv(report: CohesionReport, stream: IO[str] | None = None) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["no", "metric", "value"])
    for no, (label, attr) in enumerate(_COHESION_ROWS, start=1):
        writer.writerow([no, label, _na(getattr(report, attr))])
    text = buffer.getvalue()
    if stream is not None:
        stream.write(text)
    return text


def _battery_cells(stats: DegreeStats, attr: str) -> list[str]:
    cells = []
    for summary in (stats.degree_summary, stats.nrm_summary, stats.share_summary):
        cells.append(_na(getattr(summary, attr) if summary is not None else None))
    return cells


def comparison_csv(
    integer_stats: DegreeStats,
    fractional_stats: DegreeStats,
    difference: Mapping[str, dict[str, float | None] | float | None],
    stream: IO[str] | None = None,
) -> str:
    """Integer / Fractional / Difference table in the published column layout."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        ["metric"]
        + [f"integer_{c}" for c in ("degree", "nrmDegree", "share")]
        + [f"fractional_{c}" for c in ("degree", "nrmDegree", "share")]
        + [f"difference_{c}" for c in ("degree", "nrmDegree", "share")]
    )
    for (label, attr), diff_key in zip(_BATTERY_ROWS, _DIFF_KEYS):
        row_diff = difference[diff_key]
        writer.writerow(
            [label]
            + _battery_cells(integer_stats, attr)
            + _battery_cells(fractional_stats, attr)
            + [_na(row_diff[c]) for c in ("degree", "nrmDegree", "share")]
        )
    scalar_rows = (
        ("Network Centralization", "network_centralization", "networkCentralization"),
        ("Blau Heterogeneity", "blau_heterogeneity", "blauHeterogeneity"),
        ("Normalized (IQV)", "normalized_iqv", "normalizedIQV"),
    )
    for label, attr, diff_key in scalar_rows:
        writer.writerow(
            [label]
            + [_na(getattr(integer_stats, attr)), "N.A.", "N.A."]
            + [_na(getattr(fractional_stats, attr)), "N.A.", "N.A."]
            + [_na(difference[diff_key]), "N.A.", "N.A."]
        )
    text = buffer.getvalue()
    if stream is not None:
        stream.write(text)
    return text


def rank_table_csv(table: RankTable, stream: IO[str] | None = None) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["rank", "entity", "value"])
    for row in table.rows:
        writer.writerow([row.rank, row.entity, repr(row.value)])
    text = buffer.getvalue()
    if stream is not None:
        stream.write(text)
    return text
