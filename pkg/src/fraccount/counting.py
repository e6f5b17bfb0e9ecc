"""Occurrence matrices, counting schemes, and co-authorship network projection.

A corpus becomes a 2-mode documents x entities occurrence matrix of author
counts, which projects to a 1-mode symmetric network under one of five
counting schemes.  Production credits allocate per-document publication
credit to entities under integer and three fractional rules.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .records import DocumentRecord


class CountingScheme(enum.Enum):
    """Link counting rules for projecting documents into entity networks."""

    BINARY = "BINARY"
    INTEGER_LINKS = "INTEGER_LINKS"
    CO_PRESENCE = "CO_PRESENCE"
    MIN_OVERLAP = "MIN_OVERLAP"
    FRACTIONAL_LINKS = "FRACTIONAL_LINKS"

    def __str__(self) -> str:  # serialized by exact member name
        return self.name


class CreditScheme(enum.Enum):
    """Per-document production credit allocation rules."""

    INTEGER = "INTEGER"
    AUTHOR_FRACTION = "AUTHOR_FRACTION"
    ADDRESS_FRACTION = "ADDRESS_FRACTION"
    EQUAL_SPLIT = "EQUAL_SPLIT"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class OccurrenceMatrix:
    """2-mode documents x entities matrix; cell = authors of the document at the entity."""

    documents: tuple[str, ...]
    entities: tuple[str, ...]
    level: str
    counts: np.ndarray  # shape (len(documents), len(entities)), nonnegative ints


@dataclass(frozen=True)
class CoauthorshipNetwork:
    """1-mode symmetric valued network over entities, tagged with its counting scheme."""

    entities: tuple[str, ...]
    matrix: np.ndarray  # (n, n) float, symmetric, zero diagonal
    scheme: CountingScheme
    document_count: int
    multi_entity_document_count: int

    @property
    def n(self) -> int:
        return len(self.entities)


@dataclass(frozen=True)
class ProductionCredit:
    entity: str
    credit: float
    scheme: CreditScheme


def _entity_author_counts(record: DocumentRecord, level: str) -> dict[str, float]:
    """Per-entity author counts for one record, in first-appearance order.

    An author linked to an entity through several addresses counts once for
    it; an author with addresses in two entities counts toward both.  When
    the record carries no author links at all (or the links resolve to no
    authors), entity address counts stand in for author counts.
    """
    addresses = record.usable_addresses
    linked: dict[str, set[int]] = {}
    address_counts: dict[str, int] = {}
    any_links = False
    for address in addresses:
        entity = address.entity(level)
        address_counts[entity] = address_counts.get(entity, 0) + 1
        if address.author_indices is not None:
            any_links = True
            linked.setdefault(entity, set()).update(address.author_indices)
        else:
            linked.setdefault(entity, set())
    counts = {entity: len(indices) for entity, indices in linked.items()}
    if not any_links or sum(counts.values()) == 0:
        return {entity: float(c) for entity, c in address_counts.items()}
    return {entity: float(c) for entity, c in counts.items() if c > 0}


def _entity_address_counts(record: DocumentRecord, level: str) -> dict[str, int]:
    counts: dict[str, int] = {}
    for address in record.usable_addresses:
        entity = address.entity(level)
        counts[entity] = counts.get(entity, 0) + 1
    return counts


def build_occurrence_matrix(corpus: Iterable[DocumentRecord], level: str) -> OccurrenceMatrix:
    """Build the 2-mode occurrence matrix at the country or institution level.

    Records without a usable address (or whose author links resolve to no
    entity) are excluded, so every row has at least one positive cell.
    """
    doc_ids: list[str] = []
    rows: list[dict[str, float]] = []
    entity_order: dict[str, int] = {}
    for record in corpus:
        counts = _entity_author_counts(record, level)
        if not counts:
            continue
        doc_ids.append(record.id)
        rows.append(counts)
        for entity in counts:
            entity_order.setdefault(entity, len(entity_order))

    matrix = np.zeros((len(rows), len(entity_order)), dtype=np.int64)
    for i, counts in enumerate(rows):
        for entity, count in counts.items():
            matrix[i, entity_order[entity]] = int(count)
    return OccurrenceMatrix(
        documents=tuple(doc_ids),
        entities=tuple(entity_order),
        level=level,
        counts=matrix,
    )


def document_link_fractions(counts: Sequence[float] | np.ndarray) -> np.ndarray:
    """Fractional link contributions of one document's entity author counts.

    For entities with author counts a_1..a_k the cell (i, j), i != j, gets
    a_i * a_j / (2L) with L the lower-triangle sum of products, so all cells
    of the document sum to exactly one and each entity's row sum is its
    relations share (counts 3, 2, 4 give 9/26, 7/26, 10/26).  A single-entity
    document has no links and contributes nothing.
    """
    c = np.asarray(counts, dtype=float)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("counts must be a non-empty 1-D sequence")
    if np.any(c <= 0):
        raise ValueError("author counts must be positive")
    k = c.size
    if k < 2:
        return np.zeros((k, k))
    products = np.outer(c, c)
    np.fill_diagonal(products, 0.0)
    two_l = products.sum()  # 2L: both triangles
    return products / two_l


def project_network(occ: OccurrenceMatrix, scheme: CountingScheme) -> CoauthorshipNetwork:
    """Project the 2-mode occurrence matrix to a 1-mode network under ``scheme``.

    Per document with entity counts a_i, the off-diagonal cell (i, j)
    accumulates: INTEGER_LINKS a_i*a_j; CO_PRESENCE 1; MIN_OVERLAP
    min(a_i, a_j); FRACTIONAL_LINKS a_i*a_j/(2L); BINARY is the 0/1 support
    of co-presence.  Single-entity documents contribute nothing.
    """
    if not isinstance(scheme, CountingScheme):
        raise ValueError(f"unknown counting scheme {scheme!r}")
    n = len(occ.entities)
    matrix = np.zeros((n, n))
    multi = 0
    for row in occ.counts:
        active = np.flatnonzero(row)
        if active.size < 2:
            continue
        multi += 1
        c = row[active].astype(float)
        if scheme is CountingScheme.INTEGER_LINKS:
            contrib = np.outer(c, c)
            np.fill_diagonal(contrib, 0.0)
        elif scheme in (CountingScheme.CO_PRESENCE, CountingScheme.BINARY):
            contrib = np.ones((active.size, active.size))
            np.fill_diagonal(contrib, 0.0)
        elif scheme is CountingScheme.MIN_OVERLAP:
            contrib = np.minimum.outer(c, c)
            np.fill_diagonal(contrib, 0.0)
        elif scheme is CountingScheme.FRACTIONAL_LINKS:
            contrib = document_link_fractions(c)
        else:  # pragma: no cover - exhaustive enum
            raise ValueError(f"unknown counting scheme {scheme!r}")
        matrix[np.ix_(active, active)] += contrib
    if scheme is CountingScheme.BINARY:
        matrix = (matrix > 0).astype(float)
    return CoauthorshipNetwork(
        entities=occ.entities,
        matrix=matrix,
        scheme=scheme,
        document_count=len(occ.documents),
        multi_entity_document_count=multi,
    )


def binarize(net: CoauthorshipNetwork) -> CoauthorshipNetwork:
    """Map every positive cell to 1; idempotent, entity order preserved."""
    return CoauthorshipNetwork(
        entities=net.entities,
        matrix=(net.matrix > 0).astype(float),
        scheme=CountingScheme.BINARY,
        document_count=net.document_count,
        multi_entity_document_count=net.multi_entity_document_count,
    )


def production_credits(
    corpus: Iterable[DocumentRecord],
    level: str,
    scheme: CreditScheme,
) -> tuple[ProductionCredit, ...]:
    """Per-entity production credit totals over the corpus.

    Per document: INTEGER hands every participating entity a full point;
    AUTHOR_FRACTION divides one point by author share a_i/T; ADDRESS_FRACTION
    by address share; EQUAL_SPLIT gives each of the k entities 1/k.  Under
    any fractional scheme one document's credits sum to exactly one.
    """
    if not isinstance(scheme, CreditScheme):
        raise ValueError(f"unknown credit scheme {scheme!r}")
    totals: dict[str, float] = {}
    for record in corpus:
        address_counts = _entity_address_counts(record, level)
        if not address_counts:
            continue
        if scheme is CreditScheme.INTEGER:
            shares = {entity: 1.0 for entity in address_counts}
        elif scheme is CreditScheme.EQUAL_SPLIT:
            k = len(address_counts)
            shares = {entity: 1.0 / k for entity in address_counts}
        elif scheme is CreditScheme.ADDRESS_FRACTION:
            total = sum(address_counts.values())
            shares = {entity: c / total for entity, c in address_counts.items()}
        elif scheme is CreditScheme.AUTHOR_FRACTION:
            author_counts = _entity_author_counts(record, level)
            total = sum(author_counts.values())
            shares = {entity: c / total for entity, c in author_counts.items()}
        else:  # pragma: no cover - exhaustive enum
            raise ValueError(f"unknown credit scheme {scheme!r}")
        for entity, share in shares.items():
            totals[entity] = totals.get(entity, 0.0) + share
    return tuple(
        ProductionCredit(entity=entity, credit=credit, scheme=scheme)
        for entity, credit in totals.items()
    )
