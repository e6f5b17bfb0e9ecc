"""Document records, the JSONL corpus format, and corpus filters."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from .normalize import DEFAULT_COUNTRY_TABLE, NormalizationTable, normalize_entity

LEVELS = ("country", "institution")


class ParseError(ValueError):
    """Malformed corpus input; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Address:
    """One affiliation byline: institution, country, and optional author links.

    ``author_indices`` is None when the source carried no author/address
    linkage (pre-2008 style records); an empty set means the linkage existed
    but no listed name matched the record's author list.
    """

    institution: str
    country: str
    author_indices: frozenset[int] | None
    raw_text: str

    @property
    def usable(self) -> bool:
        return bool(self.institution) and bool(self.country)

    def entity(self, level: str) -> str:
        if level == "country":
            return self.country
        if level == "institution":
            return self.institution
        raise ValueError(f"unknown level {level!r}")


@dataclass(frozen=True)
class DocumentRecord:
    """One publication: identifier, year, authors, and parsed addresses."""

    id: str
    year: int | None
    authors: tuple[str, ...]
    addresses: tuple[Address, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def usable_addresses(self) -> tuple[Address, ...]:
        return tuple(a for a in self.addresses if a.usable)

    def entities(self, level: str) -> tuple[str, ...]:
        """Distinct entity names at ``level``, in first-appearance order."""
        seen: dict[str, None] = {}
        for address in self.usable_addresses:
            seen.setdefault(address.entity(level), None)
        return tuple(seen)

    def countries(self) -> tuple[str, ...]:
        return self.entities("country")


def _synthetic_authors(count: int, start: int) -> list[str]:
    return [f"author-{start + k}" for k in range(count)]


def load_jsonl_corpus(
    source: IO[str] | str,
    *,
    country_table: NormalizationTable | None = DEFAULT_COUNTRY_TABLE,
    institution_table: NormalizationTable | None = None,
) -> list[DocumentRecord]:
    """Parse the neutral JSONL corpus format into document records.

    One JSON object per line: ``{"id": ..., "year": ..., "entities": [
    {"institution": ..., "country": ..., "authors": <count or name list>}]}``.
    An integer ``authors`` declares that many anonymous authors for the
    entity; a name list ties entities to shared authors (the same name in two
    entity blocks is one author with two addresses); a missing ``authors``
    leaves the address without author links.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source.read().splitlines()

    records: list[DocumentRecord] = []
    seen_ids: set[str] = set()
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line=lineno) from exc
        if not isinstance(obj, dict):
            raise ParseError("expected a JSON object", line=lineno)
        rec_id = obj.get("id")
        if not isinstance(rec_id, str) or not rec_id:
            raise ParseError("missing or empty 'id'", line=lineno)
        if rec_id in seen_ids:
            raise ParseError(f"duplicate id {rec_id!r}", line=lineno)
        seen_ids.add(rec_id)
        year = obj.get("year")
        if year is not None and not isinstance(year, int):
            raise ParseError("'year' must be an integer when present", line=lineno)
        entity_blocks = obj.get("entities", [])
        if not isinstance(entity_blocks, list):
            raise ParseError("'entities' must be a list", line=lineno)

        authors: list[str] = []
        author_index: dict[str, int] = {}
        addresses: list[Address] = []
        warnings: list[str] = []
        for block in entity_blocks:
            if not isinstance(block, dict):
                raise ParseError("entity entries must be objects", line=lineno)
            institution = normalize_entity(str(block.get("institution", "")), institution_table)
            country = normalize_entity(str(block.get("country", "")), country_table)
            declared = block.get("authors")
            indices: frozenset[int] | None
            if declared is None:
                indices = None
            elif isinstance(declared, int):
                if declared < 0:
                    raise ParseError("author count must be >= 0", line=lineno)
                start = len(authors)
                names = _synthetic_authors(declared, start + 1)
                authors.extend(names)
                indices = frozenset(range(start, start + declared))
            elif isinstance(declared, list):
                idxs = []
                for name in declared:
                    name = str(name)
                    if name not in author_index:
                        author_index[name] = len(authors)
                        authors.append(name)
                    idxs.append(author_index[name])
                indices = frozenset(idxs)
            else:
                raise ParseError("'authors' must be a count or a name list", line=lineno)
            address = Address(
                institution=institution,
                country=country,
                author_indices=indices,
                raw_text=json.dumps(block, sort_keys=True),
            )
            if address.usable:
                addresses.append(address)
            else:
                warnings.append(f"unusable entity entry: {address.raw_text}")
        if not addresses:
            warnings.append("record has no usable addresses")
        records.append(
            DocumentRecord(
                id=rec_id,
                year=year,
                authors=tuple(authors),
                addresses=tuple(addresses),
                warnings=tuple(warnings),
            )
        )
    return records


def filter_corpus(
    corpus: Iterable[DocumentRecord],
    *,
    years: int | tuple[int, int] | None = None,
    require_countries: Sequence[str] = (),
) -> list[DocumentRecord]:
    """Keep records inside the year range that touch every required country.

    ``years`` may be a single year or an inclusive ``(lo, hi)`` range; records
    without a year fail any year filter.  An empty ``require_countries`` is
    the identity filter.
    """
    if years is None:
        lo = hi = None
    elif isinstance(years, int):
        lo = hi = years
    else:
        lo, hi = years
    required = set(require_countries)

    kept = []
    for record in corpus:
        if lo is not None:
            if record.year is None or not (lo <= record.year <= hi):
                continue
        if required and not required.issubset(record.countries()):
            continue
        kept.append(record)
    return kept
