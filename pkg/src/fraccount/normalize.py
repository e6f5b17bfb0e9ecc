"""Entity-name cleanup and canonicalization tables.

Country and institution strings in publication bylines arrive in many
surface forms ("SOUTH KOREA.", "England", "Peoples R China").  A
:class:`NormalizationTable` maps cleaned raw strings to canonical labels so
that the same entity always lands on the same network node.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import IO, Iterable, Mapping

_WHITESPACE = re.compile(r"\s+")
_TRAILING_PUNCT = ".,;:"


def clean_entity(raw: str) -> str:
    """Collapse whitespace and strip trailing punctuation from an entity name."""
    collapsed = _WHITESPACE.sub(" ", raw).strip()
    return collapsed.rstrip(_TRAILING_PUNCT).strip()


@dataclass(frozen=True)
class NormalizationTable:
    """Mapping from cleaned, case-folded raw names to canonical names.

    The table is idempotent by construction: every canonical value maps back
    to itself, so normalizing an already-canonical string is a no-op.
    """

    scope: str  # "country" | "institution"
    mapping: Mapping[str, str]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]], scope: str) -> "NormalizationTable":
        mapping: dict[str, str] = {}

        def put(key: str, canonical: str) -> None:
            existing = mapping.get(key)
            if existing is not None and existing != canonical:
                raise ValueError(
                    f"conflicting normalization for {key!r}: {existing!r} vs {canonical!r}"
                )
            mapping[key] = canonical

        for raw, canonical in pairs:
            canonical = clean_entity(canonical)
            put(clean_entity(raw).casefold(), canonical)
        # idempotence: a canonical string must normalize to itself
        for canonical in list(mapping.values()):
            put(canonical.casefold(), canonical)
        return cls(scope=scope, mapping=mapping)


def normalize_entity(raw: str, table: NormalizationTable | None = None) -> str:
    """Return the canonical form of ``raw``; unmapped names come back cleaned."""
    cleaned = clean_entity(raw)
    if table is None:
        return cleaned
    return table.mapping.get(cleaned.casefold(), cleaned)


def load_normalization_table(source: IO[str] | str, scope: str) -> NormalizationTable:
    """Load a two-column ``raw<TAB>canonical`` table; ``#`` starts a comment line."""
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source.read().splitlines()
    pairs: list[tuple[str, str]] = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 2 tab-separated columns, got {len(parts)}")
        pairs.append((parts[0], parts[1]))
    return NormalizationTable.from_pairs(pairs, scope)


# Canonical labels follow the Web of Science country vocabulary; the four UK
# constituents are merged because WoS reports them separately while country
# rankings treat the UK as one node.
_DEFAULT_COUNTRY_PAIRS: tuple[tuple[str, str], ...] = (
    ("England", "UK"),
    ("Scotland", "UK"),
    ("Wales", "UK"),
    ("North Ireland", "UK"),
    ("Northern Ireland", "UK"),
    ("United Kingdom", "UK"),
    ("Great Britain", "UK"),
    ("South Korea", "South Korea"),
    ("Republic of Korea", "South Korea"),
    ("North Korea", "North Korea"),
    ("Peoples R China", "Peoples R China"),
    ("USA", "USA"),
    ("United States", "USA"),
    ("Japan", "Japan"),
    ("Germany", "Germany"),
    ("France", "France"),
    ("India", "India"),
    ("Italy", "Italy"),
    ("Taiwan", "Taiwan"),
    ("Russia", "Russia"),
    ("Turkey", "Turkey"),
    ("Spain", "Spain"),
    ("Singapore", "Singapore"),
    ("Saudi Arabia", "Saudi Arabia"),
    ("Poland", "Poland"),
    ("Brazil", "Brazil"),
    ("Netherlands", "Netherlands"),
    ("Australia", "Australia"),
    ("Canada", "Canada"),
    ("Switzerland", "Switzerland"),
    ("Belgium", "Belgium"),
    ("Mexico", "Mexico"),
    ("Egypt", "Egypt"),
    ("Hungary", "Hungary"),
    ("Finland", "Finland"),
    ("Iran", "Iran"),
    ("Sweden", "Sweden"),
    ("Austria", "Austria"),
    ("Denmark", "Denmark"),
    ("Norway", "Norway"),
    ("Israel", "Israel"),
    ("U Arab Emirates", "U Arab Emirates"),
    ("United Arab Emirates", "U Arab Emirates"),
    ("Luxembourg", "Luxembourg"),
    ("Tunisia", "Tunisia"),
    ("Trinidad & Tobago", "Trinidad & Tobago"),
    ("Trinidad and Tobago", "Trinidad & Tobago"),
)

DEFAULT_COUNTRY_TABLE = NormalizationTable.from_pairs(_DEFAULT_COUNTRY_PAIRS, "country")
