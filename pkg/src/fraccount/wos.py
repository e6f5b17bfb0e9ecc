"""Parser for Web of Science plain-text field-tagged exports.

The format puts a two-character field tag at the start of a line (``PT``,
``AU``, ``AF``, ``C1``, ``PY``, ``UT``, ...), continues multi-line values
with a three-space indent, terminates each record with ``ER`` and the file
with ``EF``.  Address lines (``C1``) optionally carry a bracketed author
list tying the address to specific authors.
"""

from __future__ import annotations

import re
from typing import IO, Sequence

from .normalize import DEFAULT_COUNTRY_TABLE, NormalizationTable, normalize_entity
from .records import Address, DocumentRecord, ParseError

_TAG_LINE = re.compile(r"^([A-Z][A-Z0-9])( (.*))?$")
_CONTINUATION = re.compile(r"^   (.*)$")
_STATE_ZIP_USA = re.compile(r"^[A-Z]{2} \d{5}(-\d{4})? USA$")
_HEADER_TAGS = frozenset({"FN", "VR"})


def parse_address(
    raw: str,
    authors: Sequence[str] = (),
    *,
    country_table: NormalizationTable | None = DEFAULT_COUNTRY_TABLE,
    institution_table: NormalizationTable | None = None,
) -> Address:
    """Parse one C1 address entry into an :class:`Address`.

    The institution is the first comma segment after the optional bracketed
    author list, the country the last segment (a ``ST 12345 USA`` tail maps
    to USA).  Bracketed names are resolved against ``authors`` by exact
    match.  Entries with fewer than two comma segments come back unusable
    (empty institution and country).
    """
    text = raw.strip()
    indices: frozenset[int] | None = None
    if text.startswith("["):
        close = text.find("]")
        if close < 0:
            return Address(institution="", country="", author_indices=None, raw_text=raw)
        names = [name.strip() for name in text[1:close].split(";")]
        matched = {authors.index(name) for name in names if name in authors}
        indices = frozenset(matched)
        text = text[close + 1 :].strip()

    segments = [seg.strip() for seg in text.split(",")]
    segments = [seg for seg in segments if seg]
    if len(segments) < 2:
        return Address(institution="", country="", author_indices=indices, raw_text=raw)

    institution = normalize_entity(segments[0], institution_table)
    last = segments[-1].rstrip(".").strip()
    if _STATE_ZIP_USA.match(last):
        country = normalize_entity("USA", country_table)
    else:
        country = normalize_entity(last, country_table)
    return Address(
        institution=institution,
        country=country,
        author_indices=indices,
        raw_text=raw,
    )


def _build_record(
    fields: dict[str, list[str]],
    ordinal: int,
    *,
    country_table: NormalizationTable | None,
    institution_table: NormalizationTable | None,
) -> DocumentRecord:
    warnings: list[str] = []

    ut = fields.get("UT")
    rec_id = ut[0].strip() if ut else f"record-{ordinal}"

    year: int | None = None
    py = fields.get("PY")
    if py:
        try:
            year = int(py[0].strip())
        except ValueError:
            warnings.append(f"unparsable PY value {py[0]!r}")
    else:
        warnings.append("missing PY field")

    author_lines = fields.get("AF") or fields.get("AU") or []
    authors = tuple(line.strip() for line in author_lines if line.strip())

    addresses: list[Address] = []
    for c1_line in fields.get("C1", []):
        address = parse_address(
            c1_line,
            authors,
            country_table=country_table,
            institution_table=institution_table,
        )
        if address.usable:
            addresses.append(address)
        else:
            warnings.append(f"unusable address: {c1_line.strip()!r}")
    if not addresses:
        warnings.append("record has no usable addresses")

    return DocumentRecord(
        id=rec_id,
        year=year,
        authors=authors,
        addresses=tuple(addresses),
        warnings=tuple(warnings),
    )


def parse_wos_export(
    source: IO[str] | str,
    *,
    country_table: NormalizationTable | None = DEFAULT_COUNTRY_TABLE,
    institution_table: NormalizationTable | None = None,
) -> list[DocumentRecord]:
    """Parse a WoS field-tagged export into document records.

    One record per ``ER``-terminated block, in file order.  Framing problems
    (unrecognizable line, continuation without a tag, missing ``ER`` or
    ``EF``) raise :class:`~fraccount.records.ParseError` with the offending
    line number; a bad address line only adds a warning to its record.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source.read().splitlines()

    records: list[DocumentRecord] = []
    fields: dict[str, list[str]] = {}
    current_tag: str | None = None
    saw_ef = False

    for lineno, line in enumerate(lines, start=1):
        if saw_ef:
            if line.strip():
                raise ParseError("content after EF terminator", line=lineno)
            continue
        if not line.strip():
            current_tag = None
            continue

        cont = _CONTINUATION.match(line)
        if cont:
            if current_tag is None:
                raise ParseError("continuation line without an open field tag", line=lineno)
            fields[current_tag].append(cont.group(1))
            continue

        tag_match = _TAG_LINE.match(line)
        if not tag_match:
            raise ParseError(f"unrecognizable line {line!r}", line=lineno)
        tag, _, value = tag_match.groups()

        if tag == "EF":
            pending = [t for t in fields if t not in _HEADER_TAGS]
            if pending:
                raise ParseError("record not terminated by ER before EF", line=lineno)
            saw_ef = True
            current_tag = None
            continue
        if tag == "ER":
            record_fields = {t: v for t, v in fields.items() if t not in _HEADER_TAGS}
            records.append(
                _build_record(
                    record_fields,
                    ordinal=len(records) + 1,
                    country_table=country_table,
                    institution_table=institution_table,
                )
            )
            fields = {}
            current_tag = None
            continue

        fields.setdefault(tag, []).append(value or "")
        current_tag = tag

    if not saw_ef:
        raise ParseError("missing EF file terminator", line=len(lines) or None)
    return records
