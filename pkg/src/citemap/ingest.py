"""Seed-table and corpus-table ingestion.

Turns messy exported search tables into validated seed entries, normalizes
DOI-ish text to canonical form, and parses the corpus CSV written by the
exporters back into a :class:`~citemap.model.Corpus`.
"""

from __future__ import annotations

import ast
import csv
import re
from dataclasses import dataclass
from pathlib import Path
from urllib.parse import unquote

from .errors import EmptyFile, MalformedRow, MissingHeader, NotADoi
from .model import DOI_PATTERN, ArticleRecord, Corpus, SeedEntry

# Prefixes stripped (case-insensitively) before validation.
URL_PREFIXES = (
    "https://doi.org/",
    "http://doi.org/",
    "https://dx.doi.org/",
    "http://dx.doi.org/",
    "doi:",
)

# Trailing characters that sloppy copy-paste attaches to DOIs.
TRAILING_PUNCTUATION = ".,;)"

_DOI_SCAN = re.compile(r"10\.\d{4,9}/\S+")
_LIST_DELIMITERS = re.compile(r"[;|]")

# Logical seed fields -> default column names in the input table.
DEFAULT_SEED_COLUMNS = {
    "title": "title",
    "source": "source",
    "url": "url",
    "doi": "doi",
    "query": "query",
    "retrieved_on": "retrieved_on",
}

CORPUS_CSV_HEADER = (
    "doi",
    "title",
    "authors",
    "year",
    "url",
    "subjects",
    "references",
    "depth",
    "resolved",
)

# Separator for list-valued cells inside the corpus CSV.
LIST_SEPARATOR = "|"


@dataclass(frozen=True)
class RowError:
    """A seed row that could not become a SeedEntry, with a 1-based row number."""

    row_number: int
    reason: str


def normalize_doi(raw: str) -> str:
    """Normalize DOI-ish text to canonical lowercase form, or raise NotADoi.

    Strips surrounding whitespace, then any doi.org / dx.doi.org / ``doi:``
    prefix; when a prefix was present the remainder is percent-decoded once
    (decoding unprefixed text would break idempotence on double-encoded
    input). Trailing ``.,;)`` are dropped before validation.
    """
    if not isinstance(raw, str):
        raise NotADoi(f"not a DOI: {raw!r}")
    text = raw.strip()
    lowered = text.lower()
    for prefix in URL_PREFIXES:
        if lowered.startswith(prefix):
            text = unquote(text[len(prefix):])
            break
    text = text.strip().rstrip(TRAILING_PUNCTUATION).lower()
    if not DOI_PATTERN.match(text):
        raise NotADoi(f"not a DOI: {raw!r}")
    return text


def _bracketed_list_items(text: str) -> list[str]:
    if not (text.startswith("[") and text.endswith("]")):
        return []
    try:
        parsed = ast.literal_eval(text)
    except (ValueError, SyntaxError):
        return []
    if not isinstance(parsed, (list, tuple)):
        return []
    return [item for item in parsed if isinstance(item, str)]


def extract_reference_dois(cell: str) -> list[str]:
    """Pull an ordered, deduplicated DOI list out of a free-form reference cell.

    Tries, in order: a bracketed quoted list, splitting on ``;`` / ``|``,
    then a raw regex scan. The first strategy that yields at least one
    valid DOI wins; non-DOI fragments are dropped silently.
    """
    text = (cell or "").strip()
    if not text:
        return []
    strategies = (
        _bracketed_list_items(text),
        _LIST_DELIMITERS.split(text),
        _DOI_SCAN.findall(text),
    )
    for candidates in strategies:
        found: list[str] = []
        seen: set[str] = set()
        for candidate in candidates:
            try:
                doi = normalize_doi(candidate)
            except NotADoi:
                continue
            if doi not in seen:
                seen.add(doi)
                found.append(doi)
        if found:
            return found
    return []


def _read_table(path: str | Path, delimiter: str) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle, delimiter=delimiter)
        rows = [row for row in reader]
    if not rows:
        raise EmptyFile(f"{path}: no header row")
    return rows[0], rows[1:]


def parse_seed_table(
    path: str | Path,
    column_map: dict[str, str] | None = None,
    delimiter: str = ",",
    default_query: str = "",
) -> tuple[list[SeedEntry], list[RowError]]:
    """Parse an exported search table into seed entries plus row errors.

    ``column_map`` overrides the default column names per logical field;
    a mapped column missing from the header raises MissingHeader. Rows
    lacking a title, or lacking a query when ``default_query`` is empty,
    become RowErrors instead of aborting the parse.
    """
    mapping = dict(DEFAULT_SEED_COLUMNS)
    required = {"title"}
    if column_map:
        unknown = set(column_map) - set(mapping)
        if unknown:
            raise ValueError(f"unknown seed fields in column_map: {sorted(unknown)}")
        mapping.update(column_map)
        required |= set(column_map)
    header, rows = _read_table(path, delimiter)
    column_index = {name: i for i, name in enumerate(header)}
    for logical in sorted(required):
        if mapping[logical] not in column_index:
            raise MissingHeader(
                f"column {mapping[logical]!r} (for {logical}) not found in header {header}"
            )

    def cell(row: list[str], logical: str) -> str:
        index = column_index.get(mapping[logical])
        if index is None or index >= len(row):
            return ""
        return row[index].strip()

    entries: list[SeedEntry] = []
    errors: list[RowError] = []
    for number, row in enumerate(rows, start=1):
        if not any(value.strip() for value in row):
            errors.append(RowError(number, "blank row"))
            continue
        title = cell(row, "title")
        if not title:
            errors.append(RowError(number, "missing title"))
            continue
        query = cell(row, "query") or default_query
        if not query.strip():
            errors.append(RowError(number, "missing query"))
            continue
        entries.append(
            SeedEntry(
                title=title,
                query=query,
                source=cell(row, "source"),
                url=cell(row, "url") or None,
                raw_doi=cell(row, "doi") or None,
                retrieved_on=cell(row, "retrieved_on") or None,
            )
        )
    return entries, errors


def _split_list_cell(cell: str) -> tuple[str, ...]:
    return tuple(part for part in cell.split(LIST_SEPARATOR) if part)


def parse_corpus_csv(
    path: str | Path,
    delimiter: str = ",",
    max_depth: int | None = None,
) -> Corpus:
    """Read a corpus CSV (as written by the exporters) back into a Corpus.

    ``max_depth`` defaults to the deepest depth present, which always
    satisfies the corpus depth bound.
    """
    header, rows = _read_table(path, delimiter)
    column_index = {name: i for i, name in enumerate(header)}
    for column in CORPUS_CSV_HEADER:
        if column not in column_index:
            raise MissingHeader(f"corpus column {column!r} not found in header {header}")

    records: list[ArticleRecord] = []
    for number, row in enumerate(rows, start=1):
        def cell(column: str) -> str:
            index = column_index[column]
            return row[index] if index < len(row) else ""

        doi = normalize_doi(cell("doi"))
        year_text = cell("year").strip()
        depth_text = cell("depth").strip()
        try:
            year = int(year_text) if year_text else None
            depth = int(depth_text) if depth_text else 0
        except ValueError:
            raise MalformedRow(
                f"corpus row {number} ({doi}): year/depth must be integers, "
                f"got year={year_text!r} depth={depth_text!r}"
            ) from None
        records.append(
            ArticleRecord(
                doi=doi,
                title=cell("title") or None,
                authors=_split_list_cell(cell("authors")),
                year=year,
                url=cell("url") or None,
                subjects=_split_list_cell(cell("subjects")),
                references=tuple(normalize_doi(ref) for ref in _split_list_cell(cell("references"))),
                depth=depth,
                resolved=cell("resolved").strip().lower() == "true",
            )
        )
    if max_depth is None:
        max_depth = max((record.depth for record in records), default=0)
    corpus = Corpus(max_depth=max_depth)
    for record in records:
        corpus.insert(record)
    return corpus
