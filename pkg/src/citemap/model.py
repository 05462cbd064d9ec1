"""Domain model: canonical DOIs, article records, and the corpus holding them.

A DOI is carried as a plain string in canonical form: lowercase,
``10.`` + 4-9 registrant digits + ``/`` + non-empty suffix, with no URL
prefix and no whitespace. :func:`citemap.ingest.normalize_doi` produces
this form from messy input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, fields, replace
from typing import Iterator

from .errors import ConflictingRecord

DOI_PATTERN = re.compile(r"^10\.\d{4,9}/\S+$")


def is_canonical_doi(value: str) -> bool:
    """True iff value is already a canonical (normalized) DOI string."""
    return bool(DOI_PATTERN.match(value)) and value == value.lower()


def require_canonical_doi(value: str) -> str:
    if not isinstance(value, str) or not is_canonical_doi(value):
        raise ValueError(f"not a canonical DOI: {value!r}")
    return value


@dataclass(frozen=True)
class SeedEntry:
    """One row of the documented seed search, before metadata resolution."""

    title: str
    query: str
    source: str = ""
    url: str | None = None
    raw_doi: str | None = None
    retrieved_on: str | None = None

    def __post_init__(self) -> None:
        if not self.title or not self.title.strip():
            raise ValueError("seed entry needs a non-empty title")
        if not self.query or not self.query.strip():
            raise ValueError("seed entry needs a non-empty query for traceability")


@dataclass(frozen=True)
class ArticleRecord:
    """A DOI-keyed article: resolved metadata or a bare stub vertex.

    References are deduplicated in first-seen order and never include the
    record's own DOI. Unresolved records carry no authors, subjects, or
    references.
    """

    doi: str
    title: str | None = None
    authors: tuple[str, ...] = ()
    year: int | None = None
    url: str | None = None
    subjects: tuple[str, ...] = ()
    affiliations: tuple[str, ...] = ()
    references: tuple[str, ...] = ()
    depth: int = 0
    resolved: bool = False

    def __post_init__(self) -> None:
        require_canonical_doi(self.doi)
        if self.depth < 0:
            raise ValueError(f"depth must be >= 0, got {self.depth}")
        object.__setattr__(self, "authors", tuple(self.authors))
        object.__setattr__(self, "subjects", tuple(self.subjects))
        object.__setattr__(self, "affiliations", tuple(self.affiliations))
        deduped: list[str] = []
        seen: set[str] = set()
        for ref in self.references:
            require_canonical_doi(ref)
            if ref == self.doi or ref in seen:
                continue
            seen.add(ref)
            deduped.append(ref)
        object.__setattr__(self, "references", tuple(deduped))
        if not self.resolved and (self.authors or self.subjects or self.references):
            raise ValueError(
                f"unresolved record {self.doi} cannot carry authors, subjects, or references"
            )

    @classmethod
    def stub(cls, doi: str, depth: int) -> "ArticleRecord":
        """A placeholder vertex for a DOI that was cited but never resolved."""
        return cls(doi=doi, depth=depth, resolved=False)

    def content_key(self) -> tuple:
        """Every field except depth; depths merge by minimum on insert."""
        return tuple(
            getattr(self, f.name) for f in fields(self) if f.name != "depth"
        )


@dataclass
class Corpus:
    """DOI-keyed article store built by seed resolution and expansion.

    Single-writer: mutate only through :meth:`insert`, which enforces the
    merge rules (minimum depth wins, resolved beats stub, conflicting
    resolved content is an error).
    """

    max_depth: int
    seed_query: str = ""
    created_on: str = ""
    articles: dict[str, ArticleRecord] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.max_depth < 0:
            raise ValueError(f"max_depth must be >= 0, got {self.max_depth}")

    def __len__(self) -> int:
        return len(self.articles)

    def __contains__(self, doi: str) -> bool:
        return doi in self.articles

    def __iter__(self) -> Iterator[ArticleRecord]:
        return iter(self.articles.values())

    def insert(self, record: ArticleRecord) -> None:
        """Insert or merge a record; raise ConflictingRecord on disagreement."""
        if record.depth > self.max_depth + 1:
            raise ValueError(
                f"record {record.doi} at depth {record.depth} exceeds "
                f"max_depth + 1 = {self.max_depth + 1}"
            )
        existing = self.articles.get(record.doi)
        if existing is None:
            self.articles[record.doi] = record
            return
        depth = min(existing.depth, record.depth)
        if existing.resolved and record.resolved:
            if existing.content_key() != record.content_key():
                raise ConflictingRecord(
                    f"resolved records for {record.doi} disagree on content"
                )
            keep = existing
        elif record.resolved:
            keep = record
        else:
            keep = existing
        if keep.depth != depth:
            keep = replace(keep, depth=depth)
        self.articles[record.doi] = keep

    def resolved_records(self) -> list[ArticleRecord]:
        return [r for r in self.articles.values() if r.resolved]

    def referenced_dois(self) -> set[str]:
        """Every DOI cited by some resolved record."""
        cited: set[str] = set()
        for record in self.articles.values():
            cited.update(record.references)
        return cited

    def missing_references(self) -> set[str]:
        """Cited DOIs with no corpus record of their own (closure violations)."""
        return self.referenced_dois() - set(self.articles)
