"""Bounded breadth-first citation expansion from seed DOIs.

Seeds enter at depth 0. References of an article resolved at depth d are
resolved at depth d+1 while d < max_depth; references of articles at
max_depth become unresolved stubs at max_depth + 1. The frontier is FIFO,
so the first depth a DOI is seen at is its minimal depth.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

from .errors import EmptyFrontier, NoResolvableSeeds, NotADoi
from .ingest import normalize_doi
from .model import ArticleRecord, Corpus, SeedEntry
from .resolver import (
    MetadataResolver,
    ResolutionLog,
    ResolutionOutcome,
    ResolverPolicy,
    utc_now,
)


@dataclass
class ExpansionFrontier:
    """FIFO queue of (doi, depth) pairs plus the set of DOIs ever enqueued."""

    queue: deque[tuple[str, int]] = field(default_factory=deque)
    visited: set[str] = field(default_factory=set)

    def enqueue(self, doi: str, depth: int) -> bool:
        """Queue a DOI unless already seen; returns whether it was queued."""
        if doi in self.visited:
            return False
        self.visited.add(doi)
        self.queue.append((doi, depth))
        return True

    def mark_visited(self, doi: str) -> None:
        self.visited.add(doi)

    def __bool__(self) -> bool:
        return bool(self.queue)

    def __len__(self) -> int:
        return len(self.queue)

    def to_snapshot(self) -> dict:
        return {
            "queue": [[doi, depth] for doi, depth in self.queue],
            "visited": sorted(self.visited),
        }

    @classmethod
    def from_snapshot(cls, snapshot: dict) -> "ExpansionFrontier":
        frontier = cls()
        frontier.queue = deque((str(doi), int(depth)) for doi, depth in snapshot["queue"])
        frontier.visited = set(snapshot["visited"])
        return frontier

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_snapshot(), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path: str | Path) -> "ExpansionFrontier":
        return cls.from_snapshot(json.loads(Path(path).read_text(encoding="utf-8")))


def seed_frontier(seeds: list[SeedEntry]) -> tuple[ExpansionFrontier, ResolutionLog]:
    """Queue each distinct seed DOI at depth 0.

    Seeds without a normalizable DOI and duplicate seed DOIs become
    ``skipped`` log entries so every input row stays accounted for.
    """
    frontier = ExpansionFrontier()
    skipped = ResolutionLog()
    for entry in seeds:
        raw = entry.raw_doi or ""
        try:
            doi = normalize_doi(raw)
        except NotADoi:
            skipped.append(
                ResolutionOutcome(
                    raw.strip(),
                    "skipped",
                    error_reason=f"no resolvable DOI for seed {entry.title!r}",
                    attempted_at=utc_now(),
                    source="seed-table",
                )
            )
            continue
        if not frontier.enqueue(doi, 0):
            skipped.append(
                ResolutionOutcome(
                    doi,
                    "skipped",
                    error_reason="duplicate seed",
                    attempted_at=utc_now(),
                    source="seed-table",
                )
            )
    return frontier, skipped


def frontier_step(
    frontier: ExpansionFrontier,
    corpus: Corpus,
    resolver: MetadataResolver,
    max_depth: int,
) -> list[ResolutionOutcome]:
    """Process one queued DOI: resolve it, then queue or stub its references.

    A DOI already resolved in the corpus is not re-fetched; it logs as
    ``cached``. A failed resolution leaves an unresolved stub record at the
    discovered depth so the vertex (and the failure) stays visible.
    """
    if not frontier.queue:
        raise EmptyFrontier("frontier queue is empty")
    doi, depth = frontier.queue.popleft()
    prior = corpus.articles.get(doi)
    if prior is not None and prior.resolved:
        record = replace(prior, depth=min(prior.depth, depth))
        corpus.insert(record)
        outcome = ResolutionOutcome(
            doi, "cached", attempted_at=utc_now(), source="cache"
        )
    else:
        result = resolver.resolve(doi, depth)
        if isinstance(result, ArticleRecord):
            record = result
            outcome = ResolutionOutcome(
                doi, "resolved", attempted_at=utc_now(), source=resolver.source_name
            )
        else:
            record = ArticleRecord.stub(doi, depth)
            outcome = ResolutionOutcome(
                doi,
                "failed",
                error_reason=result.as_error_reason(),
                attempted_at=utc_now(),
                source=resolver.source_name,
            )
        corpus.insert(record)
    for ref in record.references:
        if depth < max_depth:
            frontier.enqueue(ref, depth + 1)
        elif ref not in frontier.visited:
            frontier.mark_visited(ref)
            corpus.insert(ArticleRecord.stub(ref, depth + 1))
    return [outcome]


def expand_corpus(
    seeds: list[SeedEntry],
    max_depth: int,
    policy: ResolverPolicy,
    created_on: str | None = None,
    resolver: MetadataResolver | None = None,
    frontier: ExpansionFrontier | None = None,
    corpus: Corpus | None = None,
    on_step: Callable[[ExpansionFrontier, Corpus, ResolutionLog], None] | None = None,
) -> tuple[Corpus, ResolutionLog]:
    """Run frontier steps to the fixpoint, starting from the seed rows.

    Raises NoResolvableSeeds (carrying the skip log) when no seed has a
    usable DOI. ``frontier``/``corpus`` allow resuming a snapshotted run;
    ``on_step`` is called after every step for checkpointing.
    """
    if max_depth < 0:
        raise ValueError(f"max_depth must be >= 0, got {max_depth}")
    resuming = frontier is not None
    if not resuming:
        frontier, skip_log = seed_frontier(seeds)
        if not frontier.queue:
            raise NoResolvableSeeds(
                "no seed row carries a resolvable DOI", log=skip_log
            )
    else:
        skip_log = ResolutionLog()
    resolution_log = ResolutionLog(skip_log.outcomes)
    if corpus is None:
        queries: list[str] = []
        for entry in seeds:
            if entry.query not in queries:
                queries.append(entry.query)
        corpus = Corpus(
            max_depth=max_depth,
            seed_query="; ".join(queries),
            created_on=created_on or utc_now(),
        )
    resolver = resolver or MetadataResolver(policy)
    while frontier.queue:
        resolution_log.extend(frontier_step(frontier, corpus, resolver, max_depth))
        if on_step is not None:
            on_step(frontier, corpus, resolution_log)
    return corpus, resolution_log
