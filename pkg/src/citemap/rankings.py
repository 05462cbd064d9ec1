"""Author and subject-term rankings over resolved corpus records."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .model import Corpus


@dataclass(frozen=True)
class RankedEntry:
    key: str
    count: int
    rank: int


def _ranked(counter: Counter) -> list[RankedEntry]:
    ordered = sorted(counter.items(), key=lambda item: (-item[1], item[0]))
    return [RankedEntry(key, count, i + 1) for i, (key, count) in enumerate(ordered)]


def rank_authors(corpus: Corpus) -> list[RankedEntry]:
    """Authors by number of distinct resolved articles, count desc, name asc.

    Names match by exact string after trimming and collapsing internal
    whitespace; no fuzzy identity resolution is attempted. An author listed
    twice on one article still counts it once.
    """
    counter: Counter[str] = Counter()
    for record in corpus.resolved_records():
        names = {" ".join(name.split()) for name in record.authors}
        names.discard("")
        counter.update(names)
    return _ranked(counter)


def rank_subjects(corpus: Corpus) -> list[RankedEntry]:
    """Subject terms by number of distinct resolved articles carrying them.

    Terms are case-folded before counting; ordering matches rank_authors.
    """
    counter: Counter[str] = Counter()
    for record in corpus.resolved_records():
        subjects = {subject.strip().casefold() for subject in record.subjects}
        subjects.discard("")
        counter.update(subjects)
    return _ranked(counter)
