"""Shared fixtures: paths to the offline corpus and small graph builders."""

from __future__ import annotations

import itertools
import random
from pathlib import Path

import pytest

from citemap.graph import CitationGraph, VertexInfo
from citemap.model import ArticleRecord, Corpus

DATA_DIR = Path(__file__).parent / "data"
SEED_TABLE = DATA_DIR / "seed_table.csv"
FIXTURE_DIR = DATA_DIR / "fixtures"

# The offline corpus expands to this graph (5 seeds, depth 1).
EXPECTED_VERTICES = 12
EXPECTED_EDGES = 15

DOI = {
    name: f"10.5000/{name}"
    for name in (
        "alpha",
        "bravo",
        "charlie",
        "delta",
        "echo",
        "foxtrot",
        "golf",
        "hotel",
        "india",
        "juliet",
        "kilo",
        "lima",
    )
}

EXPECTED_DEPTHS = {
    DOI["alpha"]: 0,
    DOI["bravo"]: 0,
    DOI["charlie"]: 0,
    DOI["delta"]: 0,
    DOI["echo"]: 0,
    DOI["foxtrot"]: 1,
    DOI["golf"]: 1,
    DOI["hotel"]: 1,
    DOI["india"]: 1,
    DOI["juliet"]: 1,
    DOI["kilo"]: 2,
    DOI["lima"]: 2,
}

EXPECTED_TOTAL_DEGREES = {
    DOI["alpha"]: 5,
    DOI["bravo"]: 4,
    DOI["charlie"]: 3,
    DOI["delta"]: 1,
    DOI["echo"]: 0,
    DOI["foxtrot"]: 3,
    DOI["golf"]: 4,
    DOI["hotel"]: 2,
    DOI["india"]: 2,
    DOI["juliet"]: 3,
    DOI["kilo"]: 2,
    DOI["lima"]: 1,
}


@pytest.fixture
def seed_table() -> Path:
    return SEED_TABLE

@pytest.fixture
def fixture_dir() -> Path:
    return FIXTURE_DIR


def make_graph(names: str | list[str], edges: set[tuple[str, str]]) -> CitationGraph:
    """Small test graph; single-character names stay as-is for readability."""
    return CitationGraph(
        vertices={name: VertexInfo() for name in names},
        edges=frozenset(edges),
    )


def random_graph(rng: random.Random, max_vertices: int = 8, p: float = 0.4) -> CitationGraph:
    """Random simple directed graph over valid DOI names."""
    n = rng.randint(1, max_vertices)
    names = [f"10.1000/v{i:02d}" for i in range(n)]
    edges = set()
    for a, b in itertools.combinations(range(n), 2):
        if rng.random() < p:
            if rng.random() < 0.5:
                edges.add((names[a], names[b]))
            else:
                edges.add((names[b], names[a]))
    return CitationGraph(
        vertices={name: VertexInfo() for name in names},
        edges=frozenset(edges),
    )


WORDS = (
    "projection",
    "mapping",
    "camera",
    "surface",
    "tracking",
    "latency",
    "display",
    "geometry",
)


def random_corpus(rng: random.Random, max_records: int = 12) -> Corpus:
    """Random closed corpus (every reference has a record) for round-trips."""
    n = rng.randint(1, max_records)
    dois = [f"10.{rng.randint(1000, 9999)}/r{i:02d}" for i in range(n)]
    max_depth = rng.randint(0, 3)
    corpus = Corpus(max_depth=max_depth)
    for i, doi in enumerate(dois):
        resolved = rng.random() < 0.8
        depth = rng.randint(0, max_depth + 1) if not resolved else rng.randint(0, max_depth)
        if resolved:
            others = [d for d in dois if d != doi]
            rng.shuffle(others)
            refs = tuple(others[: rng.randint(0, min(4, len(others)))])
            title = " ".join(rng.choice(WORDS) for _ in range(rng.randint(1, 5)))
            record = ArticleRecord(
                doi=doi,
                title=title if rng.random() < 0.9 else None,
                authors=tuple(
                    f"{rng.choice('ABCDE')}. {rng.choice(WORDS).title()}"
                    for _ in range(rng.randint(0, 3))
                ),
                year=rng.randint(1990, 2024) if rng.random() < 0.8 else None,
                url=f"https://doi.org/{doi}" if rng.random() < 0.5 else None,
                subjects=tuple(
                    rng.choice(WORDS) for _ in range(rng.randint(0, 2))
                ),
                references=refs,
                depth=depth,
                resolved=True,
            )
        else:
            record = ArticleRecord.stub(doi, depth)
        corpus.insert(record)
    return corpus
