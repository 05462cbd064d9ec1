"""End-to-end acceptance checks with one verdict line per guarantee.

Each test prints ``acceptance: <name>: PASS`` when its guarantee holds;
a failing test shows up as the usual FAILED line instead.
"""

import json
import os
import random
import time

import pytest

from citemap import cli
from citemap.community import detect_communities, modularity
from citemap.exporters import parse_gexf, write_corpus_csv, write_gexf
from citemap.expander import expand_corpus
from citemap.graph import (
    FilterSpec,
    build_graph,
    filter_graph,
    largest_weak_component,
)
from citemap.ingest import parse_corpus_csv, parse_seed_table
from citemap.model import SeedEntry
from citemap.resolver import ResolverPolicy, resolve_batch

from conftest import DOI, FIXTURE_DIR, SEED_TABLE, random_corpus, random_graph
from test_community import TRIANGLE_SPLIT, TWO_TRIANGLES, best_partition_q
from test_expander import bfs_depths, entry, offline_policy, write_relation_fixtures

PIPELINE_FILES = {
    "corpus.csv",
    "resolution_log.csv",
    "graph.gexf",
    "web_data.json",
    "report.md",
}


def verdict(name):
    print(f"acceptance: {name}: PASS")


def run_pipeline(out_dir, *extra):
    return cli.main(
        [
            "pipeline",
            "--input", str(SEED_TABLE),
            "--out-dir", str(out_dir),
            "--offline", "--fixtures", str(FIXTURE_DIR),
            "--max-depth", "1",
            *extra,
        ]
    )


def normalized_report(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    return "\n".join(line for line in lines if not line.startswith("_generated:"))


def test_fixture_pipeline_counts_and_artifacts(tmp_path):
    started = time.perf_counter()
    code = run_pipeline(tmp_path)
    elapsed = time.perf_counter() - started
    assert code == 0
    assert elapsed < 5.0, f"pipeline took {elapsed:.2f}s"
    assert {p.name for p in tmp_path.iterdir()} == PIPELINE_FILES

    document = json.loads((tmp_path / "web_data.json").read_text(encoding="utf-8"))
    assert len(document["nodes"]) == 12
    assert len(document["edges"]) == 15
    graph, _ = parse_gexf((tmp_path / "graph.gexf").read_text(encoding="utf-8"))
    assert len(graph.vertices) == 12
    assert len(graph.edges) == 15
    corpus = parse_corpus_csv(tmp_path / "corpus.csv")
    assert len(corpus.articles) == 12
    verdict("fixture pipeline yields 12 vertices / 15 edges in under 5s")


def test_pipeline_output_is_deterministic(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    assert run_pipeline(first) == 0
    assert run_pipeline(second) == 0
    for name in ("graph.gexf", "web_data.json", "corpus.csv"):
        assert (first / name).read_bytes() == (second / name).read_bytes(), name
    assert normalized_report(first / "report.md") == normalized_report(
        second / "report.md"
    )
    verdict("repeated pipeline runs are byte-identical")


def test_modularity_matches_closed_form():
    rng = random.Random(2024)
    for trial in range(100):
        graph = random_graph(rng, max_vertices=30, p=0.25)
        if not graph.vertices:
            continue
        all_in_one = {doi: 0 for doi in graph.vertices}
        assert abs(modularity(graph, all_in_one)) <= 1e-12, trial
    assert abs(modularity(TWO_TRIANGLES, TRIANGLE_SPLIT) - 0.5) <= 1e-12
    verdict("modularity matches closed-form values within 1e-12")


def test_detected_communities_bounded_by_exhaustive_optimum():
    rng = random.Random(4242)
    for trial in range(50):
        graph = random_graph(rng, max_vertices=8, p=0.4)
        if not graph.vertices:
            continue
        assignment = detect_communities(graph, seed=trial)
        optimum = best_partition_q(graph)
        assert assignment.q_score <= optimum + 1e-9, trial
        assert assignment.q_score >= 0.0, trial
    assignment = detect_communities(TWO_TRIANGLES, seed=0)
    assert abs(assignment.q_score - best_partition_q(TWO_TRIANGLES)) <= 1e-12
    blocks = {}
    for doi, community in assignment.membership.items():
        blocks.setdefault(community, set()).add(doi)
    expected = {}
    for doi, community in TRIANGLE_SPLIT.items():
        expected.setdefault(community, set()).add(doi)
    assert sorted(blocks.values(), key=min) == sorted(expected.values(), key=min)
    verdict("detected communities stay within the exhaustive optimum")


def test_expansion_depths_match_shortest_distance(tmp_path):
    rng = random.Random(99)
    for trial in range(50):
        n = rng.randint(1, 40)
        dois = [f"10.1000/t{trial:02d}n{i:02d}" for i in range(n)]
        references = {
            doi: [
                other
                for other in rng.sample(dois, k=min(n - 1, rng.randint(0, 4)))
                if other != doi
            ]
            for doi in dois
        }
        directory = tmp_path / f"rel{trial}"
        directory.mkdir()
        write_relation_fixtures(directory, references)
        seeds = rng.sample(dois, k=rng.randint(1, min(5, n)))
        max_depth = rng.randint(0, 4)
        corpus, _ = expand_corpus(
            [entry(doi) for doi in seeds],
            max_depth,
            offline_policy(fixtures=directory),
        )
        oracle = bfs_depths(references, seeds)
        expected = {
            doi: depth for doi, depth in oracle.items() if depth <= max_depth + 1
        }
        stored = {doi: record.depth for doi, record in corpus.articles.items()}
        assert stored == expected, trial
    verdict("expansion depths equal shortest seed distance")


def test_exports_are_round_trip_stable(tmp_path):
    def gexf_stable(graph):
        first = write_gexf(graph)
        parsed, _ = parse_gexf(first)
        assert write_gexf(parsed) == first

    def corpus_stable(corpus, path):
        first = write_corpus_csv(corpus)
        path.write_text(first, encoding="utf-8")
        assert write_corpus_csv(parse_corpus_csv(path)) == first

    seeds = [
        SeedEntry(title=n, query="q", raw_doi=DOI[n])
        for n in ("alpha", "bravo", "charlie", "delta", "echo")
    ]
    fixture_corpus, _ = expand_corpus(
        seeds, 1, ResolverPolicy(offline=True, fixture_dir=FIXTURE_DIR)
    )
    gexf_stable(build_graph(fixture_corpus))
    corpus_stable(fixture_corpus, tmp_path / "fixture.csv")

    rng = random.Random(31)
    for trial in range(20):
        corpus = random_corpus(rng)
        gexf_stable(build_graph(corpus))
        corpus_stable(corpus, tmp_path / f"c{trial}.csv")
    verdict("exports reach a fixed point after one write-parse cycle")


def test_resolution_ledger_conserves_rows(tmp_path):
    policy = offline_policy()
    batches = [
        [DOI["alpha"]],
        [DOI["alpha"], DOI["bravo"], DOI["alpha"]],
        [DOI["alpha"], "10.5000/zulu", DOI["charlie"], "10.5000/zulu"],
        ["10.5000/zulu"],
    ]
    for batch in batches:
        _, log = resolve_batch(batch, policy)
        assert len(log) == len(batch), batch

    table = tmp_path / "seeds.csv"
    table.write_text(
        "title,doi,query\n"
        f"First,{DOI['alpha']},q\n"
        f"Second,{DOI['bravo']},q\n"
        ",10.5000/charlie,q\n"  # missing title: row error
        "Bad identifier,not-a-doi,q\n"  # skipped: nothing to resolve
        f"Repeat,{DOI['alpha'].upper()},q\n"  # skipped: duplicate
        "Ghost,10.5000/zulu,q\n",  # resolves to a failure stub at depth 0
        encoding="utf-8",
    )
    entries, row_errors = parse_seed_table(table)
    rows_in = 6
    assert len(entries) + len(row_errors) == rows_in
    corpus, log = expand_corpus(entries, 0, policy)
    depth_zero = sum(1 for r in corpus.articles.values() if r.depth == 0)
    skipped = log.count("skipped")
    assert depth_zero + len(row_errors) + skipped == rows_in
    assert log.count("failed") == 1
    verdict("every input row lands in corpus, row errors, or skip log")


def test_case_study_corpus_graph_counts():
    path = os.environ.get("CITEMAP_CASE_STUDY_CORPUS")
    if not path:
        pytest.skip(
            "set CITEMAP_CASE_STUDY_CORPUS to the original corpus CSV "
            "to verify the published graph counts"
        )
    corpus = parse_corpus_csv(path)
    graph = build_graph(corpus)
    assert len(graph.vertices) == 2198
    assert len(graph.edges) == 8249
    windowed = filter_graph(graph, FilterSpec(year_min=2010, year_max=2023))
    component = largest_weak_component(windowed)
    assert len(component.vertices) == 986
    assert len(component.edges) == 2693
    verdict("case-study corpus reproduces the recorded graph counts")
