"""Command-line interface: staged commands plus a one-shot pipeline.

Stage commands persist their intermediates (seeds.csv, manifest.json,
communities.json, ranking CSVs) in the output directory so each stage can
be rerun independently; ``pipeline`` runs everything in memory and writes
the five artifact files in one pass.

Exit codes: 0 success, 2 usage, 3 input error, 4 resolution failure,
5 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from collections import Counter
from pathlib import Path

from . import __version__
from .community import (
    CommunityAssignment,
    apply_labels,
    community_sizes,
    detect_communities,
    graph_fingerprint,
    read_label_file,
)
from .errors import (
    CitemapError,
    ConflictingRecord,
    MalformedRow,
    EmptyFile,
    MissingHeader,
    NoResolvableSeeds,
    NotADoi,
    UnknownCommunityId,
)
from .expander import ExpansionFrontier, expand_corpus
from .exporters import (
    ReviewManifest,
    manifest_from_dict,
    manifest_to_dict,
    write_corpus_csv,
    write_gexf,
    write_report,
    write_resolution_log_csv,
    write_web_json,
)
from .graph import FilterSpec, build_graph, filter_graph, largest_weak_component
from .ingest import normalize_doi, parse_corpus_csv, parse_seed_table
from .model import SeedEntry
from .rankings import RankedEntry, rank_authors, rank_subjects
from .resolver import ResolutionLog, ResolutionOutcome, ResolverPolicy, utc_now

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_RESOLUTION = 4
EXIT_INTERNAL = 5

SEEDS_FILE = "seeds.csv"
ROW_ERRORS_FILE = "row_errors.csv"
MANIFEST_FILE = "manifest.json"
CORPUS_FILE = "corpus.csv"
LOG_FILE = "resolution_log.csv"
GEXF_FILE = "graph.gexf"
WEB_FILE = "web_data.json"
COMMUNITIES_FILE = "communities.json"
AUTHORS_FILE = "rankings_authors.csv"
SUBJECTS_FILE = "rankings_subjects.csv"
REPORT_FILE = "report.md"

ALGORITHM_NAME = "louvain"


class UsageError(Exception):
    """Bad flag combination discovered after argument parsing."""


def _tool_version() -> str:
    return f"citemap {__version__}"


def _out_dir(args: argparse.Namespace) -> Path:
    directory = Path(args.out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def _write(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path}")


def _policy_from_args(args: argparse.Namespace) -> ResolverPolicy:
    if args.offline and not args.fixtures:
        raise UsageError("--offline requires --fixtures")
    return ResolverPolicy(
        rate_limit=args.rate_limit,
        contact_email=args.mailto or os.environ.get("CITEMAP_MAILTO") or None,
        offline=args.offline,
        fixture_dir=Path(args.fixtures) if args.fixtures else None,
    )


def _filter_spec_from_args(args: argparse.Namespace) -> FilterSpec:
    return FilterSpec(
        year_min=args.year_min,
        year_max=args.year_max,
        depth_max=args.depth_max,
        min_degree=args.min_degree,
        drop_unresolved=args.drop_unresolved,
        keep_unknown_year=args.keep_unknown_year,
    )


def _deduplicated_seed_count(entries: list[SeedEntry]) -> int:
    seen: set[str] = set()
    count = 0
    for entry in entries:
        try:
            doi = normalize_doi(entry.raw_doi or "")
        except NotADoi:
            count += 1
            continue
        if doi not in seen:
            seen.add(doi)
            count += 1
    return count


def _seed_stage_fields(entries: list[SeedEntry], error_count: int) -> dict:
    queries: list[str] = []
    for entry in entries:
        if entry.query not in queries:
            queries.append(entry.query)
    return {
        "seed_query": "; ".join(queries),
        "search_sources": sorted({e.source for e in entries if e.source}),
        "retrieval_date": max(
            (e.retrieved_on for e in entries if e.retrieved_on), default=""
        ),
        "raw_result_count": len(entries) + error_count,
        "deduplicated_seed_count": _deduplicated_seed_count(entries),
        "tool_version": _tool_version(),
    }


def _load_manifest_dict(out_dir: Path) -> dict:
    path = out_dir / MANIFEST_FILE
    if path.exists():
        return json.loads(path.read_text(encoding="utf-8"))
    return {}


def _save_manifest_dict(out_dir: Path, data: dict) -> None:
    _write(
        out_dir / MANIFEST_FILE,
        json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
    )


def _apply_filters(graph, args: argparse.Namespace):
    spec = _filter_spec_from_args(args)
    final = filter_graph(graph, spec) if not spec.is_identity() else graph
    if args.largest_component:
        final = largest_weak_component(final)
    return final, spec


def _print_graph_summary(full, final) -> None:
    print(f"graph: {final.vertex_count} vertices, {final.edge_count} edges")
    if (final.vertex_count, final.edge_count) != (full.vertex_count, full.edge_count):
        print(f"unfiltered: {full.vertex_count} vertices, {full.edge_count} edges")
        vertex_pct = (
            100.0 * final.vertex_count / full.vertex_count if full.vertex_count else 0.0
        )
        edge_pct = (
            100.0 * final.edge_count / full.edge_count if full.edge_count else 0.0
        )
        print(f"kept: {vertex_pct:.1f}% of vertices, {edge_pct:.1f}% of edges")


def _labels_from_args(args: argparse.Namespace) -> list:
    if getattr(args, "labels", None):
        return read_label_file(args.labels)
    return []


def _membership_sizes(membership: dict[str, int]) -> list[tuple[int, int]]:
    counts = Counter(membership.values())
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))


# ---------------------------------------------------------------- commands


def cmd_ingest(args: argparse.Namespace) -> int:
    entries, errors = parse_seed_table(
        args.input, delimiter=args.delimiter, default_query=args.query
    )
    out_dir = _out_dir(args)
    seed_rows = []
    for entry in entries:
        try:
            doi = normalize_doi(entry.raw_doi or "")
        except NotADoi:
            doi = entry.raw_doi or ""
        seed_rows.append(
            [
                entry.title,
                entry.source,
                entry.url or "",
                doi,
                entry.query,
                entry.retrieved_on or "",
            ]
        )
    buffer = io.StringIO()
    writer = csv.writer(buffer, quoting=csv.QUOTE_ALL, lineterminator="\n")
    writer.writerow(["title", "source", "url", "doi", "query", "retrieved_on"])
    writer.writerows(seed_rows)
    _write(out_dir / SEEDS_FILE, buffer.getvalue())
    if errors:
        error_buffer = io.StringIO()
        writer = csv.writer(error_buffer, quoting=csv.QUOTE_ALL, lineterminator="\n")
        writer.writerow(["row_number", "reason"])
        writer.writerows([[e.row_number, e.reason] for e in errors])
        _write(out_dir / ROW_ERRORS_FILE, error_buffer.getvalue())
    manifest = _load_manifest_dict(out_dir)
    manifest.update(_seed_stage_fields(entries, len(errors)))
    _save_manifest_dict(out_dir, manifest)
    print(f"ingest: {len(entries)} seed rows kept, {len(errors)} rejected")
    return EXIT_OK


def _read_resolution_log_csv(path: Path) -> list[ResolutionOutcome]:
    with open(path, newline="", encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    outcomes = []
    for row in rows[1:]:
        if len(row) < 5:
            continue
        outcomes.append(
            ResolutionOutcome(
                doi=row[0],
                status=row[1],
                error_reason=row[2] or None,
                attempted_at=row[3],
                source=row[4],
            )
        )
    return outcomes


def cmd_expand(args: argparse.Namespace) -> int:
    out_dir = _out_dir(args)
    input_path = Path(args.input) if args.input else out_dir / SEEDS_FILE
    entries, errors = parse_seed_table(
        input_path, delimiter=args.delimiter, default_query=args.query
    )
    policy = _policy_from_args(args)

    frontier = None
    corpus = None
    prior_outcomes: list[ResolutionOutcome] = []
    snapshot_path = Path(args.snapshot) if args.snapshot else None
    if snapshot_path is not None and snapshot_path.exists():
        frontier = ExpansionFrontier.load(snapshot_path)
        corpus_path = out_dir / CORPUS_FILE
        if corpus_path.exists():
            corpus = parse_corpus_csv(corpus_path, max_depth=args.max_depth)
        log_path = out_dir / LOG_FILE
        if log_path.exists():
            prior_outcomes = _read_resolution_log_csv(log_path)
        print(f"resuming from snapshot {snapshot_path} ({len(frontier)} queued)")

    def checkpoint(frontier_state, corpus_state, log_state) -> None:
        if snapshot_path is None:
            return
        frontier_state.save(snapshot_path)
        (out_dir / CORPUS_FILE).write_text(
            write_corpus_csv(corpus_state), encoding="utf-8"
        )
        (out_dir / LOG_FILE).write_text(
            write_resolution_log_csv(prior_outcomes + list(log_state)),
            encoding="utf-8",
        )

    try:
        corpus, resolution_log = expand_corpus(
            entries,
            args.max_depth,
            policy,
            frontier=frontier,
            corpus=corpus,
            on_step=checkpoint,
        )
    except NoResolvableSeeds as exc:
        if exc.log is not None:
            _write(out_dir / LOG_FILE, write_resolution_log_csv(exc.log))
        raise
    outcomes = prior_outcomes + list(resolution_log)
    _write(out_dir / CORPUS_FILE, write_corpus_csv(corpus))
    _write(out_dir / LOG_FILE, write_resolution_log_csv(outcomes))
    if snapshot_path is not None and snapshot_path.exists():
        snapshot_path.unlink()
    manifest = _load_manifest_dict(out_dir)
    manifest.update(_seed_stage_fields(entries, len(errors)))
    depth0 = [record for record in corpus if record.depth == 0]
    manifest["resolved_count"] = sum(1 for r in depth0 if r.resolved)
    manifest["unresolved_count"] = sum(1 for r in depth0 if not r.resolved)
    manifest["max_depth"] = args.max_depth
    _save_manifest_dict(out_dir, manifest)
    failed = sum(1 for o in outcomes if o.status == "failed")
    print(f"expand: {len(corpus)} records, {failed} failed resolutions")
    return EXIT_OK


def cmd_graph(args: argparse.Namespace) -> int:
    out_dir = _out_dir(args)
    input_path = Path(args.input) if args.input else out_dir / CORPUS_FILE
    corpus = parse_corpus_csv(input_path, delimiter=args.delimiter)
    full = build_graph(corpus)
    final, spec = _apply_filters(full, args)
    _write(out_dir / GEXF_FILE, write_gexf(final))
    manifest = _load_manifest_dict(out_dir)
    manifest["vertex_count"] = final.vertex_count
    manifest["edge_count"] = final.edge_count
    manifest["filter_spec"] = manifest_to_dict(
        ReviewManifest(filter_spec=spec)
    )["filter_spec"]
    _save_manifest_dict(out_dir, manifest)
    _print_graph_summary(full, final)
    return EXIT_OK


def cmd_communities(args: argparse.Namespace) -> int:
    out_dir = _out_dir(args)
    input_path = Path(args.input) if args.input else out_dir / CORPUS_FILE
    corpus = parse_corpus_csv(input_path, delimiter=args.delimiter)
    full = build_graph(corpus)
    final, spec = _apply_filters(full, args)
    assignment = detect_communities(final, args.seed)
    labels = _labels_from_args(args)
    labeled = apply_labels(assignment, labels)
    document = {
        "algorithm": ALGORITHM_NAME,
        "algorithm_seed": assignment.algorithm_seed,
        "q_score": assignment.q_score,
        "graph_fingerprint": assignment.graph_fingerprint,
        "membership": assignment.membership,
    }
    _write(
        out_dir / COMMUNITIES_FILE,
        json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
    )
    manifest = _load_manifest_dict(out_dir)
    manifest["community_algorithm"] = ALGORITHM_NAME
    manifest["community_seed"] = assignment.algorithm_seed
    if labels:
        manifest["community_labels"] = [
            {
                "community_id": l.community_id,
                "label": l.label,
                "color_hint": l.color_hint,
            }
            for l in sorted(labels, key=lambda l: l.community_id)
        ]
    _save_manifest_dict(out_dir, manifest)
    sizes = community_sizes(assignment)
    print(
        f"communities: {assignment.community_count} found, "
        f"Q={assignment.q_score:.4f}"
    )
    for community_id, size in sizes[:10]:
        print(f"  {labeled.label_for(community_id)}: {size} vertices")
    return EXIT_OK


def _write_rankings_csv(path: Path, entries: list[RankedEntry], key_header: str) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, quoting=csv.QUOTE_ALL, lineterminator="\n")
    writer.writerow(["rank", key_header, "articles"])
    for entry in entries:
        writer.writerow([entry.rank, entry.key, entry.count])
    _write(path, buffer.getvalue())


def _read_rankings_csv(path: Path) -> list[RankedEntry]:
    with open(path, newline="", encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    entries = []
    for row in rows[1:]:
        if len(row) >= 3:
            entries.append(RankedEntry(key=row[1], count=int(row[2]), rank=int(row[0])))
    return entries


def cmd_rank(args: argparse.Namespace) -> int:
    out_dir = _out_dir(args)
    input_path = Path(args.input) if args.input else out_dir / CORPUS_FILE
    corpus = parse_corpus_csv(input_path, delimiter=args.delimiter)
    authors = rank_authors(corpus)
    subjects = rank_subjects(corpus)
    _write_rankings_csv(out_dir / AUTHORS_FILE, authors, "author")
    _write_rankings_csv(out_dir / SUBJECTS_FILE, subjects, "subject")
    print(f"rank: {len(authors)} authors, {len(subjects)} subjects")
    return EXIT_OK


def _load_assignment(out_dir: Path, final_graph) -> CommunityAssignment | None:
    path = out_dir / COMMUNITIES_FILE
    if not path.exists():
        return None
    document = json.loads(path.read_text(encoding="utf-8"))
    assignment = CommunityAssignment(
        membership={str(k): int(v) for k, v in document["membership"].items()},
        q_score=float(document["q_score"]),
        algorithm_seed=int(document["algorithm_seed"]),
        graph_fingerprint=str(document["graph_fingerprint"]),
    )
    if assignment.graph_fingerprint != graph_fingerprint(final_graph):
        print(
            "warning: communities.json was computed on a different graph; "
            "rerun the communities stage",
            file=sys.stderr,
        )
        return None
    return assignment


def cmd_export(args: argparse.Namespace) -> int:
    out_dir = _out_dir(args)
    input_path = Path(args.input) if args.input else out_dir / CORPUS_FILE
    corpus = parse_corpus_csv(input_path, delimiter=args.delimiter)
    full = build_graph(corpus)
    final, spec = _apply_filters(full, args)
    assignment = _load_assignment(out_dir, final)
    manifest_dict = _load_manifest_dict(out_dir)
    manifest_dict["vertex_count"] = final.vertex_count
    manifest_dict["edge_count"] = final.edge_count
    manifest_dict["filter_spec"] = manifest_to_dict(
        ReviewManifest(filter_spec=spec)
    )["filter_spec"]
    manifest_dict.setdefault("tool_version", _tool_version())
    labels = _labels_from_args(args)
    if labels:
        if assignment is not None:
            apply_labels(assignment, labels)  # validates community ids
        merged = {
            item["community_id"]: item
            for item in manifest_dict.get("community_labels", [])
        }
        for label in labels:
            merged[label.community_id] = {
                "community_id": label.community_id,
                "label": label.label,
                "color_hint": label.color_hint,
            }
        manifest_dict["community_labels"] = [
            merged[key] for key in sorted(merged)
        ]
    _save_manifest_dict(out_dir, manifest_dict)
    manifest = manifest_from_dict(manifest_dict)
    membership = assignment.membership if assignment else None
    _write(out_dir / GEXF_FILE, write_gexf(final, membership))
    _write(out_dir / WEB_FILE, write_web_json(final, corpus, assignment, manifest))
    print(f"export: {final.vertex_count} vertices, {final.edge_count} edges")
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    out_dir = _out_dir(args)
    manifest_dict = _load_manifest_dict(out_dir)
    if not manifest_dict:
        web_path = out_dir / WEB_FILE
        if web_path.exists():
            document = json.loads(web_path.read_text(encoding="utf-8"))
            manifest_dict = document.get("meta", {})
            manifest_dict.pop("schema_version", None)
            manifest_dict.pop("modularity", None)
        else:
            raise FileNotFoundError(
                f"no {MANIFEST_FILE} or {WEB_FILE} in {out_dir}; run earlier stages first"
            )
    labels = _labels_from_args(args)
    if labels:
        merged = {
            item["community_id"]: item
            for item in manifest_dict.get("community_labels", [])
        }
        for label in labels:
            merged[label.community_id] = {
                "community_id": label.community_id,
                "label": label.label,
                "color_hint": label.color_hint,
            }
        manifest_dict["community_labels"] = [merged[key] for key in sorted(merged)]
    manifest = manifest_from_dict(manifest_dict)

    authors_path = out_dir / AUTHORS_FILE
    subjects_path = out_dir / SUBJECTS_FILE
    corpus_path = out_dir / CORPUS_FILE
    if authors_path.exists() and subjects_path.exists():
        authors = _read_rankings_csv(authors_path)
        subjects = _read_rankings_csv(subjects_path)
    elif corpus_path.exists():
        corpus = parse_corpus_csv(corpus_path)
        authors = rank_authors(corpus)
        subjects = rank_subjects(corpus)
    else:
        authors, subjects = [], []

    sizes: list[tuple[int, int]] = []
    communities_path = out_dir / COMMUNITIES_FILE
    web_path = out_dir / WEB_FILE
    if communities_path.exists():
        document = json.loads(communities_path.read_text(encoding="utf-8"))
        sizes = _membership_sizes(
            {str(k): int(v) for k, v in document["membership"].items()}
        )
    elif web_path.exists():
        document = json.loads(web_path.read_text(encoding="utf-8"))
        membership = {
            node["id"]: node["community"]
            for node in document.get("nodes", [])
            if node.get("community") is not None
        }
        if membership:
            sizes = _membership_sizes(membership)
    _write(
        out_dir / REPORT_FILE,
        write_report(manifest, authors, subjects, sizes, generated_at=utc_now()),
    )
    return EXIT_OK


def cmd_pipeline(args: argparse.Namespace) -> int:
    out_dir = _out_dir(args)
    entries, errors = parse_seed_table(
        args.input, delimiter=args.delimiter, default_query=args.query
    )
    print(f"ingest: {len(entries)} seed rows kept, {len(errors)} rejected")
    policy = _policy_from_args(args)
    corpus, resolution_log = expand_corpus(entries, args.max_depth, policy)
    failed = resolution_log.count("failed")
    print(f"expand: {len(corpus)} records, {failed} failed resolutions")

    full = build_graph(corpus)
    final, spec = _apply_filters(full, args)
    _print_graph_summary(full, final)

    assignment = None
    if final.vertex_count:
        assignment = detect_communities(final, args.seed)
        print(
            f"communities: {assignment.community_count} found, "
            f"Q={assignment.q_score:.4f}"
        )
    labels = _labels_from_args(args)
    if assignment is not None:
        apply_labels(assignment, labels)  # validates label ids

    authors = rank_authors(corpus)
    subjects = rank_subjects(corpus)

    queries: list[str] = []
    for entry in entries:
        if entry.query not in queries:
            queries.append(entry.query)
    depth0 = [record for record in corpus if record.depth == 0]
    manifest = ReviewManifest(
        seed_query="; ".join(queries),
        search_sources=tuple(sorted({e.source for e in entries if e.source})),
        retrieval_date=max(
            (e.retrieved_on for e in entries if e.retrieved_on), default=""
        ),
        raw_result_count=len(entries) + len(errors),
        deduplicated_seed_count=_deduplicated_seed_count(entries),
        resolved_count=sum(1 for r in depth0 if r.resolved),
        unresolved_count=sum(1 for r in depth0 if not r.resolved),
        max_depth=args.max_depth,
        vertex_count=final.vertex_count,
        edge_count=final.edge_count,
        filter_spec=spec,
        community_algorithm=ALGORITHM_NAME if assignment else "",
        community_seed=args.seed,
        community_labels=tuple(sorted(labels, key=lambda l: l.community_id)),
        tool_version=_tool_version(),
    )

    if errors:
        buffer = io.StringIO()
        writer = csv.writer(buffer, quoting=csv.QUOTE_ALL, lineterminator="\n")
        writer.writerow(["row_number", "reason"])
        writer.writerows([[e.row_number, e.reason] for e in errors])
        _write(out_dir / ROW_ERRORS_FILE, buffer.getvalue())

    _write(out_dir / CORPUS_FILE, write_corpus_csv(corpus))
    _write(out_dir / LOG_FILE, write_resolution_log_csv(resolution_log))
    membership = assignment.membership if assignment else None
    _write(out_dir / GEXF_FILE, write_gexf(final, membership))
    _write(out_dir / WEB_FILE, write_web_json(final, corpus, assignment, manifest))
    sizes = community_sizes(assignment) if assignment else []
    _write(
        out_dir / REPORT_FILE,
        write_report(manifest, authors, subjects, sizes, generated_at=utc_now()),
    )
    return EXIT_OK


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="citemap",
        description="Map a citation network from a seed search table.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    subparsers = parser.add_subparsers(dest="command")

    io_parent = argparse.ArgumentParser(add_help=False)
    io_parent.add_argument("--out-dir", default="out", help="output directory")
    io_parent.add_argument(
        "--delimiter", default=",", help="input table delimiter (default ,)"
    )

    resolver_parent = argparse.ArgumentParser(add_help=False)
    resolver_parent.add_argument(
        "--offline", action="store_true", help="resolve from fixtures only"
    )
    resolver_parent.add_argument(
        "--fixtures", default=None, help="directory of fixture response documents"
    )
    resolver_parent.add_argument(
        "--rate-limit",
        type=float,
        default=1.0,
        help="max requests per second (default 1)",
    )
    resolver_parent.add_argument(
        "--mailto",
        default=None,
        help="contact email for polite API use (or CITEMAP_MAILTO)",
    )

    expand_parent = argparse.ArgumentParser(add_help=False)
    expand_parent.add_argument(
        "--max-depth", type=int, default=1, help="snowball depth (default 1)"
    )
    expand_parent.add_argument(
        "--query",
        default="",
        help="seed query recorded for rows without a query column",
    )

    filter_parent = argparse.ArgumentParser(add_help=False)
    filter_parent.add_argument("--year-min", type=int, default=None)
    filter_parent.add_argument("--year-max", type=int, default=None)
    filter_parent.add_argument(
        "--keep-unknown-year",
        action="store_true",
        help="keep unknown-year vertices when a year filter is active",
    )
    filter_parent.add_argument("--depth-max", type=int, default=None)
    filter_parent.add_argument(
        "--min-degree",
        type=int,
        default=None,
        help="minimum total degree, measured on the unfiltered graph",
    )
    filter_parent.add_argument(
        "--drop-unresolved", action="store_true", help="drop stub vertices"
    )
    filter_parent.add_argument(
        "--largest-component",
        action="store_true",
        help="keep only the largest weak component",
    )

    seed_parent = argparse.ArgumentParser(add_help=False)
    seed_parent.add_argument(
        "--seed", type=int, default=0, help="community detection seed (default 0)"
    )

    labels_parent = argparse.ArgumentParser(add_help=False)
    labels_parent.add_argument(
        "--labels", default=None, help="community label CSV (community_id,label[,color_hint])"
    )

    sub = subparsers.add_parser(
        "ingest", parents=[io_parent], help="parse and canonicalize a seed table"
    )
    sub.add_argument("--input", required=True, help="seed table CSV")
    sub.add_argument("--query", default="", help="query recorded for rows without one")

    sub = subparsers.add_parser(
        "expand",
        parents=[io_parent, resolver_parent, expand_parent],
        help="resolve seeds and snowball references",
    )
    sub.add_argument(
        "--input", default=None, help="seed table (default <out-dir>/seeds.csv)"
    )
    sub.add_argument(
        "--snapshot",
        default=None,
        help="frontier snapshot path; reused to resume an interrupted run",
    )

    sub = subparsers.add_parser(
        "graph",
        parents=[io_parent, filter_parent],
        help="build and filter the citation graph",
    )
    sub.add_argument(
        "--input", default=None, help="corpus CSV (default <out-dir>/corpus.csv)"
    )

    sub = subparsers.add_parser(
        "communities",
        parents=[io_parent, filter_parent, seed_parent, labels_parent],
        help="detect modularity communities",
    )
    sub.add_argument(
        "--input", default=None, help="corpus CSV (default <out-dir>/corpus.csv)"
    )

    sub = subparsers.add_parser(
        "rank", parents=[io_parent], help="rank authors and subjects"
    )
    sub.add_argument(
        "--input", default=None, help="corpus CSV (default <out-dir>/corpus.csv)"
    )

    sub = subparsers.add_parser(
        "export",
        parents=[io_parent, filter_parent, labels_parent],
        help="write the GEXF and web JSON artifacts",
    )
    sub.add_argument(
        "--input", default=None, help="corpus CSV (default <out-dir>/corpus.csv)"
    )

    sub = subparsers.add_parser(
        "report", parents=[io_parent, labels_parent], help="write the markdown report"
    )

    sub = subparsers.add_parser(
        "pipeline",
        parents=[
            io_parent,
            resolver_parent,
            expand_parent,
            filter_parent,
            seed_parent,
            labels_parent,
        ],
        help="run every stage and write all artifacts",
    )
    sub.add_argument("--input", required=True, help="seed table CSV")

    return parser


COMMAND_HANDLERS = {
    "ingest": cmd_ingest,
    "expand": cmd_expand,
    "graph": cmd_graph,
    "communities": cmd_communities,
    "rank": cmd_rank,
    "export": cmd_export,
    "report": cmd_report,
    "pipeline": cmd_pipeline,
}

INPUT_ERRORS = (
    NotADoi,
    EmptyFile,
    MissingHeader,
    MalformedRow,
    UnknownCommunityId,
    FileNotFoundError,
    json.JSONDecodeError,
)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return EXIT_USAGE
    handler = COMMAND_HANDLERS[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        print(f"error ({args.command}): {exc}", file=sys.stderr)
        return EXIT_USAGE
    except INPUT_ERRORS as exc:
        print(f"error ({args.command}): {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NoResolvableSeeds, ConflictingRecord) as exc:
        print(f"error ({args.command}): {exc}", file=sys.stderr)
        return EXIT_RESOLUTION
    except (CitemapError, ValueError) as exc:
        print(f"error ({args.command}): invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
