"""Artifact writers: GEXF, web JSON, corpus CSV, resolution log, report.

Every writer returns a string (or takes an explicit timestamp), and output
ordering is pinned (vertices by DOI, edges by source then target), so the
same inputs always produce byte-identical documents.
"""

from __future__ import annotations

import csv
import io
import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Iterable, Mapping
from xml.sax.saxutils import quoteattr

from .community import CommunityAssignment, CommunityLabel, default_label
from .graph import CitationGraph, FilterSpec, VertexInfo, degree_stats
from .ingest import CORPUS_CSV_HEADER, LIST_SEPARATOR
from .model import Corpus
from .rankings import RankedEntry

WEB_SCHEMA_VERSION = 1

GEXF_NAMESPACE = "http://www.gexf.net/1.2draft"

# Node attribute declarations: (id, title, type), order is part of the format.
GEXF_NODE_ATTRIBUTES = (
    ("0", "title", "string"),
    ("1", "year", "integer"),
    ("2", "depth", "integer"),
    ("3", "resolved", "boolean"),
    ("4", "total_degree", "integer"),
    ("5", "community", "integer"),
)

RESOLUTION_LOG_HEADER = ("doi", "status", "error_reason", "attempted_at", "source")


@dataclass(frozen=True)
class ReviewManifest:
    """Provenance header exported with every artifact set."""

    seed_query: str = ""
    search_sources: tuple[str, ...] = ()
    retrieval_date: str = ""
    raw_result_count: int = 0
    deduplicated_seed_count: int = 0
    resolved_count: int = 0
    unresolved_count: int = 0
    max_depth: int = 0
    vertex_count: int = 0
    edge_count: int = 0
    filter_spec: FilterSpec = field(default_factory=FilterSpec)
    community_algorithm: str = ""
    community_seed: int = 0
    community_labels: tuple[CommunityLabel, ...] = ()
    tool_version: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "search_sources", tuple(self.search_sources))
        object.__setattr__(self, "community_labels", tuple(self.community_labels))
        for name in (
            "raw_result_count",
            "deduplicated_seed_count",
            "resolved_count",
            "unresolved_count",
            "max_depth",
            "vertex_count",
            "edge_count",
        ):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.resolved_count + self.unresolved_count > self.deduplicated_seed_count:
            raise ValueError(
                "resolved + unresolved seed counts exceed the deduplicated seed count"
            )


def manifest_to_dict(manifest: ReviewManifest) -> dict:
    return {
        "seed_query": manifest.seed_query,
        "search_sources": list(manifest.search_sources),
        "retrieval_date": manifest.retrieval_date,
        "raw_result_count": manifest.raw_result_count,
        "deduplicated_seed_count": manifest.deduplicated_seed_count,
        "resolved_count": manifest.resolved_count,
        "unresolved_count": manifest.unresolved_count,
        "max_depth": manifest.max_depth,
        "vertex_count": manifest.vertex_count,
        "edge_count": manifest.edge_count,
        "filter_spec": {
            "year_min": manifest.filter_spec.year_min,
            "year_max": manifest.filter_spec.year_max,
            "depth_max": manifest.filter_spec.depth_max,
            "min_degree": manifest.filter_spec.min_degree,
            "drop_unresolved": manifest.filter_spec.drop_unresolved,
            "keep_unknown_year": manifest.filter_spec.keep_unknown_year,
            "description": manifest.filter_spec.describe(),
        },
        "community_algorithm": manifest.community_algorithm,
        "community_seed": manifest.community_seed,
        "community_labels": [
            {
                "community_id": label.community_id,
                "label": label.label,
                "color_hint": label.color_hint,
            }
            for label in manifest.community_labels
        ],
        "tool_version": manifest.tool_version,
    }


def manifest_from_dict(data: Mapping) -> ReviewManifest:
    filter_data = data.get("filter_spec") or {}
    spec = FilterSpec(
        year_min=filter_data.get("year_min"),
        year_max=filter_data.get("year_max"),
        depth_max=filter_data.get("depth_max"),
        min_degree=filter_data.get("min_degree"),
        drop_unresolved=bool(filter_data.get("drop_unresolved", False)),
        keep_unknown_year=bool(filter_data.get("keep_unknown_year", False)),
    )
    labels = tuple(
        CommunityLabel(
            int(item["community_id"]), item["label"], item.get("color_hint") or None
        )
        for item in data.get("community_labels", [])
    )
    return ReviewManifest(
        seed_query=data.get("seed_query", ""),
        search_sources=tuple(data.get("search_sources", ())),
        retrieval_date=data.get("retrieval_date", ""),
        raw_result_count=int(data.get("raw_result_count", 0)),
        deduplicated_seed_count=int(data.get("deduplicated_seed_count", 0)),
        resolved_count=int(data.get("resolved_count", 0)),
        unresolved_count=int(data.get("unresolved_count", 0)),
        max_depth=int(data.get("max_depth", 0)),
        vertex_count=int(data.get("vertex_count", 0)),
        edge_count=int(data.get("edge_count", 0)),
        filter_spec=spec,
        community_algorithm=data.get("community_algorithm", ""),
        community_seed=int(data.get("community_seed", 0)),
        community_labels=labels,
        tool_version=data.get("tool_version", ""),
    )


def write_gexf(graph: CitationGraph, membership: Mapping[str, int] | None = None) -> str:
    """Serialize the graph as GEXF 1.2draft with pinned ordering.

    Nodes sort by DOI, edges by (source, target) with sequential ids, and
    optional attributes are simply omitted per node, so equal graphs yield
    byte-identical documents.
    """
    degrees = degree_stats(graph)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<gexf xmlns="{GEXF_NAMESPACE}" version="1.2">',
        '  <graph defaultedgetype="directed" mode="static">',
        '    <attributes class="node">',
    ]
    for attr_id, attr_title, attr_type in GEXF_NODE_ATTRIBUTES:
        lines.append(
            f'      <attribute id="{attr_id}" title="{attr_title}" type="{attr_type}" />'
        )
    lines.append("    </attributes>")
    lines.append("    <nodes>")
    for doi in graph.sorted_vertices():
        info = graph.vertices[doi]
        label = info.title if info.title else doi
        lines.append(f"      <node id={quoteattr(doi)} label={quoteattr(label)}>")
        lines.append("        <attvalues>")
        if info.title is not None:
            lines.append(f'          <attvalue for="0" value={quoteattr(info.title)} />')
        if info.year is not None:
            lines.append(f'          <attvalue for="1" value="{info.year}" />')
        lines.append(f'          <attvalue for="2" value="{info.depth}" />')
        resolved = "true" if info.resolved else "false"
        lines.append(f'          <attvalue for="3" value="{resolved}" />')
        lines.append(f'          <attvalue for="4" value="{degrees[doi].total}" />')
        if membership is not None and doi in membership:
            lines.append(f'          <attvalue for="5" value="{membership[doi]}" />')
        lines.append("        </attvalues>")
        lines.append("      </node>")
    lines.append("    </nodes>")
    lines.append("    <edges>")
    for edge_id, (source, target) in enumerate(graph.sorted_edges()):
        lines.append(
            f'      <edge id="{edge_id}" source={quoteattr(source)} '
            f"target={quoteattr(target)} />"
        )
    lines.append("    </edges>")
    lines.append("  </graph>")
    lines.append("</gexf>")
    return "\n".join(lines) + "\n"


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def parse_gexf(text: str) -> tuple[CitationGraph, dict[str, int] | None]:
    """Read a GEXF document back into a graph plus optional membership.

    Tolerates namespaced or bare tags; attribute declarations are matched
    by title, so documents from other tools round-trip where possible.
    """
    root = ET.fromstring(text)
    attribute_titles: dict[str, str] = {}
    nodes: dict[str, VertexInfo] = {}
    membership: dict[str, int] = {}
    edges: set[tuple[str, str]] = set()
    for element in root.iter():
        name = _local_name(element.tag)
        if name == "attribute":
            attribute_titles[element.get("id", "")] = element.get("title", "")
        elif name == "node":
            doi = element.get("id", "")
            values: dict[str, str] = {}
            for child in element.iter():
                if _local_name(child.tag) == "attvalue":
                    title = attribute_titles.get(child.get("for", ""), "")
                    values[title] = child.get("value", "")
            info = VertexInfo(
                title=values.get("title"),
                year=int(values["year"]) if values.get("year") else None,
                depth=int(values.get("depth", "0") or 0),
                resolved=values.get("resolved", "false") == "true",
            )
            nodes[doi] = info
            if values.get("community"):
                membership[doi] = int(values["community"])
        elif name == "edge":
            source = element.get("source", "")
            target = element.get("target", "")
            edges.add((source, target))
    graph = CitationGraph(vertices=nodes, edges=frozenset(edges))
    return graph, (membership or None)


def write_web_json(
    graph: CitationGraph,
    corpus: Corpus | None = None,
    assignment: CommunityAssignment | None = None,
    manifest: ReviewManifest | None = None,
) -> str:
    """Serialize the browse document: meta plus node and edge arrays."""
    degrees = degree_stats(graph)
    members: Mapping[str, int] = assignment.membership if assignment else {}
    nodes = []
    for doi in graph.sorted_vertices():
        info = graph.vertices[doi]
        record = corpus.articles.get(doi) if corpus is not None else None
        nodes.append(
            {
                "id": doi,
                "title": info.title,
                "authors": list(record.authors) if record else [],
                "year": info.year,
                "url": record.url if record else None,
                "subjects": list(record.subjects) if record else [],
                "depth": info.depth,
                "degree": degrees[doi].total,
                "community": members.get(doi),
                "resolved": info.resolved,
            }
        )
    edges = [
        {"source": source, "target": target}
        for source, target in graph.sorted_edges()
    ]
    meta = manifest_to_dict(manifest or ReviewManifest())
    meta["schema_version"] = WEB_SCHEMA_VERSION
    if assignment is not None:
        meta["modularity"] = assignment.q_score
    document = {"meta": meta, "nodes": nodes, "edges": edges}
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_corpus_csv(corpus: Corpus) -> str:
    """Corpus CSV, one row per record, DOI ascending; re-ingestable.

    List cells join with ``|``; every cell is quoted so delimiters inside
    values cannot corrupt the table.
    """
    out = io.StringIO()
    writer = csv.writer(out, quoting=csv.QUOTE_ALL, lineterminator="\n")
    writer.writerow(CORPUS_CSV_HEADER)
    for doi in sorted(corpus.articles):
        record = corpus.articles[doi]
        writer.writerow(
            [
                record.doi,
                record.title or "",
                LIST_SEPARATOR.join(record.authors),
                "" if record.year is None else record.year,
                record.url or "",
                LIST_SEPARATOR.join(record.subjects),
                LIST_SEPARATOR.join(record.references),
                record.depth,
                "true" if record.resolved else "false",
            ]
        )
    return out.getvalue()


def write_resolution_log_csv(outcomes: Iterable) -> str:
    """Resolution ledger CSV in append order (one row per outcome)."""
    out = io.StringIO()
    writer = csv.writer(out, quoting=csv.QUOTE_ALL, lineterminator="\n")
    writer.writerow(RESOLUTION_LOG_HEADER)
    for outcome in outcomes:
        writer.writerow(
            [
                outcome.doi,
                outcome.status,
                outcome.error_reason or "",
                outcome.attempted_at,
                outcome.source,
            ]
        )
    return out.getvalue()


def _ranking_table(entries: list[RankedEntry], key_header: str, top_n: int) -> list[str]:
    lines = [f"| rank | {key_header} | articles |", "| --- | --- | --- |"]
    if not entries:
        lines.append("| - | none | - |")
        return lines
    for entry in entries[:top_n]:
        lines.append(f"| {entry.rank} | {entry.key} | {entry.count} |")
    return lines


def write_report(
    manifest: ReviewManifest,
    author_rankings: list[RankedEntry],
    subject_rankings: list[RankedEntry],
    sizes: list[tuple[int, int]],
    generated_at: str = "",
    top_n: int = 20,
) -> str:
    """Markdown run report: manifest echo, top rankings, community sizes."""
    labels = {label.community_id: label.label for label in manifest.community_labels}
    lines = ["# Citation graph review report", ""]
    if generated_at:
        lines.append(f"_generated: {generated_at}_")
        lines.append("")
    lines.append("## Review manifest")
    lines.append("")
    lines.append(f"- seed query: {manifest.seed_query or '(none)'}")
    sources = ", ".join(manifest.search_sources) if manifest.search_sources else "(none)"
    lines.append(f"- search sources: {sources}")
    lines.append(f"- retrieval date: {manifest.retrieval_date or '(unknown)'}")
    lines.append(f"- raw seed rows: {manifest.raw_result_count}")
    lines.append(f"- deduplicated seed records: {manifest.deduplicated_seed_count}")
    lines.append(f"- resolved seeds: {manifest.resolved_count}")
    lines.append(f"- failed resolutions: {manifest.unresolved_count}")
    lines.append(f"- expansion depth: {manifest.max_depth}")
    lines.append(f"- vertices: {manifest.vertex_count}")
    lines.append(f"- edges: {manifest.edge_count}")
    lines.append(f"- filters: {manifest.filter_spec.describe()}")
    algorithm = manifest.community_algorithm or "(none)"
    lines.append(
        f"- community algorithm: {algorithm} (seed={manifest.community_seed})"
    )
    lines.append(f"- tool version: {manifest.tool_version or '(unknown)'}")
    lines.append("")
    lines.append("## Top authors")
    lines.append("")
    lines.extend(_ranking_table(author_rankings, "author", top_n))
    lines.append("")
    lines.append("## Top subjects")
    lines.append("")
    lines.extend(_ranking_table(subject_rankings, "subject", top_n))
    lines.append("")
    lines.append("## Communities")
    lines.append("")
    lines.append("| community | label | size |")
    lines.append("| --- | --- | --- |")
    if not sizes:
        lines.append("| - | none | - |")
    else:
        for community_id, size in sizes:
            label = labels.get(community_id, default_label(community_id))
            lines.append(f"| {community_id} | {label} | {size} |")
    return "\n".join(lines) + "\n"
