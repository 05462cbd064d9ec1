"""Modularity communities on the undirected projection of a citation graph.

Detection is a deterministic greedy modularity optimization: repeated
local-move passes over a seed-shuffled vertex order, then aggregation of
communities into supervertices, until the modularity gain of a whole level
drops below ``GAIN_EPSILON``. Ties between candidate communities break
toward the smallest community id, so the same graph and seed always
produce the identical assignment.
"""

from __future__ import annotations

import csv
import hashlib
import io
import random
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .errors import (
    EmptyFile,
    EmptyGraph,
    IncompleteMembership,
    MalformedRow,
    MissingHeader,
    UnknownCommunityId,
)
from .graph import CitationGraph

GAIN_EPSILON = 1e-9

LABEL_FILE_HEADER = ("community_id", "label", "color_hint")


def undirected_edges(graph: CitationGraph) -> set[tuple[str, str]]:
    """Distinct undirected edges as ordered pairs; antiparallel pairs collapse."""
    return {(a, b) if a < b else (b, a) for a, b in graph.edges}


def modularity(graph: CitationGraph, membership: Mapping[str, int]) -> float:
    """Newman modularity Q of the partition, on the undirected projection.

    Q = sum over communities of (internal edges / m) - (degree sum / 2m)^2.
    A graph with no edges has Q = 0 by convention.
    """
    missing = [v for v in graph.vertices if v not in membership]
    if missing:
        raise IncompleteMembership(
            f"{len(missing)} vertices lack a community, e.g. {missing[0]}"
        )
    edges = sorted(undirected_edges(graph))
    m = len(edges)
    if m == 0:
        return 0.0
    internal: Counter[int] = Counter()
    degree_sum: Counter[int] = Counter()
    for a, b in edges:
        degree_sum[membership[a]] += 1
        degree_sum[membership[b]] += 1
        if membership[a] == membership[b]:
            internal[membership[a]] += 1
    two_m = 2.0 * m
    return sum(
        internal[c] / m - (degree_sum[c] / two_m) ** 2
        for c in sorted(degree_sum)
    )


@dataclass(frozen=True)
class CommunityAssignment:
    """A complete vertex-to-community map with its quality score.

    Community ids are dense (0..k-1) and ordered by each community's
    smallest member DOI. The fingerprint ties the assignment to the exact
    graph it was computed on.
    """

    membership: dict[str, int]
    q_score: float
    algorithm_seed: int
    graph_fingerprint: str

    def __post_init__(self) -> None:
        ids = set(self.membership.values())
        if ids != set(range(len(ids))):
            raise ValueError("community ids must be dense 0..k-1")
        if not -1.0 <= self.q_score <= 1.0:
            raise ValueError(f"modularity out of range: {self.q_score}")

    @property
    def community_count(self) -> int:
        return len(set(self.membership.values()))


def graph_fingerprint(graph: CitationGraph) -> str:
    """SHA-256 over a canonical serialization of vertices and edges."""
    hasher = hashlib.sha256()
    for doi in graph.sorted_vertices():
        info = graph.vertices[doi]
        line = f"v|{doi!r}|{info.title!r}|{info.year!r}|{info.depth!r}|{info.resolved!r}\n"
        hasher.update(line.encode("utf-8"))
    for citing, cited in graph.sorted_edges():
        hasher.update(f"e|{citing!r}|{cited!r}\n".encode("utf-8"))
    return hasher.hexdigest()


def _working_q(
    neighbors: list[dict[int, float]],
    loops: list[float],
    community: list[int],
    m: float,
) -> float:
    """Modularity of a supervertex partition on the weighted working graph."""
    internal: dict[int, float] = {}
    total: dict[int, float] = {}
    for node in range(len(neighbors)):
        c = community[node]
        degree = sum(neighbors[node][nb] for nb in sorted(neighbors[node]))
        degree += 2.0 * loops[node]
        total[c] = total.get(c, 0.0) + degree
        internal[c] = internal.get(c, 0.0) + loops[node]
        for nb in sorted(neighbors[node]):
            if nb > node and community[nb] == c:
                internal[c] += neighbors[node][nb]
    two_m = 2.0 * m
    return sum(
        internal[c] / m - (total[c] / two_m) ** 2 for c in sorted(total)
    )


def _local_moves(
    neighbors: list[dict[int, float]],
    loops: list[float],
    m: float,
    order: list[int],
) -> list[int]:
    """Greedy modularity moves until a full pass makes none.

    A node moves only for a strictly positive gain; equal-gain candidates
    resolve to the smallest community id because candidates are scanned in
    ascending order and must strictly beat the incumbent.

    Gains are compared scaled by 2m^2, i.e. as 2m*link(c) - total(c)*k.
    Every weight here is an integer-valued float (unit edges and their
    aggregation sums), so the scaled comparison is exact and a genuine tie
    never registers as an improvement. Dividing first would let rounding
    turn symmetric ties into phantom gains and the pass into a two-node
    label swap that never terminates.
    """
    node_count = len(neighbors)
    degree = [
        sum(neighbors[i][nb] for nb in sorted(neighbors[i])) + 2.0 * loops[i]
        for i in range(node_count)
    ]
    community = list(range(node_count))
    community_total = degree[:]
    improved = True
    while improved:
        improved = False
        for node in order:
            old = community[node]
            k = degree[node]
            link: dict[int, float] = {}
            for nb in sorted(neighbors[node]):
                c = community[nb]
                link[c] = link.get(c, 0.0) + neighbors[node][nb]
            community_total[old] -= k
            best = old
            best_gain = 2.0 * m * link.get(old, 0.0) - community_total[old] * k
            for c in sorted(link):
                if c == old:
                    continue
                gain = 2.0 * m * link[c] - community_total[c] * k
                if gain > best_gain:
                    best = c
                    best_gain = gain
            community_total[best] += k
            community[node] = best
            if best != old:
                improved = True
    return community


def detect_communities(graph: CitationGraph, seed: int = 0) -> CommunityAssignment:
    """Deterministic Louvain-style community detection.

    Raises EmptyGraph on a vertexless graph. A graph with no edges yields
    one singleton community per vertex and Q = 0.
    """
    if not graph.vertices:
        raise EmptyGraph("cannot detect communities on an empty graph")
    vertices = graph.sorted_vertices()
    edge_list = sorted(undirected_edges(graph))
    fingerprint = graph_fingerprint(graph)
    if not edge_list:
        membership = {doi: i for i, doi in enumerate(vertices)}
        return CommunityAssignment(membership, 0.0, seed, fingerprint)

    index = {doi: i for i, doi in enumerate(vertices)}
    n = len(vertices)
    neighbors: list[dict[int, float]] = [dict() for _ in range(n)]
    for a, b in edge_list:
        ia, ib = index[a], index[b]
        neighbors[ia][ib] = neighbors[ia].get(ib, 0.0) + 1.0
        neighbors[ib][ia] = neighbors[ib].get(ia, 0.0) + 1.0
    loops = [0.0] * n
    m = float(len(edge_list))
    rng = random.Random(seed)
    # assignment[i] = current community of original vertex i (sorted-DOI order)
    assignment = list(range(n))

    while True:
        node_count = len(neighbors)
        q_before = _working_q(neighbors, loops, list(range(node_count)), m)
        order = list(range(node_count))
        rng.shuffle(order)
        community = _local_moves(neighbors, loops, m, order)
        q_after = _working_q(neighbors, loops, community, m)

        # Densify level communities by first occurrence over ascending node id.
        remap: dict[int, int] = {}
        for node in range(node_count):
            c = community[node]
            if c not in remap:
                remap[c] = len(remap)
        community = [remap[c] for c in community]
        assignment = [community[assignment[i]] for i in range(n)]

        if q_after - q_before < GAIN_EPSILON or len(remap) == node_count:
            break

        # Aggregate communities into supervertices for the next level.
        new_count = len(remap)
        new_neighbors: list[dict[int, float]] = [dict() for _ in range(new_count)]
        new_loops = [0.0] * new_count
        for node in range(node_count):
            ci = community[node]
            new_loops[ci] += loops[node]
            for nb in sorted(neighbors[node]):
                cj = community[nb]
                weight = neighbors[node][nb]
                if cj == ci:
                    if nb > node:
                        new_loops[ci] += weight
                else:
                    new_neighbors[ci][cj] = new_neighbors[ci].get(cj, 0.0) + weight
        neighbors, loops = new_neighbors, new_loops

    # Dense final ids ordered by each community's smallest member DOI.
    final_map: dict[int, int] = {}
    for i in range(n):
        c = assignment[i]
        if c not in final_map:
            final_map[c] = len(final_map)
    membership = {vertices[i]: final_map[assignment[i]] for i in range(n)}
    q_score = modularity(graph, membership)
    return CommunityAssignment(membership, q_score, seed, fingerprint)


def community_sizes(assignment: CommunityAssignment) -> list[tuple[int, int]]:
    """(community_id, size) pairs, largest first, ties by ascending id."""
    counts = Counter(assignment.membership.values())
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))


@dataclass(frozen=True)
class CommunityLabel:
    community_id: int
    label: str
    color_hint: str | None = None

    def __post_init__(self) -> None:
        if self.community_id < 0:
            raise ValueError(f"community id must be >= 0, got {self.community_id}")
        if not self.label or not self.label.strip():
            raise ValueError("label must be non-empty")


@dataclass(frozen=True)
class LabeledAssignment:
    """An assignment plus one label per community (defaults filled in)."""

    assignment: CommunityAssignment
    labels: dict[int, CommunityLabel]

    def label_for(self, community_id: int) -> str:
        return self.labels[community_id].label


def default_label(community_id: int) -> str:
    return f"C{community_id}"


def apply_labels(
    assignment: CommunityAssignment, labels: Iterable[CommunityLabel]
) -> LabeledAssignment:
    """Attach labels; unknown community ids are an error, gaps get defaults."""
    valid = set(assignment.membership.values())
    resolved = {
        cid: CommunityLabel(cid, default_label(cid)) for cid in sorted(valid)
    }
    for label in labels:
        if label.community_id not in valid:
            raise UnknownCommunityId(
                f"label {label.label!r} names community {label.community_id}, "
                f"which is not in the assignment"
            )
        resolved[label.community_id] = label
    return LabeledAssignment(assignment, resolved)


def read_label_file(path: str | Path, delimiter: str = ",") -> list[CommunityLabel]:
    """Parse a community label CSV: community_id,label[,color_hint]."""
    with open(path, newline="", encoding="utf-8") as handle:
        rows = list(csv.reader(handle, delimiter=delimiter))
    if not rows:
        raise EmptyFile(f"{path}: no header row")
    header = [name.strip() for name in rows[0]]
    for column in ("community_id", "label"):
        if column not in header:
            raise MissingHeader(f"label column {column!r} not found in header {header}")
    column_index = {name: i for i, name in enumerate(header)}
    labels: list[CommunityLabel] = []
    for number, row in enumerate(rows[1:], start=1):
        if not any(value.strip() for value in row):
            continue

        def cell(column: str) -> str:
            index = column_index.get(column)
            if index is None or index >= len(row):
                return ""
            return row[index].strip()

        raw_id = cell("community_id")
        try:
            community_id = int(raw_id)
        except ValueError:
            raise MalformedRow(
                f"label row {number}: community_id must be an integer, got {raw_id!r}"
            ) from None
        labels.append(
            CommunityLabel(community_id, cell("label"), cell("color_hint") or None)
        )
    return labels


def write_label_file(labels: Iterable[CommunityLabel]) -> str:
    """Serialize labels to the same CSV shape read_label_file accepts."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(LABEL_FILE_HEADER)
    for label in sorted(labels, key=lambda l: l.community_id):
        writer.writerow([label.community_id, label.label, label.color_hint or ""])
    return out.getvalue()
