"""Directed citation graph: construction, filtering, components, degrees.

Vertices are canonical DOIs; an edge (a, b) means "a cites b". The graph
is simple: no self-loops, no parallel edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .errors import DanglingReference, EmptyGraph
from .model import Corpus


@dataclass(frozen=True)
class VertexInfo:
    """Vertex attributes carried alongside the adjacency structure."""

    title: str | None = None
    year: int | None = None
    depth: int = 0
    resolved: bool = False


class Degree(NamedTuple):
    in_degree: int
    out_degree: int
    total: int


@dataclass(frozen=True)
class CitationGraph:
    vertices: dict[str, VertexInfo]
    edges: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", frozenset(self.edges))
        for citing, cited in self.edges:
            if citing == cited:
                raise ValueError(f"self-loop on {citing}")
            if citing not in self.vertices or cited not in self.vertices:
                raise ValueError(f"edge endpoint not a vertex: {citing} -> {cited}")

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_vertices(self) -> list[str]:
        return sorted(self.vertices)

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(self.edges)

    def undirected_neighbors(self) -> dict[str, set[str]]:
        """Adjacency with edge direction ignored; every vertex is a key."""
        neighbors: dict[str, set[str]] = {doi: set() for doi in self.vertices}
        for citing, cited in self.edges:
            neighbors[citing].add(cited)
            neighbors[cited].add(citing)
        return neighbors


@dataclass(frozen=True)
class FilterSpec:
    """Vertex filters; degree thresholds refer to the unfiltered graph."""

    year_min: int | None = None
    year_max: int | None = None
    depth_max: int | None = None
    min_degree: int | None = None
    drop_unresolved: bool = False
    keep_unknown_year: bool = False

    def __post_init__(self) -> None:
        if (
            self.year_min is not None
            and self.year_max is not None
            and self.year_min > self.year_max
        ):
            raise ValueError(f"year_min {self.year_min} > year_max {self.year_max}")
        if self.min_degree is not None and self.min_degree < 0:
            raise ValueError(f"min_degree must be >= 0, got {self.min_degree}")
        if self.depth_max is not None and self.depth_max < 0:
            raise ValueError(f"depth_max must be >= 0, got {self.depth_max}")

    def is_identity(self) -> bool:
        return (
            self.year_min is None
            and self.year_max is None
            and self.depth_max is None
            and self.min_degree is None
            and not self.drop_unresolved
        )

    def describe(self) -> str:
        """Human-readable summary for reports and manifests."""
        if self.is_identity():
            return "none"
        parts: list[str] = []
        if self.year_min is not None or self.year_max is not None:
            low = "*" if self.year_min is None else str(self.year_min)
            high = "*" if self.year_max is None else str(self.year_max)
            years = f"years {low}..{high}"
            if self.keep_unknown_year:
                years += " (unknown years kept)"
            parts.append(years)
        if self.depth_max is not None:
            parts.append(f"depth <= {self.depth_max}")
        if self.min_degree is not None:
            parts.append(f"degree >= {self.min_degree}")
        if self.drop_unresolved:
            parts.append("resolved only")
        return "; ".join(parts)


def build_graph(corpus: Corpus) -> CitationGraph:
    """Build the directed graph over every corpus record.

    Raises DanglingReference when some cited DOI has no corpus record.
    """
    missing = sorted(corpus.missing_references())
    if missing:
        raise DanglingReference(
            f"{len(missing)} cited DOI(s) missing from corpus: {', '.join(missing[:5])}"
        )
    vertices = {
        record.doi: VertexInfo(
            title=record.title,
            year=record.year,
            depth=record.depth,
            resolved=record.resolved,
        )
        for record in corpus
    }
    edges = {
        (record.doi, ref)
        for record in corpus
        for ref in record.references
    }
    return CitationGraph(vertices=vertices, edges=frozenset(edges))


def degree_stats(graph: CitationGraph) -> dict[str, Degree]:
    """Per-vertex in/out/total degree; every vertex appears."""
    in_deg = {doi: 0 for doi in graph.vertices}
    out_deg = {doi: 0 for doi in graph.vertices}
    for citing, cited in graph.edges:
        out_deg[citing] += 1
        in_deg[cited] += 1
    return {
        doi: Degree(in_deg[doi], out_deg[doi], in_deg[doi] + out_deg[doi])
        for doi in graph.vertices
    }


def filter_graph(graph: CitationGraph, spec: FilterSpec) -> CitationGraph:
    """Keep vertices passing every active criterion; drop edges at removed ends.

    Year filters drop unknown-year vertices unless ``keep_unknown_year``;
    min_degree tests the total degree in the ORIGINAL graph.
    """
    degrees = degree_stats(graph)
    year_active = spec.year_min is not None or spec.year_max is not None

    def keeps(doi: str, info: VertexInfo) -> bool:
        if year_active:
            if info.year is None:
                if not spec.keep_unknown_year:
                    return False
            else:
                if spec.year_min is not None and info.year < spec.year_min:
                    return False
                if spec.year_max is not None and info.year > spec.year_max:
                    return False
        if spec.depth_max is not None and info.depth > spec.depth_max:
            return False
        if spec.min_degree is not None and degrees[doi].total < spec.min_degree:
            return False
        if spec.drop_unresolved and not info.resolved:
            return False
        return True

    vertices = {doi: info for doi, info in graph.vertices.items() if keeps(doi, info)}
    edges = {
        (citing, cited)
        for citing, cited in graph.edges
        if citing in vertices and cited in vertices
    }
    return CitationGraph(vertices=vertices, edges=frozenset(edges))


def weak_components(graph: CitationGraph) -> list[set[str]]:
    """Connected components of the undirected projection."""
    neighbors = graph.undirected_neighbors()
    components: list[set[str]] = []
    seen: set[str] = set()
    for start in graph.sorted_vertices():
        if start in seen:
            continue
        component = {start}
        queue = deque([start])
        while queue:
            current = queue.popleft()
            for other in neighbors[current]:
                if other not in component:
                    component.add(other)
                    queue.append(other)
        seen |= component
        components.append(component)
    return components


def largest_weak_component(graph: CitationGraph) -> CitationGraph:
    """Induced subgraph on the largest weak component.

    Size ties break toward the component whose smallest DOI sorts first.
    Raises EmptyGraph on a graph with no vertices.
    """
    if not graph.vertices:
        raise EmptyGraph("cannot take the largest component of an empty graph")
    components = weak_components(graph)
    chosen = min(components, key=lambda c: (-len(c), min(c)))
    vertices = {doi: graph.vertices[doi] for doi in chosen}
    edges = {
        (citing, cited)
        for citing, cited in graph.edges
        if citing in vertices and cited in vertices
    }
    return CitationGraph(vertices=vertices, edges=frozenset(edges))


def degree_summary(degrees: Mapping[str, Degree]) -> dict[str, float]:
    """Aggregate degree statistics (min/max/mean of totals)."""
    if not degrees:
        return {"min": 0.0, "max": 0.0, "mean": 0.0}
    totals = [d.total for d in degrees.values()]
    return {
        "min": float(min(totals)),
        "max": float(max(totals)),
        "mean": sum(totals) / len(totals),
    }
