/** The single source of filtered truth: query plus numeric filters. */

import { Dataset, FilterState, GraphEdge, GraphNode } from "./types.js";

export function matchesQuery(node: GraphNode, query: string): boolean {
  const needle = query.trim().toLowerCase();
  if (needle === "") return true;
  const haystacks = [node.doi, node.title ?? "", ...node.authors, ...node.subjects];
  return haystacks.some((text) => text.toLowerCase().includes(needle));
}

export function passesFilters(node: GraphNode, filters: FilterState): boolean {
  if (filters.yearMin !== null || filters.yearMax !== null) {
    if (node.year === null) return false;
    if (filters.yearMin !== null && node.year < filters.yearMin) return false;
    if (filters.yearMax !== null && node.year > filters.yearMax) return false;
  }
  if (filters.depthMax !== null) {
    if (node.depth === null || node.depth > filters.depthMax) return false;
  }
  if (filters.minDegree !== null && node.degree < filters.minDegree) return false;
  return true;
}

/** Nodes passing query and filters, in DOI order. */
export function visibleNodes(dataset: Dataset, filters: FilterState): GraphNode[] {
  return dataset.nodes.filter(
    (node) => matchesQuery(node, filters.query) && passesFilters(node, filters)
  );
}

/** Edges with both endpoints visible. */
export function visibleEdges(dataset: Dataset, visible: GraphNode[]): GraphEdge[] {
  const kept = new Set(visible.map((node) => node.doi));
  return dataset.edges.filter(
    (edge) => kept.has(edge.source) && kept.has(edge.target)
  );
}

export function neighborsOf(
  dataset: Dataset,
  doi: string
): { outgoing: string[]; incoming: string[] } {
  const outgoing: string[] = [];
  const incoming: string[] = [];
  for (const edge of dataset.edges) {
    if (edge.source === doi) outgoing.push(edge.target);
    if (edge.target === doi) incoming.push(edge.source);
  }
  return { outgoing, incoming };
}
