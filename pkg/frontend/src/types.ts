/** Shared shapes for loaded datasets, filters, and label overlays. */

export interface GraphNode {
  doi: string;
  title: string | null;
  authors: string[];
  year: number | null;
  url: string | null;
  subjects: string[];
  references: string[];
  depth: number | null;
  degree: number;
  community: number | null;
  resolved: boolean;
}

export interface GraphEdge {
  source: string;
  target: string;
}

export interface Dataset {
  nodes: GraphNode[];
  edges: GraphEdge[];
  meta: Record<string, unknown> | null;
  byDoi: Map<string, GraphNode>;
}

export interface FilterState {
  query: string;
  yearMin: number | null;
  yearMax: number | null;
  depthMax: number | null;
  minDegree: number | null;
}

export interface LabelEdit {
  label: string;
  colorHint: string | null;
}

/** Community label edits keyed by community id; an overlay, never the data. */
export type LabelOverlay = Map<number, LabelEdit>;

export function emptyFilters(): FilterState {
  return { query: "", yearMin: null, yearMax: null, depthMax: null, minDegree: null };
}

/** Plain codepoint order, matching the exporters' sorted output. */
export function compareStrings(a: string, b: string): number {
  return a < b ? -1 : a > b ? 1 : 0;
}
