/** Dataset assembly: sniff loaded files, parse, and join parts by DOI. */

import { parseCorpusCsv } from "./corpuscsv.js";
import { parseGexf } from "./gexf.js";
import { parseLabelFile } from "./labels.js";
import {
  compareStrings,
  Dataset,
  GraphEdge,
  GraphNode,
  LabelOverlay,
} from "./types.js";
import { parseWebDocument } from "./webdoc.js";

export interface LoadedFile {
  name: string;
  text: string;
}

export interface LoadResult {
  dataset: Dataset;
  labels: LabelOverlay | null;
  errors: string[];
}

export type FileKind = "web" | "gexf" | "corpus" | "labels" | "unknown";

export function emptyDataset(): Dataset {
  return { nodes: [], edges: [], meta: null, byDoi: new Map() };
}

export function sniffKind(name: string, text: string): FileKind {
  const lower = name.toLowerCase();
  const head = text.slice(0, 4096);
  if (lower.endsWith(".gexf") || head.includes("<gexf")) return "gexf";
  if (lower.endsWith(".json") || /^\s*\{/.test(head)) return "web";
  const firstLine = head.split("\n", 1)[0];
  if (firstLine.includes("community_id")) return "labels";
  if (firstLine.includes("doi")) return "corpus";
  return "unknown";
}

interface DatasetParts {
  web: { meta: Record<string, unknown>; nodes: GraphNode[]; edges: GraphEdge[] }[];
  gexf: { nodes: GraphNode[]; edges: GraphEdge[] }[];
  corpus: GraphNode[][];
}

function mergeField<T>(current: T | null, incoming: T | null): T | null {
  return current !== null ? current : incoming;
}

function mergeList(current: string[], incoming: string[]): string[] {
  return current.length > 0 ? current : incoming;
}

/** Join all parts by DOI; earlier sources win field conflicts. */
export function buildDataset(parts: DatasetParts): Dataset {
  const byDoi = new Map<string, GraphNode>();
  const hasExplicitDegree = new Set<string>();
  const sources: { nodes: GraphNode[]; explicitDegree: boolean }[] = [
    ...parts.web.map((p) => ({ nodes: p.nodes, explicitDegree: true })),
    ...parts.gexf.map((p) => ({ nodes: p.nodes, explicitDegree: true })),
    ...parts.corpus.map((nodes) => ({ nodes, explicitDegree: false })),
  ];
  for (const source of sources) {
    for (const node of source.nodes) {
      const prior = byDoi.get(node.doi);
      if (prior === undefined) {
        byDoi.set(node.doi, { ...node });
      } else {
        prior.title = mergeField(prior.title, node.title);
        prior.year = mergeField(prior.year, node.year);
        prior.url = mergeField(prior.url, node.url);
        prior.depth = mergeField(prior.depth, node.depth);
        prior.community = mergeField(prior.community, node.community);
        prior.authors = mergeList(prior.authors, node.authors);
        prior.subjects = mergeList(prior.subjects, node.subjects);
        prior.references = mergeList(prior.references, node.references);
      }
      if (source.explicitDegree) {
        hasExplicitDegree.add(node.doi);
      }
    }
  }

  // explicit edge lists win; a corpus alone contributes its reference pairs
  const edgeKeys = new Set<string>();
  const edges: GraphEdge[] = [];
  const addEdge = (source: string, target: string) => {
    if (source === target) return;
    if (!byDoi.has(source) || !byDoi.has(target)) return;
    const key = `${source} ${target}`;
    if (edgeKeys.has(key)) return;
    edgeKeys.add(key);
    edges.push({ source, target });
  };
  for (const part of [...parts.web, ...parts.gexf]) {
    for (const edge of part.edges) addEdge(edge.source, edge.target);
  }
  if (parts.web.length === 0 && parts.gexf.length === 0) {
    for (const node of byDoi.values()) {
      for (const reference of node.references) addEdge(node.doi, reference);
    }
  }
  edges.sort((a, b) =>
    a.source === b.source
      ? compareStrings(a.target, b.target)
      : compareStrings(a.source, b.source)
  );

  // degree: keep exported values, compute from edges where none were loaded
  const computed = new Map<string, number>();
  for (const edge of edges) {
    computed.set(edge.source, (computed.get(edge.source) ?? 0) + 1);
    computed.set(edge.target, (computed.get(edge.target) ?? 0) + 1);
  }
  for (const [doi, node] of byDoi) {
    if (!hasExplicitDegree.has(doi)) {
      node.degree = computed.get(doi) ?? 0;
    }
  }

  const nodes = Array.from(byDoi.values()).sort((a, b) =>
    compareStrings(a.doi, b.doi)
  );
  const meta = parts.web.length > 0 ? parts.web[0].meta : null;
  return { nodes, edges, meta, byDoi };
}

/** Parse every file, collecting per-file errors without giving up. */
export function loadFiles(files: LoadedFile[]): LoadResult {
  const parts: DatasetParts = { web: [], gexf: [], corpus: [] };
  const errors: string[] = [];
  let labels: LabelOverlay | null = null;
  let loadedAnything = false;
  for (const file of files) {
    try {
      switch (sniffKind(file.name, file.text)) {
        case "web":
          parts.web.push(parseWebDocument(file.text));
          loadedAnything = true;
          break;
        case "gexf":
          parts.gexf.push(parseGexf(file.text));
          loadedAnything = true;
          break;
        case "corpus":
          parts.corpus.push(parseCorpusCsv(file.text));
          loadedAnything = true;
          break;
        case "labels":
          labels = parseLabelFile(file.text);
          break;
        default:
          throw new Error("unrecognized format (expected web JSON, GEXF, corpus CSV, or label CSV)");
      }
    } catch (error) {
      errors.push(`${file.name}: ${(error as Error).message}`);
    }
  }
  const dataset = loadedAnything
    ? buildDataset(parts)
    : emptyDataset();
  return { dataset, labels, errors };
}

export function presentCommunities(dataset: Dataset): Map<number, number> {
  const sizes = new Map<number, number>();
  for (const node of dataset.nodes) {
    if (node.community !== null) {
      sizes.set(node.community, (sizes.get(node.community) ?? 0) + 1);
    }
  }
  return sizes;
}
