/** Parser for the exported web document (meta + nodes + edges JSON). */

import { GraphEdge, GraphNode } from "./types.js";

export const SUPPORTED_SCHEMA_VERSION = 1;

export interface WebDocumentData {
  meta: Record<string, unknown>;
  nodes: GraphNode[];
  edges: GraphEdge[];
}

function asObject(value: unknown, context: string): Record<string, unknown> {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    throw new Error(`${context}: expected an object`);
  }
  return value as Record<string, unknown>;
}

function asArray(value: unknown, context: string): unknown[] {
  if (!Array.isArray(value)) {
    throw new Error(`${context}: expected an array`);
  }
  return value;
}

function optionalString(value: unknown, context: string): string | null {
  if (value === null || value === undefined) return null;
  if (typeof value !== "string") throw new Error(`${context}: expected a string`);
  return value;
}

function requiredString(value: unknown, context: string): string {
  const text = optionalString(value, context);
  if (text === null || text === "") throw new Error(`${context}: missing value`);
  return text;
}

function optionalInt(value: unknown, context: string): number | null {
  if (value === null || value === undefined) return null;
  if (typeof value !== "number" || !Number.isInteger(value)) {
    throw new Error(`${context}: expected an integer`);
  }
  return value;
}

function stringList(value: unknown, context: string): string[] {
  if (value === null || value === undefined) return [];
  return asArray(value, context).map((item, i) =>
    requiredString(item, `${context}[${i}]`)
  );
}

export function parseWebDocument(text: string): WebDocumentData {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (error) {
    throw new Error(`not valid JSON (${(error as Error).message})`);
  }
  const document = asObject(raw, "document");
  const meta = asObject(document.meta, "meta");
  const version = meta.schema_version;
  if (version !== SUPPORTED_SCHEMA_VERSION) {
    throw new Error(
      `meta.schema_version: expected ${SUPPORTED_SCHEMA_VERSION}, got ${String(version)}`
    );
  }
  const nodes: GraphNode[] = asArray(document.nodes, "nodes").map((item, i) => {
    const node = asObject(item, `nodes[${i}]`);
    const doi = requiredString(node.id, `nodes[${i}].id`);
    const degree = optionalInt(node.degree, `nodes[${i}].degree`);
    return {
      doi,
      title: optionalString(node.title, `nodes[${i}].title`),
      authors: stringList(node.authors, `nodes[${i}].authors`),
      year: optionalInt(node.year, `nodes[${i}].year`),
      url: optionalString(node.url, `nodes[${i}].url`),
      subjects: stringList(node.subjects, `nodes[${i}].subjects`),
      references: [],
      depth: optionalInt(node.depth, `nodes[${i}].depth`),
      degree: degree ?? 0,
      community: optionalInt(node.community, `nodes[${i}].community`),
      resolved: node.resolved !== false,
    };
  });
  const known = new Set(nodes.map((node) => node.doi));
  const edges: GraphEdge[] = asArray(document.edges, "edges").map((item, i) => {
    const edge = asObject(item, `edges[${i}]`);
    const source = requiredString(edge.source, `edges[${i}].source`);
    const target = requiredString(edge.target, `edges[${i}].target`);
    for (const endpoint of [source, target]) {
      if (!known.has(endpoint)) {
        throw new Error(`edges[${i}]: endpoint ${endpoint} has no node`);
      }
    }
    return { source, target };
  });
  return { meta, nodes, edges };
}
