/** Parser for exported GEXF graphs. */

import { GraphEdge, GraphNode } from "./types.js";
import { descendants, parseXml, XmlElement } from "./xml.js";

export interface GexfData {
  nodes: GraphNode[];
  edges: GraphEdge[];
}

function parseBool(value: string): boolean {
  return value === "true" || value === "1";
}

function attr(element: XmlElement, name: string): string | null {
  return element.attributes.get(name) ?? null;
}

export function parseGexf(text: string): GexfData {
  let root: XmlElement;
  try {
    root = parseXml(text);
  } catch (error) {
    throw new Error(`not well-formed XML (${(error as Error).message})`);
  }
  if (root.name !== "gexf") {
    throw new Error(`expected a <gexf> root element, found <${root.name}>`);
  }
  const graphs = descendants(root, "graph");
  if (graphs.length === 0) {
    throw new Error("no <graph> element");
  }
  const graph = graphs[0];

  // attribute declarations map ids to semantic names
  const attrNames = new Map<string, string>();
  for (const attribute of descendants(graph, "attribute")) {
    const id = attr(attribute, "id");
    const title = attr(attribute, "title");
    if (id !== null && title !== null) {
      attrNames.set(id, title);
    }
  }

  const nodes: GraphNode[] = [];
  for (const element of descendants(graph, "node")) {
    const doi = attr(element, "id");
    if (doi === null || doi === "") {
      throw new Error("<node> without an id attribute");
    }
    const values = new Map<string, string>();
    for (const attvalue of descendants(element, "attvalue")) {
      const ref = attr(attvalue, "for");
      const value = attr(attvalue, "value");
      if (ref === null || value === null) continue;
      values.set(attrNames.get(ref) ?? ref, value);
    }
    const year = values.get("year");
    const depth = values.get("depth");
    const degree = values.get("total_degree");
    const community = values.get("community");
    // the writer sets label to the DOI when there is no title, so only
    // the title attvalue is trustworthy here
    nodes.push({
      doi,
      title: values.get("title") ?? null,
      authors: [],
      year: year === undefined ? null : parseInt(year, 10),
      url: null,
      subjects: [],
      references: [],
      depth: depth === undefined ? null : parseInt(depth, 10),
      degree: degree === undefined ? 0 : parseInt(degree, 10),
      community: community === undefined ? null : parseInt(community, 10),
      resolved: parseBool(values.get("resolved") ?? "true"),
    });
  }

  const known = new Set(nodes.map((node) => node.doi));
  const edges: GraphEdge[] = [];
  for (const element of descendants(graph, "edge")) {
    const source = attr(element, "source");
    const target = attr(element, "target");
    if (source === null || target === null) {
      throw new Error("<edge> without source/target attributes");
    }
    if (!known.has(source) || !known.has(target)) {
      throw new Error(`<edge> endpoint ${source} -> ${target} has no node`);
    }
    edges.push({ source, target });
  }
  return { nodes, edges };
}
