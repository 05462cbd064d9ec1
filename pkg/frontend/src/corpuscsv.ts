/** Parser for exported corpus CSV tables. */

import { parseCsv } from "./csv.js";
import { GraphNode } from "./types.js";

export const CORPUS_HEADER = [
  "doi",
  "title",
  "authors",
  "year",
  "url",
  "subjects",
  "references",
  "depth",
  "resolved",
] as const;

export const LIST_SEPARATOR = "|";

function splitList(cell: string): string[] {
  return cell.split(LIST_SEPARATOR).filter((part) => part !== "");
}

function parseIntCell(cell: string, context: string): number | null {
  if (cell === "") return null;
  if (!/^-?\d+$/.test(cell)) {
    throw new Error(`${context}: expected an integer, got ${JSON.stringify(cell)}`);
  }
  return parseInt(cell, 10);
}

export function parseCorpusCsv(text: string): GraphNode[] {
  const rows = parseCsv(text);
  if (rows.length === 0) {
    throw new Error("empty file");
  }
  const header = rows[0].map((cell) => cell.trim());
  const index = new Map(header.map((name, i) => [name, i]));
  for (const column of CORPUS_HEADER) {
    if (!index.has(column)) {
      throw new Error(`missing column ${JSON.stringify(column)} in header`);
    }
  }
  const nodes: GraphNode[] = [];
  rows.slice(1).forEach((row, i) => {
    if (row.every((cell) => cell.trim() === "")) return;
    const cell = (column: string) => {
      const at = index.get(column);
      return at === undefined || at >= row.length ? "" : row[at];
    };
    const doi = cell("doi").trim();
    if (doi === "") {
      throw new Error(`row ${i + 1}: empty doi`);
    }
    nodes.push({
      doi,
      title: cell("title") || null,
      authors: splitList(cell("authors")),
      year: parseIntCell(cell("year").trim(), `row ${i + 1} year`),
      url: cell("url") || null,
      subjects: splitList(cell("subjects")),
      references: splitList(cell("references")),
      depth: parseIntCell(cell("depth").trim(), `row ${i + 1} depth`),
      degree: 0,
      community: null,
      resolved: cell("resolved").trim() !== "false",
    });
  });
  return nodes;
}
