/** CSV export of the visible node set, corpus-table compatible. */

import { CORPUS_HEADER, LIST_SEPARATOR } from "./corpuscsv.js";
import { toCsv } from "./csv.js";
import { compareStrings, GraphNode } from "./types.js";

export function exportFilteredCsv(visible: GraphNode[]): string {
  const rows: string[][] = [Array.from(CORPUS_HEADER)];
  const ordered = [...visible].sort((a, b) => compareStrings(a.doi, b.doi));
  for (const node of ordered) {
    rows.push([
      node.doi,
      node.title ?? "",
      node.authors.join(LIST_SEPARATOR),
      node.year === null ? "" : String(node.year),
      node.url ?? "",
      node.subjects.join(LIST_SEPARATOR),
      node.references.join(LIST_SEPARATOR),
      node.depth === null ? "" : String(node.depth),
      node.resolved ? "true" : "false",
    ]);
  }
  return toCsv(rows, true);
}
