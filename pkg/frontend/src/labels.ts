/** Community label overlay plus its CSV file format (CLI-compatible). */

import { parseCsv, toCsv } from "./csv.js";
import { LabelOverlay } from "./types.js";

export const LABEL_HEADER = ["community_id", "label", "color_hint"] as const;

export function parseLabelFile(text: string): LabelOverlay {
  const rows = parseCsv(text);
  if (rows.length === 0) {
    throw new Error("empty file");
  }
  const header = rows[0].map((cell) => cell.trim());
  const index = new Map(header.map((name, i) => [name, i]));
  for (const column of ["community_id", "label"]) {
    if (!index.has(column)) {
      throw new Error(`missing column ${JSON.stringify(column)} in header`);
    }
  }
  const overlay: LabelOverlay = new Map();
  rows.slice(1).forEach((row, i) => {
    if (row.every((cell) => cell.trim() === "")) return;
    const cell = (column: string) => {
      const at = index.get(column);
      return at === undefined || at >= row.length ? "" : row[at].trim();
    };
    const rawId = cell("community_id");
    if (!/^-?\d+$/.test(rawId)) {
      throw new Error(`row ${i + 1}: community_id must be an integer, got ${JSON.stringify(rawId)}`);
    }
    const label = cell("label");
    if (label === "") {
      throw new Error(`row ${i + 1}: empty label`);
    }
    overlay.set(parseInt(rawId, 10), {
      label,
      colorHint: cell("color_hint") || null,
    });
  });
  return overlay;
}

export function writeLabelFile(overlay: LabelOverlay): string {
  const rows: string[][] = [Array.from(LABEL_HEADER)];
  for (const id of Array.from(overlay.keys()).sort((a, b) => a - b)) {
    const edit = overlay.get(id)!;
    rows.push([String(id), edit.label, edit.colorHint ?? ""]);
  }
  return toCsv(rows);
}

/** Record one label edit; the community must exist in the loaded dataset. */
export function setLabel(
  overlay: LabelOverlay,
  knownCommunities: Set<number>,
  communityId: number,
  label: string,
  colorHint: string | null = null
): void {
  if (!knownCommunities.has(communityId)) {
    throw new Error(`community ${communityId} is not in the loaded dataset`);
  }
  const trimmed = label.trim();
  if (trimmed === "") {
    overlay.delete(communityId);
    return;
  }
  overlay.set(communityId, { label: trimmed, colorHint });
}

export function labelFor(overlay: LabelOverlay, communityId: number): string {
  return overlay.get(communityId)?.label ?? `C${communityId}`;
}
