import { describe, expect, it } from "vitest";

import {
  labelFor,
  parseLabelFile,
  setLabel,
  writeLabelFile,
} from "../src/labels.js";
import type { LabelOverlay } from "../src/types.js";

const KNOWN = new Set([0, 1, 2, 3]);

describe("parseLabelFile", () => {
  it("reads ids, labels, and color hints", () => {
    const overlay = parseLabelFile(
      "community_id,label,color_hint\n0,projection core,#ff8800\n2,sensing,\n",
    );
    expect(overlay.get(0)).toEqual({
      label: "projection core",
      colorHint: "#ff8800",
    });
    expect(overlay.get(2)).toEqual({ label: "sensing", colorHint: null });
  });

  it("accepts files without the color column", () => {
    const overlay = parseLabelFile("community_id,label\n1,tracking\n");
    expect(overlay.get(1)).toEqual({ label: "tracking", colorHint: null });
  });

  it("rejects a missing required column", () => {
    expect(() => parseLabelFile("community_id,color_hint\n0,#fff\n")).toThrow(
      /label/,
    );
  });

  it("rejects a non-integer id", () => {
    expect(() => parseLabelFile("community_id,label\nzero,core\n")).toThrow(
      /zero/,
    );
  });
});

describe("writeLabelFile", () => {
  it("writes ids in numeric order with minimal quoting", () => {
    const overlay: LabelOverlay = new Map([
      [10, { label: "outer ring", colorHint: null }],
      [2, { label: "sensing, tracking", colorHint: "#00aa55" }],
    ]);
    expect(writeLabelFile(overlay)).toBe(
      "community_id,label,color_hint\n" +
        '2,"sensing, tracking",#00aa55\n' +
        "10,outer ring,\n",
    );
  });

  it("round-trips through parseLabelFile", () => {
    const overlay: LabelOverlay = new Map([
      [0, { label: "core", colorHint: "#ff8800" }],
      [3, { label: "periphery", colorHint: null }],
    ]);
    expect(parseLabelFile(writeLabelFile(overlay))).toEqual(overlay);
  });
});

describe("setLabel", () => {
  it("stores trimmed labels for known communities", () => {
    const overlay: LabelOverlay = new Map();
    setLabel(overlay, KNOWN, 1, "  tracking  ", "#123456");
    expect(overlay.get(1)).toEqual({ label: "tracking", colorHint: "#123456" });
  });

  it("rejects a community the dataset does not contain", () => {
    const overlay: LabelOverlay = new Map();
    expect(() => setLabel(overlay, KNOWN, 99, "ghost")).toThrow(/99/);
    expect(overlay.size).toBe(0);
  });

  it("deletes the entry when the label is blank", () => {
    const overlay: LabelOverlay = new Map([
      [1, { label: "tracking", colorHint: null }],
    ]);
    setLabel(overlay, KNOWN, 1, "   ");
    expect(overlay.has(1)).toBe(false);
  });
});

describe("labelFor", () => {
  it("falls back to a generated name", () => {
    const overlay: LabelOverlay = new Map([
      [0, { label: "core", colorHint: null }],
    ]);
    expect(labelFor(overlay, 0)).toBe("core");
    expect(labelFor(overlay, 7)).toBe("C7");
  });
});
