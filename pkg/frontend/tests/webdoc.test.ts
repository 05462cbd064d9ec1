import { readFileSync } from "node:fs";

import { describe, expect, it } from "vitest";

import { parseWebDocument } from "../src/webdoc.js";

const FIXTURE = readFileSync(new URL("./fixtures/web_data.json", import.meta.url), "utf-8");

describe("parseWebDocument", () => {
  it("loads the fixture document", () => {
    const data = parseWebDocument(FIXTURE);
    expect(data.nodes).toHaveLength(12);
    expect(data.edges).toHaveLength(15);
    expect(data.meta.schema_version).toBe(1);
  });

  it("maps node fields", () => {
    const data = parseWebDocument(FIXTURE);
    const alpha = data.nodes.find((n) => n.doi === "10.5000/alpha")!;
    expect(alpha.title).toBe("Adaptive projection mapping for deforming surfaces");
    expect(alpha.authors).toEqual(["Rin Sato", "Tomo Ito"]);
    expect(alpha.year).toBe(2015);
    expect(alpha.degree).toBe(5);
    expect(alpha.community).toBe(0);
    expect(alpha.resolved).toBe(true);
    const kilo = data.nodes.find((n) => n.doi === "10.5000/kilo")!;
    expect(kilo.title).toBeNull();
    expect(kilo.year).toBeNull();
    expect(kilo.resolved).toBe(false);
    expect(kilo.depth).toBe(2);
  });

  it("rejects non-json input with context", () => {
    expect(() => parseWebDocument("{oops")).toThrow(/not valid JSON/);
  });

  it("rejects an unsupported schema version", () => {
    const doc = { meta: { schema_version: 99 }, nodes: [], edges: [] };
    expect(() => parseWebDocument(JSON.stringify(doc))).toThrow(/schema_version/);
  });

  it("rejects nodes without an id", () => {
    const doc = {
      meta: { schema_version: 1 },
      nodes: [{ title: "x" }],
      edges: [],
    };
    expect(() => parseWebDocument(JSON.stringify(doc))).toThrow(/nodes\[0\]\.id/);
  });

  it("rejects edges pointing at missing nodes", () => {
    const doc = {
      meta: { schema_version: 1 },
      nodes: [],
      edges: [{ source: "10.1/a", target: "10.1/b" }],
    };
    expect(() => parseWebDocument(JSON.stringify(doc))).toThrow(/edges\[0\]/);
  });
});
