/** Seeded force-directed layout, computed in resumable steps. */

import { GraphEdge, GraphNode } from "./types.js";

export interface LayoutPoint {
  x: number;
  y: number;
}

export interface LayoutOptions {
  seed?: number;
  iterations?: number;
  width?: number;
  height?: number;
}

/** Small deterministic PRNG (Mulberry32). */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/**
 * Fruchterman-Reingold style layout. Yields after every iteration so the
 * caller can redraw and keep handling input between steps.
 */
export function* layoutSteps(
  nodes: GraphNode[],
  edges: GraphEdge[],
  options: LayoutOptions = {}
): Generator<Map<string, LayoutPoint>, Map<string, LayoutPoint>> {
  const width = options.width ?? 1000;
  const height = options.height ?? 1000;
  const iterations = options.iterations ?? 120;
  const rng = mulberry32(options.seed ?? 1);

  const positions = new Map<string, LayoutPoint>();
  for (const node of nodes) {
    positions.set(node.doi, {
      x: (0.1 + 0.8 * rng()) * width,
      y: (0.1 + 0.8 * rng()) * height,
    });
  }
  if (nodes.length === 0) {
    return positions;
  }

  const index = new Map(nodes.map((node, i) => [node.doi, i]));
  const springEdges = edges
    .filter((edge) => index.has(edge.source) && index.has(edge.target))
    .map((edge) => [index.get(edge.source)!, index.get(edge.target)!] as const);
  const points = nodes.map((node) => positions.get(node.doi)!);
  const k = Math.sqrt((width * height) / nodes.length);
  let temperature = width / 10;
  const cooling = temperature / (iterations + 1);

  for (let step = 0; step < iterations; step++) {
    const dx = new Float64Array(nodes.length);
    const dy = new Float64Array(nodes.length);
    for (let i = 0; i < points.length; i++) {
      for (let j = i + 1; j < points.length; j++) {
        let vx = points[i].x - points[j].x;
        let vy = points[i].y - points[j].y;
        let distance = Math.hypot(vx, vy);
        if (distance < 1e-9) {
          // deterministic nudge for coincident points
          vx = 0.01 * (1 + ((i * 31 + j) % 7));
          vy = 0.01 * (1 + ((i * 17 + j) % 5));
          distance = Math.hypot(vx, vy);
        }
        const repulsion = (k * k) / distance;
        dx[i] += (vx / distance) * repulsion;
        dy[i] += (vy / distance) * repulsion;
        dx[j] -= (vx / distance) * repulsion;
        dy[j] -= (vy / distance) * repulsion;
      }
    }
    for (const [a, b] of springEdges) {
      const vx = points[a].x - points[b].x;
      const vy = points[a].y - points[b].y;
      const distance = Math.max(Math.hypot(vx, vy), 1e-9);
      const attraction = (distance * distance) / k;
      dx[a] -= (vx / distance) * attraction;
      dy[a] -= (vy / distance) * attraction;
      dx[b] += (vx / distance) * attraction;
      dy[b] += (vy / distance) * attraction;
    }
    for (let i = 0; i < points.length; i++) {
      const length = Math.max(Math.hypot(dx[i], dy[i]), 1e-9);
      const limited = Math.min(length, temperature);
      points[i].x += (dx[i] / length) * limited;
      points[i].y += (dy[i] / length) * limited;
      points[i].x = Math.min(width, Math.max(0, points[i].x));
      points[i].y = Math.min(height, Math.max(0, points[i].y));
    }
    temperature = Math.max(temperature - cooling, 0.01);
    yield positions;
  }
  return positions;
}

/** Run the layout to completion (tests and small graphs). */
export function computeLayout(
  nodes: GraphNode[],
  edges: GraphEdge[],
  options: LayoutOptions = {}
): Map<string, LayoutPoint> {
  const steps = layoutSteps(nodes, edges, options);
  let result = steps.next();
  while (!result.done) {
    result = steps.next();
  }
  return result.value;
}
