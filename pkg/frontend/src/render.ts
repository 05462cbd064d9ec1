/** Canvas drawing: size encodes total degree, color encodes community. */

import { LayoutPoint } from "./layout.js";
import { GraphEdge, GraphNode, LabelOverlay } from "./types.js";

export const MAX_RENDERED_NODES = 5000;

export interface ViewTransform {
  x: number;
  y: number;
  scale: number;
}

export function communityColor(
  community: number | null,
  overlay?: LabelOverlay
): string {
  if (community === null) return "#9aa0a6";
  const hint = overlay?.get(community)?.colorHint;
  if (hint) return hint;
  const hue = (community * 137.508) % 360; // golden angle keeps ids distinct
  return `hsl(${hue.toFixed(1)}, 62%, 52%)`;
}

export function nodeRadius(degree: number): number {
  return 3 + 2 * Math.sqrt(Math.max(degree, 0));
}

/** Cap the drawn node set by degree; the table always stays complete. */
export function selectRenderNodes(visible: GraphNode[]): {
  nodes: GraphNode[];
  truncated: boolean;
} {
  if (visible.length <= MAX_RENDERED_NODES) {
    return { nodes: visible, truncated: false };
  }
  const top = [...visible]
    .sort((a, b) => b.degree - a.degree)
    .slice(0, MAX_RENDERED_NODES);
  return { nodes: top, truncated: true };
}

export function applyTransform(
  point: LayoutPoint,
  transform: ViewTransform
): LayoutPoint {
  return {
    x: point.x * transform.scale + transform.x,
    y: point.y * transform.scale + transform.y,
  };
}

export function drawGraph(
  ctx: CanvasRenderingContext2D,
  nodes: GraphNode[],
  edges: GraphEdge[],
  positions: Map<string, LayoutPoint>,
  transform: ViewTransform,
  selected: string | null,
  overlay?: LabelOverlay
): void {
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);

  ctx.strokeStyle = "rgba(110, 110, 110, 0.45)";
  ctx.lineWidth = 1;
  for (const edge of edges) {
    const from = positions.get(edge.source);
    const to = positions.get(edge.target);
    if (!from || !to) continue;
    const a = applyTransform(from, transform);
    const b = applyTransform(to, transform);
    ctx.beginPath();
    ctx.moveTo(a.x, a.y);
    ctx.lineTo(b.x, b.y);
    ctx.stroke();
  }

  for (const node of nodes) {
    const point = positions.get(node.doi);
    if (!point) continue;
    const at = applyTransform(point, transform);
    const radius = nodeRadius(node.degree) * transform.scale;
    ctx.beginPath();
    ctx.arc(at.x, at.y, Math.max(radius, 1.5), 0, 2 * Math.PI);
    ctx.fillStyle = communityColor(node.community, overlay);
    ctx.fill();
    if (!node.resolved) {
      ctx.strokeStyle = "#666";
      ctx.setLineDash([2, 2]);
      ctx.stroke();
      ctx.setLineDash([]);
    }
    if (node.doi === selected) {
      ctx.strokeStyle = "#111";
      ctx.lineWidth = 2;
      ctx.stroke();
      ctx.lineWidth = 1;
    }
  }
}

/** DOI of the topmost node within its radius of the canvas point. */
export function hitTest(
  nodes: GraphNode[],
  positions: Map<string, LayoutPoint>,
  transform: ViewTransform,
  x: number,
  y: number
): string | null {
  let found: string | null = null;
  for (const node of nodes) {
    const point = positions.get(node.doi);
    if (!point) continue;
    const at = applyTransform(point, transform);
    const radius = Math.max(nodeRadius(node.degree) * transform.scale, 4);
    const dx = at.x - x;
    const dy = at.y - y;
    if (dx * dx + dy * dy <= radius * radius) {
      found = node.doi; // later nodes draw on top, keep the last hit
    }
  }
  return found;
}
