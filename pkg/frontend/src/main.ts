/** Browser wiring: state, event handlers, table and canvas updates. */

import { emptyDataset, LoadedFile, loadFiles, presentCommunities } from "./dataset.js";
import { exportFilteredCsv } from "./exportcsv.js";
import { neighborsOf, visibleEdges, visibleNodes } from "./filter.js";
import { labelFor, setLabel, writeLabelFile } from "./labels.js";
import { computeLayout, LayoutPoint, layoutSteps } from "./layout.js";
import {
  communityColor,
  drawGraph,
  hitTest,
  MAX_RENDERED_NODES,
  selectRenderNodes,
  ViewTransform,
} from "./render.js";
import { Dataset, emptyFilters, GraphNode, LabelOverlay } from "./types.js";

const state = {
  dataset: emptyDataset() as Dataset,
  labels: new Map() as LabelOverlay,
  filters: emptyFilters(),
  selected: null as string | null,
  positions: new Map<string, LayoutPoint>(),
  transform: { x: 0, y: 0, scale: 1 } as ViewTransform,
  layoutRun: 0,
};

function element<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

const fileInput = element<HTMLInputElement>("file-input");
const sampleButton = element<HTMLButtonElement>("sample-button");
const loadSummary = element<HTMLSpanElement>("load-summary");
const errorBanner = element<HTMLDivElement>("error-banner");
const searchBox = element<HTMLInputElement>("search");
const yearMinBox = element<HTMLInputElement>("year-min");
const yearMaxBox = element<HTMLInputElement>("year-max");
const depthMaxBox = element<HTMLInputElement>("depth-max");
const minDegreeBox = element<HTMLInputElement>("min-degree");
const resultCount = element<HTMLParagraphElement>("result-count");
const exportCsvButton = element<HTMLButtonElement>("export-csv");
const communityTable = element<HTMLTableElement>("community-table");
const labelCommunity = element<HTMLSelectElement>("label-community");
const labelText = element<HTMLInputElement>("label-text");
const labelColor = element<HTMLInputElement>("label-color");
const labelApply = element<HTMLButtonElement>("label-apply");
const labelError = element<HTMLParagraphElement>("label-error");
const exportLabelsButton = element<HTMLButtonElement>("export-labels");
const inspector = element<HTMLElement>("inspector");
const inspectorFields = element<HTMLDListElement>("inspector-fields");
const inspectorOutgoing = element<HTMLUListElement>("inspector-outgoing");
const inspectorIncoming = element<HTMLUListElement>("inspector-incoming");
const viewNotice = element<HTMLDivElement>("view-notice");
const canvas = element<HTMLCanvasElement>("graph-canvas");
const resultsBody = element<HTMLTableSectionElement>("results-table")
  .getElementsByTagName("tbody")[0];
const context = canvas.getContext("2d");

function showErrors(errors: string[]): void {
  errorBanner.hidden = errors.length === 0;
  errorBanner.textContent = errors.join("\n");
}

function download(fileName: string, text: string, mime: string): void {
  const blob = new Blob([text], { type: mime });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = fileName;
  anchor.click();
  URL.revokeObjectURL(url);
}

function intOrNull(raw: string): number | null {
  const trimmed = raw.trim();
  if (trimmed === "") return null;
  const value = parseInt(trimmed, 10);
  return Number.isNaN(value) ? null : value;
}

function readFilters(): void {
  state.filters = {
    query: searchBox.value,
    yearMin: intOrNull(yearMinBox.value),
    yearMax: intOrNull(yearMaxBox.value),
    depthMax: intOrNull(depthMaxBox.value),
    minDegree: intOrNull(minDegreeBox.value),
  };
}

function renderTable(visible: GraphNode[]): void {
  resultsBody.textContent = "";
  for (const node of visible) {
    const row = document.createElement("tr");
    row.dataset.doi = node.doi;
    if (node.doi === state.selected) row.classList.add("selected");
    const communityCell =
      node.community === null
        ? ""
        : `${node.community} (${labelFor(state.labels, node.community)})`;
    const cells = [
      node.doi,
      node.title ?? "(unresolved)",
      node.year === null ? "" : String(node.year),
      node.depth === null ? "" : String(node.depth),
      String(node.degree),
      communityCell,
    ];
    for (const text of cells) {
      const cell = document.createElement("td");
      cell.textContent = text;
      row.appendChild(cell);
    }
    row.addEventListener("click", () => {
      state.selected = node.doi;
      update();
    });
    resultsBody.appendChild(row);
  }
}

function renderCommunities(): void {
  const sizes = presentCommunities(state.dataset);
  const body = communityTable.getElementsByTagName("tbody")[0];
  body.textContent = "";
  const ordered = Array.from(sizes.entries()).sort(
    (a, b) => b[1] - a[1] || a[0] - b[0]
  );
  for (const [id, size] of ordered) {
    const row = document.createElement("tr");
    const idCell = document.createElement("td");
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.background = communityColor(id, state.labels);
    idCell.appendChild(swatch);
    idCell.appendChild(document.createTextNode(String(id)));
    const labelCell = document.createElement("td");
    labelCell.textContent = labelFor(state.labels, id);
    const sizeCell = document.createElement("td");
    sizeCell.textContent = String(size);
    row.append(idCell, labelCell, sizeCell);
    body.appendChild(row);
  }
  const current = labelCommunity.value;
  labelCommunity.textContent = "";
  for (const [id] of ordered) {
    const option = document.createElement("option");
    option.value = String(id);
    option.textContent = `${id}: ${labelFor(state.labels, id)}`;
    labelCommunity.appendChild(option);
  }
  if (current !== "" && sizes.has(parseInt(current, 10))) {
    labelCommunity.value = current;
  }
}

function renderInspector(): void {
  const node = state.selected
    ? state.dataset.byDoi.get(state.selected)
    : undefined;
  inspector.hidden = node === undefined;
  if (!node) return;
  inspectorFields.textContent = "";
  const fields: [string, string][] = [
    ["doi", node.doi],
    ["title", node.title ?? "(unresolved)"],
    ["authors", node.authors.join(", ")],
    ["year", node.year === null ? "" : String(node.year)],
    ["url", node.url ?? ""],
    ["subjects", node.subjects.join(", ")],
    ["depth", node.depth === null ? "" : String(node.depth)],
    ["degree", String(node.degree)],
    [
      "community",
      node.community === null
        ? ""
        : `${node.community} (${labelFor(state.labels, node.community)})`,
    ],
    ["resolved", node.resolved ? "yes" : "no"],
  ];
  for (const [name, value] of fields) {
    const term = document.createElement("dt");
    term.textContent = name;
    const detail = document.createElement("dd");
    detail.textContent = value;
    inspectorFields.append(term, detail);
  }
  const { outgoing, incoming } = neighborsOf(state.dataset, node.doi);
  const fill = (list: HTMLUListElement, dois: string[]) => {
    list.textContent = "";
    for (const doi of dois) {
      const item = document.createElement("li");
      const neighbor = state.dataset.byDoi.get(doi);
      item.textContent = neighbor?.title ? `${neighbor.title} (${doi})` : doi;
      list.appendChild(item);
    }
    if (dois.length === 0) {
      const item = document.createElement("li");
      item.textContent = "(none)";
      list.appendChild(item);
    }
  };
  fill(inspectorOutgoing, outgoing);
  fill(inspectorIncoming, incoming);
}

function startLayout(visible: GraphNode[]): void {
  const { nodes, truncated } = selectRenderNodes(visible);
  viewNotice.hidden = !truncated;
  if (truncated) {
    viewNotice.textContent =
      `showing the ${MAX_RENDERED_NODES} highest-degree of ` +
      `${visible.length} nodes; the table below is complete`;
  }
  const edges = visibleEdges(state.dataset, nodes);
  const run = ++state.layoutRun;
  if (nodes.length > 300) {
    // chunked stepping keeps the page responsive on larger graphs
    const steps = layoutSteps(nodes, edges, {
      seed: 7,
      width: canvas.width,
      height: canvas.height,
    });
    const tick = () => {
      if (run !== state.layoutRun) return;
      const next = steps.next();
      state.positions = next.done ? next.value : next.value;
      draw(nodes, edges);
      if (!next.done) requestAnimationFrame(tick);
    };
    requestAnimationFrame(tick);
  } else {
    state.positions = computeLayout(nodes, edges, {
      seed: 7,
      width: canvas.width,
      height: canvas.height,
    });
    draw(nodes, edges);
  }
}

let drawnNodes: GraphNode[] = [];
let drawnEdges: ReturnType<typeof visibleEdges> = [];

function draw(nodes?: GraphNode[], edges?: ReturnType<typeof visibleEdges>): void {
  if (nodes) drawnNodes = nodes;
  if (edges) drawnEdges = edges;
  if (!context) return;
  drawGraph(
    context,
    drawnNodes,
    drawnEdges,
    state.positions,
    state.transform,
    state.selected,
    state.labels
  );
}

function update(relayout = false): void {
  readFilters();
  const visible = visibleNodes(state.dataset, state.filters);
  resultCount.textContent = `${visible.length} of ${state.dataset.nodes.length} articles`;
  loadSummary.textContent =
    state.dataset.nodes.length === 0
      ? ""
      : `${state.dataset.nodes.length} nodes, ${state.dataset.edges.length} edges loaded`;
  renderTable(visible);
  renderCommunities();
  renderInspector();
  if (relayout) {
    startLayout(visible);
  } else {
    const { nodes } = selectRenderNodes(visible);
    draw(nodes, visibleEdges(state.dataset, nodes));
  }
}

async function openFiles(files: File[]): Promise<void> {
  const loaded: LoadedFile[] = [];
  for (const file of files) {
    loaded.push({ name: file.name, text: await file.text() });
  }
  applyLoad(loaded);
}

function applyLoad(files: LoadedFile[]): void {
  const result = loadFiles(files);
  showErrors(result.errors);
  if (result.dataset.nodes.length > 0) {
    state.dataset = result.dataset;
    state.selected = null;
    state.transform = { x: 0, y: 0, scale: 1 };
  }
  if (result.labels !== null) {
    state.labels = result.labels;
  }
  update(true);
}

fileInput.addEventListener("change", () => {
  if (fileInput.files) void openFiles(Array.from(fileInput.files));
  fileInput.value = "";
});

sampleButton.addEventListener("click", () => {
  // the bundled dataset is only ever fetched on this explicit click
  fetch("./data/sample/web_data.json")
    .then((response) => {
      if (!response.ok) throw new Error(`HTTP ${response.status}`);
      return response.text();
    })
    .then((text) => applyLoad([{ name: "web_data.json", text }]))
    .catch((error) => showErrors([`bundled sample: ${String(error)}`]));
});

for (const box of [searchBox, yearMinBox, yearMaxBox, depthMaxBox, minDegreeBox]) {
  box.addEventListener("input", () => update(true));
}

exportCsvButton.addEventListener("click", () => {
  const visible = visibleNodes(state.dataset, state.filters);
  download("filtered_corpus.csv", exportFilteredCsv(visible), "text/csv");
});

labelApply.addEventListener("click", () => {
  labelError.hidden = true;
  const id = parseInt(labelCommunity.value, 10);
  try {
    setLabel(
      state.labels,
      new Set(presentCommunities(state.dataset).keys()),
      id,
      labelText.value,
      labelColor.value.trim() || null
    );
  } catch (error) {
    labelError.hidden = false;
    labelError.textContent = (error as Error).message;
    return;
  }
  labelText.value = "";
  update();
});

exportLabelsButton.addEventListener("click", () => {
  download("community_labels.csv", writeLabelFile(state.labels), "text/csv");
});

let dragging = false;
let dragStart = { x: 0, y: 0 };
let dragOrigin = { x: 0, y: 0 };
let dragMoved = false;

canvas.addEventListener("mousedown", (event) => {
  dragging = true;
  dragMoved = false;
  dragStart = { x: event.offsetX, y: event.offsetY };
  dragOrigin = { x: state.transform.x, y: state.transform.y };
});

canvas.addEventListener("mousemove", (event) => {
  if (!dragging) return;
  const dx = event.offsetX - dragStart.x;
  const dy = event.offsetY - dragStart.y;
  if (Math.abs(dx) + Math.abs(dy) > 3) dragMoved = true;
  state.transform.x = dragOrigin.x + dx;
  state.transform.y = dragOrigin.y + dy;
  draw();
});

window.addEventListener("mouseup", (event) => {
  if (!dragging) return;
  dragging = false;
  if (!dragMoved && event.target === canvas) {
    const hit = hitTest(
      drawnNodes,
      state.positions,
      state.transform,
      (event as MouseEvent).offsetX,
      (event as MouseEvent).offsetY
    );
    state.selected = hit;
    update();
  }
});

canvas.addEventListener("wheel", (event) => {
  event.preventDefault();
  const factor = event.deltaY < 0 ? 1.1 : 1 / 1.1;
  const next = Math.min(Math.max(state.transform.scale * factor, 0.1), 10);
  const ratio = next / state.transform.scale;
  // keep the point under the cursor fixed while zooming
  state.transform.x = event.offsetX - (event.offsetX - state.transform.x) * ratio;
  state.transform.y = event.offsetY - (event.offsetY - state.transform.y) * ratio;
  state.transform.scale = next;
  draw();
});

update();
