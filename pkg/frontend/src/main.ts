/** App bootstrap: fetch scenes from the local server, render the three
 * linked views plus context strip, and embed the 3D panel when available.
 */

import { drawViewModel, wireContextBrush, wireRowReorder } from "./dom.js";
import type { GlyphPayload, SceneDocument } from "./scene.js";
import { parseSceneDocument } from "./scene.js";
import type { UiEvent, UiState } from "./state.js";
import { initialState, reduce } from "./state.js";
import type { ColoringDoc } from "./structure.js";
import { chainOf, colorByResidue, dbrefOffset, positionToResidue } from "./structure.js";
import { contextViewModel, distributionViewModel, rowViewModel } from "./viewmodel.js";

declare global {
  interface Window {
    $3Dmol?: any;
  }
}

interface App {
  doc: SceneDocument;
  state: UiState;
  events: UiEvent[];
  coloring: ColoringDoc | null;
  structureText: string | null;
  viewer: any | null;
  offset: number;
}

let app: App | null = null;

function $(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

function svgOf(id: string): SVGSVGElement {
  return $(id) as unknown as SVGSVGElement;
}

function banner(message: string | null): void {
  const node = $("banner");
  node.textContent = message ?? "";
  node.style.display = message ? "block" : "none";
}

function dispatch(event: UiEvent): void {
  if (!app) return;
  app.events.push(event);
  app.state = reduce(app.state, event);
  if (event.type === "brush") {
    const { start, end } = app.state.window;
    history.replaceState(null, "", `#${app.state.accession}/${start}:${end}`);
  }
  render();
}

function parseHash(): { accession: string | null; window: [number, number] | null } {
  const match = /^#([^/]+)(?:\/(\d+):(\d+))?/.exec(location.hash);
  if (!match) return { accession: null, window: null };
  return {
    accession: decodeURIComponent(match[1]),
    window: match[2] ? [Number(match[2]), Number(match[3])] : null,
  };
}

function render(): void {
  if (!app) return;
  const { doc, state } = app;
  $("window-label").textContent =
    `${state.accession}  [${state.window.start}:${state.window.end}] of ${state.length}`;

  const hover = { onHover: (payload: GlyphPayload | null) => onHover(payload) };
  drawViewModel(svgOf("view-distribution"), distributionViewModel(doc.views.distribution, state.window), hover);
  drawViewModel(svgOf("view-classification"), rowViewModel(doc.views.classification, state.window, state.rowOrders.classification), hover);
  drawViewModel(svgOf("view-types"), rowViewModel(doc.views.types, state.window, state.rowOrders.types), hover);
  drawViewModel(svgOf("context"), contextViewModel(doc.context, state.window), hover);
}

function onHover(payload: GlyphPayload | null): void {
  if (!app) return;
  app.events.push({ type: "hover", payload });
  app.state = reduce(app.state, { type: "hover", payload });
  const tip = $("tooltip");
  if (!payload) {
    tip.style.display = "none";
    clearStructureHighlight();
    return;
  }
  const parts = [];
  if (payload.row) parts.push(payload.row);
  if (payload.position != null) parts.push(`position ${payload.position}`);
  if (payload.record_index != null) parts.push(`record #${payload.record_index}`);
  tip.textContent = parts.join(" · ");
  tip.style.display = "block";
  if (payload.position != null) highlightResidue(payload.position);
}

// -- 3D panel -----------------------------------------------------------------

function clearStructureHighlight(): void {
  if (!app?.viewer || !app.coloring) return;
  applyColors();
  app.viewer.render();
}

function highlightResidue(position: number): void {
  if (!app?.viewer || !app.coloring) return;
  const resi = positionToResidue(position, app.offset);
  const chain = chainOf(app.coloring);
  app.viewer.setStyle(
    { chain, resi },
    { cartoon: { color: "#FFD700" }, stick: { color: "#FFD700" } },
  );
  app.viewer.render();
}

function applyColors(): void {
  if (!app?.viewer || !app.coloring) return;
  const colors = colorByResidue(app.coloring);
  const chain = chainOf(app.coloring);
  app.viewer.setStyle({}, { cartoon: { color: "#DDDDDD" } });
  for (const [resi, color] of colors) {
    app.viewer.setStyle({ chain, resi }, { cartoon: { color } });
  }
}

async function loadStructurePanel(accession: string): Promise<void> {
  const notice = $("structure-notice");
  const panel = $("structure-panel");
  panel.style.display = "none";
  if (!app) return;
  try {
    const [coloringResponse, structureResponse] = await Promise.all([
      fetch(`/data/${accession}.coloring.json`),
      fetch(`/data/${accession}.structure.pdb`),
    ]);
    if (!coloringResponse.ok || !structureResponse.ok) {
      notice.textContent = "No 3D structure available for this accession.";
      return;
    }
    app.coloring = (await coloringResponse.json()) as ColoringDoc;
    app.structureText = await structureResponse.text();
    app.offset = dbrefOffset(app.structureText, chainOf(app.coloring), accession);

    await ensure3Dmol();
    if (!window.$3Dmol) {
      notice.textContent = "3D viewer library unavailable; 2D views remain fully functional.";
      return;
    }
    panel.style.display = "block";
    notice.textContent = `${app.coloring.source_id} chain ${chainOf(app.coloring)}`;
    app.viewer = window.$3Dmol.createViewer(panel, { backgroundColor: "#111111" });
    app.viewer.addModel(app.structureText, "pdb");
    applyColors();
    const viewer = app.viewer;
    viewer.setHoverable({}, true,
      (atom: any) => {
        if (atom?.resi != null && app) {
          onHover({ row: null, position: atom.resi - app.offset, record_index: null });
        }
      },
      () => onHover(null),
    );
    viewer.zoomTo();
    viewer.render();
  } catch (error) {
    notice.textContent = `3D panel disabled: ${String(error)}`;
  }
}

function ensure3Dmol(): Promise<void> {
  if (window.$3Dmol) return Promise.resolve();
  return new Promise((resolve) => {
    const script = document.createElement("script");
    script.src = "https://cdn.jsdelivr.net/npm/3dmol@2/build/3Dmol-min.js";
    script.onload = () => resolve();
    script.onerror = () => resolve(); // degrade gracefully
    document.head.appendChild(script);
  });
}

// -- loading ------------------------------------------------------------------

async function loadAccession(accession: string, windowFromHash: [number, number] | null): Promise<void> {
  banner(null);
  const response = await fetch(`/data/${accession}.scene.json`);
  if (!response.ok) {
    banner(`Failed to load scene for ${accession} (HTTP ${response.status}).`);
    return;
  }
  let doc: SceneDocument;
  try {
    doc = parseSceneDocument(await response.json());
  } catch (error) {
    banner(String(error)); // no partial render on schema mismatch
    return;
  }
  app = {
    doc,
    state: initialState(doc),
    events: [{ type: "loaded", accession: doc.accession, length: doc.L, orders: doc.orders }],
    coloring: null,
    structureText: null,
    viewer: null,
    offset: 0,
  };
  if (windowFromHash) {
    dispatch({ type: "brush", start: windowFromHash[0], end: windowFromHash[1] });
  }
  render();
  wireInteractions();
  void loadStructurePanel(accession);
}

function wireInteractions(): void {
  if (!app) return;
  const doc = app.doc;
  wireContextBrush(
    svgOf("context"),
    doc.context,
    () => app!.state.window,
    { onBrush: (start, end) => dispatch({ type: "brush", start, end }) },
  );
  wireRowReorder(
    svgOf("view-classification"), "classification", doc.views.classification,
    () => app!.state.rowOrders.classification.length,
    { onReorder: (view, from, to) => dispatch({ type: "reorder", view, from, to }) },
  );
  wireRowReorder(
    svgOf("view-types"), "types", doc.views.types,
    () => app!.state.rowOrders.types.length,
    { onReorder: (view, from, to) => dispatch({ type: "reorder", view, from, to }) },
  );
}

async function boot(): Promise<void> {
  const response = await fetch("/api/scenes");
  const accessions = (await response.json()) as string[];
  const select = $("accession-select") as HTMLSelectElement;
  select.replaceChildren(
    ...accessions.map((accession) => new Option(accession, accession)),
  );
  const fromHash = parseHash();
  const accession = fromHash.accession && accessions.includes(fromHash.accession)
    ? fromHash.accession
    : accessions[0];
  if (!accession) {
    banner("No scenes found; run the render pipeline first.");
    return;
  }
  select.value = accession;
  select.addEventListener("change", () => {
    history.replaceState(null, "", `#${select.value}`);
    void loadAccession(select.value, null);
  });
  await loadAccession(accession, fromHash.window);
}

if (typeof document !== "undefined" && document.getElementById("accession-select")) {
  void boot();
}
