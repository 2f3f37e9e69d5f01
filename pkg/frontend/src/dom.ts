/** Thin SVG DOM layer: drawing view models and wiring pointer gestures.
 * All state transitions go through the reducer; nothing is computed here.
 */

import type { GlyphPayload, SceneData } from "./scene.js";
import type { RowViewName } from "./state.js";
import type { ViewModel, VmGlyph } from "./viewmodel.js";
import { contextPositionAt, rowSlotAt } from "./viewmodel.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface Handlers {
  onHover(payload: GlyphPayload | null): void;
  onBrush(start: number, end: number): void;
  onReorder(view: RowViewName, from: number, to: number): void;
}

function el(name: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

function glyphNode(glyph: VmGlyph): SVGElement | null {
  switch (glyph.kind) {
    case "circle":
      return el("circle", {
        cx: String(glyph.x), cy: String(glyph.y), r: String(glyph.size / 2),
        fill: glyph.fillHex, "fill-opacity": String(glyph.opacity),
      });
    case "cross": {
      const h = glyph.size / 2;
      return el("path", {
        d: `M ${glyph.x - h} ${glyph.y - h} L ${glyph.x + h} ${glyph.y + h} ` +
          `M ${glyph.x + h} ${glyph.y - h} L ${glyph.x - h} ${glyph.y + h}`,
        stroke: glyph.fillHex, "stroke-width": "1.2", fill: "none",
      });
    }
    case "bar":
      return el("rect", {
        x: String(glyph.x - (glyph.w ?? 1) / 2), y: String(glyph.y),
        width: String(glyph.w ?? 1), height: String(Math.max(glyph.size, 0)),
        fill: glyph.fillHex,
      });
    case "window-overlay":
      return el("rect", {
        x: String(glyph.x), y: String(glyph.y),
        width: String(Math.max(glyph.w ?? 0, 1)), height: String(glyph.size),
        fill: glyph.fillHex, "fill-opacity": String(glyph.opacity),
        stroke: glyph.fillHex, class: "window-overlay",
      });
    case "axis-tick":
      return el("line", {
        x1: String(glyph.x), y1: String(glyph.y),
        x2: String(glyph.x), y2: String(glyph.y + glyph.size),
        stroke: glyph.fillHex,
      });
    case "label": {
      const anchor = glyph.payload && glyph.payload.position == null ? "end" : "middle";
      const node = el("text", {
        x: String(glyph.x), y: String(glyph.y + 3), "font-size": String(glyph.size),
        "text-anchor": anchor, fill: glyph.fillHex,
      });
      node.textContent = glyph.text ?? "";
      return node;
    }
    default:
      return null;
  }
}

export function drawViewModel(
  svg: SVGSVGElement,
  vm: ViewModel,
  handlers: Pick<Handlers, "onHover">,
): void {
  svg.replaceChildren();
  svg.setAttribute("viewBox", `0 0 ${vm.width} ${vm.height}`);
  svg.setAttribute("height", String(vm.height));
  for (const glyph of vm.glyphs) {
    const node = glyphNode(glyph);
    if (!node) continue;
    if (glyph.payload && (glyph.kind === "circle" || glyph.kind === "cross")) {
      const payload = glyph.payload;
      node.addEventListener("pointerenter", () => handlers.onHover(payload));
      node.addEventListener("pointerleave", () => handlers.onHover(null));
    }
    svg.appendChild(node);
  }
}

function pixelX(svg: SVGSVGElement, event: PointerEvent, width: number): number {
  const rect = svg.getBoundingClientRect();
  return ((event.clientX - rect.left) / rect.width) * width;
}

function pixelY(svg: SVGSVGElement, event: PointerEvent, height: number): number {
  const rect = svg.getBoundingClientRect();
  return ((event.clientY - rect.top) / rect.height) * height;
}

/** Drag to move/resize the focus overlay, or sweep a fresh window. */
export function wireContextBrush(
  svg: SVGSVGElement,
  scene: SceneData,
  currentWindow: () => { start: number; end: number },
  handlers: Pick<Handlers, "onBrush">,
): void {
  type Mode =
    | { kind: "new"; anchor: number }
    | { kind: "move"; grabOffset: number; span: number }
    | { kind: "resize-left" }
    | { kind: "resize-right" };
  let mode: Mode | null = null;

  const overlayEdges = () => {
    const win = currentWindow();
    const coord = scene.coord;
    return {
      left: coord.x0 + (win.start - coord.start) * coord.scale,
      right: coord.x0 + (win.end - coord.start) * coord.scale,
    };
  };

  svg.addEventListener("pointerdown", (event) => {
    const x = pixelX(svg, event, scene.width);
    const position = contextPositionAt(scene, x);
    const { left, right } = overlayEdges();
    const win = currentWindow();
    const grip = 8;
    if (Math.abs(x - left) <= grip) {
      mode = { kind: "resize-left" };
    } else if (Math.abs(x - right) <= grip) {
      mode = { kind: "resize-right" };
    } else if (x > left && x < right) {
      mode = { kind: "move", grabOffset: position - win.start, span: win.end - win.start };
    } else {
      mode = { kind: "new", anchor: position };
      handlers.onBrush(position, position);
    }
    svg.setPointerCapture(event.pointerId);
  });

  svg.addEventListener("pointermove", (event) => {
    if (!mode) return;
    const position = contextPositionAt(scene, pixelX(svg, event, scene.width));
    const win = currentWindow();
    switch (mode.kind) {
      case "new":
        handlers.onBrush(mode.anchor, position);
        break;
      case "move": {
        const start = position - mode.grabOffset;
        handlers.onBrush(start, start + mode.span);
        break;
      }
      case "resize-left":
        handlers.onBrush(position, win.end);
        break;
      case "resize-right":
        handlers.onBrush(win.start, position);
        break;
    }
  });

  const stop = () => {
    mode = null;
  };
  svg.addEventListener("pointerup", stop);
  svg.addEventListener("pointercancel", stop);
}

/** Drag a row label onto another band to reorder. */
export function wireRowReorder(
  svg: SVGSVGElement,
  view: RowViewName,
  scene: SceneData,
  rows: () => number,
  handlers: Pick<Handlers, "onReorder">,
): void {
  let fromSlot: number | null = null;

  svg.addEventListener("pointerdown", (event) => {
    const target = event.target as Element;
    if (target.tagName !== "text" || target.getAttribute("text-anchor") !== "end") {
      return;
    }
    fromSlot = rowSlotAt(scene, rows(), pixelY(svg, event, scene.height));
    if (fromSlot !== null) {
      svg.setPointerCapture(event.pointerId);
      event.preventDefault();
    }
  });

  svg.addEventListener("pointerup", (event) => {
    if (fromSlot === null) return;
    const toSlot = rowSlotAt(scene, rows(), pixelY(svg, event, scene.height));
    if (toSlot !== null && toSlot !== fromSlot) {
      handlers.onReorder(view, fromSlot, toSlot);
    }
    fromSlot = null;
  });
}
