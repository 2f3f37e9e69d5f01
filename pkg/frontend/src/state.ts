/** UI state and the pure reducer; replaying an event log reproduces state. */

import type { GlyphPayload, SceneDocument } from "./scene.js";

export interface Win {
  start: number;
  end: number;
}

export type ViewName = "distribution" | "classification" | "types";
export type RowViewName = "classification" | "types";

export interface UiState {
  accession: string;
  length: number;
  window: Win;
  rowOrders: { classification: string[]; types: string[] };
  hovered: GlyphPayload | null;
  selectedView: ViewName;
}

export type UiEvent =
  | {
      type: "loaded";
      accession: string;
      length: number;
      orders: Record<string, string[]>;
    }
  | { type: "brush"; start: number; end: number }
  | { type: "reorder"; view: RowViewName; from: number; to: number }
  | { type: "hover"; payload: GlyphPayload | null }
  | { type: "select-view"; view: ViewName };

export function clampWindow(start: number, end: number, length: number): Win {
  let lo = Math.round(Math.min(start, end));
  let hi = Math.round(Math.max(start, end));
  lo = Math.max(1, Math.min(lo, length));
  hi = Math.max(lo, Math.min(hi, length));
  return { start: lo, end: hi };
}

/** Move one row to a new slot, shifting the rows in between. */
export function moveRow(order: string[], from: number, to: number): string[] {
  if (
    from === to ||
    from < 0 ||
    to < 0 ||
    from >= order.length ||
    to >= order.length
  ) {
    return order.slice();
  }
  const next = order.slice();
  const [moved] = next.splice(from, 1);
  next.splice(to, 0, moved);
  return next;
}

export function initialState(doc: SceneDocument): UiState {
  return reduce(emptyState(), {
    type: "loaded",
    accession: doc.accession,
    length: doc.L,
    orders: doc.orders,
  });
}

function emptyState(): UiState {
  return {
    accession: "",
    length: 1,
    window: { start: 1, end: 1 },
    rowOrders: { classification: [], types: [] },
    hovered: null,
    selectedView: "classification",
  };
}

export function reduce(state: UiState, event: UiEvent): UiState {
  switch (event.type) {
    case "loaded":
      return {
        accession: event.accession,
        length: event.length,
        window: { start: 1, end: event.length },
        rowOrders: {
          classification: (event.orders["classification"] ?? []).slice(),
          types: (event.orders["types"] ?? []).slice(),
        },
        hovered: null,
        selectedView: "classification",
      };
    case "brush":
      return {
        ...state,
        window: clampWindow(event.start, event.end, state.length),
      };
    case "reorder":
      return {
        ...state,
        rowOrders: {
          ...state.rowOrders,
          [event.view]: moveRow(state.rowOrders[event.view], event.from, event.to),
        },
      };
    case "hover":
      return { ...state, hovered: event.payload };
    case "select-view":
      return { ...state, selectedView: event.view };
  }
}

/** Fold an event log from scratch; the first event must be "loaded". */
export function replay(events: UiEvent[]): UiState {
  return events.reduce(reduce, emptyState());
}
