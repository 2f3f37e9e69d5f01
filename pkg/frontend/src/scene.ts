/** Scene document types (schema v1) and the loading guard. */

export type GlyphKind =
  | "circle"
  | "cross"
  | "bar"
  | "axis-tick"
  | "label"
  | "window-overlay";

export interface GlyphPayload {
  row: string | null;
  position: number | null;
  record_index: number | null;
}

export interface Glyph {
  kind: GlyphKind;
  x: number;
  y: number;
  size: number;
  fill: [number, number, number, number];
  payload: GlyphPayload | null;
  text: string | null;
  w: number | null;
}

export interface CoordMap {
  start: number;
  end: number;
  x0: number;
  scale: number;
}

export interface SceneData {
  width: number;
  height: number;
  coord: CoordMap;
  glyphs: Glyph[];
}

export interface PaletteData {
  categories: Record<string, string>;
  category_order: string[];
  opacity: number;
  mutation: string;
  hotspot: { none: string; low: string; high: string };
}

export interface SceneDocument {
  version: 1;
  accession: string;
  L: number;
  palette: { classification: PaletteData; types: PaletteData };
  views: {
    distribution: SceneData;
    classification: SceneData;
    types: SceneData;
  };
  context: SceneData;
  orders: Record<string, string[]>;
}

export class SchemaVersionError extends Error {
  constructor(found: unknown) {
    super(`unsupported scene schema version ${String(found)} (expected 1)`);
    this.name = "SchemaVersionError";
  }
}

/** Parse a fetched scene document; throws before any partial render can happen. */
export function parseSceneDocument(raw: unknown): SceneDocument {
  const doc = raw as Partial<SceneDocument> | null;
  if (!doc || typeof doc !== "object") {
    throw new Error("scene document is not an object");
  }
  if (doc.version !== 1) {
    throw new SchemaVersionError(doc.version);
  }
  for (const key of ["accession", "L", "palette", "views", "context", "orders"] as const) {
    if (!(key in doc)) {
      throw new Error(`scene document missing field "${key}"`);
    }
  }
  return doc as SceneDocument;
}

export function fillToHex(fill: [number, number, number, number]): string {
  const channel = (v: number) => v.toString(16).padStart(2, "0");
  return `#${channel(fill[0])}${channel(fill[1])}${channel(fill[2])}`;
}

/** Circle glyph count of a scene, the conservation quantity the tests track. */
export function circleCount(scene: SceneData): number {
  return scene.glyphs.filter((g) => g.kind === "circle").length;
}

export function crossCount(scene: SceneData): number {
  return scene.glyphs.filter((g) => g.kind === "cross").length;
}
