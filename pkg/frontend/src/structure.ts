/** Coloring-file lookup and the residue/position mapping for hover linking. */

export type BinName = "none" | "low" | "high";

export interface ColoringEntry {
  chain: string;
  resi: number;
  color: string;
  bin: BinName;
}

export interface ColoringDoc {
  accession: string;
  source_id: string;
  entries: ColoringEntry[];
  unmatched: number[];
}

export function colorByResidue(doc: ColoringDoc): Map<number, string> {
  const map = new Map<number, string>();
  for (const entry of doc.entries) {
    map.set(entry.resi, entry.color);
  }
  return map;
}

export function chainOf(doc: ColoringDoc): string {
  return doc.entries.length > 0 ? doc.entries[0].chain : "A";
}

/**
 * Author-numbering offset from the structure's DBREF records
 * (offset = first author residue number - matching database position).
 * Falls back to 0 when the file carries no usable cross-reference.
 */
export function dbrefOffset(pdbText: string, chain: string, accession?: string): number {
  let fallback: number | null = null;
  for (const line of pdbText.split("\n")) {
    if (!line.startsWith("DBREF ")) continue;
    if (line.length < 60 || line[12] !== chain) continue;
    const seqBegin = parseInt(line.slice(14, 18), 10);
    const dbBegin = parseInt(line.slice(55, 60), 10);
    if (Number.isNaN(seqBegin) || Number.isNaN(dbBegin)) continue;
    const offset = seqBegin - dbBegin;
    if (accession && line.slice(33, 41).trim() === accession) {
      return offset;
    }
    if (fallback === null) fallback = offset;
  }
  return fallback ?? 0;
}

export function positionToResidue(position: number, offset: number): number {
  return position + offset;
}

export function residueToPosition(resi: number, offset: number): number {
  return resi - offset;
}
