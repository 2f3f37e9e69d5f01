"""Deterministic emitters: SVG, the scene JSON consumed by the web UI, and
per-residue structure colorings.

All emitters are pure; identical inputs give byte-identical output. Numbers
in SVG are fixed to two decimals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .errors import ChainNotFoundError
from .ingest.pdb import StructureModel
from .layout import (
    CoordinateMap,
    Glyph,
    GlyphRef,
    Palette,
    RGBA,
    Scene,
    rgb_to_hex,
)
from .model import HotspotBin

SCHEMA_VERSION = 1


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _fill_attrs(fill: RGBA) -> str:
    hex_color = rgb_to_hex(fill[:3])
    return f'fill="{hex_color}" fill-opacity="{fill[3]:.2f}"'


def _stroke_attrs(fill: RGBA, width: float) -> str:
    hex_color = rgb_to_hex(fill[:3])
    return (
        f'stroke="{hex_color}" stroke-opacity="{fill[3]:.2f}" '
        f'stroke-width="{_fmt(width)}"'
    )


def _element(glyph: Glyph) -> str:
    x, y, size = glyph.x, glyph.y, glyph.size
    if glyph.kind == "circle":
        return (
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(size / 2)}" '
            f"{_fill_attrs(glyph.fill)}/>"
        )
    if glyph.kind == "cross":
        h = size / 2
        d = (
            f"M {_fmt(x - h)} {_fmt(y - h)} L {_fmt(x + h)} {_fmt(y + h)} "
            f"M {_fmt(x + h)} {_fmt(y - h)} L {_fmt(x - h)} {_fmt(y + h)}"
        )
        return f'<path d="{d}" fill="none" {_stroke_attrs(glyph.fill, 1.2)}/>'
    if glyph.kind == "bar":
        width = glyph.w or 1.0
        return (
            f'<rect x="{_fmt(x - width / 2)}" y="{_fmt(y)}" '
            f'width="{_fmt(width)}" height="{_fmt(size)}" {_fill_attrs(glyph.fill)}/>'
        )
    if glyph.kind == "axis-tick":
        return (
            f'<line x1="{_fmt(x)}" y1="{_fmt(y)}" x2="{_fmt(x)}" y2="{_fmt(y + size)}" '
            f"{_stroke_attrs(glyph.fill, 1.0)}/>"
        )
    if glyph.kind == "window-overlay":
        return (
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(glyph.w or 0.0)}" '
            f'height="{_fmt(size)}" {_fill_attrs(glyph.fill)} '
            f"{_stroke_attrs((glyph.fill[0], glyph.fill[1], glyph.fill[2], 1.0), 1.0)}/>"
        )
    if glyph.kind == "label":
        # row labels (payload with row only) are right-aligned against the band
        if glyph.payload is not None and glyph.payload.position is None:
            anchor = "end"
        else:
            anchor = "middle"
        hex_color = rgb_to_hex(glyph.fill[:3])
        text = escape(glyph.text or "")
        return (
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{_fmt(size)}" '
            f'font-family="sans-serif" text-anchor="{anchor}" '
            f'fill="{hex_color}">{text}</text>'
        )
    raise ValueError(f"unknown glyph kind {glyph.kind!r}")


def emit_svg(scene: Scene) -> str:
    """Serialize a scene as SVG 1.1 text.

    Axis glyphs go into <g class="axes">, everything else into
    <g class="marks">; within each group, element order follows the glyph
    list order.
    """
    axes = []
    marks = []
    for glyph in scene.glyphs:
        is_axis = glyph.kind == "axis-tick" or (
            glyph.kind == "label" and glyph.payload is None
        )
        element = _element(glyph)
        (axes if is_axis else marks).append(element)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(scene.width)}" height="{_fmt(scene.height)}" '
        f'viewBox="0 0 {_fmt(scene.width)} {_fmt(scene.height)}">',
        '<g class="axes">',
        *axes,
        "</g>",
    ]
    if marks:
        lines += ['<g class="marks">', *marks, "</g>"]
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True, slots=True)
class SceneDocument:
    """The complete drawing contract for one accession, all views included."""

    accession: str
    length: int
    classification_palette: Palette
    type_palette: Palette
    distribution: Scene
    classification: Scene
    types: Scene
    context: Scene
    orders: tuple[tuple[str, tuple[str, ...]], ...]  # view name -> row labels
    version: int = SCHEMA_VERSION


def _palette_to_dict(palette: Palette) -> dict:
    return {
        "categories": {name: value for name, value in palette.categories},
        "category_order": [name for name, _ in palette.categories],
        "opacity": palette.opacity,
        "mutation": palette.mutation_mark,
        "hotspot": {
            "none": palette.hotspot_hex[0],
            "low": palette.hotspot_hex[1],
            "high": palette.hotspot_hex[2],
        },
    }


def _palette_from_dict(raw: dict) -> Palette:
    return Palette(
        categories=tuple((name, raw["categories"][name]) for name in raw["category_order"]),
        opacity=raw["opacity"],
        mutation_mark=raw["mutation"],
        hotspot_hex=(raw["hotspot"]["none"], raw["hotspot"]["low"], raw["hotspot"]["high"]),
    )


def _glyph_to_dict(glyph: Glyph) -> dict:
    payload = None
    if glyph.payload is not None:
        payload = {
            "row": glyph.payload.row,
            "position": glyph.payload.position,
            "record_index": glyph.payload.record_index,
        }
    return {
        "kind": glyph.kind,
        "x": glyph.x,
        "y": glyph.y,
        "size": glyph.size,
        "fill": [glyph.fill[0], glyph.fill[1], glyph.fill[2], glyph.fill[3]],
        "payload": payload,
        "text": glyph.text,
        "w": glyph.w,
    }


def _glyph_from_dict(raw: dict) -> Glyph:
    payload = None
    if raw["payload"] is not None:
        payload = GlyphRef(
            row=raw["payload"]["row"],
            position=raw["payload"]["position"],
            record_index=raw["payload"]["record_index"],
        )
    fill = raw["fill"]
    return Glyph(
        kind=raw["kind"],
        x=raw["x"],
        y=raw["y"],
        size=raw["size"],
        fill=(fill[0], fill[1], fill[2], fill[3]),
        payload=payload,
        text=raw["text"],
        w=raw["w"],
    )


def _scene_to_dict(scene: Scene) -> dict:
    return {
        "width": scene.width,
        "height": scene.height,
        "coord": {
            "start": scene.coord.start,
            "end": scene.coord.end,
            "x0": scene.coord.x0,
            "scale": scene.coord.scale,
        },
        "glyphs": [_glyph_to_dict(g) for g in scene.glyphs],
    }


def _scene_from_dict(raw: dict) -> Scene:
    coord = raw["coord"]
    return Scene(
        width=raw["width"],
        height=raw["height"],
        glyphs=tuple(_glyph_from_dict(g) for g in raw["glyphs"]),
        coord=CoordinateMap(
            start=coord["start"], end=coord["end"], x0=coord["x0"], scale=coord["scale"]
        ),
    )


def emit_scene_json(document: SceneDocument) -> str:
    """Serialize the full scene document (schema v1); stable byte output."""
    payload = {
        "version": document.version,
        "accession": document.accession,
        "L": document.length,
        "palette": {
            "classification": _palette_to_dict(document.classification_palette),
            "types": _palette_to_dict(document.type_palette),
        },
        "views": {
            "distribution": _scene_to_dict(document.distribution),
            "classification": _scene_to_dict(document.classification),
            "types": _scene_to_dict(document.types),
        },
        "context": _scene_to_dict(document.context),
        "orders": {name: list(labels) for name, labels in document.orders},
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def parse_scene_json(text: str) -> SceneDocument:
    raw = json.loads(text)
    if raw.get("version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported scene schema version {raw.get('version')!r}")
    return SceneDocument(
        accession=raw["accession"],
        length=raw["L"],
        classification_palette=_palette_from_dict(raw["palette"]["classification"]),
        type_palette=_palette_from_dict(raw["palette"]["types"]),
        distribution=_scene_from_dict(raw["views"]["distribution"]),
        classification=_scene_from_dict(raw["views"]["classification"]),
        types=_scene_from_dict(raw["views"]["types"]),
        context=_scene_from_dict(raw["context"]),
        orders=tuple(sorted((name, tuple(labels)) for name, labels in raw["orders"].items())),
        version=raw["version"],
    )


@dataclass(frozen=True, slots=True)
class ColoringEntry:
    chain: str
    author_number: int
    hex_color: str
    bin: HotspotBin


@dataclass(frozen=True, slots=True)
class StructureColoring:
    """Hot-spot color per residue of one selected chain."""

    accession: str
    source_id: str
    entries: tuple[ColoringEntry, ...]
    unmatched: tuple[int, ...]  # author numbers mapping outside the sequence


def emit_structure_coloring(
    model: StructureModel,
    chain_id: str,
    bins: Sequence[HotspotBin],
    palette: Palette,
    accession: str,
) -> tuple[StructureColoring, str]:
    """Color every residue of the chain by its hot-spot bin.

    Author numbering maps to sequence positions through the chain's DBREF
    offset; residues landing outside 1..L get white and are flagged.
    """
    chain = model.chain(chain_id)
    if chain is None:
        raise ChainNotFoundError(f"chain {chain_id!r} not in {model.source_id}")
    offset = model.offset_for(chain_id, accession)
    length = len(bins)

    entries = []
    unmatched = []
    for author_number, _ in chain.residues:
        position = author_number - offset
        if 1 <= position <= length:
            bin_ = bins[position - 1]
        else:
            bin_ = HotspotBin.NONE
            unmatched.append(author_number)
        entries.append(
            ColoringEntry(
                chain=chain_id,
                author_number=author_number,
                hex_color=palette.hotspot(bin_),
                bin=bin_,
            )
        )
    coloring = StructureColoring(
        accession=accession,
        source_id=model.source_id,
        entries=tuple(entries),
        unmatched=tuple(unmatched),
    )
    payload = {
        "accession": coloring.accession,
        "source_id": coloring.source_id,
        "entries": [
            {
                "chain": e.chain,
                "resi": e.author_number,
                "color": e.hex_color,
                "bin": e.bin.label,
            }
            for e in coloring.entries
        ],
        "unmatched": list(coloring.unmatched),
    }
    return coloring, json.dumps(payload, indent=2, sort_keys=True) + "\n"


def emit_viewer_script(coloring: StructureColoring) -> str:
    """Companion PyMOL-style commands, one color statement per residue run."""
    lines = [f"# hotspot coloring for {coloring.accession} ({coloring.source_id})"]
    run_start: Optional[ColoringEntry] = None
    previous: Optional[ColoringEntry] = None

    def flush():
        if run_start is None or previous is None:
            return
        selection = f"chain {run_start.chain} and resi {run_start.author_number}"
        if previous.author_number != run_start.author_number:
            selection = (
                f"chain {run_start.chain} and "
                f"resi {run_start.author_number}-{previous.author_number}"
            )
        lines.append(f"color 0x{run_start.hex_color.lstrip('#')}, {selection}")

    for entry in coloring.entries:
        if (
            previous is not None
            and entry.hex_color == previous.hex_color
            and entry.author_number == previous.author_number + 1
        ):
            previous = entry
            continue
        flush()
        run_start = entry
        previous = entry
    flush()
    return "\n".join(lines) + "\n"
