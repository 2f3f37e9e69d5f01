"""Resolution-independent 2D scene construction for the three views.

Scenes are pure data: a glyph list plus the affine position-to-x mapping.
Glyph construction order is fixed (axes, row labels, bars/overlay, circles,
crosses) so identical inputs produce structurally identical scenes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

from .analytics import ResidueStats
from .config import LayoutConfig
from .errors import BadPermutationError, TooManyCategoriesWarning, WindowOutOfRangeError
from .model import HotspotBin, ModificationRecord, OccupancyMatrix, Window

RGBA = tuple[int, int, int, float]

# d3 category10, the conventional categorical cycle
DEFAULT_CYCLE = (
    "#1F77B4", "#FF7F0E", "#2CA02C", "#D62728", "#9467BD",
    "#8C564B", "#E377C2", "#7F7F7F", "#BCBD22", "#17BECF",
)

AXIS_COLOR: RGBA = (51, 51, 51, 1.0)
BAR_COLOR: RGBA = (153, 153, 153, 1.0)
OVERLAY_COLOR: RGBA = (51, 51, 51, 0.15)
BLACK: RGBA = (0, 0, 0, 1.0)

_TICK_STEPS = (1, 2, 5, 10, 25, 50, 100, 250, 500, 1000, 2500, 5000)


def hex_to_rgb(value: str) -> tuple[int, int, int]:
    value = value.lstrip("#")
    if len(value) != 6:
        raise ValueError(f"expected #RRGGBB color, got {value!r}")
    return tuple(int(value[i : i + 2], 16) for i in (0, 2, 4))


def rgb_to_hex(rgb: tuple[int, int, int]) -> str:
    return "#{:02X}{:02X}{:02X}".format(*rgb)


@dataclass(frozen=True, slots=True)
class Palette:
    """Stable category-to-color assignment plus the fixed special colors."""

    categories: tuple[tuple[str, str], ...]  # (category, "#RRGGBB") in input order
    opacity: float = 0.6
    mutation_mark: str = "#000000"
    hotspot_hex: tuple[str, str, str] = ("#FFFFFF", "#8FBCE6", "#E88E8E")

    def __post_init__(self):
        if not 0.0 < self.opacity <= 1.0:
            raise ValueError(f"opacity {self.opacity} outside (0, 1]")
        for _, value in self.categories:
            hex_to_rgb(value)
        for value in self.hotspot_hex:
            hex_to_rgb(value)

    def hex_for(self, category: str) -> str:
        for name, value in self.categories:
            if name == category:
                return value
        raise KeyError(category)

    def rgba(self, category: str) -> RGBA:
        return (*hex_to_rgb(self.hex_for(category)), self.opacity)

    def hotspot(self, bin_: HotspotBin) -> str:
        return self.hotspot_hex[int(bin_)]


def assign_palette(categories: Sequence[str], config: LayoutConfig) -> Palette:
    """Deterministic color assignment: overrides first, then the default
    cycle in list order. Warns (and cycles) past the cycle length."""
    if len(set(categories)) != len(categories):
        raise ValueError("categories must be distinct")
    overrides = dict(config.palette_overrides)
    uncovered = [c for c in categories if c not in overrides]
    if len(uncovered) > len(DEFAULT_CYCLE):
        warnings.warn(
            f"{len(uncovered)} categories exceed the {len(DEFAULT_CYCLE)}-color cycle",
            TooManyCategoriesWarning,
        )
    assigned = []
    cycle_index = 0
    for category in categories:
        if category in overrides:
            assigned.append((category, overrides[category].upper()))
        else:
            assigned.append((category, DEFAULT_CYCLE[cycle_index % len(DEFAULT_CYCLE)]))
            cycle_index += 1
    return Palette(
        categories=tuple(assigned),
        opacity=config.opacity,
        hotspot_hex=config.hotspot_hex,
    )


@dataclass(frozen=True, slots=True)
class GlyphRef:
    """Back-reference from a glyph to its source data."""

    row: Optional[str] = None
    position: Optional[int] = None
    record_index: Optional[int] = None


@dataclass(frozen=True, slots=True)
class Glyph:
    kind: str  # circle | cross | bar | axis-tick | label | window-overlay
    x: float
    y: float
    size: float  # diameter for circles/crosses, height for bars/overlay
    fill: RGBA
    payload: Optional[GlyphRef] = None
    text: Optional[str] = None
    w: Optional[float] = None  # explicit width for bars and the overlay


@dataclass(frozen=True, slots=True)
class CoordinateMap:
    """Affine map from sequence position to x: x(p) = x0 + (p - start) * scale."""

    start: int
    end: int
    x0: float
    scale: float

    def x(self, position: int) -> float:
        return self.x0 + (position - self.start) * self.scale


@dataclass(frozen=True, slots=True)
class Scene:
    width: float
    height: float
    glyphs: tuple[Glyph, ...]
    coord: CoordinateMap

    def __post_init__(self):
        for glyph in self.glyphs:
            if not (-1e-6 <= glyph.x <= self.width + 1e-6) or not (
                -1e-6 <= glyph.y <= self.height + 1e-6
            ):
                raise ValueError(
                    f"{glyph.kind} glyph at ({glyph.x:.2f}, {glyph.y:.2f}) outside "
                    f"{self.width:.0f}x{self.height:.0f} canvas"
                )

    def count(self, kind: str) -> int:
        return sum(1 for g in self.glyphs if g.kind == kind)


def clamp_window(window: Window, length: int) -> Window:
    return window.clamped(length)


def _coordinate_map(window: Window, config: LayoutConfig) -> CoordinateMap:
    scale = config.inner_width / max(window.end - window.start, 1)
    return CoordinateMap(start=window.start, end=window.end, x0=config.margin_left, scale=scale)


def _axis_glyphs(coord: CoordinateMap, axis_y: float) -> list[Glyph]:
    span = coord.end - coord.start
    step = next((s for s in _TICK_STEPS if span / s <= 12), _TICK_STEPS[-1])
    first = ((coord.start + step - 1) // step) * step
    positions = list(range(first, coord.end + 1, step))
    if not positions:
        positions = [coord.start]
    glyphs = []
    for p in positions:
        glyphs.append(Glyph("axis-tick", coord.x(p), axis_y, 5.0, AXIS_COLOR))
        glyphs.append(
            Glyph("label", coord.x(p), axis_y + 16.0, 10.0, AXIS_COLOR, text=str(p))
        )
    return glyphs


def _check_window(window: Window, length: int):
    if window.end > length:
        raise WindowOutOfRangeError(f"window {window.start}:{window.end} exceeds L={length}")


def _stack_shift(cx_min: float, cx_max: float, radius: float, width: float) -> float:
    """Minimum horizontal shift keeping a whole stack inside the canvas."""
    if cx_min - radius < 0:
        return radius - cx_min
    if cx_max + radius > width:
        return width - radius - cx_max
    return 0.0


def _indexed_in_window(
    records: Sequence[ModificationRecord], window: Window
) -> list[tuple[int, ModificationRecord]]:
    return [(i, r) for i, r in enumerate(records) if r.position in window]


def _layout_row_view(
    matrix: OccupancyMatrix,
    order: Sequence[int],
    records: Sequence[ModificationRecord],
    window: Window,
    palette: Palette,
    config: LayoutConfig,
    key: Callable[[ModificationRecord], str],
) -> Scene:
    if sorted(order) != list(range(matrix.n_rows)):
        raise BadPermutationError(f"order {list(order)} is not a permutation of rows")
    _check_window(window, matrix.length)

    n = matrix.n_rows
    height = n * config.band_height + 60.0
    top = 20.0
    axis_y = top + n * config.band_height + 5.0
    coord = _coordinate_map(window, config)
    radius = config.diameter / 2.0

    glyphs = _axis_glyphs(coord, axis_y)

    band_center = {}
    for slot, row_index in enumerate(order):
        label = matrix.row_labels[row_index]
        yc = top + (slot + 0.5) * config.band_height
        band_center[label] = yc
        glyphs.append(
            Glyph(
                "label",
                config.margin_left - 6.0,
                yc,
                10.0,
                AXIS_COLOR,
                payload=GlyphRef(row=label),
                text=label,
            )
        )

    # group in-window records per (row label, position), input order preserved
    cells: dict[tuple[str, int], list[int]] = {}
    for i, record in _indexed_in_window(records, window):
        cells.setdefault((key(record), record.position), []).append(i)

    crosses: list[Glyph] = []
    for slot, row_index in enumerate(order):
        label = matrix.row_labels[row_index]
        yc = band_center[label]
        row_cells = sorted(p for (lab, p) in cells if lab == label)
        for p in row_cells:
            indices = cells[(label, p)]
            k = len(indices)
            x_center = coord.x(p)
            if config.max_stack is not None and k > config.max_stack:
                glyphs.append(
                    Glyph(
                        "circle", x_center, yc, config.diameter,
                        palette.rgba(label),
                        payload=GlyphRef(label, p, indices[0]),
                    )
                )
                glyphs.append(
                    Glyph(
                        "label", x_center, yc - config.diameter, 9.0, AXIS_COLOR,
                        payload=GlyphRef(label, p, indices[0]), text=f"×{k}",
                    )
                )
            else:
                cx_first = x_center - (k - 1) / 2.0 * config.pitch
                cx_last = x_center + (k - 1) / 2.0 * config.pitch
                dx = _stack_shift(cx_first, cx_last, radius, config.width)
                for j, i in enumerate(indices):
                    cx = cx_first + j * config.pitch + dx
                    glyphs.append(
                        Glyph(
                            "circle", cx, yc, config.diameter,
                            palette.rgba(label),
                            payload=GlyphRef(label, p, i),
                        )
                    )
            for i in indices:
                if records[i].is_mutation:
                    crosses.append(
                        Glyph(
                            "cross", x_center, yc, config.diameter, BLACK,
                            payload=GlyphRef(label, p, i),
                        )
                    )
    glyphs.extend(crosses)
    return Scene(width=config.width, height=height, glyphs=tuple(glyphs), coord=coord)


def layout_classification_view(
    matrix: OccupancyMatrix,
    order: Sequence[int],
    records: Sequence[ModificationRecord],
    window: Window,
    palette: Palette,
    config: LayoutConfig,
) -> Scene:
    """One band per classification, circles stacked horizontally per cell,
    black crosses over mutation sites."""
    return _layout_row_view(
        matrix, order, records, window, palette, config, lambda r: r.classification
    )


def layout_type_view(
    matrix: OccupancyMatrix,
    order: Sequence[int],
    records: Sequence[ModificationRecord],
    window: Window,
    palette: Palette,
    config: LayoutConfig,
) -> Scene:
    """Row view keyed by modification type."""
    return _layout_row_view(
        matrix, order, records, window, palette, config, lambda r: r.mod_type
    )


def layout_distribution_view(
    records: Sequence[ModificationRecord],
    stats: ResidueStats,
    window: Window,
    palette: Palette,
    config: LayoutConfig,
) -> Scene:
    """Vertical per-position stacks, bottom-up in record order, colored by
    classification; stack height encodes the count."""
    _check_window(window, len(stats.counts))
    height = 60.0 + stats.max_count * config.pitch
    baseline = height - 40.0
    coord = _coordinate_map(window, config)
    radius = config.diameter / 2.0

    glyphs = _axis_glyphs(coord, baseline + 5.0)

    stacks: dict[int, list[int]] = {}
    for i, record in _indexed_in_window(records, window):
        stacks.setdefault(record.position, []).append(i)

    crosses: list[Glyph] = []
    for p in sorted(stacks):
        cx = coord.x(p)
        for j, i in enumerate(stacks[p]):
            cy = baseline - radius - j * config.pitch
            record = records[i]
            glyph = Glyph(
                "circle", cx, cy, config.diameter,
                palette.rgba(record.classification),
                payload=GlyphRef(record.classification, p, i),
            )
            glyphs.append(glyph)
            if record.is_mutation:
                crosses.append(
                    Glyph(
                        "cross", cx, cy, config.diameter, BLACK,
                        payload=GlyphRef(record.classification, p, i),
                    )
                )
    glyphs.extend(crosses)
    return Scene(width=config.width, height=height, glyphs=tuple(glyphs), coord=coord)


def layout_context_bar(
    counts: Sequence[int], window: Window, config: LayoutConfig
) -> Scene:
    """Full-sequence strip: one bar per position plus the focus overlay."""
    length = len(counts)
    window = window.clamped(length)
    full = Window(1, length)
    coord = _coordinate_map(full, config)
    height = config.context_height
    baseline = height - 15.0
    max_count = max(counts) if counts else 0
    bar_space = baseline - 10.0

    bar_width = min(max(coord.scale * 0.8, 0.5), 20.0)
    glyphs: list[Glyph] = []
    for p in range(1, length + 1):
        h = counts[p - 1] / max_count * bar_space if max_count else 0.0
        glyphs.append(
            Glyph(
                "bar", coord.x(p), baseline - h, h, BAR_COLOR,
                payload=GlyphRef(position=p), w=bar_width,
            )
        )
    span = coord.x(window.end) - coord.x(window.start)
    glyphs.append(
        Glyph(
            "window-overlay", coord.x(window.start), 2.0, height - 4.0, OVERLAY_COLOR,
            payload=GlyphRef(position=window.start), w=span,
        )
    )
    return Scene(width=config.width, height=height, glyphs=tuple(glyphs), coord=coord)


def append_context(main: Scene, context: Scene) -> Scene:
    """Stack the context strip under a main scene (shared x mapping)."""
    shifted = tuple(replace(g, y=g.y + main.height) for g in context.glyphs)
    return Scene(
        width=main.width,
        height=main.height + context.height,
        glyphs=main.glyphs + shifted,
        coord=main.coord,
    )
