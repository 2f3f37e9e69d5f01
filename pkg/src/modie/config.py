"""Layout/palette configuration with JSON file loading."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional


@dataclass(frozen=True, slots=True)
class LayoutConfig:
    """Geometry and color knobs for scene construction (abstract units)."""

    width: float = 1200.0
    diameter: float = 6.0
    gap: float = 1.0
    band_height: float = 14.0
    margin_left: float = 60.0
    margin_right: float = 20.0
    opacity: float = 0.6
    max_stack: Optional[int] = None
    context_height: float = 60.0
    # (category, "#RRGGBB") pairs taking precedence over the default cycle
    palette_overrides: tuple[tuple[str, str], ...] = ()
    # none, low, high
    hotspot_hex: tuple[str, str, str] = ("#FFFFFF", "#8FBCE6", "#E88E8E")

    @property
    def pitch(self) -> float:
        return self.diameter + self.gap

    @property
    def inner_width(self) -> float:
        return self.width - self.margin_left - self.margin_right


def load_layout_config(path: Path | str) -> LayoutConfig:
    """Read overrides from a JSON config file; absent keys keep defaults."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    config = LayoutConfig()
    geometry = raw.get("geometry", {})
    updates = {}
    for key in ("width", "diameter", "gap", "band_height", "margin_left", "margin_right"):
        if key in geometry:
            updates[key] = float(geometry[key])
    if "opacity" in raw:
        updates["opacity"] = float(raw["opacity"])
    if "max_stack" in raw:
        updates["max_stack"] = None if raw["max_stack"] is None else int(raw["max_stack"])
    if "context_height" in raw:
        updates["context_height"] = float(raw["context_height"])
    if "palette" in raw:
        updates["palette_overrides"] = tuple(sorted(raw["palette"].items()))
    if "hotspot" in raw:
        hotspot = raw["hotspot"]
        defaults = config.hotspot_hex
        updates["hotspot_hex"] = (
            hotspot.get("none", defaults[0]),
            hotspot.get("low", defaults[1]),
            hotspot.get("high", defaults[2]),
        )
    return replace(config, **updates)
