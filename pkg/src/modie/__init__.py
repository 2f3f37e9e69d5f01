"""Protein modification statistics, similarity ordering and visualization."""

from .analytics import (
    PatternGroup,
    ResidueStats,
    bin_hotspots,
    classification_distribution,
    find_repeated_patterns,
    mod_type_distribution,
    mutation_sites,
    occupancy_matrix,
    residue_counts,
)
from .config import LayoutConfig, load_layout_config
from .layout import (
    Glyph,
    GlyphRef,
    Palette,
    Scene,
    assign_palette,
    clamp_window,
    layout_classification_view,
    layout_context_bar,
    layout_distribution_view,
    layout_type_view,
)
from .model import (
    HotspotBin,
    ModificationRecord,
    OccupancyMatrix,
    ProteinEntry,
    ValidationReport,
    Window,
    validate_record,
)
from .ordering import BitRow, binarize, hamming, seriate_rows
from .render import (
    SceneDocument,
    StructureColoring,
    emit_scene_json,
    emit_structure_coloring,
    emit_svg,
    parse_scene_json,
)

__version__ = "0.1.0"

__all__ = [
    "BitRow",
    "Glyph",
    "GlyphRef",
    "HotspotBin",
    "LayoutConfig",
    "ModificationRecord",
    "OccupancyMatrix",
    "Palette",
    "PatternGroup",
    "ProteinEntry",
    "ResidueStats",
    "Scene",
    "SceneDocument",
    "StructureColoring",
    "ValidationReport",
    "Window",
    "assign_palette",
    "bin_hotspots",
    "binarize",
    "clamp_window",
    "classification_distribution",
    "emit_scene_json",
    "emit_structure_coloring",
    "emit_svg",
    "find_repeated_patterns",
    "hamming",
    "layout_classification_view",
    "layout_context_bar",
    "layout_distribution_view",
    "layout_type_view",
    "load_layout_config",
    "mod_type_distribution",
    "mutation_sites",
    "occupancy_matrix",
    "parse_scene_json",
    "residue_counts",
    "seriate_rows",
    "validate_record",
]
