"""Scene construction: glyph placement formulas, conservation, windows."""

import random
import warnings

import pytest

from modie.analytics import occupancy_matrix, residue_counts
from modie.config import LayoutConfig
from modie.errors import BadPermutationError, TooManyCategoriesWarning, WindowOutOfRangeError
from modie.layout import (
    append_context,
    assign_palette,
    clamp_window,
    layout_classification_view,
    layout_context_bar,
    layout_distribution_view,
    layout_type_view,
)
from modie.model import ModificationRecord, ProteinEntry, Window

from conftest import fixture_records

CONFIG = LayoutConfig()


def _rec(position, mod_type="Oxidation", classification="Artefact", mutation=False, residue="C"):
    return ModificationRecord("X1", position, residue, mod_type, classification, mutation)


def circles(scene):
    return [g for g in scene.glyphs if g.kind == "circle"]


def crosses(scene):
    return [g for g in scene.glyphs if g.kind == "cross"]


def class_scene(records, length, window=None, config=CONFIG, order=None):
    matrix = occupancy_matrix(records, "classification", length)
    if order is None:
        order = list(range(matrix.n_rows))
    window = window or Window(1, length)
    palette = assign_palette(matrix.row_labels, config)
    return layout_classification_view(matrix, order, records, window, palette, config)


# -- palette -----------------------------------------------------------------

def test_assign_palette_deterministic():
    categories = ["Artefact", "Multiple", "Post-translational"]
    assert assign_palette(categories, CONFIG) == assign_palette(categories, CONFIG)


def test_assign_palette_distinct_colors():
    palette = assign_palette(["Artefact", "Multiple"], CONFIG)
    assert palette.hex_for("Artefact") != palette.hex_for("Multiple")


def test_assign_palette_opacity_override():
    config = LayoutConfig(opacity=1.0)
    palette = assign_palette(["Artefact"], config)
    assert palette.rgba("Artefact")[3] == 1.0


def test_assign_palette_override_and_cycle_warning():
    config = LayoutConfig(palette_overrides=(("Artefact", "#112233"),))
    palette = assign_palette(["Artefact", "Multiple"], config)
    assert palette.hex_for("Artefact") == "#112233"

    with pytest.warns(TooManyCategoriesWarning):
        assign_palette([f"c{i}" for i in range(12)], CONFIG)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assign_palette([f"c{i}" for i in range(10)], CONFIG)


# -- clamp_window -------------------------------------------------------------

def test_clamp_window_cases():
    assert clamp_window(Window(50, 120), 100) == Window(50, 100)
    assert clamp_window(Window(1, 100), 100) == Window(1, 100)
    assert clamp_window(Window(90, 90), 100) == Window(90, 90)


# -- classification / type views ----------------------------------------------

def test_single_record_centered_exactly():
    scene = class_scene([_rec(5)], 10)
    (circle,) = circles(scene)
    assert circle.x == scene.coord.x(5)


def test_stack_of_three_centers():
    # margin_left=100 puts x(5)=100 for window [5,10]: centers 93, 100, 107
    config = LayoutConfig(margin_left=100.0)
    records = [_rec(5), _rec(5), _rec(5)]
    scene = class_scene(records, 10, window=Window(5, 10), config=config)
    assert [c.x for c in circles(scene)] == [93.0, 100.0, 107.0]
    assert len({c.y for c in circles(scene)}) == 1


def test_stack_preserves_record_order():
    records = [_rec(5, mod_type="First"), _rec(5, mod_type="Second")]
    scene = class_scene(records, 10)
    xs = [(c.payload.record_index, c.x) for c in circles(scene)]
    assert xs == sorted(xs)  # input order, left to right


def test_x_mapping_margins_and_monotonicity():
    scene = class_scene([_rec(1), _rec(10)], 10)
    coord = scene.coord
    assert coord.x(1) == CONFIG.margin_left
    assert coord.x(10) == CONFIG.width - CONFIG.margin_right
    xs = [coord.x(p) for p in range(1, 11)]
    assert xs == sorted(xs)
    assert len(set(xs)) == len(xs)


def test_window_filters_records():
    records = [_rec(2), _rec(5), _rec(9)]
    scene = class_scene(records, 10, window=Window(4, 8))
    assert [c.payload.position for c in circles(scene)] == [5]


def test_cross_glyphs_per_mutation_record():
    records = [_rec(3, mutation=True), _rec(3, mutation=True), _rec(5)]
    scene = class_scene(records, 10)
    assert len(crosses(scene)) == 2
    assert len(circles(scene)) == 3
    for cross in crosses(scene):
        assert cross.fill == (0, 0, 0, 1.0)
        assert cross.x == scene.coord.x(3)


def test_mutation_crosses_at_expected_positions():
    # mutation sites on R at 296, 351, 362, 376; window [290, 380]
    sites = (296, 351, 362, 376)
    sequence = "".join("R" if p in sites else "A" for p in range(1, 663))
    entry = ProteinEntry("O00571X", "SYN", "Synthetic", sequence)
    records = [
        ModificationRecord("O00571X", p, "R", "Mutagenesis", "Artefact", True) for p in sites
    ] + [
        ModificationRecord("O00571X", 100, "A", "Oxidation", "Artefact", False),
    ]
    window = Window(290, 380)
    scene = class_scene(records, entry.length, window=window)
    assert [c.x for c in crosses(scene)] == [scene.coord.x(p) for p in sites]
    assert len(circles(scene)) == 4  # the record at 100 is outside the window


def test_bad_permutation_rejected(records):
    matrix = occupancy_matrix(records, "classification", 10)
    palette = assign_palette(matrix.row_labels, CONFIG)
    with pytest.raises(BadPermutationError):
        layout_classification_view(
            matrix, [0, 0, 1, 2], records, Window(1, 10), palette, CONFIG
        )


def test_window_out_of_range_rejected(records):
    matrix = occupancy_matrix(records, "classification", 10)
    palette = assign_palette(matrix.row_labels, CONFIG)
    with pytest.raises(WindowOutOfRangeError):
        layout_classification_view(
            matrix, [0, 1, 2, 3], records, Window(1, 11), palette, CONFIG
        )


def test_type_view_empty_matrix_axes_only():
    matrix = occupancy_matrix([], "mod_type", 10)
    palette = assign_palette(matrix.row_labels, CONFIG)
    scene = layout_type_view(matrix, [], [], Window(1, 10), palette, CONFIG)
    assert circles(scene) == []
    assert crosses(scene) == []
    assert scene.count("axis-tick") > 0


def test_type_view_single_record():
    records = [_rec(5)]
    matrix = occupancy_matrix(records, "mod_type", 10)
    palette = assign_palette(matrix.row_labels, CONFIG)
    scene = layout_type_view(matrix, [0], records, Window(1, 10), palette, CONFIG)
    assert len(circles(scene)) == 1


def test_row_order_controls_band_assignment(records):
    matrix = occupancy_matrix(records, "classification", 10)
    palette = assign_palette(matrix.row_labels, CONFIG)
    order = [1, 2, 3, 0]
    scene = layout_classification_view(matrix, order, records, Window(1, 10), palette, CONFIG)
    labels = [g for g in scene.glyphs if g.kind == "label" and g.payload is not None]
    top_to_bottom = [g.text for g in sorted(labels, key=lambda g: g.y)]
    assert top_to_bottom == [matrix.row_labels[i] for i in order]


def test_max_stack_aggregation():
    config = LayoutConfig(max_stack=3)
    records = [_rec(5) for _ in range(5)]
    scene = class_scene(records, 10, config=config)
    assert len(circles(scene)) == 1
    count_labels = [g for g in scene.glyphs if g.kind == "label" and g.text == "×5"]
    assert len(count_labels) == 1


def test_boundary_stack_shifted_into_canvas():
    records = [_rec(1) for _ in range(60)]
    scene = class_scene(records, 10, window=Window(1, 10))
    xs = [c.x for c in circles(scene)]
    assert min(xs) >= CONFIG.diameter / 2
    assert len(xs) == 60
    # spacing preserved
    assert all(abs(b - a - CONFIG.pitch) < 1e-9 for a, b in zip(xs, xs[1:]))


def test_scene_determinism(records):
    assert class_scene(records, 10) == class_scene(records, 10)


# -- distribution view ----------------------------------------------------------

def test_distribution_empty():
    stats = residue_counts([], 10)
    palette = assign_palette([], CONFIG)
    scene = layout_distribution_view([], stats, Window(1, 10), palette, CONFIG)
    assert circles(scene) == []


def test_distribution_vertical_stack():
    records = [_rec(4), _rec(4), _rec(4)]
    stats = residue_counts(records, 10)
    palette = assign_palette(["Artefact"], CONFIG)
    scene = layout_distribution_view(records, stats, Window(1, 10), palette, CONFIG)
    stack = circles(scene)
    assert len(stack) == 3
    assert len({c.x for c in stack}) == 1
    ys = [c.y for c in stack]
    assert all(a - b == CONFIG.pitch for a, b in zip(ys, ys[1:]))  # bottom-up


def test_distribution_colors_by_classification():
    records = [_rec(4, classification="A"), _rec(4, classification="B")]
    stats = residue_counts(records, 10)
    palette = assign_palette(["A", "B"], CONFIG)
    scene = layout_distribution_view(records, stats, Window(1, 10), palette, CONFIG)
    fills = {c.fill for c in circles(scene)}
    assert fills == {palette.rgba("A"), palette.rgba("B")}


def test_distribution_mutation_cross_rides_its_circle():
    records = [_rec(4), _rec(4, mutation=True)]
    stats = residue_counts(records, 10)
    palette = assign_palette(["Artefact"], CONFIG)
    scene = layout_distribution_view(records, stats, Window(1, 10), palette, CONFIG)
    (cross,) = crosses(scene)
    mutated_circle = [c for c in circles(scene) if c.payload.record_index == 1][0]
    assert (cross.x, cross.y) == (mutated_circle.x, mutated_circle.y)


# -- context bar -----------------------------------------------------------------

def test_context_uniform_counts_equal_bars():
    scene = layout_context_bar([3] * 10, Window(1, 10), CONFIG)
    bars = [g for g in scene.glyphs if g.kind == "bar"]
    assert len(bars) == 10
    assert len({b.size for b in bars}) == 1
    assert bars[0].size > 0


def test_context_overlay_full_window():
    scene = layout_context_bar([1] * 10, Window(1, 10), CONFIG)
    (overlay,) = [g for g in scene.glyphs if g.kind == "window-overlay"]
    assert overlay.x == scene.coord.x(1)
    assert overlay.w == scene.coord.x(10) - scene.coord.x(1)


def test_context_overlay_clamped():
    scene = layout_context_bar([1] * 100, Window(50, 120), CONFIG)
    (overlay,) = [g for g in scene.glyphs if g.kind == "window-overlay"]
    assert overlay.x == scene.coord.x(50)
    assert overlay.x + overlay.w == scene.coord.x(100)


def test_append_context_stacks_vertically():
    records = fixture_records()
    main = class_scene(records, 10)
    context = layout_context_bar([1] * 10, Window(1, 10), CONFIG)
    composed = append_context(main, context)
    assert composed.height == main.height + context.height
    assert len(composed.glyphs) == len(main.glyphs) + len(context.glyphs)
    assert composed.count("window-overlay") == 1


# -- conservation across random windows -------------------------------------------

def test_glyph_conservation_random_windows():
    records = fixture_records()
    rng = random.Random(41)
    for _ in range(50):
        start = rng.randint(1, 10)
        end = rng.randint(start, 10)
        window = Window(start, end)
        in_window = [r for r in records if start <= r.position <= end]
        mutations = [r for r in in_window if r.is_mutation]

        scene = class_scene(records, 10, window=window)
        assert len(circles(scene)) == len(in_window)
        assert len(crosses(scene)) == len(mutations)

        stats = residue_counts(records, 10)
        palette = assign_palette(["Chemical derivative", "Post-translational", "Artefact", "Multiple"], CONFIG)
        dist = layout_distribution_view(records, stats, window, palette, CONFIG)
        assert len(circles(dist)) == len(in_window)
