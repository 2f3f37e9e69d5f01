"""Regenerate the golden SVGs for the synthetic fixture.

Run from the repository root after an intentional rendering change, then
inspect the SVGs before committing:

    python tools/regen_golden.py
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from conftest import fixture_entry, fixture_records  # noqa: E402

from modie.cli import AccessionData, build_scene_document  # noqa: E402
from modie.config import LayoutConfig  # noqa: E402
from modie.layout import append_context  # noqa: E402
from modie.render import emit_svg  # noqa: E402


def main():
    out_dir = ROOT / "tests" / "golden"
    out_dir.mkdir(exist_ok=True)
    data = AccessionData(entry=fixture_entry(), records=fixture_records())
    document = build_scene_document(data, None, "greedy", LayoutConfig())
    for name in ("distribution", "classification", "types"):
        scene = append_context(getattr(document, name), document.context)
        path = out_dir / f"TEST01.{name}.svg"
        path.write_text(emit_svg(scene), encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
