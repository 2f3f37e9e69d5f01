"""Command-line pipeline: stats, render, color3d, serve.

Exit codes: 0 success, 2 I/O or usage error, 3 validation failure (report
still written), 4 structure fetch failure, 5 port busy. Diagnostics go to
stderr; stdout carries data only with --stdout.
"""

from __future__ import annotations

import json
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import click

from . import analytics, layout, ordering
from .config import LayoutConfig, load_layout_config
from .errors import ModieError
from .ingest import (
    fetch_structure,
    kind_for_structure_id,
    load_manifest,
    parse_fasta,
    parse_modification_table,
    parse_pdb,
    select_best_model,
)
from .model import (
    ModificationRecord,
    ProteinEntry,
    ValidationReport,
    Window,
    check_against_sequence,
)
from .render import (
    SceneDocument,
    emit_scene_json,
    emit_structure_coloring,
    emit_svg,
    emit_viewer_script,
)
from .server import make_server

VIEW_NAMES = {"dist": "distribution", "class": "classification", "type": "types"}


class WindowParam(click.ParamType):
    name = "window"

    def convert(self, value, param, ctx):
        if isinstance(value, Window):
            return value
        try:
            start, _, end = value.partition(":")
            return Window(int(start), int(end))
        except (ValueError, TypeError):
            self.fail(f"{value!r} is not a window of the form START:END", param, ctx)


def write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


@dataclass
class AccessionData:
    entry: ProteinEntry
    records: list[ModificationRecord]  # positions verified against the sequence


def load_dataset(
    table_path: Path, fasta_path: Path
) -> tuple[dict[str, AccessionData], ValidationReport]:
    """Parse and join the modification table with the FASTA sequences."""
    dialect = "tab" if table_path.suffix.lower() in (".tsv", ".tab") else "comma"
    records, report = parse_modification_table(
        table_path.read_text(encoding="utf-8"), dialect
    )
    entries = {e.accession: e for e in parse_fasta(fasta_path.read_text(encoding="utf-8"))}

    by_accession: dict[str, list[ModificationRecord]] = {}
    for record in records:
        by_accession.setdefault(record.accession, []).append(record)

    dataset: dict[str, AccessionData] = {}
    for accession, recs in by_accession.items():
        entry = entries.get(accession)
        if entry is None:
            report.add("unknown_accession", f"{accession}: no FASTA entry")
            continue
        report.extend(check_against_sequence(recs, entry))
        usable = [r for r in recs if r.position <= entry.length]
        dataset[accession] = AccessionData(entry=entry, records=usable)
    return dataset, report


def _fail_validation(ctx: click.Context, report: ValidationReport, out_dir: Path):
    write_atomic(out_dir / "validation_report.json", json.dumps(report.to_dict(), indent=2) + "\n")
    click.echo(f"validation issues: {len(report)} (see validation_report.json)", err=True)


def _has_hard_issues(report: ValidationReport) -> bool:
    # residue-letter mismatches are reported but non-fatal
    return any(i.code != "residue_mismatch" for i in report.issues)


def stats_document(data: AccessionData, row_key: str, exclude_mutations: bool) -> dict:
    records = data.records
    counted = [r for r in records if not (exclude_mutations and r.is_mutation)]
    stats = analytics.residue_counts(counted, data.entry.length)
    matrix = analytics.occupancy_matrix(counted, row_key, data.entry.length)
    patterns = analytics.find_repeated_patterns(matrix)
    return {
        "accession": data.entry.accession,
        "L": data.entry.length,
        "counts": list(stats.counts),
        "total": stats.total,
        "max_position": stats.max_position,
        "max_count": stats.max_count,
        "max_residue": data.entry.sequence[stats.max_position - 1],
        "hotspot_bins": [b.label for b in analytics.bin_hotspots(stats)],
        "classification_distribution": [list(x) for x in analytics.classification_distribution(counted)],
        "mod_type_distribution": [list(x) for x in analytics.mod_type_distribution(counted)],
        "mutation_sites": [list(x) for x in analytics.mutation_sites(records)],
        "residue_letter_frequency": [list(x) for x in analytics.residue_letter_frequency(counted)],
        "patterns": {
            "row_key": row_key,
            "row_labels": list(matrix.row_labels),
            "groups": [
                {"positions": list(g.positions), "signature": list(g.signature)}
                for g in patterns
            ],
        },
    }


def build_scene_document(
    data: AccessionData, window: Window | None, order_mode: str, config: LayoutConfig
) -> SceneDocument:
    records = data.records
    length = data.entry.length
    stats = analytics.residue_counts(records, length)
    class_matrix = analytics.occupancy_matrix(records, "classification", length)
    type_matrix = analytics.occupancy_matrix(records, "mod_type", length)

    def row_order(matrix):
        if matrix.n_rows == 0:
            return []
        if order_mode == "greedy":
            return ordering.seriate_rows(matrix)
        return list(range(matrix.n_rows))

    class_order = row_order(class_matrix)
    type_order = row_order(type_matrix)
    class_palette = layout.assign_palette(class_matrix.row_labels, config)
    type_palette = layout.assign_palette(type_matrix.row_labels, config)
    focus = (window or Window(1, length)).clamped(length)

    return SceneDocument(
        accession=data.entry.accession,
        length=length,
        classification_palette=class_palette,
        type_palette=type_palette,
        distribution=layout.layout_distribution_view(records, stats, focus, class_palette, config),
        classification=layout.layout_classification_view(
            class_matrix, class_order, records, focus, class_palette, config
        ),
        types=layout.layout_type_view(
            type_matrix, type_order, records, focus, type_palette, config
        ),
        context=layout.layout_context_bar(stats.counts, focus, config),
        orders=(
            ("classification", tuple(class_matrix.row_labels[i] for i in class_order)),
            ("types", tuple(type_matrix.row_labels[i] for i in type_order)),
        ),
    )


table_option = click.option(
    "--table", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True,
    help="Modification table (CSV, or TSV by extension).",
)
fasta_option = click.option(
    "--fasta", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True,
    help="FASTA file with one entry per accession.",
)
out_option = click.option(
    "--out", type=click.Path(file_okay=False, path_type=Path), required=True,
    help="Output directory.",
)
config_option = click.option(
    "--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None, help="Layout/palette JSON config.",
)
stdout_option = click.option("--stdout", "to_stdout", is_flag=True, help="Also write data to stdout.")


@click.group()
def main():
    """Protein modification statistics, ordering and visualization pipeline."""


@main.command("stats")
@table_option
@fasta_option
@out_option
@click.option("--row-key", type=click.Choice(["classification", "mod_type"]), default="mod_type",
              show_default=True, help="Row key for the repeated-pattern search.")
@click.option("--exclude-mutations", is_flag=True,
              help="Leave mutation records out of the count tallies.")
@stdout_option
@click.pass_context
def cmd_stats(ctx, table, fasta, out, row_key, exclude_mutations, to_stdout):
    """Write per-accession statistics JSON."""
    try:
        dataset, report = load_dataset(table, fasta)
    except (OSError, ModieError) as err:
        click.echo(f"error: {err}", err=True)
        ctx.exit(2)

    documents = {}
    for accession in sorted(dataset):
        doc = stats_document(dataset[accession], row_key, exclude_mutations)
        write_atomic(out / f"{accession}.stats.json", json.dumps(doc, indent=2, sort_keys=True) + "\n")
        documents[accession] = doc
        click.echo(f"{accession}: stats written", err=True)

    if to_stdout:
        click.echo(json.dumps(documents, indent=2, sort_keys=True))
    if report.issues:
        _fail_validation(ctx, report, out)
        if _has_hard_issues(report):
            ctx.exit(3)


@main.command("render")
@table_option
@fasta_option
@out_option
@click.option("--view", type=click.Choice(["dist", "class", "type", "all"]), default="all",
              show_default=True)
@click.option("--window", type=WindowParam(), default=None, help="Focus window START:END.")
@click.option("--order", "order_mode", type=click.Choice(["greedy", "none"]), default="greedy",
              show_default=True, help="Row ordering for the two row views.")
@config_option
@stdout_option
@click.pass_context
def cmd_render(ctx, table, fasta, out, view, window, order_mode, config_path, to_stdout):
    """Render SVG views and the scene JSON per accession."""
    try:
        dataset, report = load_dataset(table, fasta)
        config = load_layout_config(config_path) if config_path else LayoutConfig()
    except (OSError, ModieError) as err:
        click.echo(f"error: {err}", err=True)
        ctx.exit(2)

    for accession in sorted(dataset):
        document = build_scene_document(dataset[accession], window, order_mode, config)
        scene_json = emit_scene_json(document)
        write_atomic(out / f"{accession}.scene.json", scene_json)
        wanted = VIEW_NAMES.values() if view == "all" else [VIEW_NAMES[view]]
        for name in wanted:
            scene = getattr(document, name)
            composed = layout.append_context(scene, document.context)
            write_atomic(out / f"{accession}.{name}.svg", emit_svg(composed))
        if to_stdout:
            click.echo(scene_json, nl=False)
        click.echo(f"{accession}: rendered {', '.join(wanted)}", err=True)

    if report.issues:
        _fail_validation(ctx, report, out)
        if _has_hard_issues(report):
            ctx.exit(3)


@main.command("color3d")
@table_option
@fasta_option
@click.option("--manifest", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              required=True, help="JSON array of {accession, structure_ids, preferred_chain?}.")
@click.option("--cache", envvar="MODIE_CACHE", type=click.Path(file_okay=False, path_type=Path),
              required=True, help="Structure cache directory (env MODIE_CACHE).")
@out_option
@config_option
@stdout_option
@click.pass_context
def cmd_color3d(ctx, table, fasta, manifest, cache, out, config_path, to_stdout):
    """Fetch structures, pick the best model, write hot-spot colorings."""
    try:
        dataset, _ = load_dataset(table, fasta)
        entries = load_manifest(manifest).entries
        config = load_layout_config(config_path) if config_path else LayoutConfig()
    except (OSError, ModieError, ValueError, KeyError) as err:
        click.echo(f"error: {err}", err=True)
        ctx.exit(2)

    palette = layout.assign_palette([], config)
    failures = []
    documents = {}
    for entry in entries:
        accession = entry.accession
        data = dataset.get(accession)
        if data is None:
            failures.append((accession, "no records/sequence for accession"))
            continue
        try:
            candidates = []
            texts = {}
            for structure_id in entry.structure_ids:
                kind = kind_for_structure_id(structure_id)
                path = fetch_structure(structure_id, kind, cache)
                texts[structure_id] = path.read_text(encoding="utf-8")
                candidates.append(
                    parse_pdb(texts[structure_id], source_id=structure_id, kind=kind)
                )
            best = select_best_model(candidates)
            chain = best.pick_chain(accession, entry.preferred_chain)
            bins = analytics.bin_hotspots(
                analytics.residue_counts(data.records, data.entry.length)
            )
            coloring, coloring_json = emit_structure_coloring(best, chain, bins, palette, accession)
            write_atomic(out / f"{accession}.coloring.json", coloring_json)
            write_atomic(out / f"{accession}.coloring.pml", emit_viewer_script(coloring))
            # the web UI fetches the chosen model through cmd_serve
            write_atomic(out / f"{accession}.structure.pdb", texts[best.source_id])
            documents[accession] = json.loads(coloring_json)
            resolution = "-" if best.resolution is None else f"{best.resolution:.2f}"
            click.echo(f"{accession}\t{best.source_id}\t{resolution}", err=True)
        except (OSError, ModieError, KeyError) as err:
            failures.append((accession, str(err)))

    if to_stdout:
        click.echo(json.dumps(documents, indent=2, sort_keys=True))
    for accession, message in failures:
        click.echo(f"failed {accession}: {message}", err=True)
    if failures:
        ctx.exit(4)


@main.command("serve")
@click.option("--out", type=click.Path(exists=True, file_okay=False, path_type=Path),
              required=True, help="Directory of generated JSON/SVG outputs.")
@click.option("--ui", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Built UI bundle directory.")
@click.option("--port", type=int, default=8734, show_default=True)
@click.pass_context
def cmd_serve(ctx, out, ui, port):
    """Serve generated outputs (and the UI bundle) over local HTTP."""
    try:
        server = make_server(out, ui, port)
    except OSError as err:
        click.echo(f"cannot bind port {port}: {err}", err=True)
        ctx.exit(5)
    host, bound_port = server.server_address[:2]
    click.echo(f"serving on http://{host}:{bound_port}/ (Ctrl-C to stop)", err=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


if __name__ == "__main__":
    main(sys.argv[1:])
