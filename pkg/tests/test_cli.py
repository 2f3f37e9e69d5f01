"""End-to-end CLI behavior: outputs, exit codes, idempotence."""

import json
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest
from click.testing import CliRunner

from modie.cli import main

from conftest import DATA_DIR, fixture_fasta, fixture_table_csv

SVG_NS = "{http://www.w3.org/2000/svg}"


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def inputs(tmp_path):
    table = tmp_path / "mods.csv"
    fasta = tmp_path / "seqs.fasta"
    table.write_text(fixture_table_csv())
    fasta.write_text(fixture_fasta())
    return {"table": table, "fasta": fasta, "out": tmp_path / "out"}


def _args(inputs, *extra):
    return [
        "--table", str(inputs["table"]),
        "--fasta", str(inputs["fasta"]),
        "--out", str(inputs["out"]),
        *extra,
    ]


def test_stats_writes_expected_values(runner, inputs):
    result = runner.invoke(main, ["stats", *_args(inputs)])
    assert result.exit_code == 0, result.output
    doc = json.loads((inputs["out"] / "TEST01.stats.json").read_text())
    assert doc["total"] == 12
    assert doc["max_position"] == 4
    assert doc["max_count"] == 4
    assert doc["max_residue"] == "C"
    assert doc["mutation_sites"] == [[3, "R"]]
    assert doc["classification_distribution"][0] == ["Post-translational", 5]
    assert doc["residue_letter_frequency"][0] == ["C", 4]


def test_stats_idempotent(runner, inputs):
    runner.invoke(main, ["stats", *_args(inputs)])
    first = (inputs["out"] / "TEST01.stats.json").read_bytes()
    runner.invoke(main, ["stats", *_args(inputs)])
    assert (inputs["out"] / "TEST01.stats.json").read_bytes() == first


def test_stats_stdout_flag(runner, inputs):
    result = runner.invoke(main, ["stats", *_args(inputs, "--stdout")])
    payload = json.loads(result.stdout)
    assert payload["TEST01"]["total"] == 12


def test_stats_exclude_mutations(runner, inputs):
    result = runner.invoke(main, ["stats", *_args(inputs, "--exclude-mutations")])
    assert result.exit_code == 0
    doc = json.loads((inputs["out"] / "TEST01.stats.json").read_text())
    assert doc["total"] == 10
    assert doc["counts"][2] == 1  # position 3 keeps only the non-mutation record
    assert doc["mutation_sites"] == [[3, "R"]]  # sites still reported


def test_missing_table_exits_2_naming_path(runner, inputs, tmp_path):
    missing = tmp_path / "nope.csv"
    result = runner.invoke(
        main,
        ["stats", "--table", str(missing), "--fasta", str(inputs["fasta"]),
         "--out", str(inputs["out"])],
    )
    assert result.exit_code == 2
    assert "nope.csv" in result.output + result.stderr


def test_validation_failure_exits_3_report_written(runner, inputs, tmp_path):
    table = tmp_path / "bad.csv"
    table.write_text(
        fixture_table_csv() + "TEST01,0,C,Oxidation,Artefact,false\n"
    )
    result = runner.invoke(
        main,
        ["stats", "--table", str(table), "--fasta", str(inputs["fasta"]),
         "--out", str(inputs["out"])],
    )
    assert result.exit_code == 3
    report = json.loads((inputs["out"] / "validation_report.json").read_text())
    assert report["issues"][0]["code"] == "bad_position"
    # valid accession still processed
    assert (inputs["out"] / "TEST01.stats.json").exists()


def test_unknown_accession_exits_3(runner, inputs, tmp_path):
    table = tmp_path / "extra.csv"
    table.write_text(
        fixture_table_csv() + "NOSEQ1,1,M,Oxidation,Artefact,false\n"
    )
    result = runner.invoke(
        main,
        ["stats", "--table", str(table), "--fasta", str(inputs["fasta"]),
         "--out", str(inputs["out"])],
    )
    assert result.exit_code == 3


def test_render_all_writes_three_svgs_and_scene(runner, inputs):
    result = runner.invoke(main, ["render", *_args(inputs)])
    assert result.exit_code == 0, result.output
    out = inputs["out"]
    files = sorted(p.name for p in out.iterdir())
    assert files == [
        "TEST01.classification.svg",
        "TEST01.distribution.svg",
        "TEST01.scene.json",
        "TEST01.types.svg",
    ]
    scene = json.loads((out / "TEST01.scene.json").read_text())
    assert scene["version"] == 1
    assert scene["L"] == 10


def test_render_byte_identical_across_runs(runner, inputs):
    runner.invoke(main, ["render", *_args(inputs)])
    snapshots = {
        p.name: p.read_bytes() for p in inputs["out"].iterdir()
    }
    runner.invoke(main, ["render", *_args(inputs)])
    for p in inputs["out"].iterdir():
        assert p.read_bytes() == snapshots[p.name]


def test_render_single_view(runner, inputs):
    result = runner.invoke(main, ["render", *_args(inputs, "--view", "dist")])
    assert result.exit_code == 0
    names = sorted(p.name for p in inputs["out"].iterdir())
    assert names == ["TEST01.distribution.svg", "TEST01.scene.json"]


def test_render_order_none_keeps_first_appearance(runner, inputs):
    runner.invoke(main, ["render", *_args(inputs, "--order", "none")])
    scene = json.loads((inputs["out"] / "TEST01.scene.json").read_text())
    assert scene["orders"]["classification"] == [
        "Chemical derivative", "Post-translational", "Artefact", "Multiple",
    ]


def test_render_window_crosses(runner, tmp_path):
    # four mutation sites on R; window keeps exactly those crosses
    sites = (296, 351, 362, 376)
    sequence = "".join("R" if p in sites else "A" for p in range(1, 663))
    rows = ["accession,position,residue,mod_type,classification,is_mutation"]
    for p in sites:
        rows.append(f"O00571X,{p},R,Mutagenesis,Artefact,true")
    rows.append("O00571X,100,A,Oxidation,Chemical derivative,false")
    table = tmp_path / "t.csv"
    fasta = tmp_path / "f.fasta"
    table.write_text("\n".join(rows) + "\n")
    fasta.write_text(f">O00571X synthetic\n{sequence}\n")
    out = tmp_path / "out"

    runner = CliRunner()
    result = runner.invoke(
        main,
        ["render", "--table", str(table), "--fasta", str(fasta), "--out", str(out),
         "--view", "class", "--window", "290:380"],
    )
    assert result.exit_code == 0, result.output
    svg = (out / "O00571X.classification.svg").read_text()
    root = ET.fromstring(svg)
    assert len(root.findall(f".//{SVG_NS}path")) == 4


def test_render_bad_window_usage_error(runner, inputs):
    result = runner.invoke(main, ["render", *_args(inputs, "--window", "x:y")])
    assert result.exit_code == 2


@pytest.fixture
def structure_cache(tmp_path):
    cache = tmp_path / "cache"
    (cache / "xray").mkdir(parents=True)
    (cache / "predicted").mkdir(parents=True)
    xray_text = (DATA_DIR / "mini_xray.pdb").read_text()
    (cache / "xray" / "1TST.pdb").write_text(xray_text)
    worse = xray_text.replace("1.90 ANGSTROMS", "2.50 ANGSTROMS").replace("1TST", "2TST")
    (cache / "xray" / "2TST.pdb").write_text(worse)
    (cache / "predicted" / "TEST01.pdb").write_text(
        (DATA_DIR / "mini_predicted.pdb").read_text()
    )
    return cache


def _manifest(tmp_path, entries):
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps(entries))
    return path


def test_color3d_picks_min_resolution_from_cache(runner, inputs, structure_cache, tmp_path):
    manifest = _manifest(
        tmp_path,
        [{"accession": "TEST01", "structure_ids": ["2TST", "1TST", "TEST01"]}],
    )
    result = runner.invoke(
        main,
        ["color3d", *_args(inputs), "--manifest", str(manifest),
         "--cache", str(structure_cache)],
    )
    assert result.exit_code == 0, result.output
    payload = json.loads((inputs["out"] / "TEST01.coloring.json").read_text())
    assert payload["source_id"] == "1TST"
    assert [e["bin"] for e in payload["entries"]] == ["none", "low", "low", "low", "none"]
    assert "1TST\t1.90" in result.stderr.replace("\t\t", "\t") or "1TST" in result.stderr
    assert (inputs["out"] / "TEST01.coloring.pml").exists()
    # chosen model is copied next to the coloring for the web UI
    structure = (inputs["out"] / "TEST01.structure.pdb").read_text()
    assert "RESOLUTION.    1.90" in structure


def test_color3d_env_cache(runner, inputs, structure_cache, tmp_path):
    manifest = _manifest(tmp_path, [{"accession": "TEST01", "structure_ids": ["1TST"]}])
    result = runner.invoke(
        main,
        ["color3d", *_args(inputs), "--manifest", str(manifest)],
        env={"MODIE_CACHE": str(structure_cache)},
    )
    assert result.exit_code == 0, result.output


def test_color3d_failure_isolated_exit_4(runner, inputs, structure_cache, tmp_path):
    manifest = _manifest(
        tmp_path,
        [
            {"accession": "TEST01", "structure_ids": ["1TST"]},
            {"accession": "MISSING", "structure_ids": ["1TST"]},
        ],
    )
    result = runner.invoke(
        main,
        ["color3d", *_args(inputs), "--manifest", str(manifest),
         "--cache", str(structure_cache)],
    )
    assert result.exit_code == 4
    # the healthy accession still completed
    assert (inputs["out"] / "TEST01.coloring.json").exists()
    assert "MISSING" in result.stderr


def test_color3d_preferred_chain(runner, inputs, structure_cache, tmp_path):
    manifest = _manifest(
        tmp_path,
        [{"accession": "TEST01", "structure_ids": ["1TST"], "preferred_chain": "B"}],
    )
    result = runner.invoke(
        main,
        ["color3d", *_args(inputs), "--manifest", str(manifest),
         "--cache", str(structure_cache)],
    )
    assert result.exit_code == 0
    payload = json.loads((inputs["out"] / "TEST01.coloring.json").read_text())
    assert {e["chain"] for e in payload["entries"]} == {"B"}
