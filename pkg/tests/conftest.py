"""Shared fixtures: a 10-residue synthetic dataset with hand-computed truth,
plus the small PDB structure files."""

from __future__ import annotations

from pathlib import Path

import pytest

from modie.model import ModificationRecord, ProteinEntry

DATA_DIR = Path(__file__).parent / "data"

# sequence positions:         1    2    3    4    5    6    7    8    9    10
#                             M    K    R    C    S    T    Y    W    L    V
FIXTURE_SEQUENCE = "MKRCSTYWLV"

# (position, residue, mod_type, classification, is_mutation), file order
FIXTURE_ROWS = [
    (4, "C", "Oxidation", "Chemical derivative", False),
    (4, "C", "Oxidation", "Chemical derivative", False),
    (4, "C", "Trioxidation", "Chemical derivative", False),
    (2, "K", "Acetylation", "Post-translational", False),
    (2, "K", "Methylation", "Post-translational", False),
    (3, "R", "Deamidation", "Artefact", True),
    (7, "Y", "Phosphorylation", "Post-translational", False),
    (8, "W", "Oxidation", "Chemical derivative", False),
    (3, "R", "Methylation", "Post-translational", False),
    (9, "L", "Oxidation", "Multiple", False),
    (3, "R", "Mutagenesis", "Artefact", True),
    (4, "C", "Nitrosylation", "Post-translational", False),
]

# hand-computed ground truth for the rows above
FIXTURE_COUNTS = (0, 2, 3, 4, 0, 0, 1, 1, 1, 0)
FIXTURE_TOTAL = 12
FIXTURE_MAX = (4, 4)  # (position, count)
FIXTURE_CLASS_DIST = [
    ("Post-translational", 5),
    ("Chemical derivative", 4),
    ("Artefact", 2),
    ("Multiple", 1),
]
FIXTURE_CLASS_ROWS = {
    "Chemical derivative": (0, 0, 0, 3, 0, 0, 0, 1, 0, 0),
    "Post-translational": (0, 2, 1, 1, 0, 0, 1, 0, 0, 0),
    "Artefact": (0, 0, 2, 0, 0, 0, 0, 0, 0, 0),
    "Multiple": (0, 0, 0, 0, 0, 0, 0, 0, 1, 0),
}
FIXTURE_CLASS_ROW_ORDER = (
    "Chemical derivative",
    "Post-translational",
    "Artefact",
    "Multiple",
)
FIXTURE_MUTATION_SITES = [(3, "R")]
FIXTURE_MUTATION_RECORDS = 2


def fixture_records(accession: str = "TEST01") -> list[ModificationRecord]:
    return [
        ModificationRecord(accession, pos, res, mod, cls, mut)
        for pos, res, mod, cls, mut in FIXTURE_ROWS
    ]


def fixture_entry(accession: str = "TEST01") -> ProteinEntry:
    return ProteinEntry(accession, "TEST_SYNTH", "Synthetic", FIXTURE_SEQUENCE)


def fixture_table_csv(accession: str = "TEST01") -> str:
    lines = ["accession,position,residue,mod_type,classification,is_mutation"]
    for pos, res, mod, cls, mut in FIXTURE_ROWS:
        lines.append(f"{accession},{pos},{res},{mod},{cls},{'true' if mut else 'false'}")
    return "\n".join(lines) + "\n"


def fixture_fasta(accession: str = "TEST01") -> str:
    return f">sp|{accession}|TEST_SYNTH Synthetic test protein OS=Synthetic OX=0\n{FIXTURE_SEQUENCE}\n"


@pytest.fixture
def records():
    return fixture_records()


@pytest.fixture
def entry():
    return fixture_entry()


@pytest.fixture
def xray_pdb_text():
    return (DATA_DIR / "mini_xray.pdb").read_text()


@pytest.fixture
def predicted_pdb_text():
    return (DATA_DIR / "mini_predicted.pdb").read_text()
