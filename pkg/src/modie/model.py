"""Core value types: modification records, protein entries, count matrices.

All types are immutable value objects and safe to share between threads.
Positions are 1-based throughout; column ``c`` of a matrix corresponds to
sequence position ``c + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Mapping, Optional

from .errors import RecordError

# The 20 standard amino acids plus 'X' (unknown).
STANDARD_RESIDUES = frozenset("ACDEFGHIKLMNPQRSTVWYX")
# Sequences may additionally carry extended IUPAC codes (B, J, O, U, Z).
SEQUENCE_LETTERS = STANDARD_RESIDUES | frozenset("BJOUZ")

REQUIRED_FIELDS = (
    "accession",
    "position",
    "residue",
    "mod_type",
    "classification",
    "is_mutation",
)

_TRUE_WORDS = frozenset({"true", "1", "yes"})
_FALSE_WORDS = frozenset({"false", "0", "no"})


@dataclass(frozen=True, slots=True)
class ModificationRecord:
    """One modification event on one residue of one protein."""

    accession: str
    position: int  # 1-based
    residue: str  # single uppercase letter
    mod_type: str
    classification: str
    is_mutation: bool


@dataclass(frozen=True, slots=True)
class ProteinEntry:
    """A protein sequence with identity metadata."""

    accession: str
    name: str
    species: str
    sequence: str

    def __post_init__(self):
        if not self.sequence:
            raise ValueError(f"{self.accession}: empty sequence")
        bad = set(self.sequence) - SEQUENCE_LETTERS
        if bad:
            raise ValueError(
                f"{self.accession}: invalid sequence letters {sorted(bad)}"
            )

    @property
    def length(self) -> int:
        return len(self.sequence)


@dataclass(frozen=True, slots=True)
class OccupancyMatrix:
    """Labeled rows of per-position modification counts.

    ``counts[r][c]`` is the number of records with row label ``row_labels[r]``
    at sequence position ``c + 1``.
    """

    row_labels: tuple[str, ...]
    length: int
    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(set(self.row_labels)) != len(self.row_labels):
            raise ValueError("row labels must be distinct")
        if len(self.counts) != len(self.row_labels):
            raise ValueError("one counts row per label required")
        for label, row in zip(self.row_labels, self.counts):
            if len(row) != self.length:
                raise ValueError(f"row {label!r} has length {len(row)} != {self.length}")
            if any(v < 0 for v in row):
                raise ValueError(f"row {label!r} has negative counts")

    @property
    def n_rows(self) -> int:
        return len(self.row_labels)

    def row(self, label: str) -> tuple[int, ...]:
        return self.counts[self.row_labels.index(label)]

    def column(self, position: int) -> tuple[int, ...]:
        """Full column vector for a 1-based sequence position."""
        return tuple(row[position - 1] for row in self.counts)


class HotspotBin(IntEnum):
    """Per-residue modification count bin with fixed boundaries 0 / 1-10 / 11+."""

    NONE = 0
    LOW = 1
    HIGH = 2

    @classmethod
    def from_count(cls, count: int) -> "HotspotBin":
        if count < 0:
            raise ValueError(f"negative count {count}")
        if count == 0:
            return cls.NONE
        if count <= 10:
            return cls.LOW
        return cls.HIGH

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass(frozen=True, slots=True)
class Window:
    """Inclusive focus range in sequence positions."""

    start: int
    end: int

    def __post_init__(self):
        if self.start < 1:
            raise ValueError(f"window start {self.start} < 1")
        if self.end < self.start:
            raise ValueError(f"window end {self.end} < start {self.start}")

    def clamped(self, length: int) -> "Window":
        """Clamp against a sequence of the given length; total for start >= 1."""
        end = min(self.end, length)
        start = min(self.start, end)
        return Window(start, end)

    def __contains__(self, position: int) -> bool:
        return self.start <= position <= self.end

    @property
    def span(self) -> int:
        return self.end - self.start + 1


def validate_record(raw: Mapping[str, str]) -> ModificationRecord:
    """Turn a map of raw string fields into a typed record.

    Total: every input yields either a record or exactly one RecordError
    naming the offending field.
    """
    values = {}
    for name in REQUIRED_FIELDS:
        if name not in raw:
            raise RecordError("missing_field", name, f"missing field {name!r}")
        value = str(raw[name]).strip()
        if not value:
            raise RecordError("empty_value", name, f"empty value for {name!r}")
        values[name] = value

    try:
        position = int(values["position"])
    except ValueError:
        raise RecordError(
            "bad_position", "position", f"position {values['position']!r} is not an integer"
        ) from None
    if position < 1:
        raise RecordError("bad_position", "position", f"position {position} < 1")

    residue = values["residue"].upper()
    if len(residue) != 1 or residue not in STANDARD_RESIDUES:
        raise RecordError(
            "bad_residue", "residue", f"residue {values['residue']!r} is not a one-letter code"
        )

    flag = values["is_mutation"].lower()
    if flag in _TRUE_WORDS:
        is_mutation = True
    elif flag in _FALSE_WORDS:
        is_mutation = False
    else:
        raise RecordError(
            "bad_flag", "is_mutation", f"is_mutation {values['is_mutation']!r} is not a boolean"
        )

    return ModificationRecord(
        accession=values["accession"],
        position=position,
        residue=residue,
        mod_type=values["mod_type"],
        classification=values["classification"],
        is_mutation=is_mutation,
    )


@dataclass(frozen=True, slots=True)
class ValidationIssue:
    """One reported problem; ``line`` is set for table rows."""

    code: str
    message: str
    line: Optional[int] = None
    field: Optional[str] = None


@dataclass(slots=True)
class ValidationReport:
    """Collected non-fatal problems from parsing or cross-checking."""

    issues: list[ValidationIssue] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def add(self, code: str, message: str, line: int | None = None, field_name: str | None = None):
        self.issues.append(ValidationIssue(code, message, line, field_name))

    def extend(self, other: "ValidationReport"):
        self.issues.extend(other.issues)
        self.warnings.extend(other.warnings)

    @property
    def ok(self) -> bool:
        return not self.issues

    def __len__(self) -> int:
        return len(self.issues)

    def to_dict(self) -> dict:
        return {
            "issues": [
                {"code": i.code, "message": i.message, "line": i.line, "field": i.field}
                for i in self.issues
            ],
            "warnings": list(self.warnings),
        }


def check_against_sequence(
    records: Iterable[ModificationRecord], entry: ProteinEntry
) -> ValidationReport:
    """Cross-check records against the protein sequence.

    Positions beyond the sequence are issues (the record cannot be tallied);
    residue-letter mismatches are reported but the record is kept.
    """
    report = ValidationReport()
    for i, record in enumerate(records):
        if record.position > entry.length:
            report.add(
                "position_out_of_range",
                f"{record.accession} record {i}: position {record.position} > "
                f"sequence length {entry.length}",
            )
        elif record.residue != entry.sequence[record.position - 1]:
            report.add(
                "residue_mismatch",
                f"{record.accession} record {i}: residue {record.residue} != "
                f"sequence {entry.sequence[record.position - 1]} at position {record.position}",
            )
    return report
