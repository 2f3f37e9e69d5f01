"""Modification table parsing (CSV/TSV) and canonical serialization.

The canonical dialect is comma-separated with the six columns in the order
of ``model.REQUIRED_FIELDS``; parse(serialize(records)) round-trips.
"""

from __future__ import annotations

import csv
import io

from ..errors import MissingHeaderError, RecordError
from ..model import REQUIRED_FIELDS, ModificationRecord, ValidationReport, validate_record

_DELIMITERS = {"comma": ",", "tab": "\t"}


def parse_modification_table(
    text: str, dialect: str = "comma"
) -> tuple[list[ModificationRecord], ValidationReport]:
    """Parse a header-first table into records plus a report of rejected rows.

    Column names are matched case-insensitively and may appear in any order;
    unknown columns are recorded as warnings and ignored.
    """
    delimiter = _DELIMITERS[dialect]
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise MissingHeaderError("table is empty; expected a header row") from None

    columns = [name.strip().lower() for name in header]
    report = ValidationReport()
    for name in columns:
        if name not in REQUIRED_FIELDS:
            report.warnings.append(f"unknown column {name!r} ignored")
    index = {name: columns.index(name) for name in REQUIRED_FIELDS if name in columns}
    missing = [name for name in REQUIRED_FIELDS if name not in index]
    if missing:
        raise MissingHeaderError(f"missing required columns: {', '.join(missing)}")

    records: list[ModificationRecord] = []
    for row in reader:
        if not row or all(not cell.strip() for cell in row):
            continue
        line = reader.line_num
        raw = {}
        for name, col in index.items():
            if col < len(row):
                raw[name] = row[col]
        try:
            records.append(validate_record(raw))
        except RecordError as err:
            report.add(err.code, str(err), line=line, field_name=err.field)
    return records, report


def serialize_modification_table(records: list[ModificationRecord]) -> str:
    """Emit the canonical CSV form (comma dialect, fixed column order)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(REQUIRED_FIELDS)
    for r in records:
        writer.writerow(
            [
                r.accession,
                str(r.position),
                r.residue,
                r.mod_type,
                r.classification,
                "true" if r.is_mutation else "false",
            ]
        )
    return out.getvalue()
