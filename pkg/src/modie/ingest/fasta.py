"""FASTA parsing with UniProt-style header unwrapping."""

from __future__ import annotations

import re

from ..errors import EmptySequenceError, NoHeaderError
from ..model import ProteinEntry

_OS_RE = re.compile(r"\bOS=(.+?)(?:\s+[A-Z]{2}=|$)")


def _parse_header(header: str) -> tuple[str, str, str]:
    """Split a header line (without '>') into accession, name, species."""
    tokens = header.split()
    first = tokens[0] if tokens else ""
    parts = first.split("|")
    if len(parts) >= 3 and parts[1]:
        accession, name = parts[1], parts[2]
    else:
        accession = name = first
    match = _OS_RE.search(header)
    species = match.group(1).strip() if match else ""
    return accession, name, species


def parse_fasta(text: str) -> list[ProteinEntry]:
    """Parse standard FASTA text into sequence entries, in file order.

    Sequences are uppercased with line breaks removed.
    """
    entries: list[ProteinEntry] = []
    header: str | None = None
    chunks: list[str] = []

    def flush():
        if header is None:
            return
        sequence = "".join(chunks).upper()
        if not sequence:
            raise EmptySequenceError(f"no sequence lines after header {header!r}")
        accession, name, species = _parse_header(header)
        entries.append(ProteinEntry(accession, name, species, sequence))

    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith(">"):
            flush()
            header = line[1:].strip()
            chunks = []
        else:
            if header is None:
                raise NoHeaderError("sequence data before any '>' header")
            chunks.append(line.replace(" ", ""))
    flush()
    return entries
