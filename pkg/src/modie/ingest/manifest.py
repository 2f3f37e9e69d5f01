"""Accession-to-structure manifest (JSON array)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .pdb import SourceKind


@dataclass(frozen=True, slots=True)
class ManifestEntry:
    accession: str
    structure_ids: tuple[str, ...]
    preferred_chain: Optional[str] = None

    def __post_init__(self):
        if not self.structure_ids:
            raise ValueError(f"{self.accession}: structure_ids must be non-empty")


@dataclass(frozen=True, slots=True)
class Manifest:
    entries: tuple[ManifestEntry, ...]

    def __post_init__(self):
        accessions = [e.accession for e in self.entries]
        if len(set(accessions)) != len(accessions):
            raise ValueError("manifest accessions must be distinct")


def load_manifest(path: Path | str) -> Manifest:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, list):
        raise ValueError("manifest must be a JSON array")
    entries = tuple(
        ManifestEntry(
            accession=item["accession"],
            structure_ids=tuple(item["structure_ids"]),
            preferred_chain=item.get("preferred_chain"),
        )
        for item in raw
    )
    return Manifest(entries)


def kind_for_structure_id(structure_id: str) -> SourceKind:
    """4-character alphanumeric ids are PDB entries; everything else is
    treated as an accession into the predicted-model archive."""
    if len(structure_id) == 4 and structure_id.isalnum():
        return SourceKind.XRAY
    return SourceKind.PREDICTED
