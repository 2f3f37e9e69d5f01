"""File-format parsing, structure fetching and model selection."""

from .fasta import parse_fasta
from .fetch import fetch_structure, urllib_transport
from .manifest import Manifest, ManifestEntry, kind_for_structure_id, load_manifest
from .pdb import Chain, DbRef, SourceKind, StructureModel, parse_pdb, select_best_model
from .tables import parse_modification_table, serialize_modification_table

__all__ = [
    "Chain",
    "DbRef",
    "Manifest",
    "ManifestEntry",
    "SourceKind",
    "StructureModel",
    "fetch_structure",
    "kind_for_structure_id",
    "load_manifest",
    "parse_fasta",
    "parse_modification_table",
    "parse_pdb",
    "select_best_model",
    "serialize_modification_table",
    "urllib_transport",
]
