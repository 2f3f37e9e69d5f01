"""Legacy fixed-column PDB parsing and best-model selection.

Only the records this pipeline needs are read: HEADER/TITLE/EXPDTA for
identity and experiment kind, REMARK 2 for resolution, DBREF for the
author-numbering offset, and ATOM for the residue list.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..errors import MalformedRecordError, NoAtomsError

log = logging.getLogger(__name__)

THREE_TO_ONE = {
    "ALA": "A", "ARG": "R", "ASN": "N", "ASP": "D", "CYS": "C",
    "GLN": "Q", "GLU": "E", "GLY": "G", "HIS": "H", "ILE": "I",
    "LEU": "L", "LYS": "K", "MET": "M", "PHE": "F", "PRO": "P",
    "SER": "S", "THR": "T", "TRP": "W", "TYR": "Y", "VAL": "V",
    "MSE": "M",  # selenomethionine, customarily treated as MET
}

_RESOLUTION_RE = re.compile(r"REMARK\s+2\s+RESOLUTION\.\s+([0-9]+\.?[0-9]*)\s+ANGSTROM")
_PREDICTED_MARKERS = ("ALPHAFOLD", "PREDICTED MODEL", "COMPUTED MODEL", "THEORETICAL MODEL")


class SourceKind(Enum):
    XRAY = "xray"
    PREDICTED = "predicted"


@dataclass(frozen=True, slots=True)
class Chain:
    """One chain as a list of (author residue number, one-letter code)."""

    chain_id: str
    residues: tuple[tuple[int, str], ...]


@dataclass(frozen=True, slots=True)
class DbRef:
    """Cross-reference from author numbering to a database sequence."""

    chain_id: str
    database: str
    accession: str
    seq_begin: int  # first author residue number
    db_begin: int  # matching database (sequence) position

    @property
    def offset(self) -> int:
        """author_number - sequence position."""
        return self.seq_begin - self.db_begin


@dataclass(frozen=True, slots=True)
class StructureModel:
    """Parsed 3D structure reduced to residue-level bookkeeping."""

    source_id: str
    source_kind: SourceKind
    resolution: Optional[float]
    chains: tuple[Chain, ...]
    dbrefs: tuple[DbRef, ...] = ()
    accession_offset: int = 0

    def chain(self, chain_id: str) -> Optional[Chain]:
        for chain in self.chains:
            if chain.chain_id == chain_id:
                return chain
        return None

    def offset_for(self, chain_id: str, accession: str | None = None) -> int:
        """Offset for a chain, preferring its own DBREF (matching the
        accession when one is given), falling back to the model default."""
        candidates = [d for d in self.dbrefs if d.chain_id == chain_id]
        if accession is not None:
            matching = [d for d in candidates if d.accession == accession]
            if matching:
                return matching[0].offset
        if candidates:
            return candidates[0].offset
        return self.accession_offset

    def pick_chain(self, accession: str, preferred: str | None = None) -> Optional[str]:
        """preferred_chain, else the chain whose DBREF matches the accession,
        else 'A' when present, else the first chain."""
        if preferred is not None and self.chain(preferred) is not None:
            return preferred
        for ref in self.dbrefs:
            if ref.accession == accession and self.chain(ref.chain_id) is not None:
                return ref.chain_id
        if self.chain("A") is not None:
            return "A"
        return self.chains[0].chain_id if self.chains else None


def parse_pdb(
    text: str,
    source_id: str | None = None,
    kind: SourceKind | None = None,
) -> StructureModel:
    """Parse legacy fixed-column PDB text.

    One residue per distinct (chain, resSeq) among ATOM records with
    alternate location 'A' or blank; insertion-coded residues are skipped
    and reported via the module logger. ``kind`` overrides header detection.
    """
    resolution: float | None = None
    header_id: str | None = None
    predicted = False
    dbrefs: list[DbRef] = []
    # chain id -> {author_number: one-letter}; first occurrence wins
    chains: dict[str, dict[int, str]] = {}

    for line_no, line in enumerate(text.splitlines(), start=1):
        record = line[0:6]
        if record == "REMARK" and resolution is None:
            match = _RESOLUTION_RE.match(line)
            if match:
                resolution = float(match.group(1))
        elif record == "HEADER":
            header_id = line[62:66].strip() or None
            if any(marker in line.upper() for marker in _PREDICTED_MARKERS):
                predicted = True
        elif record in ("TITLE ", "EXPDTA"):
            upper = line.upper()
            if any(marker in upper for marker in _PREDICTED_MARKERS):
                predicted = True
        elif record == "DBREF ":
            try:
                dbrefs.append(
                    DbRef(
                        chain_id=line[12].strip(),
                        database=line[26:32].strip(),
                        accession=line[33:41].strip(),
                        seq_begin=int(line[14:18]),
                        db_begin=int(line[55:60]),
                    )
                )
            except (ValueError, IndexError):
                raise MalformedRecordError(line_no, f"bad DBREF record: {line!r}") from None
        elif record == "ATOM  ":
            if len(line) < 27:
                raise MalformedRecordError(line_no, f"ATOM line too short: {line!r}")
            alt_loc = line[16]
            if alt_loc not in (" ", "A"):
                continue
            i_code = line[26]
            chain_id = line[21]
            res_name = line[17:20].strip()
            try:
                res_seq = int(line[22:26])
            except ValueError:
                raise MalformedRecordError(
                    line_no, f"bad residue number {line[22:26]!r}"
                ) from None
            if i_code != " ":
                log.warning(
                    "skipping insertion-coded residue %s%d%s in chain %s",
                    res_name, res_seq, i_code, chain_id,
                )
                continue
            residues = chains.setdefault(chain_id, {})
            residues.setdefault(res_seq, THREE_TO_ONE.get(res_name, "X"))

    if not chains:
        raise NoAtomsError("no ATOM records found")

    if kind is None:
        kind = SourceKind.PREDICTED if predicted else SourceKind.XRAY

    unp = [d for d in dbrefs if d.database == "UNP"]
    offset_source = unp[0] if unp else (dbrefs[0] if dbrefs else None)
    offset = offset_source.offset if offset_source else 0

    chain_objs = tuple(
        Chain(chain_id, tuple(sorted(residues.items())))
        for chain_id, residues in chains.items()
    )
    return StructureModel(
        source_id=source_id or header_id or "UNKNOWN",
        source_kind=kind,
        resolution=resolution if kind is SourceKind.XRAY else None,
        chains=chain_objs,
        dbrefs=tuple(dbrefs),
        accession_offset=offset,
    )


def select_best_model(candidates: list[StructureModel]) -> StructureModel:
    """Pick the preferred model: the minimum-resolution X-ray structure.

    X-ray models without a stated resolution rank after every resolved one;
    predicted models are used only when no X-ray candidate exists. Ties
    break on the lexicographically smallest source_id, so the choice is
    independent of input order.
    """
    if not candidates:
        raise ValueError("candidate list is empty")
    xray = [m for m in candidates if m.source_kind is SourceKind.XRAY]
    if xray:
        return min(
            xray,
            key=lambda m: (m.resolution is None, m.resolution or 0.0, m.source_id),
        )
    return next(m for m in candidates if m.source_kind is SourceKind.PREDICTED)
