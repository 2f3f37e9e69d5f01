"""Per-residue statistics, distributions, occupancy matrices, patterns.

All operations are deterministic pure functions over immutable inputs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import PositionOutOfRangeError
from .model import HotspotBin, ModificationRecord, OccupancyMatrix


@dataclass(frozen=True, slots=True)
class ResidueStats:
    """Per-position modification tallies.

    ``counts[i]`` is the number of modifications at position ``i + 1``;
    ties for the maximum resolve to the smallest position.
    """

    counts: tuple[int, ...]
    total: int
    max_position: int
    max_count: int


@dataclass(frozen=True, slots=True)
class PatternGroup:
    """Positions (1-based, ascending) sharing one non-zero column vector."""

    positions: tuple[int, ...]
    signature: tuple[int, ...]


def residue_counts(records: Sequence[ModificationRecord], length: int) -> ResidueStats:
    counts = [0] * length
    for record in records:
        if record.position > length:
            raise PositionOutOfRangeError(record.position, length)
        counts[record.position - 1] += 1
    max_count = max(counts, default=0)
    max_position = counts.index(max_count) + 1 if counts else 1
    return ResidueStats(
        counts=tuple(counts),
        total=len(records),
        max_position=max_position,
        max_count=max_count,
    )


def bin_hotspots(stats: ResidueStats) -> list[HotspotBin]:
    return [HotspotBin.from_count(c) for c in stats.counts]


def _distribution(
    records: Iterable[ModificationRecord], key: Callable[[ModificationRecord], str]
) -> list[tuple[str, int]]:
    tally = Counter(key(r) for r in records)
    return sorted(tally.items(), key=lambda item: (-item[1], item[0]))


def classification_distribution(
    records: Iterable[ModificationRecord],
) -> list[tuple[str, int]]:
    """Classification counts, descending, ties alphabetical."""
    return _distribution(records, lambda r: r.classification)


def mod_type_distribution(
    records: Iterable[ModificationRecord],
) -> list[tuple[str, int]]:
    """Modification-type counts, descending, ties alphabetical."""
    return _distribution(records, lambda r: r.mod_type)


def residue_letter_frequency(
    records: Iterable[ModificationRecord],
) -> list[tuple[str, int]]:
    """Modification counts per residue letter, descending, ties alphabetical."""
    return _distribution(records, lambda r: r.residue)


def occupancy_matrix(
    records: Sequence[ModificationRecord], row_key: str, length: int
) -> OccupancyMatrix:
    """Counts per (row label, position); ``row_key`` is ``classification``
    or ``mod_type``. Row order is first appearance in the record list."""
    if row_key not in ("classification", "mod_type"):
        raise ValueError(f"row_key must be classification or mod_type, got {row_key!r}")
    key = (
        (lambda r: r.classification)
        if row_key == "classification"
        else (lambda r: r.mod_type)
    )
    labels: list[str] = []
    rows: dict[str, list[int]] = {}
    for record in records:
        if record.position > length:
            raise PositionOutOfRangeError(record.position, length)
        label = key(record)
        if label not in rows:
            labels.append(label)
            rows[label] = [0] * length
        rows[label][record.position - 1] += 1
    return OccupancyMatrix(
        row_labels=tuple(labels),
        length=length,
        counts=tuple(tuple(rows[label]) for label in labels),
    )


def mutation_sites(
    records: Iterable[ModificationRecord],
) -> list[tuple[int, str]]:
    """Distinct (position, residue) pairs of mutation records, ascending."""
    sites = {(r.position, r.residue) for r in records if r.is_mutation}
    return sorted(sites)


def find_repeated_patterns(matrix: OccupancyMatrix) -> list[PatternGroup]:
    """Group positions whose full column vectors are identical and non-zero.

    Only groups with at least two positions are reported, ordered by
    descending group size, then by first position.
    """
    groups: dict[tuple[int, ...], list[int]] = {}
    for position in range(1, matrix.length + 1):
        column = matrix.column(position)
        if any(column):
            groups.setdefault(column, []).append(position)
    result = [
        PatternGroup(positions=tuple(positions), signature=signature)
        for signature, positions in groups.items()
        if len(positions) >= 2
    ]
    result.sort(key=lambda g: (-len(g.positions), g.positions[0]))
    return result
