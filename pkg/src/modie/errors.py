"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class ModieError(Exception):
    """Base class for all errors raised by this package."""


class RecordError(ModieError, ValueError):
    """A raw modification record failed validation.

    Carries the machine-readable ``code`` (missing_field, bad_position,
    bad_residue, empty_value, bad_flag) and the offending ``field``.
    """

    def __init__(self, code: str, field: str, message: str):
        super().__init__(message)
        self.code = code
        self.field = field


class MissingHeaderError(ModieError, ValueError):
    """Table has no header row or lacks a required column."""


class NoHeaderError(ModieError, ValueError):
    """FASTA text contains sequence data before any '>' header."""


class EmptySequenceError(ModieError, ValueError):
    """FASTA header with no sequence lines."""


class NoAtomsError(ModieError, ValueError):
    """PDB text contains no ATOM records."""


class MalformedRecordError(ModieError, ValueError):
    """A fixed-column PDB line could not be parsed."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class NotFoundError(ModieError):
    """Remote file does not exist (HTTP 404)."""


class NetworkError(ModieError):
    """Download failed for a reason other than 404."""


class ChecksumMismatchError(ModieError):
    """Downloaded bytes do not match the configured digest."""


class PositionOutOfRangeError(ModieError, ValueError):
    """A record position exceeds the sequence length."""

    def __init__(self, position: int, length: int):
        super().__init__(f"position {position} outside sequence of length {length}")
        self.position = position
        self.length = length


class LengthMismatchError(ModieError, ValueError):
    """Two bit rows of different lengths were compared."""


class EmptyMatrixError(ModieError, ValueError):
    """Seriation requires at least one row."""


class BadPermutationError(ModieError, ValueError):
    """Row order is not a permutation of the matrix rows."""


class WindowOutOfRangeError(ModieError, ValueError):
    """Window extends beyond the sequence covered by the data."""


class ChainNotFoundError(ModieError, KeyError):
    """Requested chain is absent from the structure model."""


class TooManyCategoriesWarning(UserWarning):
    """More categories than distinct palette colors; colors will cycle."""
