"""Exception hierarchy.

Every failure mode that callers may want to distinguish (and that the CLI
maps to an exit code) gets its own class.
"""


class RMatrixError(Exception):
    """Base class for all library errors."""


class SpaceMismatchError(RMatrixError):
    """Operands live on different spaces."""


class OrderMismatchError(RMatrixError):
    """Series operands have different truncation orders."""


class LeadingTermError(RMatrixError):
    """A series whose constant term must be 1 (or a coordinate) is not."""


class SubstitutionError(RMatrixError):
    """A variable occurring in a polynomial has no substitution image."""


class NotClassicalError(RMatrixError):
    """Input vector field fails the classical Yang-Baxter or unitarity check."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ExtractionError(RMatrixError):
    """Lie-algebra extraction from an r-matrix failed."""


class NotClosedError(ExtractionError):
    """Bracket of extracted basis fields leaves their span."""


class NotInSpanError(ExtractionError):
    """An element expected inside an extracted subspace is not in it."""


class CocycleNotBijectiveError(ExtractionError):
    """The pairing matrix between the two extracted subspaces is singular."""


class QuantizationError(RMatrixError):
    """Internal consistency failure while assembling a quantum R-matrix."""


class FormatError(RMatrixError):
    """A file or document does not parse against the expected format."""
