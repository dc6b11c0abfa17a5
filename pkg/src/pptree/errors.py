"""Exception types shared across the package."""


class PPTreeError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateGroupingError(PPTreeError):
    """Raised when group structure is too thin to work with (fewer than
    two distinct classes, or an empty group)."""


class ProjectionError(PPTreeError):
    """Raised when a projection or its index cannot be computed."""


class SingularScatterError(ProjectionError):
    """Raised when the combined scatter matrix is numerically singular."""


class NoSeparationError(PPTreeError):
    """Raised when projected class means carry no usable separation."""


class NoCandidateSplitsError(PPTreeError):
    """Raised when a projected sample admits no candidate split point."""


class CsvFormatError(PPTreeError):
    """Raised on malformed delimited input, with row/column context."""


class ModelFormatError(PPTreeError):
    """Raised when a serialized model document cannot be decoded."""


class SplitFallbackWarning(UserWarning):
    """Issued when a split rule falls back to a simpler rule because its
    denominator vanished (rules 3/4 -> rule 1, rules 7/8 -> rule 5)."""
