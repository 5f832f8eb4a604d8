"""Exception hierarchy.

Configuration and input problems derive from ValueError, runtime numerical
problems from RuntimeError, so callers can catch by broad intent while the
CLI maps each class to a distinct exit status.
"""


class VarconnError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(VarconnError, ValueError):
    """Array shapes or channel counts are inconsistent."""


class DomainError(VarconnError, ValueError):
    """A value lies outside its mathematical or configured domain."""


class ParseError(VarconnError, ValueError):
    """A document or CSV file could not be parsed."""


class DataError(VarconnError, ValueError):
    """Parsed data contains values that cannot be used (e.g. NaN samples)."""


class NumericalError(VarconnError, RuntimeError):
    """A computation is refused or failed on numerical grounds."""


class EstimationError(VarconnError, RuntimeError):
    """Model fitting failed (too few samples, rank-deficient regressors)."""
