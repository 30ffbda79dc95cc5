"""
Exception hierarchy shared across the package.

Every error raised on purpose derives from XmlcError and from the builtin
exception a caller would naturally expect (ValueError for bad data,
RuntimeError for failures during optimization), so callers can catch either.
"""


class XmlcError(Exception):
    """Base class for all package errors."""


class DatasetFormatError(XmlcError, ValueError):
    """A dataset file could not be parsed.

    Attributes:
        line_number: 1-based line of the offending record (None if not tied to a line)
    """

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class DimensionMismatchError(XmlcError, ValueError):
    """Feature or label dimensions of two objects disagree."""


class ModelFormatError(XmlcError, ValueError):
    """A persisted model file is corrupt, truncated or of an unknown version."""


class NumericalError(XmlcError, RuntimeError):
    """Optimization produced non-finite values."""


class FoldError(XmlcError, RuntimeError):
    """A trainer failed inside cross validation.

    Attributes:
        fold: 0-based index of the failing fold
    """

    def __init__(self, fold: int, message: str):
        self.fold = fold
        super().__init__(f"fold {fold}: {message}")
