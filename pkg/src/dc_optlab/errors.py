"""Exception hierarchy shared across the package.

I/O failures are reported with the builtin ``OSError``; everything else
raises one of the semantic classes below so callers can branch on intent
rather than on message text.
"""


class DCOptLabError(Exception):
    """Base class for every error raised by dc_optlab."""


class ValidationError(DCOptLabError, ValueError):
    """A parameter or configuration violates a stated bound."""


class DomainError(DCOptLabError, ValueError):
    """A mathematical function was evaluated outside its real domain."""


class DimensionError(DCOptLabError, ValueError):
    """Array shapes do not agree."""


class NumericalError(DCOptLabError, ArithmeticError):
    """A computation produced non-finite values."""


class FormatError(DCOptLabError, ValueError):
    """A file does not conform to its schema.

    ``line`` is the 1-based line number of the offending row when known.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class EmptyDatasetError(DCOptLabError, ValueError):
    """An operation that needs at least one sample received none."""
