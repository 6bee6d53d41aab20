"""Exception hierarchy shared by all glab modules.

The CLI maps GlabError (and its subclasses) to exit code 1; argparse usage
failures exit 2.
"""


class GlabError(Exception):
    """Base class for all glab errors."""


class CapacityError(GlabError):
    """A build would exceed a configured memory or transform budget."""


class RangeError(GlabError):
    """A query lies outside the range covered by a table."""


class DomainError(GlabError):
    """An argument violates a precondition of the operation."""


class ParseError(GlabError):
    """A zero-table line could not be parsed (carries the line number)."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class OrderError(GlabError):
    """Zero ordinates are not strictly ascending."""


class EmptyTableError(GlabError):
    """A zero table contains no ordinates."""


class FetchError(GlabError):
    """A zero-table download failed or the cache is cold while offline."""


class IntegrityError(GlabError):
    """Cached or serialized data does not match its recorded digest/header."""


class DegreeError(GlabError):
    """Grid size too small for the degree of the trigonometric polynomial."""
