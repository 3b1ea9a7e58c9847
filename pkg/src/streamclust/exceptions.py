"""Exception types raised by streamclust."""


class StreamclustError(Exception):
    """Base class for all package errors."""


class ParseError(StreamclustError, ValueError):
    """A line of an input file (edge list, assignment, cover) could not be parsed."""

    def __init__(self, lineno: int, line: str, reason: str):
        self.lineno = lineno
        self.line = line
        self.reason = reason
        super().__init__(f"line {lineno}: {reason}: {line.rstrip()!r}")


class UndefinedInputError(StreamclustError, ValueError):
    """A metric was asked for on input where it has no value (empty set, zero weight...)."""


class MissingLabelError(StreamclustError, KeyError):
    """A node referenced by an edge has no community label in the partition."""

    def __init__(self, node):
        self.node = node
        super().__init__(node)

    def __str__(self):
        return f"node {self.node} has no community label"


class UndefinedAttachmentError(StreamclustError, ArithmeticError):
    """Normalized attachment to a zero-volume community with nonzero raw attachment."""
