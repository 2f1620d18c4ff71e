"""Exception hierarchy shared by all modules."""


class EgomotifError(Exception):
    """Base class for every error raised by the package."""


class ParseError(EgomotifError, ValueError):
    """Malformed input text (edge lists, signature strings)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CanonicalityError(ParseError):
    """A signature string whose blocks are not in sorted order."""


class ValidationError(EgomotifError, ValueError):
    """Data that parses but violates a model invariant."""


class ParameterError(EgomotifError, ValueError):
    """An argument outside its documented domain."""


class GraphTooShortError(ParameterError):
    """The snapshot sequence has no room for a window of order k."""


class ComparisonError(EgomotifError, ValueError):
    """Two results mined with incompatible parameters were compared."""


class SignificanceError(EgomotifError, ValueError):
    """Motif selection was requested without usable null models."""


class GenerationError(EgomotifError, RuntimeError):
    """A synthetic generator could not make progress."""
