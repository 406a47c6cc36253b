"""Shared exception types."""


class DiagramError(ValueError):
    """Structurally invalid diagram or incompatible operands."""


class ParseError(ValueError):
    """Malformed input document; the message carries position information."""


class BudgetError(RuntimeError):
    """Requested size exceeds the configured enumeration budget."""


class VerificationError(RuntimeError):
    """A mechanical check failed; carries the offending object when known."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
