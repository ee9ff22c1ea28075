"""
Exception hierarchy.

Every error raised on purpose by the package derives from SptError, so
callers (the CLI in particular) can separate "the request was invalid"
from genuine bugs.  Subclasses also inherit from the closest builtin
(ValueError, KeyError) so plain `except ValueError` keeps working.
"""

from __future__ import annotations


class SptError(Exception):
    """Root of all package errors."""


class DimensionError(SptError, ValueError):
    """Operands act on different numbers of qubits, or an index is out of range."""


class UnknownVertexError(SptError, KeyError):
    """A vertex, link or path id that the graph does not define."""

    def __str__(self) -> str:
        # KeyError quotes its argument; keep the message readable.
        return str(self.args[0]) if self.args else ""


class GraphError(SptError, ValueError):
    """Invalid builder arguments or a GraphSpec that violates its invariants."""


class SizeLimitError(SptError):
    """Dense simulation refused because the system is above the size cap."""


class NonHermitianError(SptError, ValueError):
    """An expectation value was requested for a string with phase ±i."""


class ProtocolError(SptError):
    """A protocol step cannot be carried out on the given graph, path or plan."""


class ConfigError(SptError):
    """Unparsable or schema-invalid configuration.

    `field` is the dotted location of the offending value when known,
    e.g. "sweep.epsilon[3]" or "line 4 column 12".
    """

    def __init__(self, message: str, field: str = "") -> None:
        super().__init__(message)
        self.field = field

    def __str__(self) -> str:
        msg = super().__str__()
        return f"{self.field}: {msg}" if self.field else msg


class InvalidParameterError(SptError, ValueError):
    """A numeric parameter outside its allowed range (probability, shots, α)."""
