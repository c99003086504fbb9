"""Exception hierarchy for gemkit.

Every failure mode that callers are expected to distinguish gets its own
class; all of them derive from GemError so a CLI can catch the family.
"""

from __future__ import annotations


class GemError(Exception):
    """Base class for all gemkit errors."""


class GemSyntaxError(GemError):
    """Malformed GEM text or catalogue code line."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class InvolutionError(GemError):
    """A color row is not a self-inverse permutation of the vertex set."""


class FixedPointError(GemError):
    """A color row maps some vertex to itself (a loop edge)."""


class OddOrderError(GemError):
    """The vertex count is odd; perfect matchings need an even order."""


class DisconnectedError(GemError):
    """The union of all color matchings does not connect the vertex set."""


class ColorRangeError(GemError):
    """A color index is outside 0..n."""


class UnresolvedResidueError(GemError):
    """An operation needs every residue classified, but some are unknown."""

    def __init__(self, message: str, residues: tuple = ()):
        self.residues = residues
        super().__init__(message)


class NotADipoleError(GemError):
    """The requested vertex pair is not a dipole of the graph."""


class WouldAnnihilateError(GemError):
    """Cancelling the dipole would delete the whole order-2 graph."""


class DimensionMismatchError(GemError):
    """Binary operation on graphs with different color counts."""


class InvalidVertexError(GemError):
    """Vertex index outside the graph's vertex set."""


class HypothesisViolatedError(GemError):
    """A group-presentation shortcut was asked for outside its hypotheses."""

    def __init__(self, message: str, offending_residue=None):
        self.offending_residue = offending_residue
        super().__init__(message)


class OutOfTableRangeError(GemError):
    """classify_small asked outside the built-in table's range."""


class BudgetExceededError(GemError):
    """Census parameters exceed the configured enumeration budget."""
