"""Exception hierarchy for monoidfa.

Everything derives from ValueError so callers can keep catching
``(FileNotFoundError, ValueError)`` at the edges.
"""

from __future__ import annotations

from typing import Optional


class MonoidFAError(ValueError):
    """Base class for all library errors."""


class InvalidStructureError(MonoidFAError):
    """An automaton, grammar, group table or diagram violates its invariants."""


class AlphabetMismatchError(MonoidFAError):
    """Two operands are defined over incompatible alphabets."""


class NotNormalizedError(MonoidFAError):
    """An operation received input that is not in the required normal form."""


class BudgetExceededError(MonoidFAError):
    """A configured resource bound was reached before an answer was found."""


class PumpingError(MonoidFAError):
    """The preconditions of a pumping decomposition do not hold."""


class ParseError(MonoidFAError):
    """Malformed text input, reported with its 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None, source: str = "<text>") -> None:
        self.message = message
        self.line = line
        self.source = source
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
