"""Symbols and words.

A symbol is an interned string drawn from an unbounded name space; a word is
a tuple of symbols. The empty tuple is the empty word.
"""

from __future__ import annotations

import itertools
import re
import sys
import threading
from typing import Iterable, Iterator, Sequence

from monoidfa.errors import ParseError

Symbol = str
Word = tuple[Symbol, ...]

EMPTY: Word = ()

# Characters reserved by the text formats: word separator, product separator,
# pair delimiters and whitespace.
_SYMBOL_PATTERN = re.compile(r"^[^\s,.|()]+$")

EPSILON_TOKENS = frozenset({"_", "eps", "ϵ", "ε"})


class SymbolTable:
    """Interning table for the symbol space.

    Reads are lock-free; inserts are serialized.
    """

    def __init__(self) -> None:
        self._symbols: dict[str, Symbol] = {}
        self._lock = threading.Lock()

    def intern(self, name: str) -> Symbol:
        found = self._symbols.get(name)
        if found is not None:
            return found
        if not _SYMBOL_PATTERN.match(name) or name in EPSILON_TOKENS:
            raise ParseError(f"invalid symbol name '{name}'")
        with self._lock:
            return self._symbols.setdefault(name, sys.intern(name))

    def fresh(self, avoid: Iterable[Symbol], prefix: str = "e") -> Symbol:
        """Mint a symbol distinct from every symbol in ``avoid``."""
        taken = set(avoid)
        candidates = itertools.chain([prefix], (f"{prefix}{index}" for index in itertools.count(1)))
        return self.intern(next(c for c in candidates if c not in taken))

    def __len__(self) -> int:
        return len(self._symbols)

    def __contains__(self, name: object) -> bool:
        return name in self._symbols


SYMBOLS = SymbolTable()


def word(*names: str) -> Word:
    """Build a word from symbol names: ``word("a", "b")``."""
    return tuple(SYMBOLS.intern(name) for name in names)


def parse_word(text: str) -> Word:
    """Parse the comma syntax: ``a,b,a^-1``; ``_`` is the empty word."""
    text = text.strip()
    if text == "" or text in EPSILON_TOKENS:
        return EMPTY
    return tuple(SYMBOLS.intern(part.strip()) for part in text.split(","))


def format_word(w: Sequence[Symbol]) -> str:
    return ",".join(w) if w else "_"


def display_word(w: Sequence[Symbol]) -> str:
    """Human-oriented rendering: letters juxtaposed when all are one character."""
    if not w:
        return "ϵ"
    if all(len(symbol) == 1 for symbol in w):
        return "".join(w)
    return " ".join(w)


def parse_cli_word(text: str) -> Word:
    """Parse a word typed on the command line.

    Comma-separated input is split on commas; otherwise each character is a
    symbol, so ``aabb`` reads as four letters and ``ab^-1`` as two.
    """
    text = text.strip()
    if text == "" or text in EPSILON_TOKENS:
        return EMPTY
    if "," in text:
        return parse_word(text)
    return tuple(SYMBOLS.intern(token) for token in re.findall(r"[^\s](?:\^-1)?", text))


def words_up_to(alphabet: Iterable[Symbol], max_len: int) -> Iterator[Word]:
    """All words over ``alphabet`` of length at most ``max_len``, shortest first."""
    letters = sorted(set(alphabet))
    for length in range(max_len + 1):
        yield from itertools.product(letters, repeat=length)


def is_suffix(suffix: Sequence[Symbol], w: Sequence[Symbol]) -> bool:
    n = len(suffix)
    return n <= len(w) and tuple(w[len(w) - n:]) == tuple(suffix)


def safe_name(text: str) -> Symbol:
    """Intern ``text`` with characters reserved by the text formats replaced by ``_``."""
    return SYMBOLS.intern(re.sub(r"[\s,.|()]", "_", text) or "_0")
