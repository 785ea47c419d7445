"""Label monoids.

An automaton is generic over the monoid its edges are labelled by. A monoid
object supplies the unit, the product, an optional absorbing zero and the
text syntax for its elements. Monoids are frozen dataclasses so automata
holding them compare and hash by value.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Generic, Iterable, TypeVar

from monoidfa.errors import ParseError
from monoidfa.symbols import Word, display_word, format_word, parse_word

T = TypeVar("T")


class Monoid(ABC, Generic[T]):
    """A monoid with a text syntax for its elements."""

    name: str = "monoid"

    @property
    @abstractmethod
    def unit(self) -> T:
        ...

    @abstractmethod
    def multiply(self, x: T, y: T) -> T:
        ...

    def is_zero(self, x: T) -> bool:
        return False

    @property
    def has_zero(self) -> bool:
        return False

    def product(self, items: Iterable[T]) -> T:
        result = self.unit
        for item in items:
            result = self.multiply(result, item)
        return result

    @abstractmethod
    def parse(self, text: str) -> T:
        ...

    @abstractmethod
    def format(self, x: T) -> str:
        ...

    def display(self, x: T) -> str:
        return self.format(x)


@dataclass(frozen=True)
class FreeMonoid(Monoid[Word]):
    """Words under concatenation."""

    name: str = "free"

    @property
    def unit(self) -> Word:
        return ()

    def multiply(self, x: Word, y: Word) -> Word:
        return x + y

    def parse(self, text: str) -> Word:
        return parse_word(text)

    def format(self, x: Word) -> str:
        return format_word(x)

    def display(self, x: Word) -> str:
        return display_word(x)


@dataclass(frozen=True)
class TrivialMonoid(Monoid[str]):
    """The one-element monoid {1}."""

    name: str = "trivial"

    @property
    def unit(self) -> str:
        return "1"

    def multiply(self, x: str, y: str) -> str:
        return "1"

    def parse(self, text: str) -> str:
        if text.strip() != "1":
            raise ParseError(f"the trivial monoid has only the element 1, got '{text}'")
        return "1"

    def format(self, x: str) -> str:
        return "1"


@dataclass(frozen=True)
class ProductMonoid(Monoid[tuple]):
    """Direct product M x M'; elements are pairs written ``(x|y)``.

    A pair is treated as zero when either coordinate is zero, which is what
    the acceptance searches need for pruning.
    """

    left: Any
    right: Any
    name: str = "product"

    @property
    def unit(self) -> tuple:
        return (self.left.unit, self.right.unit)

    def multiply(self, x: tuple, y: tuple) -> tuple:
        return (self.left.multiply(x[0], y[0]), self.right.multiply(x[1], y[1]))

    def is_zero(self, x: tuple) -> bool:
        return self.left.is_zero(x[0]) or self.right.is_zero(x[1])

    @property
    def has_zero(self) -> bool:
        return self.left.has_zero or self.right.has_zero

    def parse(self, text: str) -> tuple:
        first, second = split_pair(text)
        return (self.left.parse(first), self.right.parse(second))

    def format(self, x: tuple) -> str:
        return f"({self.left.format(x[0])}|{self.right.format(x[1])})"

    def display(self, x: tuple) -> str:
        return f"({self.left.display(x[0])}, {self.right.display(x[1])})"


def split_pair(text: str) -> tuple[str, str]:
    """Split ``(x|y)`` at its top-level bar, respecting nested parentheses."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError(f"expected a pair '(x|y)', got '{text}'")
    inner = text[1:-1]
    depth = 0
    for index, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                break
        elif ch == "|" and depth == 0:
            return inner[:index], inner[index + 1:]
    raise ParseError(f"malformed pair '{text}'")


FREE = FreeMonoid()
TRIVIAL = TrivialMonoid()
WORD_PAIRS = ProductMonoid(FREE, FREE)
