"""Stack monoids.

Exact arithmetic on normal forms for three monoids of partial functions on
stack words (top of stack at the right end):

* ``M_cf`` - generated by pushes ``P_w`` and pops ``Q_w``; every non-zero
  element is uniquely ``Q_pop P_push`` (:class:`StackAction`).
* ``M_1`` - ``M_cf`` plus the emptiness test ``E``; non-zero elements are
  ``Q_pop P_push`` or ``Q_pop E P_push`` (:class:`ReadStackAction`).
* ``M_sa`` - pairs of ``M_1`` elements modelling a read-only cursor inside
  the stack (:class:`StackPairAction`).

Multiplication works on normal forms only. ``apply_action`` evaluates the
partial function and is what the tests use as the composition oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from monoidfa.errors import ParseError
from monoidfa.monoids import Monoid, split_pair
from monoidfa.symbols import SYMBOLS, Symbol, Word, format_word, is_suffix, parse_word


@dataclass(frozen=True)
class StackAction:
    """Element of M_cf: ``Q_pop P_push``, or the zero."""

    pop: Word = ()
    push: Word = ()
    zero: bool = False

    def __post_init__(self) -> None:
        if self.zero and (self.pop or self.push):
            raise ValueError("the zero action carries no words")

    @property
    def is_identity(self) -> bool:
        return not self.zero and not self.pop and not self.push

    def __str__(self) -> str:
        return format_action(self)


@dataclass(frozen=True)
class ReadStackAction:
    """Element of M_1: ``Q_pop P_push`` or ``Q_pop E P_push``, or the zero."""

    pop: Word = ()
    barrier: bool = False
    push: Word = ()
    zero: bool = False

    def __post_init__(self) -> None:
        if self.zero and (self.pop or self.push or self.barrier):
            raise ValueError("the zero action carries no words")

    @property
    def is_identity(self) -> bool:
        return not self.zero and not self.barrier and not self.pop and not self.push

    @classmethod
    def lift(cls, action: StackAction) -> ReadStackAction:
        if action.zero:
            return M1_ZERO
        return cls(pop=action.pop, push=action.push)

    def __str__(self) -> str:
        return format_action(self)


@dataclass(frozen=True)
class StackPairAction:
    """Element of M_1 x M_1; ``down`` acts on the part above the cursor."""

    down: ReadStackAction = ReadStackAction()
    up: ReadStackAction = ReadStackAction()

    @property
    def zero(self) -> bool:
        return self.down.zero or self.up.zero

    @property
    def is_identity(self) -> bool:
        return self.down.is_identity and self.up.is_identity

    def __str__(self) -> str:
        return f"({format_action(self.down)}|{format_action(self.up)})"


ONE = StackAction()
ZERO = StackAction(zero=True)
M1_ONE = ReadStackAction()
M1_ZERO = ReadStackAction(zero=True)
EMPTY_TEST = ReadStackAction(barrier=True)
PAIR_ONE = StackPairAction()

AnyAction = Union[StackAction, ReadStackAction]


def push(*names: str) -> StackAction:
    """``P_w`` for the word spelled by ``names``."""
    return StackAction(push=tuple(SYMBOLS.intern(n) for n in names))


def pop(*names: str) -> StackAction:
    """``Q_w`` for the word spelled by ``names``."""
    return StackAction(pop=tuple(SYMBOLS.intern(n) for n in names))


# === Partial-function semantics ===


def apply_action(action: AnyAction, u: Sequence[Symbol]) -> Optional[Word]:
    """Value of ``u`` under the action, or None where it is undefined."""
    if action.zero:
        return None
    u = tuple(u)
    if not is_suffix(action.pop, u):
        return None
    rest = u[: len(u) - len(action.pop)]
    if getattr(action, "barrier", False) and rest:
        return None
    return rest + action.push


def apply_pair(action: StackPairAction, state: tuple[Word, Word]) -> Optional[tuple[Word, Word]]:
    down = apply_action(action.down, state[0])
    if down is None:
        return None
    up = apply_action(action.up, state[1])
    if up is None:
        return None
    return (down, up)


# === Normal-form multiplication ===


def _cancel(pushed: Word, popped: Word) -> Optional[tuple[str, Word]]:
    """Resolve ``P_pushed Q_popped``.

    Returns ``("push", z)`` when it equals ``P_z``, ``("pop", z)`` when it
    equals ``Q_z`` (z non-empty), and None when it is zero.
    """
    if is_suffix(popped, pushed):
        return ("push", pushed[: len(pushed) - len(popped)])
    if is_suffix(pushed, popped):
        return ("pop", popped[: len(popped) - len(pushed)])
    return None


def mcf_multiply(x: StackAction, y: StackAction) -> StackAction:
    if x.zero or y.zero:
        return ZERO
    middle = _cancel(x.push, y.pop)
    if middle is None:
        return ZERO
    kind, z = middle
    if kind == "push":
        # Q_w P_{zx} Q_x P_y = Q_w P_{zy}
        return StackAction(pop=x.pop, push=z + y.push)
    # Q_w P_v Q_{zv} P_y = Q_{zw} P_y
    return StackAction(pop=z + x.pop, push=y.push)


def m1_multiply(x: ReadStackAction, y: ReadStackAction) -> ReadStackAction:
    if x.zero or y.zero:
        return M1_ZERO
    middle = _cancel(x.push, y.pop)
    if middle is None:
        return M1_ZERO
    kind, z = middle

    if not x.barrier and not y.barrier:
        if kind == "push":
            return ReadStackAction(pop=x.pop, push=z + y.push)
        return ReadStackAction(pop=z + x.pop, push=y.push)

    if x.barrier and not y.barrier:
        # Q_w E P_{zx} Q_x P_y = Q_w E P_{zy}; popping below an emptied stack is zero
        if kind == "push":
            return ReadStackAction(pop=x.pop, barrier=True, push=z + y.push)
        return M1_ZERO

    if y.barrier and not x.barrier:
        # Q_w P_v Q_{zv} E P_y = Q_{zw} E P_y; a surviving push fails the test
        if kind == "pop" or not z:
            return ReadStackAction(pop=z + x.pop, barrier=True, push=y.push)
        return M1_ZERO

    # Q_w E P_x Q_x E P_y = Q_w E P_y
    if kind == "push" and not z:
        return ReadStackAction(pop=x.pop, barrier=True, push=y.push)
    return M1_ZERO


def msa_multiply(x: StackPairAction, y: StackPairAction) -> StackPairAction:
    return StackPairAction(down=m1_multiply(x.down, y.down), up=m1_multiply(x.up, y.up))


def msa_generators(alphabet: Iterable[Symbol]) -> frozenset[StackPairAction]:
    """Cursor moves, top-of-stack pushes and pops, plus the identity pair."""
    gens = {PAIR_ONE}
    for symbol in alphabet:
        d = (SYMBOLS.intern(symbol),)
        p = ReadStackAction(push=d)
        q = ReadStackAction(pop=d)
        gens.add(StackPairAction(down=q, up=p))  # move up
        gens.add(StackPairAction(down=p, up=q))  # move down
        gens.add(StackPairAction(down=EMPTY_TEST, up=p))
        gens.add(StackPairAction(down=EMPTY_TEST, up=q))
    return frozenset(gens)


def generator_of(action: StackAction) -> Optional[tuple[str, Symbol]]:
    """``("P", d)`` or ``("Q", d)`` when the action is a single push or pop."""
    if action.zero:
        return None
    if not action.pop and len(action.push) == 1:
        return ("P", action.push[0])
    if not action.push and len(action.pop) == 1:
        return ("Q", action.pop[0])
    return None


def stack_symbols(actions: Iterable[AnyAction]) -> frozenset[Symbol]:
    found: set[Symbol] = set()
    for action in actions:
        found.update(action.pop)
        found.update(action.push)
    return frozenset(found)


# === Text syntax ===


def format_action(action: AnyAction) -> str:
    """``1``, ``0``, ``P:w``, ``Q:w``, ``Q:w.P:v``, ``Q:w.E.P:v``."""
    if action.zero:
        return "0"
    parts: list[str] = []
    if action.pop:
        parts.append(f"Q:{format_word(action.pop)}")
    if getattr(action, "barrier", False):
        parts.append("E")
    if action.push:
        parts.append(f"P:{format_word(action.push)}")
    return ".".join(parts) if parts else "1"


def _parse_factor(token: str) -> ReadStackAction:
    token = token.strip()
    if token == "1":
        return M1_ONE
    if token == "0":
        return M1_ZERO
    if token == "E":
        return EMPTY_TEST
    if token.startswith("P:"):
        return ReadStackAction(push=parse_word(token[2:]))
    if token.startswith("Q:"):
        return ReadStackAction(pop=parse_word(token[2:]))
    raise ParseError(f"unknown stack factor '{token}'")


def parse_read_action(text: str) -> ReadStackAction:
    """Parse any ``.``-separated product of factors into M_1 normal form."""
    text = text.strip()
    if not text:
        raise ParseError("empty stack action")
    result = M1_ONE
    for token in text.split("."):
        result = m1_multiply(result, _parse_factor(token))
    return result


def parse_action(text: str) -> StackAction:
    """Parse an M_cf element; the emptiness test is rejected."""
    parsed = parse_read_action(text)
    if parsed.barrier:
        raise ParseError(f"'E' is not an element of M_cf: '{text}'")
    if parsed.zero:
        return ZERO
    return StackAction(pop=parsed.pop, push=parsed.push)


def parse_pair_action(text: str) -> StackPairAction:
    down, up = split_pair(text)
    return StackPairAction(down=parse_read_action(down), up=parse_read_action(up))


# === Monoid objects ===


@dataclass(frozen=True)
class McfMonoid(Monoid[StackAction]):
    name: str = "mcf"

    @property
    def unit(self) -> StackAction:
        return ONE

    def multiply(self, x: StackAction, y: StackAction) -> StackAction:
        return mcf_multiply(x, y)

    def is_zero(self, x: StackAction) -> bool:
        return x.zero

    @property
    def has_zero(self) -> bool:
        return True

    def parse(self, text: str) -> StackAction:
        return parse_action(text)

    def format(self, x: StackAction) -> str:
        return format_action(x)


@dataclass(frozen=True)
class M1Monoid(Monoid[ReadStackAction]):
    name: str = "m1"

    @property
    def unit(self) -> ReadStackAction:
        return M1_ONE

    def multiply(self, x: ReadStackAction, y: ReadStackAction) -> ReadStackAction:
        return m1_multiply(x, y)

    def is_zero(self, x: ReadStackAction) -> bool:
        return x.zero

    @property
    def has_zero(self) -> bool:
        return True

    def parse(self, text: str) -> ReadStackAction:
        return parse_read_action(text)

    def format(self, x: ReadStackAction) -> str:
        return format_action(x)


@dataclass(frozen=True)
class MsaMonoid(Monoid[StackPairAction]):
    name: str = "msa"

    @property
    def unit(self) -> StackPairAction:
        return PAIR_ONE

    def multiply(self, x: StackPairAction, y: StackPairAction) -> StackPairAction:
        return msa_multiply(x, y)

    def is_zero(self, x: StackPairAction) -> bool:
        return x.zero

    @property
    def has_zero(self) -> bool:
        return True

    def parse(self, text: str) -> StackPairAction:
        return parse_pair_action(text)

    def format(self, x: StackPairAction) -> str:
        return str(x)

    def display(self, x: StackPairAction) -> str:
        return f"({format_action(x.down)}, {format_action(x.up)})"


MCF = McfMonoid()
M1 = M1Monoid()
MSA = MsaMonoid()
