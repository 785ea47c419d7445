"""Language families F(M, X).

An automaton over M × Σ* accepts the word w when some successful path is
labelled (m, w) with m in the accept set X. X is given as a predicate so
that sets such as {1} or {(E, 1)} are expressed directly.
"""

from __future__ import annotations

import enum
import logging
from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence, Union

from monoidfa.automaton import Automaton, AutomatonBuilder, combine, map_labels
from monoidfa.errors import AlphabetMismatchError, InvalidStructureError
from monoidfa.monoids import FREE, TRIVIAL, Monoid, ProductMonoid
from monoidfa.rational import Dfa, split_letters
from monoidfa.stack import EMPTY_TEST, M1_ONE, MCF, MSA, StackPairAction
from monoidfa.symbols import Symbol
from monoidfa.transducer import Transducer, compose_automata, identity_on

logger = logging.getLogger(__name__)

SA_LABELS = ProductMonoid(MSA, FREE)

ClosureArgument = Union["FamilyAcceptor", Transducer, Automaton, Dfa]


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


# === Accept sets ===


@dataclass(frozen=True)
class UnitAcceptance:
    """X = {1}."""

    monoid: Monoid

    def __call__(self, value: Any) -> bool:
        return value == self.monoid.unit


@dataclass(frozen=True)
class StackAcceptance:
    """X = {(E, 1)} in M_sa."""

    def __call__(self, value: StackPairAction) -> bool:
        return value.down == EMPTY_TEST and value.up == M1_ONE


@dataclass(frozen=True)
class AnyAcceptance:
    """X = M."""

    def __call__(self, value: Any) -> bool:
        return True


def is_identity(monoid: Monoid) -> UnitAcceptance:
    return UnitAcceptance(monoid)


IS_STACK_ACCEPTING = StackAcceptance()
ALWAYS = AnyAcceptance()


@dataclass(frozen=True)
class FamilyAcceptor:
    automaton: Automaton
    accept: Callable[[Any], bool]

    def __post_init__(self) -> None:
        m = self.automaton.monoid
        if not isinstance(m, ProductMonoid) or m.right != FREE:
            raise InvalidStructureError("a family acceptor is labelled by pairs (m, word)")

    @property
    def monoid(self) -> Monoid:
        return self.automaton.monoid.left

    def letters(self) -> frozenset[Symbol]:
        return frozenset(a for e in self.automaton.edges for a in e.label[1])

    @classmethod
    def trivial(cls, nfa: Automaton) -> FamilyAcceptor:
        return embed_rational(nfa, TRIVIAL.unit, TRIVIAL, UnitAcceptance(TRIVIAL))

    @classmethod
    def cf(cls, automaton: Automaton) -> FamilyAcceptor:
        return cls(automaton, UnitAcceptance(MCF))

    @classmethod
    def sa(cls, automaton: Automaton) -> FamilyAcceptor:
        return cls(automaton, IS_STACK_ACCEPTING)


def accepts_bounded(
    f: FamilyAcceptor,
    w: Sequence[Symbol],
    budget: int,
    prune_zero: bool = True,
) -> Verdict:
    """Breadth-first search over (vertex, input position, monoid value).

    YES when a terminal vertex is reached with all of ``w`` read and an
    accepted value; NO when the reachable triples are exhausted; UNKNOWN when
    more than ``budget`` triples would be expanded.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    w = tuple(w)
    aut = f.automaton
    monoid = f.monoid
    pruning = prune_zero and monoid.has_zero
    start = (aut.initial, 0, monoid.unit)
    seen = {start}
    queue = deque([start])
    expanded = 0
    while queue:
        vertex, pos, value = queue.popleft()
        if vertex in aut.terminals and pos == len(w) and f.accept(value):
            logger.debug("accepted after %d expansions", expanded)
            return Verdict.YES
        expanded += 1
        if expanded > budget:
            logger.debug("budget of %d expansions exhausted", budget)
            return Verdict.UNKNOWN
        for e in aut.outgoing[vertex]:
            m, letters = e.label
            end = pos + len(letters)
            if w[pos:end] != letters:
                continue
            product = monoid.multiply(value, m)
            if pruning and monoid.is_zero(product):
                continue
            state = (e.target, end, product)
            if state not in seen:
                seen.add(state)
                queue.append(state)
    return Verdict.NO


def embed_rational(
    language: Automaton,
    x: Any,
    monoid: Monoid,
    accept: Optional[Callable[[Any], bool]] = None,
) -> FamilyAcceptor:
    """The transduction {x} × L: a leading (x, ϵ) edge, then L with unit monoid labels."""
    pair_monoid = ProductMonoid(monoid, FREE)
    body = map_labels(split_letters(language), lambda w: (monoid.unit, w), pair_monoid)
    b = AutomatonBuilder(pair_monoid)
    start = b.add_vertex("embed")
    b.set_initial(start)
    mapping = b.copy_from(body, with_terminals=True)
    b.add_edge(start, (x, ()), mapping[body.initial])
    return FamilyAcceptor(b.build(), accept if accept is not None else UnitAcceptance(monoid))


def _union(f: FamilyAcceptor, g: ClosureArgument) -> FamilyAcceptor:
    if not isinstance(g, FamilyAcceptor):
        raise TypeError("union needs two family acceptors")
    if f.automaton.monoid != g.automaton.monoid:
        raise AlphabetMismatchError("union needs acceptors over the same monoid")
    if f.accept != g.accept:
        raise AlphabetMismatchError("union needs acceptors with the same accept set")
    return FamilyAcceptor(combine("union", f.automaton, g.automaton), f.accept)


def _transduce(f: FamilyAcceptor, g: ClosureArgument) -> FamilyAcceptor:
    if not isinstance(g, Transducer):
        raise TypeError("transduce needs a transducer")
    stray = f.letters() - g.input_alphabet
    if stray:
        raise AlphabetMismatchError(
            f"letters {{{','.join(sorted(stray))}}} are not read by the transducer"
        )
    return FamilyAcceptor(compose_automata(f.automaton, g), f.accept)


def _intersect(f: FamilyAcceptor, g: ClosureArgument) -> FamilyAcceptor:
    if isinstance(g, Dfa):
        g = g.to_automaton()
    if not isinstance(g, Automaton) or g.monoid != FREE:
        raise TypeError("intersect needs a rational language")
    # letters outside R block the path
    return FamilyAcceptor(compose_automata(f.automaton, identity_on(g)), f.accept)


CLOSURES = {
    "union": _union,
    "transduce": _transduce,
    "intersect": _intersect,
}


def closure_combine(kind: str, f: FamilyAcceptor, arg: ClosureArgument) -> FamilyAcceptor:
    """L ∪ L′ = X(ρ ∪ ρ′), Lτ = X(ρ ∘ τ) and L ∩ R = X(ρ ∘ 1_R)."""
    if kind not in CLOSURES:
        raise ValueError(f"unknown closure '{kind}', expected one of {sorted(CLOSURES)}")
    return CLOSURES[kind](f, arg)


MONOIDS_BY_NAME = {
    "trivial": TRIVIAL,
    "mcf": MCF,
    "msa": MSA,
}


def default_acceptance(name: str) -> Callable[[Any], bool]:
    """The accept set conventionally paired with a named monoid."""
    if name == "msa":
        return IS_STACK_ACCEPTING
    if name not in MONOIDS_BY_NAME:
        raise ValueError(f"unknown monoid '{name}', expected one of {sorted(MONOIDS_BY_NAME)}")
    return UnitAcceptance(MONOIDS_BY_NAME[name])
