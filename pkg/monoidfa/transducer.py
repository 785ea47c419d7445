"""Rational relations between free monoids.

A transducer is an automaton over the product monoid Σ* × Δ*; it accepts the
set of word pairs labelling its successful paths.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from monoidfa.automaton import (
    Automaton,
    AutomatonBuilder,
    combine,
    enumerate_labels,
    map_labels,
    trim,
    word_automaton,
)
from monoidfa.errors import AlphabetMismatchError, InvalidStructureError
from monoidfa.monoids import FREE, WORD_PAIRS, ProductMonoid
from monoidfa.rational import Dfa, split_letters
from monoidfa.symbols import Symbol, Word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Transducer:
    automaton: Automaton
    input_alphabet: frozenset[Symbol] = field(default_factory=frozenset)
    output_alphabet: frozenset[Symbol] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.automaton.monoid != WORD_PAIRS:
            raise InvalidStructureError("a transducer is labelled by word pairs")
        used_in = {a for e in self.automaton.edges for a in e.label[0]}
        used_out = {a for e in self.automaton.edges for a in e.label[1]}
        # declared alphabets widen the letters found on edges
        object.__setattr__(self, "input_alphabet", frozenset(self.input_alphabet) | used_in)
        object.__setattr__(self, "output_alphabet", frozenset(self.output_alphabet) | used_out)


def letterize(t: Transducer) -> Transducer:
    """Split every label into steps reading at most one letter on each tape."""
    aut = t.automaton
    if all(len(e.label[0]) <= 1 and len(e.label[1]) <= 1 for e in aut.edges):
        return t
    b = AutomatonBuilder(WORD_PAIRS)
    mapping = [b.add_vertex(name) for name in aut.names]
    b.set_initial(mapping[aut.initial])
    for v in aut.terminals:
        b.add_terminal(mapping[v])
    for index, e in enumerate(aut.edges):
        left, right = e.label
        steps = max(len(left), len(right), 1)
        current = mapping[e.source]
        for i in range(steps):
            label = (left[i:i + 1], right[i:i + 1])
            if i == steps - 1:
                b.add_edge(current, label, mapping[e.target])
            else:
                nxt = b.add_vertex(f"{aut.names[e.source]}~{index}_{i}")
                b.add_edge(current, label, nxt)
                current = nxt
    return Transducer(b.build(), t.input_alphabet, t.output_alphabet)


def inverse(t: Transducer) -> Transducer:
    swapped = map_labels(t.automaton, lambda pair: (pair[1], pair[0]), WORD_PAIRS)
    return Transducer(swapped, t.output_alphabet, t.input_alphabet)


# === Basic relations ===


def identity_on(language: Automaton) -> Transducer:
    """{(w, w) : w ∈ L}."""
    letters = split_letters(language)
    pairs = map_labels(letters, lambda w: (w, w), WORD_PAIRS)
    alphabet = language.letters()
    return Transducer(pairs, alphabet, alphabet)


def cross(left: Automaton, right: Automaton) -> Transducer:
    """L × L′ as the product of L × {ϵ} and {ϵ} × L′."""
    first = map_labels(left, lambda w: (w, ()), WORD_PAIRS)
    second = map_labels(right, lambda w: ((), w), WORD_PAIRS)
    return Transducer(combine("product", first, second), left.letters(), right.letters())


def partial_hom(assignments: Iterable[tuple[Word, Word]]) -> Transducer:
    """Star of the finite relation {(m_i, m_i ρ)}: one loop per assignment."""
    b = AutomatonBuilder(WORD_PAIRS)
    hub = b.add_vertex("h")
    b.set_initial(hub)
    b.add_terminal(hub)
    for source, image_word in assignments:
        b.add_edge(hub, (tuple(source), tuple(image_word)), hub)
    return Transducer(b.build())


BASIC_RELATIONS: dict[str, Callable[..., Transducer]] = {
    "identity_on": identity_on,
    "cross": cross,
    "partial_hom": partial_hom,
}


def basic_relation(kind: str, *args: Any) -> Transducer:
    if kind not in BASIC_RELATIONS:
        raise ValueError(f"unknown relation '{kind}', expected one of {sorted(BASIC_RELATIONS)}")
    return BASIC_RELATIONS[kind](*args)


# === Composition ===


def _split_word_side(aut: Automaton) -> Automaton:
    """Split edges of an automaton over M × Σ* so the word side has at most one letter.

    The M component rides on the first step of each chain.
    """
    if all(len(e.label[1]) <= 1 for e in aut.edges):
        return aut
    unit = aut.monoid.left.unit
    b = AutomatonBuilder(aut.monoid)
    mapping = [b.add_vertex(name) for name in aut.names]
    b.set_initial(mapping[aut.initial])
    for v in aut.terminals:
        b.add_terminal(mapping[v])
    for index, e in enumerate(aut.edges):
        m, w = e.label
        if len(w) <= 1:
            b.add_edge(mapping[e.source], e.label, mapping[e.target])
            continue
        current = mapping[e.source]
        for i, letter in enumerate(w):
            target = mapping[e.target] if i == len(w) - 1 else b.add_vertex(f"{aut.names[e.source]}~{index}_{i}")
            b.add_edge(current, (m if i == 0 else unit, (letter,)), target)
            current = target
    return b.build()


def compose_automata(left: Automaton, tau: Transducer) -> Automaton:
    """Compose a relation M → Σ* (automaton over M × Σ*) with a transduction Σ* → Δ*.

    Both sides are letterized; every vertex is treated as carrying an
    (ϵ, ϵ) padding loop, and the reachable part of the product graph on
    vertex pairs is built. Pad-against-pad moves are skipped.
    """
    if not isinstance(left.monoid, ProductMonoid) or left.monoid.right != FREE:
        raise InvalidStructureError("left operand must be labelled by pairs (m, word)")
    m_unit = left.monoid.left.unit
    a = _split_word_side(left)
    t = letterize(tau).automaton
    b = AutomatonBuilder(left.monoid)
    index: dict[tuple[int, int], int] = {}
    queue: deque[tuple[int, int]] = deque()

    def vertex(pair: tuple[int, int]) -> int:
        if pair not in index:
            index[pair] = b.add_vertex(f"{a.names[pair[0]]}*{t.names[pair[1]]}")
            if pair[0] in a.terminals and pair[1] in t.terminals:
                b.add_terminal(index[pair])
            queue.append(pair)
        return index[pair]

    b.set_initial(vertex((a.initial, t.initial)))
    while queue:
        p, q = queue.popleft()
        source = index[(p, q)]
        for ea in a.outgoing[p]:
            m, middle = ea.label
            if not middle:
                b.add_edge(source, (m, ()), vertex((ea.target, q)))
                continue
            for et in t.outgoing[q]:
                if et.label[0] == middle:
                    b.add_edge(source, (m, et.label[1]), vertex((ea.target, et.target)))
        for et in t.outgoing[q]:
            if not et.label[0]:
                b.add_edge(source, (m_unit, et.label[1]), vertex((p, et.target)))
    result = trim(b.build())
    logger.debug("composition product has %d vertices after trimming", result.vertex_count)
    return result


def compose(rho: Transducer, tau: Transducer) -> Transducer:
    """The relational composite: (u, w) whenever (u, v) ∈ ρ and (v, w) ∈ τ."""
    stray = rho.output_alphabet - tau.input_alphabet
    if stray:
        raise AlphabetMismatchError(
            f"middle alphabets differ: letters {{{','.join(sorted(stray))}}} are not read by the second transducer"
        )
    composed = compose_automata(letterize(rho).automaton, tau)
    return Transducer(composed, rho.input_alphabet, tau.output_alphabet)


# === Images ===


def image(language: Automaton, t: Transducer) -> Automaton:
    """Automaton over Δ* accepting Lρ."""
    stray = language.letters() - t.input_alphabet
    if stray:
        raise AlphabetMismatchError(
            f"language letters {{{','.join(sorted(stray))}}} are outside the transducer input alphabet"
        )
    composed = compose(identity_on(language), t)
    projected = map_labels(composed.automaton, lambda pair: pair[1], FREE)
    return trim(projected)


def intersect_rational(language: Automaton, rational: Dfa) -> Automaton:
    """L ∩ R as the image of L under the identity relation on R."""
    return image(language, identity_on(rational.to_automaton()))


def apply(t: Transducer, w: Word, max_len: int) -> set[Word]:
    """Images of the single word ``w`` of length at most ``max_len``."""
    if set(w) - t.input_alphabet:
        return set()
    images = image(word_automaton(tuple(w)), t)
    return enumerate_labels(images, label_filter=lambda v: len(v) <= max_len)


def enumerate_pairs(t: Transducer, max_len: int) -> set[tuple[Word, Word]]:
    """Accepted pairs whose components both have length at most ``max_len``."""
    return enumerate_labels(
        t.automaton, label_filter=lambda pair: len(pair[0]) <= max_len and len(pair[1]) <= max_len
    )


def empty_transducer() -> Transducer:
    b = AutomatonBuilder(WORD_PAIRS)
    b.set_initial(b.add_vertex("s"))
    return Transducer(b.build())


def relation_of(pairs: Optional[Iterable[tuple[Word, Word]]] = None) -> Transducer:
    """Finite relation acceptor, one edge per pair."""
    b = AutomatonBuilder(WORD_PAIRS)
    start = b.add_vertex("s")
    end = b.add_vertex("t")
    b.set_initial(start)
    b.add_terminal(end)
    for u, v in pairs or ():
        b.add_edge(start, (tuple(u), tuple(v)), end)
    return Transducer(b.build())
