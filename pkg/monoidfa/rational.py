"""Decision procedures for automata over free monoids.

Automata here are labelled by words. Most procedures first bring the input
into letter form (``split_letters``), remove unit edges
(``remove_epsilon``) and work on a complete :class:`Dfa`.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from monoidfa.automaton import Automaton, AutomatonBuilder, Edge
from monoidfa.config import DEFAULT_SETTINGS
from monoidfa.errors import (
    AlphabetMismatchError,
    BudgetExceededError,
    InvalidStructureError,
    PumpingError,
)
from monoidfa.monoids import FREE
from monoidfa.symbols import Symbol, Word

logger = logging.getLogger(__name__)

SINK = "sink"


# === Letter form ===


def _require_free(aut: Automaton) -> None:
    if aut.monoid != FREE:
        raise InvalidStructureError(f"expected an automaton over words, got monoid '{aut.monoid.name}'")


def split_letters(aut: Automaton) -> Automaton:
    """Replace every edge labelled by a word of length > 1 with a chain of letter edges."""
    _require_free(aut)
    if all(len(e.label) <= 1 for e in aut.edges):
        return aut
    b = AutomatonBuilder(FREE)
    mapping = [b.add_vertex(name) for name in aut.names]
    b.set_initial(mapping[aut.initial])
    for t in aut.terminals:
        b.add_terminal(mapping[t])
    b.declare_letters(aut.alphabet)
    for index, e in enumerate(aut.edges):
        if len(e.label) <= 1:
            b.add_edge(mapping[e.source], e.label, mapping[e.target])
            continue
        current = mapping[e.source]
        for i, letter in enumerate(e.label[:-1]):
            nxt = b.add_vertex(f"{aut.names[e.source]}~{index}_{i}")
            b.add_edge(current, (letter,), nxt)
            current = nxt
        b.add_edge(current, (e.label[-1],), mapping[e.target])
    return b.build()


def epsilon_closure(aut: Automaton, vertices: Iterable[int]) -> frozenset[int]:
    stack = list(vertices)
    closure = set(stack)
    while stack:
        v = stack.pop()
        for e in aut.outgoing[v]:
            if not e.label and e.target not in closure:
                closure.add(e.target)
                stack.append(e.target)
    return frozenset(closure)


def remove_epsilon(aut: Automaton) -> Automaton:
    """Equivalent automaton over the same vertices with only single-letter edges."""
    aut = split_letters(aut)
    if all(e.label for e in aut.edges):
        return aut
    b = AutomatonBuilder(FREE)
    for name in aut.names:
        b.add_vertex(name)
    b.set_initial(aut.initial)
    b.declare_letters(aut.alphabet)
    for v in range(aut.vertex_count):
        closure = epsilon_closure(aut, [v])
        if closure & aut.terminals:
            b.add_terminal(v)
        added: set[tuple[Word, int]] = set()
        for u in sorted(closure):
            for e in aut.outgoing[u]:
                if e.label and (e.label, e.target) not in added:
                    added.add((e.label, e.target))
                    b.add_edge(v, e.label, e.target)
    return b.build()


def nfa_accepts(aut: Automaton, w: Sequence[Symbol]) -> bool:
    aut = split_letters(aut)
    current = epsilon_closure(aut, [aut.initial])
    for letter in w:
        step = {e.target for v in current for e in aut.outgoing[v] if e.label == (letter,)}
        if not step:
            return False
        current = epsilon_closure(aut, step)
    return bool(current & aut.terminals)


def product_nfa(a: Automaton, b: Automaton) -> Automaton:
    """Intersection of two letter automata by the reachable product construction."""
    a = remove_epsilon(a)
    b = remove_epsilon(b)
    builder = AutomatonBuilder(FREE)
    builder.declare_letters(a.alphabet | b.alphabet)
    index: dict[tuple[int, int], int] = {}

    def vertex(pair: tuple[int, int]) -> int:
        if pair not in index:
            index[pair] = builder.add_vertex(f"{a.names[pair[0]]}*{b.names[pair[1]]}")
            if pair[0] in a.terminals and pair[1] in b.terminals:
                builder.add_terminal(index[pair])
            queue.append(pair)
        return index[pair]

    queue: deque[tuple[int, int]] = deque()
    builder.set_initial(vertex((a.initial, b.initial)))
    while queue:
        p, q = queue.popleft()
        source = index[(p, q)]
        for ea in a.outgoing[p]:
            for eb in b.outgoing[q]:
                if ea.label == eb.label:
                    builder.add_edge(source, ea.label, vertex((ea.target, eb.target)))
    return builder.build()


# === Deterministic automata ===


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton: exactly one transition per state and letter."""

    alphabet: tuple[Symbol, ...]
    names: tuple[str, ...]
    transitions: tuple[tuple[int, ...], ...]
    initial: int
    terminals: frozenset[int]

    def __post_init__(self) -> None:
        if list(self.alphabet) != sorted(set(self.alphabet)):
            raise InvalidStructureError("DFA alphabet must be sorted and duplicate-free")
        if len(self.transitions) != len(self.names):
            raise InvalidStructureError("one transition row per state is required")
        n = len(self.names)
        for row in self.transitions:
            if len(row) != len(self.alphabet) or any(not 0 <= t < n for t in row):
                raise InvalidStructureError("DFA transition table is not complete")
        if not 0 <= self.initial < n:
            raise InvalidStructureError("initial state out of range")

    @property
    def state_count(self) -> int:
        return len(self.names)

    @cached_property
    def letter_index(self) -> dict[Symbol, int]:
        return {a: i for i, a in enumerate(self.alphabet)}

    def step(self, state: int, letter: Symbol) -> int:
        try:
            return self.transitions[state][self.letter_index[letter]]
        except KeyError:
            raise AlphabetMismatchError(f"letter '{letter}' is not in the DFA alphabet") from None

    def run(self, w: Sequence[Symbol]) -> list[int]:
        """States visited while reading ``w``, starting with the initial state."""
        states = [self.initial]
        for letter in w:
            states.append(self.step(states[-1], letter))
        return states

    def accepts(self, w: Sequence[Symbol]) -> bool:
        if any(letter not in self.letter_index for letter in w):
            return False
        return self.run(w)[-1] in self.terminals

    def to_automaton(self) -> Automaton:
        edges = tuple(
            Edge(s, (a,), row[i])
            for s, row in enumerate(self.transitions)
            for i, a in enumerate(self.alphabet)
        )
        return Automaton(
            monoid=FREE,
            names=self.names,
            edges=edges,
            initial=self.initial,
            terminals=self.terminals,
            alphabet=frozenset(self.alphabet),
        )


def _subset_name(aut: Automaton, subset: frozenset[int]) -> str:
    if not subset:
        return SINK
    return "{" + ",".join(aut.names[v] for v in sorted(subset)) + "}"


def determinize(aut: Automaton, alphabet: Optional[Iterable[Symbol]] = None) -> Dfa:
    """Subset construction over the reachable subsets.

    The empty subset becomes the sink state and appears only when some
    transition needs it.
    """
    aut = split_letters(aut)
    letters = tuple(sorted(set(alphabet) if alphabet is not None else aut.letters()))
    start = epsilon_closure(aut, [aut.initial])
    index = {start: 0}
    order = [start]
    rows: list[tuple[int, ...]] = []
    cursor = 0
    while cursor < len(order):
        subset = order[cursor]
        cursor += 1
        row = []
        for a in letters:
            moved = {e.target for v in subset for e in aut.outgoing[v] if e.label == (a,)}
            target = epsilon_closure(aut, moved)
            if target not in index:
                index[target] = len(order)
                order.append(target)
            row.append(index[target])
        rows.append(tuple(row))
    dfa = Dfa(
        alphabet=letters,
        names=tuple(_subset_name(aut, s) for s in order),
        transitions=tuple(rows),
        initial=0,
        terminals=frozenset(i for i, s in enumerate(order) if s & aut.terminals),
    )
    logger.debug("determinized %d vertices into %d states", aut.vertex_count, dfa.state_count)
    return dfa


def extend_alphabet(dfa: Dfa, letters: Iterable[Symbol]) -> Dfa:
    """Same language over a larger alphabet; new letters lead to a fresh sink."""
    wanted = tuple(sorted(set(dfa.alphabet) | set(letters)))
    if wanted == dfa.alphabet:
        return dfa
    sink = dfa.state_count
    names = dfa.names + (SINK if SINK not in dfa.names else f"{SINK}_{sink}",)
    rows = []
    for row in dfa.transitions + (tuple(),):
        rows.append(
            tuple(
                row[dfa.letter_index[a]] if row and a in dfa.letter_index else sink
                for a in wanted
            )
        )
    return Dfa(wanted, names, tuple(rows), dfa.initial, dfa.terminals)


# === Transition monoid ===

Relation = tuple[int, ...]  # row i is a bitmask of the vertices related to i


def _compose(r: Relation, s: Relation) -> Relation:
    """``r`` then ``s``."""
    out = []
    for row in r:
        acc = 0
        j = 0
        while row:
            if row & 1:
                acc |= s[j]
            row >>= 1
            j += 1
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class TransitionMonoid:
    """Finite monoid of vertex relations recognising a language.

    ``elements[0]`` is the unit; ``table[i][j]`` indexes the product of
    elements i and j; ``generators`` maps letters to elements; ``accept``
    is the set X with L = X σ⁻¹.
    """

    elements: tuple[Relation, ...]
    table: tuple[tuple[int, ...], ...]
    generators: tuple[tuple[Symbol, int], ...]
    accept: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def generator_map(self) -> dict[Symbol, int]:
        return dict(self.generators)

    def evaluate(self, w: Sequence[Symbol]) -> int:
        current = 0
        for letter in w:
            if letter not in self.generator_map:
                raise AlphabetMismatchError(f"letter '{letter}' has no image in the monoid")
            current = self.table[current][self.generator_map[letter]]
        return current

    def accepts(self, w: Sequence[Symbol]) -> bool:
        return self.evaluate(w) in self.accept


def transition_monoid(source: Dfa | Automaton, limit: Optional[int] = None) -> TransitionMonoid:
    """Monoid of the relations ~w generated by the letter relations ~a.

    Raises :class:`BudgetExceededError` once more than ``limit`` elements are
    found; ``limit`` defaults to ``DEFAULT_SETTINGS.transition_monoid_limit``.
    """
    if limit is None:
        limit = DEFAULT_SETTINGS.transition_monoid_limit
    aut = source.to_automaton() if isinstance(source, Dfa) else remove_epsilon(source)
    n = aut.vertex_count
    letters = sorted(source.alphabet if isinstance(source, Dfa) else aut.letters())
    gen_rel: dict[Symbol, Relation] = {}
    for a in letters:
        rows = [0] * n
        for e in aut.edges:
            if e.label == (a,):
                rows[e.source] |= 1 << e.target
        gen_rel[a] = tuple(rows)
    unit = tuple(1 << i for i in range(n))
    index: dict[Relation, int] = {unit: 0}
    elements = [unit]
    cursor = 0
    while cursor < len(elements):
        current = elements[cursor]
        cursor += 1
        for a in letters:
            product = _compose(current, gen_rel[a])
            if product not in index:
                index[product] = len(elements)
                elements.append(product)
                if len(elements) > limit:
                    raise BudgetExceededError(f"transition monoid exceeds {limit} elements")
    table = tuple(tuple(index[_compose(x, y)] for y in elements) for x in elements)
    terminal_mask = 0
    for t in aut.terminals:
        terminal_mask |= 1 << t
    accept = frozenset(i for i, r in enumerate(elements) if r[aut.initial] & terminal_mask)
    logger.debug("transition monoid has %d elements", len(elements))
    return TransitionMonoid(
        elements=tuple(elements),
        table=table,
        generators=tuple((a, index[gen_rel[a]]) for a in letters),
        accept=accept,
    )


def recognizer_to_dfa(tm: TransitionMonoid, alphabet: Iterable[Symbol]) -> Dfa:
    """States are monoid elements, initial the unit, terminals the accept set."""
    letters = tuple(sorted(set(alphabet)))
    missing = [a for a in letters if a not in tm.generator_map]
    if missing:
        raise InvalidStructureError(f"no monoid image for letters: {', '.join(missing)}")
    rows = tuple(tuple(tm.table[x][tm.generator_map[a]] for a in letters) for x in range(tm.size))
    return Dfa(
        alphabet=letters,
        names=tuple(f"m{i}" for i in range(tm.size)),
        transitions=rows,
        initial=0,
        terminals=tm.accept,
    )


# === Boolean operations, minimisation, equivalence ===


def _complement(a: Dfa, b: Optional[Dfa]) -> Dfa:
    flipped = frozenset(range(a.state_count)) - a.terminals
    return Dfa(a.alphabet, a.names, a.transitions, a.initial, flipped)


def _pair_dfa(a: Dfa, b: Dfa, accept) -> Dfa:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError(
            f"alphabets differ: {{{','.join(a.alphabet)}}} vs {{{','.join(b.alphabet)}}}"
        )
    start = (a.initial, b.initial)
    index = {start: 0}
    order = [start]
    rows = []
    cursor = 0
    while cursor < len(order):
        p, q = order[cursor]
        cursor += 1
        row = []
        for i in range(len(a.alphabet)):
            pair = (a.transitions[p][i], b.transitions[q][i])
            if pair not in index:
                index[pair] = len(order)
                order.append(pair)
            row.append(index[pair])
        rows.append(tuple(row))
    return Dfa(
        alphabet=a.alphabet,
        names=tuple(f"{a.names[p]}*{b.names[q]}" for p, q in order),
        transitions=tuple(rows),
        initial=0,
        terminals=frozenset(
            i for i, (p, q) in enumerate(order) if accept(p in a.terminals, q in b.terminals)
        ),
    )


def _intersect(a: Dfa, b: Optional[Dfa]) -> Dfa:
    assert b is not None
    return _pair_dfa(a, b, lambda x, y: x and y)


def _union(a: Dfa, b: Optional[Dfa]) -> Dfa:
    assert b is not None
    return _pair_dfa(a, b, lambda x, y: x or y)


BOOLEAN_OPERATIONS = {
    "complement": _complement,
    "intersect": _intersect,
    "union": _union,
}


def boolean(kind: str, a: Dfa, b: Optional[Dfa] = None) -> Dfa:
    if kind not in BOOLEAN_OPERATIONS:
        raise ValueError(f"unknown boolean operation '{kind}', expected one of {sorted(BOOLEAN_OPERATIONS)}")
    if kind != "complement" and b is None:
        raise ValueError(f"'{kind}' needs two DFAs")
    return BOOLEAN_OPERATIONS[kind](a, b)


def _reachable(dfa: Dfa) -> list[int]:
    order = [dfa.initial]
    seen = {dfa.initial}
    cursor = 0
    while cursor < len(order):
        for t in dfa.transitions[order[cursor]]:
            if t not in seen:
                seen.add(t)
                order.append(t)
        cursor += 1
    return order


def minimize(dfa: Dfa) -> Dfa:
    """Quotient of the reachable part by the coarsest stable partition (Moore refinement)."""
    states = _reachable(dfa)
    block = {s: int(s in dfa.terminals) for s in states}
    while True:
        signatures: dict[tuple, int] = {}
        refined = {}
        for s in states:
            sig = (block[s],) + tuple(block[t] for t in dfa.transitions[s])
            refined[s] = signatures.setdefault(sig, len(signatures))
        if len(signatures) == len(set(block.values())):
            break
        block = refined
    # renumber blocks in breadth-first order from the initial state
    order: list[int] = []
    rep: dict[int, int] = {}
    for s in states:
        if block[s] not in rep:
            rep[block[s]] = s
            order.append(block[s])
    number = {b: i for i, b in enumerate(order)}
    rows = tuple(tuple(number[block[t]] for t in dfa.transitions[rep[b]]) for b in order)
    names = tuple(dfa.names[rep[b]] for b in order)
    result = Dfa(
        alphabet=dfa.alphabet,
        names=names,
        transitions=rows,
        initial=number[block[dfa.initial]],
        terminals=frozenset(number[block[s]] for s in states if s in dfa.terminals),
    )
    logger.debug("minimized %d -> %d states", dfa.state_count, result.state_count)
    return result


def distinguishing_word(a: Dfa, b: Dfa) -> Optional[Word]:
    """Shortest word accepted by exactly one of the two DFAs, or None."""
    letters = sorted(set(a.alphabet) | set(b.alphabet))
    a = extend_alphabet(a, letters)
    b = extend_alphabet(b, letters)
    start = (a.initial, b.initial)
    parent: dict[tuple[int, int], Optional[tuple[tuple[int, int], Symbol]]] = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if (p in a.terminals) != (q in b.terminals):
            word: list[Symbol] = []
            node = pair
            while parent[node] is not None:
                node, letter = parent[node]
                word.append(letter)
            return tuple(reversed(word))
        for i, letter in enumerate(letters):
            nxt = (a.transitions[p][i], b.transitions[q][i])
            if nxt not in parent:
                parent[nxt] = (pair, letter)
                queue.append(nxt)
    return None


def equivalent(a: Dfa, b: Dfa) -> bool:
    return distinguishing_word(a, b) is None


# === Pumping ===


@dataclass(frozen=True)
class RationalPump:
    x: Word
    y: Word
    z: Word

    def pumped(self, i: int) -> Word:
        return self.x + self.y * i + self.z


def pump_decompose(dfa: Dfa, w: Sequence[Symbol], check_up_to: int = 3) -> RationalPump:
    """Split an accepted word longer than the state count at its first loop."""
    w = tuple(w)
    n = dfa.state_count
    if not dfa.accepts(w):
        raise PumpingError(f"word '{','.join(w)}' is not accepted")
    if len(w) <= n:
        raise PumpingError(f"word length {len(w)} does not exceed the state count {n}")
    first_seen: dict[int, int] = {}
    for position, state in enumerate(dfa.run(w)):
        if state in first_seen:
            start = first_seen[state]
            pump = RationalPump(w[:start], w[start:position], w[position:])
            break
        first_seen[state] = position
    else:  # pragma: no cover - a run of length > n always repeats a state
        raise PumpingError("no repeated state on the accepting run")
    for i in range(check_up_to + 1):
        if not dfa.accepts(pump.pumped(i)):
            raise PumpingError(f"pumped word with i={i} is rejected")
    return pump
