"""Groups given by generators, and the automata constructions over them.

Covers word-problem automata of finite groups, generators of the subgroup
generated by an automaton's accepted set, free reduction and subgroup
intersections in free groups, and Schreier-diagram rewriting.

An inverse letter is written ``x^-1``.
"""

from __future__ import annotations

import logging
from abc import abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Optional, Sequence, TypeVar, Union

import networkx as nx

from monoidfa.automaton import Automaton, AutomatonBuilder, map_labels, trim
from monoidfa.errors import AlphabetMismatchError, InvalidStructureError, ParseError
from monoidfa.monoids import FREE, WORD_PAIRS, Monoid
from monoidfa.rational import Dfa, product_nfa, split_letters
from monoidfa.symbols import SYMBOLS, Symbol, Word, display_word, format_word, parse_word
from monoidfa.transducer import Transducer, apply, image, inverse, partial_hom

logger = logging.getLogger(__name__)

T = TypeVar("T")

INVERSE_SUFFIX = "^-1"


def inverse_letter(x: Symbol) -> Symbol:
    if x.endswith(INVERSE_SUFFIX):
        return SYMBOLS.intern(x[: -len(INVERSE_SUFFIX)])
    return SYMBOLS.intern(x + INVERSE_SUFFIX)


def inverse_word(w: Sequence[Symbol]) -> Word:
    return tuple(inverse_letter(x) for x in reversed(w))


@dataclass(frozen=True)
class SymmetricAlphabet:
    """Letters in pairs x, x^-1; ``generators`` lists the positive letters."""

    generators: tuple[Symbol, ...]

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            raise InvalidStructureError("generators must be distinct")
        for g in self.generators:
            if g.endswith(INVERSE_SUFFIX):
                raise InvalidStructureError(f"generator '{g}' is written as an inverse")

    @classmethod
    def from_generators(cls, names: Iterable[str]) -> SymmetricAlphabet:
        return cls(tuple(sorted(SYMBOLS.intern(n) for n in dict.fromkeys(names))))

    @classmethod
    def from_letters(cls, letters: Iterable[Symbol]) -> SymmetricAlphabet:
        """The smallest symmetric alphabet containing ``letters``."""
        positive = {x[: -len(INVERSE_SUFFIX)] if x.endswith(INVERSE_SUFFIX) else x for x in letters}
        return cls.from_generators(positive)

    @cached_property
    def letters(self) -> tuple[Symbol, ...]:
        return tuple(x for g in self.generators for x in (g, inverse_letter(g)))

    def inverse(self, x: Symbol) -> Symbol:
        if x not in self.letters:
            raise AlphabetMismatchError(f"letter '{x}' is not in the alphabet")
        return inverse_letter(x)

    def __contains__(self, x: object) -> bool:
        return x in self.letters


def free_reduce(w: Sequence[Symbol]) -> Word:
    """Cancel factors x x^-1 until none remain."""
    out: list[Symbol] = []
    for x in w:
        if out and out[-1] == inverse_letter(x):
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def is_reduced(w: Sequence[Symbol]) -> bool:
    return all(w[i + 1] != inverse_letter(w[i]) for i in range(len(w) - 1))


class Group(Monoid[T]):
    """A monoid in which every element has an inverse."""

    @abstractmethod
    def invert(self, x: T) -> T:
        ...


@dataclass(frozen=True)
class FiniteGroupTable(Group[str]):
    """A finite group by its multiplication table and a letter assignment.

    ``table[i][j]`` is the index of ``elements[i] * elements[j]``;
    ``generators`` maps letters to element names.
    """

    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    generators: tuple[tuple[Symbol, str], ...] = ()
    name: str = "group"

    def __post_init__(self) -> None:
        n = len(self.elements)
        if n == 0:
            raise InvalidStructureError("a group has at least one element")
        if len(set(self.elements)) != n:
            raise InvalidStructureError("element names must be unique")
        if len(self.table) != n or any(len(row) != n or any(not 0 <= c < n for c in row) for row in self.table):
            raise InvalidStructureError("multiplication table must be a complete square over the elements")
        t = self.table
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if t[t[i][j]][k] != t[i][t[j][k]]:
                        raise InvalidStructureError(
                            f"multiplication is not associative at "
                            f"({self.elements[i]}, {self.elements[j]}, {self.elements[k]})"
                        )
        identity = [e for e in range(n) if all(t[e][x] == x and t[x][e] == x for x in range(n))]
        if not identity:
            raise InvalidStructureError("multiplication table has no identity")
        e = identity[0]
        for x in range(n):
            if not any(t[x][y] == e for y in range(n)):
                raise InvalidStructureError(f"element '{self.elements[x]}' has no inverse")
        assigned = dict(self.generators)
        for letter, element in self.generators:
            if element not in self.elements:
                raise InvalidStructureError(f"letter '{letter}' is assigned to unknown element '{element}'")
        for letter, element in self.generators:
            partner = assigned.get(inverse_letter(letter))
            if partner is not None and self.multiply(element, partner) != self.unit:
                raise InvalidStructureError(f"'{letter}' and its inverse letter are not assigned inverse elements")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.elements)}

    @cached_property
    def _identity(self) -> int:
        n = len(self.elements)
        return next(e for e in range(n) if all(self.table[e][x] == x for x in range(n)))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def unit(self) -> str:
        return self.elements[self._identity]

    def multiply(self, x: str, y: str) -> str:
        return self.elements[self.table[self._index[x]][self._index[y]]]

    def invert(self, x: str) -> str:
        i = self._index[x]
        return next(self.elements[j] for j in range(self.order) if self.table[i][j] == self._identity)

    def parse(self, text: str) -> str:
        text = text.strip()
        if text not in self._index:
            raise ParseError(f"unknown group element '{text}'")
        return text

    def format(self, x: str) -> str:
        return x

    @cached_property
    def letters(self) -> tuple[Symbol, ...]:
        return tuple(sorted(letter for letter, _ in self.generators))

    def element(self, letter: Symbol) -> str:
        for assigned, element in self.generators:
            if assigned == letter:
                return element
        raise AlphabetMismatchError(f"letter '{letter}' has no assigned group element")

    def evaluate(self, w: Sequence[Symbol]) -> str:
        return self.product(self.element(x) for x in w)

    @classmethod
    def cyclic(cls, n: int, letter: str = "a", symmetric: bool = True) -> FiniteGroupTable:
        """Z/n on elements ``0..n-1`` with ``letter`` mapped to 1."""
        if n < 1:
            raise ValueError("cyclic group order must be positive")
        elements = tuple(str(i) for i in range(n))
        table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
        a = SYMBOLS.intern(letter)
        gens = [(a, str(1 % n))]
        if symmetric:
            gens.append((inverse_letter(a), str((n - 1) % n)))
        return cls(elements, table, tuple(gens), name=f"Z{n}")

    @classmethod
    def symmetric3(cls) -> FiniteGroupTable:
        """S_3 on permutations of ``012``; x*y applies x first. s is a swap, r a 3-cycle."""
        elements = ("012", "021", "102", "120", "201", "210")
        index = {p: i for i, p in enumerate(elements)}

        def compose(x: str, y: str) -> str:
            return "".join(y[int(x[i])] for i in range(3))

        table = tuple(tuple(index[compose(x, y)] for y in elements) for x in elements)
        s, r = SYMBOLS.intern("s"), SYMBOLS.intern("r")
        gens = ((s, "102"), (inverse_letter(s), "102"), (r, "120"), (inverse_letter(r), "201"))
        return cls(elements, table, gens, name="S3")


@dataclass(frozen=True)
class FreeGroup(Group[Word]):
    """Freely reduced words under concatenate-and-reduce."""

    name: str = "free-group"

    @property
    def unit(self) -> Word:
        return ()

    def multiply(self, x: Word, y: Word) -> Word:
        return free_reduce(x + y)

    def invert(self, x: Word) -> Word:
        return inverse_word(x)

    def parse(self, text: str) -> Word:
        return free_reduce(parse_word(text))

    def format(self, x: Word) -> str:
        return format_word(x)

    def display(self, x: Word) -> str:
        return display_word(x)


FREE_GROUP = FreeGroup()


# === Word problems ===


def wp_dfa(group: FiniteGroupTable) -> Dfa:
    """States are the group elements; reading x from g leads to g·xσ."""
    if not group.generators:
        raise InvalidStructureError("the group has no letters assigned")
    alphabet = group.letters
    index = {name: i for i, name in enumerate(group.elements)}
    rows = tuple(
        tuple(index[group.multiply(g, group.element(a))] for a in alphabet)
        for g in group.elements
    )
    identity = index[group.unit]
    return Dfa(
        alphabet=alphabet,
        names=group.elements,
        transitions=rows,
        initial=identity,
        terminals=frozenset({identity}),
    )


def order_bound(wp: Union[Automaton, Dfa]) -> int:
    """Vertex count of the trimmed word-problem automaton; at least the group order."""
    aut = wp.to_automaton() if isinstance(wp, Dfa) else wp
    return trim(aut).vertex_count


def change_generators(wp: Union[Automaton, Dfa], substitution: Mapping[Symbol, Sequence[Symbol]]) -> Automaton:
    """The word problem over new letters, each standing for a word over the old ones.

    A new word v is accepted when its substitution is accepted by ``wp``: the
    image of the old language under the inverse of the substitution
    relation. A new letter y whose inverse letter has no entry reads the
    inverse of y's word.
    """
    if not substitution:
        raise ValueError("substitution names no letters")
    language = wp.to_automaton() if isinstance(wp, Dfa) else wp
    old = language.letters()
    table = {y: tuple(w) for y, w in substitution.items()}
    for y, w in list(table.items()):
        table.setdefault(inverse_letter(y), inverse_word(w))
    for y, w in sorted(table.items()):
        stray = set(w) - old
        if stray:
            raise AlphabetMismatchError(
                f"'{y}' stands for letters {{{','.join(sorted(stray))}}} outside the word-problem alphabet"
            )
    relation = inverse(partial_hom(((y,), w) for y, w in sorted(table.items())))
    result = image(language, Transducer(relation.automaton, old, relation.output_alphabet))
    logger.debug("change of generators: %d letters, %d vertices", len(table), result.vertex_count)
    return result


def subgroup_generators(aut: Automaton, group: Group) -> list:
    """Finitely many generators of the subgroup generated by the accepted set.

    With a breadth-first spanning tree rooted at the initial vertex, x_v is
    the tree label to v. The generators are z = x_t for the terminal t and
    x_p·h·x_q⁻¹ for each non-tree edge p -h-> q.
    """
    if aut.monoid != group:
        raise AlphabetMismatchError("automaton labels are not elements of the given group")
    aut = trim(aut)
    if not aut.terminals:
        return []
    if len(aut.terminals) > 1:
        b = AutomatonBuilder(group)
        mapping = b.copy_from(aut)
        b.set_initial(mapping[aut.initial])
        end = b.add_vertex("end")
        b.add_terminal(end)
        for t in sorted(aut.terminals):
            b.add_edge(mapping[t], group.unit, end)
        aut = b.build()
    (terminal,) = aut.terminals

    graph = nx.MultiDiGraph()
    graph.add_nodes_from(range(aut.vertex_count))
    for index, e in enumerate(aut.edges):
        graph.add_edge(e.source, e.target, key=index)
    label: dict[int, object] = {aut.initial: group.unit}
    tree: set[int] = set()
    for u, v in nx.bfs_edges(graph, aut.initial):
        index = min(graph[u][v])
        label[v] = group.multiply(label[u], aut.edges[index].label)
        tree.add(index)

    found = [label[terminal]]
    for index, e in enumerate(aut.edges):
        if index in tree:
            continue
        g = group.multiply(group.multiply(label[e.source], e.label), group.invert(label[e.target]))
        found.append(g)
    result = list(dict.fromkeys(found))
    logger.debug("subgroup generators: %d from %d edges", len(result), len(aut.edges))
    return result


# === Free groups ===


def reduced_words_automaton(alphabet: SymmetricAlphabet) -> Automaton:
    """All freely reduced words: the state remembers the last letter read."""
    b = AutomatonBuilder(FREE)
    start = b.add_vertex("start")
    b.set_initial(start)
    b.add_terminal(start)
    b.declare_letters(alphabet.letters)
    last = {x: b.add_vertex(f"after:{x}") for x in alphabet.letters}
    for v in last.values():
        b.add_terminal(v)
    for y in alphabet.letters:
        b.add_edge(start, (y,), last[y])
        for x in alphabet.letters:
            if y != inverse_letter(x):
                b.add_edge(last[x], (y,), last[y])
    return b.build()


def _cancelling_pairs(aut: Automaton) -> set[tuple[int, int]]:
    """Least R: reflexive, transitive, containing unit edges, and closed under
    p -x-> r R s -x^-1-> q giving (p, q)."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(aut.vertex_count))
    graph.add_edges_from((e.source, e.target) for e in aut.edges if not e.label)
    by_letter: dict[Symbol, list[tuple[int, int]]] = {}
    for e in aut.edges:
        if e.label:
            by_letter.setdefault(e.label[0], []).append((e.source, e.target))
    while True:
        graph = nx.transitive_closure(graph, reflexive=True)
        cancelled = {
            (p, q)
            for x, opening in by_letter.items()
            for p, r in opening
            for s, q in by_letter.get(inverse_letter(x), ())
            if graph.has_edge(r, s) and not graph.has_edge(p, q)
        }
        if not cancelled:
            return set(graph.edges)
        graph.add_edges_from(cancelled)


def reduction_closure(aut: Automaton, alphabet: Optional[SymmetricAlphabet] = None) -> Automaton:
    """Automaton for the free reductions of the accepted words.

    Unit edges are added between every pair of vertices joined by a path
    whose label reduces to the empty word; the result is intersected with the
    freely reduced words.
    """
    aut = split_letters(aut)
    if alphabet is None:
        alphabet = SymmetricAlphabet.from_letters(aut.letters())
    related = _cancelling_pairs(aut)
    b = AutomatonBuilder(FREE)
    mapping = b.copy_from(aut, with_terminals=True)
    b.set_initial(mapping[aut.initial])
    for p, q in sorted(related):
        if p != q:
            b.add_edge(mapping[p], (), mapping[q])
    closed = b.build()
    result = trim(product_nfa(closed, reduced_words_automaton(alphabet)))
    logger.debug("reduction closure: %d related pairs, %d vertices", len(related), result.vertex_count)
    return result


def subgroup_language(gens: Iterable[Sequence[Symbol]], alphabet: SymmetricAlphabet) -> Automaton:
    """Reduced words of the subgroup generated by ``gens``: a one-vertex flower
    with a loop per generator and per inverse, then reduction closure."""
    b = AutomatonBuilder(FREE)
    hub = b.add_vertex("base")
    b.set_initial(hub)
    b.add_terminal(hub)
    b.declare_letters(alphabet.letters)
    for g in gens:
        g = tuple(g)
        stray = set(g) - set(alphabet.letters)
        if stray:
            raise AlphabetMismatchError(f"generator letters {sorted(stray)} are outside the alphabet")
        if g:
            b.add_edge(hub, g, hub)
            b.add_edge(hub, inverse_word(g), hub)
    return reduction_closure(b.build(), alphabet)


def howson_intersection(
    gens1: Iterable[Sequence[Symbol]],
    gens2: Iterable[Sequence[Symbol]],
    alphabet: SymmetricAlphabet,
) -> list[Word]:
    """Reduced words generating the intersection of two finitely generated subgroups."""
    both = trim(product_nfa(subgroup_language(gens1, alphabet), subgroup_language(gens2, alphabet)))
    over_group = map_labels(both, free_reduce, FREE_GROUP)
    return [g for g in subgroup_generators(over_group, FREE_GROUP) if g]


# === Schreier diagrams ===


@dataclass(frozen=True)
class SchreierEdge:
    source: int
    letter: Symbol
    target: int


@dataclass(frozen=True)
class SchreierDiagram:
    """Coset graph of a subgroup with a spanning tree rooted at the base coset.

    Every non-tree edge labelled by a positive letter is named by a fresh
    letter d_i and its reverse edge by d_i^-1; tree edges and their reverses
    rewrite to the empty word.
    """

    cosets: tuple[str, ...]
    base: int
    alphabet: SymmetricAlphabet
    edges: tuple[SchreierEdge, ...]
    tree: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        n = len(self.cosets)
        if not 0 <= self.base < n:
            raise InvalidStructureError("base coset out of range")
        for x in self.alphabet.letters:
            targets = sorted(e.target for e in self.edges if e.letter == x)
            sources = sorted(e.source for e in self.edges if e.letter == x)
            if sources != list(range(n)) or targets != list(range(n)):
                raise InvalidStructureError(f"edges labelled '{x}' do not permute the cosets")
        stray = {e.letter for e in self.edges} - set(self.alphabet.letters)
        if stray:
            raise InvalidStructureError(f"edge letters {sorted(stray)} are outside the alphabet")
        parents: dict[int, int] = {}
        for i in self.tree:
            e = self.edges[i]
            if e.target == self.base or e.target in parents:
                raise InvalidStructureError("tree edges must enter every non-base coset exactly once")
            parents[e.target] = e.source
        if len(parents) != n - 1:
            raise InvalidStructureError("tree does not reach every coset")
        for v in parents:
            seen = {v}
            while v != self.base:
                v = parents[v]
                if v in seen:
                    raise InvalidStructureError("tree edges contain a cycle")
                seen.add(v)

    @classmethod
    def from_edges(
        cls,
        cosets: Sequence[str],
        base: str,
        edges: Iterable[tuple[str, str, str]],
        tree: Iterable[tuple[str, str, str]],
    ) -> SchreierDiagram:
        """Build from named ``(source, letter, target)`` triples; reverse edges are added."""
        names = tuple(cosets)
        index = {name: i for i, name in enumerate(names)}
        try:
            triples = [(index[s], SYMBOLS.intern(x), index[t]) for s, x, t in edges]
            tree_triples = {(index[s], SYMBOLS.intern(x), index[t]) for s, x, t in tree}
        except KeyError as exc:
            raise InvalidStructureError(f"unknown coset {exc}") from None
        complete = list(dict.fromkeys(triples + [(t, inverse_letter(x), s) for s, x, t in triples]))
        missing = tree_triples - set(complete)
        if missing:
            raise InvalidStructureError(f"tree edges {sorted(missing)} are not diagram edges")
        alphabet = SymmetricAlphabet.from_letters(x for _, x, _ in complete)
        diagram_edges = tuple(SchreierEdge(s, x, t) for s, x, t in complete)
        tree_ids = frozenset(i for i, e in enumerate(complete) if e in tree_triples)
        if base not in index:
            raise InvalidStructureError(f"unknown base coset '{base}'")
        return cls(names, index[base], alphabet, diagram_edges, tree_ids)

    def _reverse(self, i: int) -> int:
        e = self.edges[i]
        x = inverse_letter(e.letter)
        return next(j for j, f in enumerate(self.edges) if f == SchreierEdge(e.target, x, e.source))

    @cached_property
    def rewrite_labels(self) -> tuple[Word, ...]:
        """Output word per edge: empty, (d_i,) or (d_i^-1,)."""
        silent = set(self.tree) | {self._reverse(i) for i in self.tree}
        labels: list[Word] = [()] * len(self.edges)
        taken = set(self.alphabet.letters)
        count = 0
        for i, e in enumerate(self.edges):
            if i in silent or e.letter not in self.alphabet.generators:
                continue
            count += 1
            d = SYMBOLS.fresh(taken, prefix=f"d{count}")
            taken.add(d)
            labels[i] = (d,)
            labels[self._reverse(i)] = (inverse_letter(d),)
        return tuple(labels)

    @cached_property
    def delta_alphabet(self) -> SymmetricAlphabet:
        return SymmetricAlphabet.from_generators(
            w[0] for w in self.rewrite_labels if w and not w[0].endswith(INVERSE_SUFFIX)
        )

    @cached_property
    def tree_words(self) -> tuple[Word, ...]:
        """Label of the tree path from the base to each coset."""
        paths: dict[int, Word] = {self.base: ()}
        pending = sorted(self.tree)
        while pending:
            rest = []
            for i in pending:
                e = self.edges[i]
                if e.source in paths:
                    paths[e.target] = paths[e.source] + (e.letter,)
                else:
                    rest.append(i)
            pending = rest
        return tuple(paths[v] for v in range(len(self.cosets)))

    def delta_words(self) -> dict[Symbol, Word]:
        """The Σ-word x·a·y⁻¹ of the subgroup generator named by each positive Δ letter."""
        words: dict[Symbol, Word] = {}
        for e, label in zip(self.edges, self.rewrite_labels):
            if label and not label[0].endswith(INVERSE_SUFFIX):
                words[label[0]] = self.tree_words[e.source] + (e.letter,) + inverse_word(self.tree_words[e.target])
        return words

    def rewrite(self, w: Sequence[Symbol]) -> Optional[Word]:
        """Δ-word for ``w`` when it leads back to the base coset, else None."""
        step = {(e.source, e.letter): i for i, e in enumerate(self.edges)}
        v = self.base
        out: list[Symbol] = []
        for x in w:
            i = step.get((v, x))
            if i is None:
                return None
            out.extend(self.rewrite_labels[i])
            v = self.edges[i].target
        return tuple(out) if v == self.base else None


def schreier_transducer(d: SchreierDiagram) -> Transducer:
    b = AutomatonBuilder(WORD_PAIRS)
    for name in d.cosets:
        b.add_vertex(name)
    b.set_initial(d.base)
    b.add_terminal(d.base)
    for e, label in zip(d.edges, d.rewrite_labels):
        b.add_edge(e.source, ((e.letter,), label), e.target)
    return Transducer(b.build(), frozenset(d.alphabet.letters), frozenset(d.delta_alphabet.letters))


def wp_lift(d: SchreierDiagram, membership: Callable[[Word], bool], w: Sequence[Symbol]) -> bool:
    """Decide w ∈ W(G) from the word problem of the subgroup: w must rewrite
    to some Δ-word, and that word must represent the identity."""
    w = tuple(w)
    images = apply(schreier_transducer(d), w, max_len=len(w))
    if not images:
        return False
    if len(images) > 1:
        raise InvalidStructureError(
            f"Schreier rewriting of '{format_word(w)}' is not single-valued: {len(images)} images"
        )
    (rewritten,) = images
    return membership(rewritten)
