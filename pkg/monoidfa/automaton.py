"""Finite automata labelled by the elements of an arbitrary monoid.

An automaton accepts the set of labels of its successful paths: the product,
in path order, of the edge labels on a path from the initial vertex to a
terminal vertex. The empty path at a terminal initial vertex contributes the
unit.

Pipeline of the constructions here: build (AutomatonBuilder) -> combine /
normalize / trim / map_labels -> enumerate_labels as the bounded oracle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable, Optional

import networkx as nx

from monoidfa.errors import AlphabetMismatchError, BudgetExceededError, InvalidStructureError
from monoidfa.monoids import FREE, Monoid
from monoidfa.symbols import Symbol, Word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    source: int
    label: Any
    target: int


@dataclass(frozen=True)
class Automaton:
    """Immutable monoid-labelled automaton.

    Vertices are dense integers ``0..len(names)-1``; ``names`` keeps the
    textual vertex names used by the file formats. ``alphabet`` lists extra
    letters declared for free-monoid automata beyond those on edges.
    """

    monoid: Monoid
    names: tuple[str, ...]
    edges: tuple[Edge, ...]
    initial: int
    terminals: frozenset[int]
    alphabet: frozenset[Symbol] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        n = len(self.names)
        if not 0 <= self.initial < n:
            raise InvalidStructureError(f"initial vertex {self.initial} out of range")
        for t in self.terminals:
            if not 0 <= t < n:
                raise InvalidStructureError(f"terminal vertex {t} out of range")
        for e in self.edges:
            if not (0 <= e.source < n and 0 <= e.target < n):
                raise InvalidStructureError(f"edge {e} has an endpoint outside the vertex set")
        if len(set(self.names)) != n:
            raise InvalidStructureError("vertex names must be unique")

    @property
    def vertex_count(self) -> int:
        return len(self.names)

    @cached_property
    def outgoing(self) -> tuple[tuple[Edge, ...], ...]:
        out: list[list[Edge]] = [[] for _ in self.names]
        for e in self.edges:
            out[e.source].append(e)
        return tuple(tuple(es) for es in out)

    @cached_property
    def incoming(self) -> tuple[tuple[Edge, ...], ...]:
        inc: list[list[Edge]] = [[] for _ in self.names]
        for e in self.edges:
            inc[e.target].append(e)
        return tuple(tuple(es) for es in inc)

    def vertex(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no vertex named '{name}'") from None

    def letters(self) -> frozenset[Symbol]:
        """Letters used by word labels plus the declared alphabet (free monoid only)."""
        found = set(self.alphabet)
        if self.monoid == FREE:
            for e in self.edges:
                found.update(e.label)
        return frozenset(found)

    def is_normalized(self) -> bool:
        if self.incoming[self.initial]:
            return False
        if len(self.terminals) != 1:
            return False
        (t,) = self.terminals
        return not self.outgoing[t]


class AutomatonBuilder:
    """Mutable scratchpad for constructing an :class:`Automaton`."""

    def __init__(self, monoid: Monoid) -> None:
        self.monoid = monoid
        self._names: list[str] = []
        self._taken: set[str] = set()
        self._edges: list[Edge] = []
        self._initial: Optional[int] = None
        self._terminals: set[int] = set()
        self._alphabet: set[Symbol] = set()

    def add_vertex(self, name: Optional[str] = None) -> int:
        base = name if name is not None else f"q{len(self._names)}"
        candidate = base
        suffix = 1
        while candidate in self._taken:
            candidate = f"{base}_{suffix}"
            suffix += 1
        self._names.append(candidate)
        self._taken.add(candidate)
        return len(self._names) - 1

    def add_edge(self, source: int, label: Any, target: int) -> None:
        self._edges.append(Edge(source, label, target))

    def set_initial(self, vertex: int) -> None:
        self._initial = vertex

    def add_terminal(self, vertex: int) -> None:
        self._terminals.add(vertex)

    def declare_letters(self, letters: Iterable[Symbol]) -> None:
        self._alphabet.update(letters)

    def copy_from(self, aut: Automaton, prefix: str = "", with_terminals: bool = False) -> list[int]:
        """Copy every vertex and edge of ``aut``; returns the old-to-new vertex map."""
        mapping = [self.add_vertex(prefix + name) for name in aut.names]
        for e in aut.edges:
            self.add_edge(mapping[e.source], e.label, mapping[e.target])
        if with_terminals:
            for t in aut.terminals:
                self.add_terminal(mapping[t])
        self._alphabet.update(aut.alphabet)
        return mapping

    @property
    def vertex_count(self) -> int:
        return len(self._names)

    def build(self) -> Automaton:
        if self._initial is None:
            if not self._names:
                self.add_vertex()
            self._initial = 0
        return Automaton(
            monoid=self.monoid,
            names=tuple(self._names),
            edges=tuple(self._edges),
            initial=self._initial,
            terminals=frozenset(self._terminals),
            alphabet=frozenset(self._alphabet),
        )


# === Bounded oracle ===


def enumerate_labels(
    aut: Automaton,
    max_path_len: Optional[int] = None,
    label_filter: Optional[Callable[[Any], bool]] = None,
    limit: int = 1_000_000,
) -> set:
    """Labels of successful paths with at most ``max_path_len`` edges.

    With ``max_path_len=None`` the search runs to a fixpoint over
    (vertex, label) states; this terminates only when ``label_filter``
    admits finitely many labels. Labels failing the filter are pruned, so the
    filter must be closed under taking prefixes of paths (length bounds are).
    """
    monoid = aut.monoid
    start = (aut.initial, monoid.unit)
    if label_filter is not None and not label_filter(monoid.unit):
        return set()
    seen = {start}
    frontier = [start]
    found = set()
    depth = 0
    while frontier:
        for vertex, value in frontier:
            if vertex in aut.terminals:
                found.add(value)
        if max_path_len is not None and depth >= max_path_len:
            break
        depth += 1
        nxt = []
        for vertex, value in frontier:
            for e in aut.outgoing[vertex]:
                product = monoid.multiply(value, e.label)
                if label_filter is not None and not label_filter(product):
                    continue
                state = (e.target, product)
                if state in seen:
                    continue
                seen.add(state)
                nxt.append(state)
        if len(seen) > limit:
            raise BudgetExceededError(f"label enumeration exceeded {limit} states")
        frontier = nxt
    return found


# === Constructions ===


def normalize(aut: Automaton) -> Automaton:
    """Initial vertex without inedges and a single terminal without outedges.

    The initial vertex is duplicated when it has inedges and a fresh terminal
    receives a copy of every edge that enters an old terminal. A unit edge from
    the initial vertex to the new terminal keeps the unit when it was accepted.
    """
    if aut.is_normalized():
        return aut
    b = AutomatonBuilder(aut.monoid)
    mapping = b.copy_from(aut)
    start = mapping[aut.initial]
    starts_edges: list[Edge] = []
    if aut.incoming[aut.initial]:
        start = b.add_vertex("init")
        for e in aut.outgoing[aut.initial]:
            b.add_edge(start, e.label, mapping[e.target])
            starts_edges.append(e)
    b.set_initial(start)
    final = b.add_vertex("final")
    b.add_terminal(final)
    for e in aut.edges:
        if e.target in aut.terminals:
            b.add_edge(mapping[e.source], e.label, final)
    for e in starts_edges:
        if e.target in aut.terminals:
            b.add_edge(start, e.label, final)
    if aut.initial in aut.terminals:
        b.add_edge(start, aut.monoid.unit, final)
    result = b.build()
    logger.debug("normalized %d -> %d vertices", aut.vertex_count, result.vertex_count)
    return result


def _check_same_monoid(a: Automaton, b: Automaton) -> None:
    if a.monoid != b.monoid:
        raise AlphabetMismatchError(f"label monoids differ: {a.monoid.name} vs {b.monoid.name}")


def _union(a: Automaton, b: Optional[Automaton]) -> Automaton:
    assert b is not None
    _check_same_monoid(a, b)
    builder = AutomatonBuilder(a.monoid)
    start = builder.add_vertex("start")
    builder.set_initial(start)
    ma = builder.copy_from(a, with_terminals=True)
    mb = builder.copy_from(b, with_terminals=True)
    builder.add_edge(start, a.monoid.unit, ma[a.initial])
    builder.add_edge(start, a.monoid.unit, mb[b.initial])
    return builder.build()


def _product(a: Automaton, b: Optional[Automaton]) -> Automaton:
    assert b is not None
    _check_same_monoid(a, b)
    builder = AutomatonBuilder(a.monoid)
    ma = builder.copy_from(a)
    mb = builder.copy_from(b, with_terminals=True)
    builder.set_initial(ma[a.initial])
    for t in a.terminals:
        builder.add_edge(ma[t], a.monoid.unit, mb[b.initial])
    return builder.build()


def _star(a: Automaton, b: Optional[Automaton]) -> Automaton:
    builder = AutomatonBuilder(a.monoid)
    hub = builder.add_vertex("hub")
    builder.set_initial(hub)
    builder.add_terminal(hub)
    ma = builder.copy_from(a)
    builder.add_edge(hub, a.monoid.unit, ma[a.initial])
    for t in a.terminals:
        builder.add_edge(ma[t], a.monoid.unit, hub)
    return builder.build()


COMBINATORS: dict[str, Callable[[Automaton, Optional[Automaton]], Automaton]] = {
    "union": _union,
    "product": _product,
    "star": _star,
}


def combine(kind: str, a: Automaton, b: Optional[Automaton] = None) -> Automaton:
    """Union, product or star of accepted sets, joined by unit-labelled bridges."""
    if kind not in COMBINATORS:
        raise ValueError(f"unknown combination '{kind}', expected one of {sorted(COMBINATORS)}")
    if kind != "star" and b is None:
        raise ValueError(f"'{kind}' needs two automata")
    return COMBINATORS[kind](a, b)


def useful_vertices(aut: Automaton) -> set[int]:
    """Vertices on some path from the initial vertex to a terminal."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(aut.vertex_count))
    graph.add_edges_from((e.source, e.target) for e in aut.edges)
    reachable = nx.descendants(graph, aut.initial) | {aut.initial}
    coreachable: set[int] = set(aut.terminals)
    for t in aut.terminals:
        coreachable |= nx.ancestors(graph, t)
    return reachable & coreachable


def trim(aut: Automaton) -> Automaton:
    """Drop vertices and edges not on a successful path; the initial vertex always stays."""
    useful = useful_vertices(aut)
    if len(useful) == aut.vertex_count:
        return aut
    order = sorted(useful | {aut.initial})
    index = {old: new for new, old in enumerate(order)}
    edges = tuple(
        Edge(index[e.source], e.label, index[e.target])
        for e in aut.edges
        if e.source in useful and e.target in useful
    )
    result = Automaton(
        monoid=aut.monoid,
        names=tuple(aut.names[v] for v in order),
        edges=edges,
        initial=index[aut.initial],
        terminals=frozenset(index[t] for t in aut.terminals if t in useful),
        alphabet=aut.alphabet,
    )
    logger.debug("trimmed %d -> %d vertices", aut.vertex_count, result.vertex_count)
    return result


def map_labels(aut: Automaton, hom: Callable[[Any], Any], target: Monoid) -> Automaton:
    """Relabel every edge through a monoid homomorphism into ``target``."""
    return Automaton(
        monoid=target,
        names=aut.names,
        edges=tuple(Edge(e.source, hom(e.label), e.target) for e in aut.edges),
        initial=aut.initial,
        terminals=aut.terminals,
        alphabet=aut.alphabet if target == FREE else frozenset(),
    )


def word_automaton(w: Word, monoid: Monoid = FREE) -> Automaton:
    """Acceptor of the single word ``w``, one letter per edge."""
    b = AutomatonBuilder(monoid)
    current = b.add_vertex("w0")
    b.set_initial(current)
    for i, letter in enumerate(w, start=1):
        nxt = b.add_vertex(f"w{i}")
        b.add_edge(current, (letter,), nxt)
        current = nxt
    b.add_terminal(current)
    return b.build()


def finite_automaton(labels: Iterable[Any], monoid: Monoid) -> Automaton:
    """Acceptor of a finite set: one edge per label from the initial vertex."""
    b = AutomatonBuilder(monoid)
    start = b.add_vertex("s")
    end = b.add_vertex("t")
    b.set_initial(start)
    b.add_terminal(end)
    for label in dict.fromkeys(labels):
        b.add_edge(start, label, end)
    return b.build()


def empty_automaton(monoid: Monoid) -> Automaton:
    b = AutomatonBuilder(monoid)
    b.set_initial(b.add_vertex("s"))
    return b.build()
