"""Pushdown automata as automata over M_cf × Σ*.

A pushdown automaton accepts w when some successful path is labelled
(1, w). Membership is decided exactly by converting to a context-free
grammar and running CYK; the grammar module is imported lazily because it
depends on this one for the converse construction.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, Callable, Optional, Sequence

from monoidfa.automaton import Automaton, AutomatonBuilder, combine
from monoidfa.errors import InvalidStructureError, PumpingError
from monoidfa.family import FamilyAcceptor
from monoidfa.monoids import FREE, ProductMonoid
from monoidfa.stack import MCF, ONE, StackAction, generator_of, mcf_multiply, stack_symbols
from monoidfa.symbols import SYMBOLS, Symbol, Word

if TYPE_CHECKING:
    from monoidfa.grammar import Grammar

logger = logging.getLogger(__name__)

PDA_LABELS = ProductMonoid(MCF, FREE)


@dataclass(frozen=True)
class Pda:
    automaton: Automaton

    def __post_init__(self) -> None:
        if self.automaton.monoid != PDA_LABELS:
            raise InvalidStructureError("a pushdown automaton is labelled by pairs (stack action, word)")

    @property
    def acceptor(self) -> FamilyAcceptor:
        return FamilyAcceptor.cf(self.automaton)

    def letters(self) -> frozenset[Symbol]:
        return frozenset(a for e in self.automaton.edges for a in e.label[1])

    def stack_symbols(self) -> frozenset[Symbol]:
        return stack_symbols(e.label[0] for e in self.automaton.edges)


def _is_one_step(action: StackAction, letters: Word) -> bool:
    return len(action.pop) + len(action.push) <= 1 and len(letters) <= 1


def de_accelerate(p: Pda) -> Pda:
    """One stack generator or one letter per edge.

    ``(Q_w P_v, a1…ak)`` becomes the chain Q_{wn}, …, Q_{w1}, P_{v1}, …,
    P_{vm}, then (1, a1), …, (1, ak) through fresh vertices.
    """
    aut = p.automaton
    for e in aut.edges:
        if e.label[0].zero:
            raise InvalidStructureError(f"edge {aut.names[e.source]} -> {aut.names[e.target]} is labelled by zero")
    if all(_is_one_step(*e.label) for e in aut.edges):
        return p
    b = AutomatonBuilder(PDA_LABELS)
    mapping = [b.add_vertex(name) for name in aut.names]
    b.set_initial(mapping[aut.initial])
    for v in aut.terminals:
        b.add_terminal(mapping[v])
    for index, e in enumerate(aut.edges):
        action, letters = e.label
        if _is_one_step(action, letters):
            b.add_edge(mapping[e.source], e.label, mapping[e.target])
            continue
        steps: list[tuple[StackAction, Word]] = []
        steps.extend((StackAction(pop=(d,)), ()) for d in reversed(action.pop))
        steps.extend((StackAction(push=(d,)), ()) for d in action.push)
        steps.extend((ONE, (a,)) for a in letters)
        current = mapping[e.source]
        for i, label in enumerate(steps):
            if i == len(steps) - 1:
                target = mapping[e.target]
            else:
                target = b.add_vertex(f"{aut.names[e.source]}~{index}_{i}")
            b.add_edge(current, label, target)
            current = target
    result = Pda(b.build())
    logger.debug("de-accelerated %d -> %d vertices", aut.vertex_count, result.automaton.vertex_count)
    return result


@lru_cache(maxsize=64)
def _membership_grammar(p: Pda) -> Grammar:
    from monoidfa.grammar import pda_to_cfg, to_cnf

    return to_cnf(pda_to_cfg(p))


def accepts(p: Pda, w: Sequence[Symbol]) -> bool:
    """Exact membership through the equivalent grammar and CYK."""
    from monoidfa.grammar import cyk

    return cyk(_membership_grammar(p), tuple(w))


# === Closure constructions ===


def _bracket(p: Pda, marker: Symbol) -> Automaton:
    """New initial edge (P_e, ϵ) and new terminal edges (Q_e, ϵ) around ``p``."""
    aut = p.automaton
    b = AutomatonBuilder(PDA_LABELS)
    start = b.add_vertex("open")
    b.set_initial(start)
    mapping = b.copy_from(aut)
    end = b.add_vertex("close")
    b.add_terminal(end)
    b.add_edge(start, (StackAction(push=(marker,)), ()), mapping[aut.initial])
    for t in aut.terminals:
        b.add_edge(mapping[t], (StackAction(pop=(marker,)), ()), end)
    return b.build()


def _marker(*pdas: Pda) -> Symbol:
    used: set[Symbol] = set()
    for q in pdas:
        used |= q.stack_symbols()
    return SYMBOLS.fresh(used, prefix="e")


def _union(p: Pda, q: Optional[Pda]) -> Pda:
    assert q is not None
    return Pda(combine("union", p.automaton, q.automaton))


def _product(p: Pda, q: Optional[Pda]) -> Pda:
    assert q is not None
    marker = _marker(p, q)
    return Pda(combine("product", _bracket(p, marker), _bracket(q, marker)))


def _star(p: Pda, q: Optional[Pda]) -> Pda:
    return Pda(combine("star", _bracket(p, _marker(p))))


CF_COMBINATORS: dict[str, Callable[[Pda, Optional[Pda]], Pda]] = {
    "union": _union,
    "product": _product,
    "star": _star,
}


def combine_cf(kind: str, p: Pda, q: Optional[Pda] = None) -> Pda:
    """Union, product or star of context-free languages.

    Product and star operands are bracketed by a fresh stack marker so that
    a path leaving symbols on the stack in one operand cannot be completed
    by pops in another.
    """
    if kind not in CF_COMBINATORS:
        raise ValueError(f"unknown combination '{kind}', expected one of {sorted(CF_COMBINATORS)}")
    if kind != "star" and q is None:
        raise ValueError(f"'{kind}' needs two pushdown automata")
    return CF_COMBINATORS[kind](p, q)


# === Dyck analysis ===


@dataclass(frozen=True)
class DyckNode:
    """``wrap`` is P_d … Q_d around one child (or none); ``split`` has two children."""

    kind: str
    start: int
    end: int
    symbol: Optional[Symbol] = None
    children: tuple[DyckNode, ...] = ()

    def __len__(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class DyckAnalysis:
    tree: DyckNode
    long_factor: Optional[tuple[int, int]]


def _analyze(seq: Sequence[StackAction], start: int, end: int) -> DyckNode:
    value = ONE
    for i in range(start, end - 1):
        value = mcf_multiply(value, seq[i])
        if value == ONE:
            return DyckNode("split", start, end, children=(_analyze(seq, start, i + 1), _analyze(seq, i + 1, end)))
    opening, closing = generator_of(seq[start]), generator_of(seq[end - 1])
    assert opening is not None and closing is not None
    children = (_analyze(seq, start + 1, end - 1),) if end - start > 2 else ()
    return DyckNode("wrap", start, end, symbol=opening[1], children=children)


def dyck_analyze(seq: Sequence[StackAction]) -> Optional[DyckAnalysis]:
    """Matched push/pop decomposition of a generator sequence whose product is 1.

    Returns None when the product is not 1. Every non-empty sequence with
    product 1 either splits at its shortest proper prefix with product 1 or
    is P_d followed by an identity word and Q_d.
    """
    seq = tuple(seq)
    if not seq:
        raise InvalidStructureError("dyck analysis needs a non-empty sequence")
    for action in seq:
        if generator_of(action) is None:
            raise InvalidStructureError(f"'{action}' is not a single push or pop")
    product = ONE
    for action in seq:
        product = mcf_multiply(product, action)
    if product != ONE:
        return None
    tree = _analyze(seq, 0, len(seq))
    long_factor: Optional[tuple[int, int]] = None
    if len(seq) > 2:
        if tree.kind == "split":
            part = max(tree.children, key=len)
            long_factor = (part.start, part.end)
        else:
            long_factor = (1, len(seq) - 1)
    return DyckAnalysis(tree, long_factor)


# === Pumping ===


@dataclass(frozen=True)
class CflPump:
    u: Word
    v: Word
    w: Word
    x: Word
    y: Word
    k: int

    def pumped(self, i: int) -> Word:
        return self.u + self.v * i + self.w + self.x * i + self.y


def cfl_pumping_constant(g: Grammar) -> int:
    from monoidfa.grammar import to_cnf

    return 2 ** (len(to_cnf(g).nonterminals) + 1)


def pump_cfl(g: Grammar, z: Sequence[Symbol], check_up_to: int = 3) -> CflPump:
    """Split ``z`` as uvwxy at the lowest repeated nonterminal on a longest path
    of its parse tree, and check uvⁱwxⁱy with CYK for i up to ``check_up_to``."""
    from monoidfa.grammar import cyk, cyk_parse, to_cnf

    z = tuple(z)
    cnf = to_cnf(g)
    k = 2 ** (len(cnf.nonterminals) + 1)
    tree = cyk_parse(cnf, z)
    if tree is None:
        raise PumpingError(f"word '{','.join(z)}' is not generated by the grammar")
    path = [tree]
    while path[-1].children and path[-1].children[0].children:
        path.append(max(path[-1].children, key=lambda c: c.height))
    seen: dict[Symbol, int] = {}
    upper = lower = None
    for depth in range(len(path) - 1, -1, -1):
        symbol = path[depth].symbol
        if symbol in seen:
            upper, lower = path[depth], path[seen[symbol]]
            break
        seen[symbol] = depth
    if upper is None or lower is None:
        raise PumpingError(f"word of length {len(z)} is too short to pump (constant {k})")
    pump = CflPump(
        u=z[: upper.start],
        v=z[upper.start: lower.start],
        w=z[lower.start: lower.end],
        x=z[lower.end: upper.end],
        y=z[upper.end:],
        k=k,
    )
    for i in range(check_up_to + 1):
        if not cyk(cnf, pump.pumped(i)):
            raise PumpingError(f"pumped word with i={i} is not generated")
    logger.debug("pumping split at %s spanning %d..%d", upper.symbol, upper.start, upper.end)
    return pump
