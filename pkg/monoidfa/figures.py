"""Builders for the worked examples that ship as bundled fixtures."""

from __future__ import annotations

from monoidfa.automaton import Automaton, AutomatonBuilder
from monoidfa.family import SA_LABELS, FamilyAcceptor
from monoidfa.grammar import Grammar, Production, free_group_wp_grammar
from monoidfa.groups import FREE_GROUP, SchreierDiagram, SymmetricAlphabet
from monoidfa.monoids import FREE, WORD_PAIRS
from monoidfa.pushdown import PDA_LABELS, Pda
from monoidfa.stack import EMPTY_TEST, M1_ONE, ONE, ReadStackAction, StackPairAction, pop, push
from monoidfa.symbols import SYMBOLS, word
from monoidfa.transducer import Transducer


def astar_bstar_automaton() -> Automaton:
    """a*b*: loop a at v0, v0 -b-> v1, loop b at v1; both vertices terminal."""
    b = AutomatonBuilder(FREE)
    v0 = b.add_vertex("v0")
    v1 = b.add_vertex("v1")
    b.set_initial(v0)
    b.add_terminal(v0)
    b.add_terminal(v1)
    b.add_edge(v0, word("a"), v0)
    b.add_edge(v0, word("b"), v1)
    b.add_edge(v1, word("b"), v1)
    return b.build()


def anbn_pda() -> Pda:
    """aⁿbⁿ: push d per a at q0, switch with (1, ϵ), pop d per b at q1."""
    b = AutomatonBuilder(PDA_LABELS)
    q0 = b.add_vertex("q0")
    q1 = b.add_vertex("q1")
    b.set_initial(q0)
    b.add_terminal(q1)
    b.add_edge(q0, (push("d"), word("a")), q0)
    b.add_edge(q0, (ONE, ()), q1)
    b.add_edge(q1, (pop("d"), word("b")), q1)
    return Pda(b.build())


def _p(name: str) -> ReadStackAction:
    return ReadStackAction(push=(SYMBOLS.intern(name),))


def _q(name: str) -> ReadStackAction:
    return ReadStackAction(pop=(SYMBOLS.intern(name),))


def anbncn_stack_automaton() -> FamilyAcceptor:
    """Stack automaton for aⁿbⁿcⁿ accepting with (E, 1).

    The a's are pushed as d's above a bottom marker e; the b's walk the
    cursor down over them, the c's walk it back up, and the final moves pop
    everything while testing that the cursor sits at the bottom.
    """
    b = AutomatonBuilder(SA_LABELS)
    q = [b.add_vertex(f"q{i}") for i in range(7)]
    b.set_initial(q[0])
    b.add_terminal(q[6])

    def edge(source: int, pair: StackPairAction, letters: str, target: int) -> None:
        b.add_edge(q[source], (pair, word(*letters)), q[target])

    edge(0, StackPairAction(EMPTY_TEST, _p("e")), "", 1)
    edge(1, StackPairAction(EMPTY_TEST, _p("d")), "a", 1)
    edge(1, StackPairAction(M1_ONE, M1_ONE), "", 2)
    edge(2, StackPairAction(_p("d"), _q("d")), "b", 2)
    edge(2, StackPairAction(_p("e"), _q("e")), "", 3)
    edge(3, StackPairAction(_q("e"), _p("e")), "", 4)
    edge(4, StackPairAction(_q("d"), _p("d")), "c", 4)
    edge(4, StackPairAction(M1_ONE, M1_ONE), "", 5)
    edge(5, StackPairAction(EMPTY_TEST, _q("d")), "", 5)
    edge(5, StackPairAction(EMPTY_TEST, _q("e")), "", 6)
    return FamilyAcceptor.sa(b.build())


def free_wp_grammar() -> Grammar:
    """Word problem of the free group on a, b."""
    return free_group_wp_grammar(SymmetricAlphabet.from_generators(["a", "b"]))


def anbn_grammar() -> Grammar:
    s = SYMBOLS.intern("S")
    return Grammar.from_productions(
        s, [Production((s,), word("a") + (s,) + word("b")), Production((s,), ())]
    )


def ab_star() -> Automaton:
    """a b* over the free group on a, b: p0 -a-> pt with a b loop at pt."""
    b = AutomatonBuilder(FREE_GROUP)
    p0 = b.add_vertex("p0")
    pt = b.add_vertex("pt")
    b.set_initial(p0)
    b.add_terminal(pt)
    b.add_edge(p0, word("a"), pt)
    b.add_edge(pt, word("b"), pt)
    return b.build()


def letter_relation(source: str, target: str) -> Transducer:
    """{(xⁿ, yⁿ) : n ≥ 0} as a one-vertex loop."""
    b = AutomatonBuilder(WORD_PAIRS)
    hub = b.add_vertex("h")
    b.set_initial(hub)
    b.add_terminal(hub)
    b.add_edge(hub, (word(source), word(target)), hub)
    return Transducer(b.build())


def f2_mod2() -> SchreierDiagram:
    """Cosets of the words with an even number of a's in the free group on a, b."""
    return SchreierDiagram.from_edges(
        cosets=["H", "Ha"],
        base="H",
        edges=[("H", "a", "Ha"), ("Ha", "a", "H"), ("H", "b", "H"), ("Ha", "b", "Ha")],
        tree=[("H", "a", "Ha")],
    )
