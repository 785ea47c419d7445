"""Tests for rational languages: letter form, DFAs, transition monoids,
boolean operations, minimisation, equivalence and pumping."""

import pytest

from monoidfa.automaton import Automaton, AutomatonBuilder, combine, enumerate_labels, word_automaton
from monoidfa.errors import AlphabetMismatchError, BudgetExceededError, InvalidStructureError, PumpingError
from monoidfa.figures import astar_bstar_automaton
from monoidfa.monoids import FREE
from monoidfa.rational import (
    Dfa,
    boolean,
    determinize,
    distinguishing_word,
    epsilon_closure,
    equivalent,
    extend_alphabet,
    minimize,
    nfa_accepts,
    product_nfa,
    pump_decompose,
    recognizer_to_dfa,
    remove_epsilon,
    split_letters,
    transition_monoid,
)
from monoidfa.symbols import parse_cli_word, word, words_up_to


def _is_ab(w: tuple) -> bool:
    return list(w) == sorted(w)


@pytest.fixture
def astar_bstar() -> Automaton:
    return astar_bstar_automaton()


@pytest.fixture
def astar_bstar_dfa(astar_bstar: Automaton) -> Dfa:
    return determinize(astar_bstar)


def _chain() -> Automaton:
    """v0 -abc-> v1 -ϵ-> v2 (terminal)."""
    b = AutomatonBuilder(FREE)
    v0, v1, v2 = b.add_vertex("v0"), b.add_vertex("v1"), b.add_vertex("v2")
    b.set_initial(v0)
    b.add_terminal(v2)
    b.add_edge(v0, word("a", "b", "c"), v1)
    b.add_edge(v1, (), v2)
    return b.build()


class TestLetterForm:
    def test_split_letters_builds_named_chain(self) -> None:
        split = split_letters(_chain())
        assert "v0~0_0" in split.names
        assert "v0~0_1" in split.names
        assert all(len(e.label) <= 1 for e in split.edges)

    def test_remove_epsilon(self) -> None:
        cleaned = remove_epsilon(_chain())
        assert all(len(e.label) == 1 for e in cleaned.edges)
        assert enumerate_labels(cleaned) == {word("a", "b", "c")}

    def test_epsilon_closure(self) -> None:
        aut = _chain()
        assert epsilon_closure(aut, [1]) == frozenset({1, 2})

    def test_rejects_other_monoids(self) -> None:
        from monoidfa.figures import ab_star

        with pytest.raises(InvalidStructureError):
            split_letters(ab_star())


class TestNfa:
    @pytest.mark.parametrize("text, expected", [("", True), ("aab", True), ("bb", True), ("ba", False), ("abc", False)])
    def test_accepts(self, astar_bstar: Automaton, text: str, expected: bool) -> None:
        assert nfa_accepts(astar_bstar, parse_cli_word(text)) is expected

    def test_multi_letter_edges(self) -> None:
        assert nfa_accepts(_chain(), word("a", "b", "c"))
        assert not nfa_accepts(_chain(), word("a", "b"))

    def test_product_nfa(self, astar_bstar: Automaton) -> None:
        both = product_nfa(astar_bstar, combine("union", word_automaton(word("a", "b")), word_automaton(word("b", "a"))))
        assert enumerate_labels(both) == {word("a", "b")}


class TestDfa:
    def test_subset_construction(self, astar_bstar_dfa: Dfa) -> None:
        assert astar_bstar_dfa.state_count == 3
        assert astar_bstar_dfa.alphabet == ("a", "b")
        assert "sink" in astar_bstar_dfa.names

    def test_agrees_with_nfa(self, astar_bstar: Automaton, astar_bstar_dfa: Dfa) -> None:
        for w in words_up_to("ab", 5):
            assert astar_bstar_dfa.accepts(w) == nfa_accepts(astar_bstar, w)

    def test_unknown_letter(self, astar_bstar_dfa: Dfa) -> None:
        assert not astar_bstar_dfa.accepts(word("c"))
        with pytest.raises(AlphabetMismatchError):
            astar_bstar_dfa.step(0, "c")

    def test_validation(self) -> None:
        with pytest.raises(InvalidStructureError):
            Dfa(("b", "a"), ("s",), ((0, 0),), 0, frozenset())
        with pytest.raises(InvalidStructureError):
            Dfa(("a",), ("s",), ((1,),), 0, frozenset())

    def test_to_automaton(self, astar_bstar_dfa: Dfa) -> None:
        aut = astar_bstar_dfa.to_automaton()
        assert len(aut.edges) == 6
        for w in words_up_to("ab", 4):
            assert nfa_accepts(aut, w) == astar_bstar_dfa.accepts(w)

    def test_extend_alphabet(self, astar_bstar_dfa: Dfa) -> None:
        wider = extend_alphabet(astar_bstar_dfa, ["c"])
        assert wider.alphabet == ("a", "b", "c")
        assert wider.state_count == 4
        assert wider.accepts(word("a", "b"))
        assert not wider.accepts(word("a", "c"))


class TestMinimize:
    def test_already_minimal(self, astar_bstar_dfa: Dfa) -> None:
        assert minimize(astar_bstar_dfa).state_count == 3

    def test_merges_equivalent_states(self, astar_bstar: Automaton) -> None:
        redundant = determinize(combine("union", astar_bstar, astar_bstar_automaton()))
        assert redundant.state_count > 3
        minimal = minimize(redundant)
        assert minimal.state_count == 3
        assert equivalent(minimal, redundant)


class TestTransitionMonoid:
    def test_size_and_acceptance(self, astar_bstar: Automaton) -> None:
        tm = transition_monoid(astar_bstar)
        assert tm.size == 5
        assert tm.accepts(word("a", "a", "b"))
        assert not tm.accepts(word("b", "a"))

    def test_recognizer_dfa_agrees(self, astar_bstar: Automaton) -> None:
        dfa = recognizer_to_dfa(transition_monoid(astar_bstar), "ab")
        for w in words_up_to("ab", 5):
            assert dfa.accepts(w) == _is_ab(w)

    def test_missing_letter_image(self, astar_bstar: Automaton) -> None:
        with pytest.raises(InvalidStructureError):
            recognizer_to_dfa(transition_monoid(astar_bstar), "abc")

    def test_unknown_letter(self, astar_bstar: Automaton) -> None:
        with pytest.raises(AlphabetMismatchError):
            transition_monoid(astar_bstar).evaluate(word("c"))

    @pytest.mark.parametrize("limit, ok", [(4, False), (5, True)])
    def test_limit(self, astar_bstar: Automaton, limit: int, ok: bool) -> None:
        if ok:
            assert transition_monoid(astar_bstar, limit=limit).size == 5
        else:
            with pytest.raises(BudgetExceededError, match="exceeds 4 elements"):
                transition_monoid(astar_bstar, limit=limit)


class TestBoolean:
    def test_complement(self, astar_bstar_dfa: Dfa) -> None:
        complement = boolean("complement", astar_bstar_dfa)
        for w in words_up_to("ab", 4):
            assert complement.accepts(w) != astar_bstar_dfa.accepts(w)

    def test_intersect_and_union(self, astar_bstar_dfa: Dfa) -> None:
        other = determinize(word_automaton(word("b", "a")), "ab")
        meet = boolean("intersect", astar_bstar_dfa, other)
        join = boolean("union", astar_bstar_dfa, other)
        assert not meet.accepts(word("b", "a"))
        assert join.accepts(word("b", "a"))
        assert join.accepts(word("a", "b"))

    def test_alphabets_must_match(self, astar_bstar_dfa: Dfa) -> None:
        with pytest.raises(AlphabetMismatchError):
            boolean("intersect", astar_bstar_dfa, determinize(word_automaton(word("a"))))

    def test_needs_second_operand(self, astar_bstar_dfa: Dfa) -> None:
        with pytest.raises(ValueError, match="needs two"):
            boolean("union", astar_bstar_dfa)

    def test_unknown_operation(self, astar_bstar_dfa: Dfa) -> None:
        with pytest.raises(ValueError, match="unknown boolean"):
            boolean("xor", astar_bstar_dfa, astar_bstar_dfa)


class TestEquivalence:
    def test_shortest_witness(self, astar_bstar_dfa: Dfa) -> None:
        complement = boolean("complement", astar_bstar_dfa)
        assert distinguishing_word(astar_bstar_dfa, complement) == ()

    def test_witness_over_different_alphabets(self, astar_bstar_dfa: Dfa) -> None:
        only_a = determinize(combine("star", word_automaton(word("a"))))
        assert distinguishing_word(astar_bstar_dfa, only_a) == word("b")

    def test_equivalent(self, astar_bstar_dfa: Dfa) -> None:
        assert distinguishing_word(astar_bstar_dfa, minimize(astar_bstar_dfa)) is None
        assert equivalent(astar_bstar_dfa, minimize(astar_bstar_dfa))


class TestPumping:
    def test_decomposition(self, astar_bstar_dfa: Dfa) -> None:
        w = word("a", "a", "a", "b")
        pump = pump_decompose(astar_bstar_dfa, w)
        assert pump.x + pump.y + pump.z == w
        assert pump.y
        for i in range(5):
            assert astar_bstar_dfa.accepts(pump.pumped(i))

    def test_rejected_word(self, astar_bstar_dfa: Dfa) -> None:
        with pytest.raises(PumpingError, match="not accepted"):
            pump_decompose(astar_bstar_dfa, word("b", "a", "a", "a"))

    def test_short_word(self, astar_bstar_dfa: Dfa) -> None:
        with pytest.raises(PumpingError, match="does not exceed"):
            pump_decompose(astar_bstar_dfa, word("a", "b"))
