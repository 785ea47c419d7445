"""Tests for groups: finite tables, word problems, subgroup generators,
free-group reduction, intersections and Schreier rewriting."""

import pytest

from monoidfa import groups
from monoidfa.automaton import AutomatonBuilder, enumerate_labels, word_automaton
from monoidfa.errors import AlphabetMismatchError, InvalidStructureError
from monoidfa.figures import ab_star, astar_bstar_automaton, f2_mod2
from monoidfa.groups import (
    FREE_GROUP,
    FiniteGroupTable,
    SchreierDiagram,
    SymmetricAlphabet,
    change_generators,
    free_reduce,
    howson_intersection,
    inverse_word,
    is_reduced,
    order_bound,
    reduction_closure,
    schreier_transducer,
    subgroup_generators,
    wp_dfa,
    wp_lift,
)
from monoidfa.rational import nfa_accepts
from monoidfa.symbols import SYMBOLS, parse_cli_word, word, words_up_to
from monoidfa.transducer import apply

F2 = SymmetricAlphabet.from_generators(["a", "b"])


def _upto(n: int):
    def bounded(w: tuple) -> bool:
        return len(w) <= n

    return bounded


def _trivial_in_free_group(w: tuple) -> bool:
    return free_reduce(w) == ()


@pytest.fixture
def z3() -> FiniteGroupTable:
    return FiniteGroupTable.cyclic(3)


@pytest.fixture
def s3() -> FiniteGroupTable:
    return FiniteGroupTable.symmetric3()


@pytest.fixture
def diagram() -> SchreierDiagram:
    return f2_mod2()


class TestSymmetricAlphabet:
    def test_letters_come_in_pairs(self) -> None:
        assert F2.letters == ("a", "a^-1", "b", "b^-1")
        assert F2.inverse("b^-1") == "b"

    def test_from_letters(self) -> None:
        assert SymmetricAlphabet.from_letters(["b", "a^-1"]).generators == ("a", "b")

    def test_validation(self) -> None:
        with pytest.raises(InvalidStructureError):
            SymmetricAlphabet(("a^-1",))
        with pytest.raises(AlphabetMismatchError):
            F2.inverse("c")


class TestFreeReduction:
    @pytest.mark.parametrize(
        "text, reduced",
        [("", ""), ("aa^-1", ""), ("ab^-1ba", "aa"), ("a^-1ba", "a^-1ba"), ("abb^-1a^-1b", "b")],
    )
    def test_free_reduce(self, text: str, reduced: str) -> None:
        assert free_reduce(parse_cli_word(text)) == parse_cli_word(reduced)

    def test_is_reduced(self) -> None:
        assert is_reduced(parse_cli_word("ab^-1a"))
        assert not is_reduced(parse_cli_word("abb^-1"))

    def test_free_group_monoid(self) -> None:
        assert FREE_GROUP.multiply(word("a", "b"), word("b^-1", "a")) == word("a", "a")
        assert FREE_GROUP.invert(word("a", "b")) == word("b^-1", "a^-1")
        assert inverse_word(word("a", "b")) == word("b^-1", "a^-1")


class TestFiniteGroupTable:
    def test_cyclic(self, z3: FiniteGroupTable) -> None:
        assert z3.order == 3
        assert z3.unit == "0"
        assert z3.element("a") == "1"
        assert z3.element("a^-1") == "2"
        assert z3.evaluate(word("a", "a", "a")) == "0"
        assert z3.invert("1") == "2"

    def test_cyclic_order_must_be_positive(self) -> None:
        with pytest.raises(ValueError):
            FiniteGroupTable.cyclic(0)

    def test_symmetric3(self, s3: FiniteGroupTable) -> None:
        assert s3.order == 6
        assert s3.unit == "012"
        assert s3.multiply("102", "120") == "210"
        assert s3.multiply("120", "102") == "021"
        assert s3.invert("120") == "201"
        assert s3.evaluate(word("s", "s")) == "012"
        assert s3.evaluate(word("r", "r", "r")) == "012"

    def test_unknown_letter(self, z3: FiniteGroupTable) -> None:
        with pytest.raises(AlphabetMismatchError):
            z3.element("b")

    def test_rejects_monoid_without_inverses(self) -> None:
        with pytest.raises(InvalidStructureError, match="no inverse"):
            FiniteGroupTable(("0", "1"), ((0, 1), (1, 1)))

    def test_rejects_incomplete_table(self) -> None:
        with pytest.raises(InvalidStructureError):
            FiniteGroupTable(("0", "1"), ((0, 1),))

    def test_rejects_mismatched_inverse_letters(self) -> None:
        table = tuple(tuple((i + j) % 3 for j in range(3)) for i in range(3))
        with pytest.raises(InvalidStructureError, match="inverse"):
            FiniteGroupTable(("0", "1", "2"), table, (("a", "1"), ("a^-1", "1")))


class TestWordProblem:
    def test_cyclic_word_problem(self, z3: FiniteGroupTable) -> None:
        dfa = wp_dfa(z3)
        assert dfa.alphabet == ("a", "a^-1")
        for w in words_up_to(dfa.alphabet, 5):
            balance = w.count("a") - w.count("a^-1")
            assert dfa.accepts(w) == (balance % 3 == 0), w

    def test_symmetric3_word_problem(self, s3: FiniteGroupTable) -> None:
        dfa = wp_dfa(s3)
        assert dfa.accepts(word("s", "s"))
        assert dfa.accepts(word("r", "r^-1"))
        assert not dfa.accepts(word("s", "r"))

    def test_order_bound(self, z3: FiniteGroupTable, s3: FiniteGroupTable) -> None:
        assert order_bound(wp_dfa(z3)) == 3
        assert order_bound(wp_dfa(s3)) == 6

    def test_needs_letters(self) -> None:
        with pytest.raises(InvalidStructureError):
            wp_dfa(FiniteGroupTable(("e",), ((0,),)))


class TestChangeGenerators:
    def test_cyclic_group_under_a_square(self, z3: FiniteGroupTable) -> None:
        moved = change_generators(wp_dfa(z3), {SYMBOLS.intern("b"): word("a", "a")})
        relabelled = FiniteGroupTable(z3.elements, z3.table, (("b", "2"), ("b^-1", "1")))
        for w in words_up_to(word("b", "b^-1"), 6):
            assert nfa_accepts(moved, w) == (relabelled.evaluate(w) == relabelled.unit), w

    def test_symmetric3_under_new_letters(self, s3: FiniteGroupTable) -> None:
        substitution = {SYMBOLS.intern("t"): word("s", "r"), SYMBOLS.intern("u"): word("r")}
        moved = change_generators(wp_dfa(s3), substitution)
        relabelled = FiniteGroupTable(
            s3.elements,
            s3.table,
            (
                ("t", s3.evaluate(word("s", "r"))),
                ("t^-1", s3.evaluate(word("r^-1", "s^-1"))),
                ("u", "120"),
                ("u^-1", "201"),
            ),
        )
        for w in words_up_to(word("t", "t^-1", "u", "u^-1"), 4):
            assert nfa_accepts(moved, w) == (relabelled.evaluate(w) == relabelled.unit), w

    def test_explicit_inverse_entry_wins(self, z3: FiniteGroupTable) -> None:
        substitution = {SYMBOLS.intern("b"): word("a"), SYMBOLS.intern("b^-1"): word("a", "a")}
        moved = change_generators(wp_dfa(z3), substitution)
        assert nfa_accepts(moved, word("b", "b^-1"))
        assert not nfa_accepts(moved, word("b", "b"))

    def test_letters_outside_the_alphabet(self, z3: FiniteGroupTable) -> None:
        with pytest.raises(AlphabetMismatchError, match="outside the word-problem alphabet"):
            change_generators(wp_dfa(z3), {SYMBOLS.intern("b"): word("c")})

    def test_empty_substitution(self, z3: FiniteGroupTable) -> None:
        with pytest.raises(ValueError, match="no letters"):
            change_generators(wp_dfa(z3), {})


class TestSubgroupGenerators:
    def test_free_group_language(self) -> None:
        assert subgroup_generators(ab_star(), FREE_GROUP) == [word("a"), word("a", "b", "a^-1")]

    def test_finite_group_language(self, z3: FiniteGroupTable) -> None:
        b = AutomatonBuilder(z3)
        v = b.add_vertex("v")
        b.set_initial(v)
        b.add_terminal(v)
        b.add_edge(v, "1", v)
        assert subgroup_generators(b.build(), z3) == ["0", "1"]

    def test_empty_language(self) -> None:
        b = AutomatonBuilder(FREE_GROUP)
        b.set_initial(b.add_vertex("v"))
        assert subgroup_generators(b.build(), FREE_GROUP) == []

    def test_tree_uses_lowest_numbered_edge(self) -> None:
        b = AutomatonBuilder(FREE_GROUP)
        p0, p1 = b.add_vertex("p0"), b.add_vertex("p1")
        b.set_initial(p0)
        b.add_terminal(p1)
        b.add_edge(p0, word("a"), p1)
        b.add_edge(p0, word("b"), p1)
        assert subgroup_generators(b.build(), FREE_GROUP) == [word("a"), word("b", "a^-1")]

    def test_monoid_must_match(self) -> None:
        with pytest.raises(AlphabetMismatchError):
            subgroup_generators(astar_bstar_automaton(), FREE_GROUP)


class TestReductionClosure:
    @pytest.mark.parametrize("text, reduced", [("abb^-1a^-1", ""), ("aa^-1bb^-1a", "a"), ("ab^-1ba^-1b", "b")])
    def test_nested_and_chained_cancellation(self, text: str, reduced: str) -> None:
        aut = word_automaton(parse_cli_word(text))
        closed = reduction_closure(aut, F2)
        assert enumerate_labels(closed, label_filter=_upto(5)) == {parse_cli_word(reduced)}

    def test_single_word(self) -> None:
        aut = word_automaton(parse_cli_word("abb^-1a^-1a"))
        assert enumerate_labels(reduction_closure(aut), label_filter=_upto(5)) == {word("a")}

    def test_results_are_reduced(self) -> None:
        aut = word_automaton(parse_cli_word("ab^-1ba^-1"))
        assert enumerate_labels(reduction_closure(aut, F2), label_filter=_upto(4)) == {()}


class TestHowson:
    def test_cyclic_subgroups(self) -> None:
        gens = howson_intersection([word("a", "a")], [word("a", "a", "a")], F2)
        assert gens
        for g in gens:
            assert is_reduced(g)
            assert len(set(g)) == 1 and set(g) <= {"a", "a^-1"}
            assert len(g) % 6 == 0

    def test_trivial_intersection(self) -> None:
        assert howson_intersection([word("a")], [word("b")], F2) == []


class TestSchreier:
    def test_rewrite_labels(self, diagram: SchreierDiagram) -> None:
        assert diagram.delta_alphabet.generators == ("d1", "d2", "d3")
        assert diagram.delta_words() == {
            "d1": word("a", "a"),
            "d2": word("b"),
            "d3": word("a", "b", "a^-1"),
        }

    @pytest.mark.parametrize(
        "text, image",
        [("aa", ("d1",)), ("b", ("d2",)), ("aba", ("d3", "d1")), ("aa^-1", ()), ("a", None)],
    )
    def test_rewrite(self, diagram: SchreierDiagram, text: str, image) -> None:
        assert diagram.rewrite(parse_cli_word(text)) == image

    def test_transducer_agrees_with_rewrite(self, diagram: SchreierDiagram) -> None:
        t = schreier_transducer(diagram)
        for w in words_up_to(["a", "b"], 3):
            rewritten = diagram.rewrite(w)
            expected = set() if rewritten is None else {rewritten}
            assert apply(t, w, max_len=len(w)) == expected, w

    @pytest.mark.parametrize(
        "text, trivial",
        [("aa^-1", True), ("bb^-1", True), ("ab^-1ba^-1", True), ("aa", False), ("a", False)],
    )
    def test_wp_lift(self, diagram: SchreierDiagram, text: str, trivial: bool) -> None:
        assert wp_lift(diagram, _trivial_in_free_group, parse_cli_word(text)) is trivial

    def test_wp_lift_matches_free_reduction(self, diagram: SchreierDiagram) -> None:
        for w in words_up_to(F2.letters, 3):
            assert wp_lift(diagram, _trivial_in_free_group, w) == (free_reduce(w) == ()), w

    def test_wp_lift_needs_single_valued_rewriting(
        self, diagram: SchreierDiagram, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        monkeypatch.setattr(groups, "apply", lambda *args, **kwargs: {word("d1"), word("d2")})
        with pytest.raises(InvalidStructureError, match="not single-valued"):
            wp_lift(diagram, _trivial_in_free_group, word("a", "b"))

    def test_letters_must_permute_cosets(self) -> None:
        with pytest.raises(InvalidStructureError, match="permute"):
            SchreierDiagram.from_edges(["H", "Ha"], "H", [("H", "a", "Ha")], [("H", "a", "Ha")])

    def test_tree_must_span(self) -> None:
        with pytest.raises(InvalidStructureError, match="tree"):
            SchreierDiagram.from_edges(["H", "Ha"], "H", [("H", "a", "Ha"), ("Ha", "a", "H")], [])

    def test_unknown_coset(self) -> None:
        with pytest.raises(InvalidStructureError, match="unknown coset"):
            SchreierDiagram.from_edges(["H"], "H", [("H", "a", "K")], [])
