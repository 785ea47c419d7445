"""Tests for rational expressions and edge elimination."""

import pytest

from monoidfa.automaton import empty_automaton, enumerate_labels, map_labels, word_automaton
from monoidfa.expressions import (
    NOTHING,
    Literal,
    Product,
    Star,
    Union,
    expr_enumerate,
    expr_to_automaton,
    format_expression,
    is_nothing,
    literal,
    product_of,
    star_of,
    to_expression,
    union_of,
)
from monoidfa.figures import astar_bstar_automaton
from monoidfa.monoids import FREE, TRIVIAL
from monoidfa.symbols import word


def _upto(n: int):
    def bounded(w: tuple) -> bool:
        return len(w) <= n

    return bounded


A = literal(word("a"))
B = literal(word("b"))
UNIT = literal(())


class TestSmartConstructors:
    def test_union_drops_nothing_and_flattens(self) -> None:
        assert union_of([NOTHING, A]) == A
        assert union_of([Union((A, B)), A]) == Union((A, B))
        assert union_of([]) == NOTHING

    def test_product_absorbs_nothing_and_unit(self) -> None:
        assert product_of([A, NOTHING], FREE) == NOTHING
        assert product_of([UNIT, A, UNIT], FREE) == A
        assert product_of([UNIT], FREE) == UNIT
        assert product_of([Product((A, B)), A], FREE) == Product((A, B, A))

    def test_star_simplifies(self) -> None:
        assert star_of(NOTHING, FREE) == UNIT
        assert star_of(UNIT, FREE) == UNIT
        assert star_of(Star(A), FREE) == Star(A)
        assert star_of(A, FREE) == Star(A)

    def test_is_nothing(self) -> None:
        assert is_nothing(NOTHING)
        assert not is_nothing(UNIT)


class TestToExpression:
    def test_single_letter(self) -> None:
        assert to_expression(word_automaton(word("a"))) == A

    def test_empty_language(self) -> None:
        assert to_expression(empty_automaton(FREE)) == NOTHING

    def test_agrees_with_automaton_on_bounded_words(self) -> None:
        aut = astar_bstar_automaton()
        expected = enumerate_labels(aut, label_filter=_upto(4))
        assert expr_enumerate(to_expression(aut), FREE, depth=20, label_filter=_upto(4)) == expected

    def test_back_to_automaton(self) -> None:
        aut = astar_bstar_automaton()
        rebuilt = expr_to_automaton(to_expression(aut), FREE)
        assert enumerate_labels(rebuilt, label_filter=_upto(4)) == enumerate_labels(aut, label_filter=_upto(4))

    def test_other_monoids(self) -> None:
        trivial = map_labels(astar_bstar_automaton(), lambda _: "1", TRIVIAL)
        assert expr_enumerate(to_expression(trivial), TRIVIAL, depth=10) == {"1"}


class TestExprEnumerate:
    def test_depth_counts_factors(self) -> None:
        e = Star(A)
        assert expr_enumerate(e, FREE, depth=2) == {(), word("a"), word("a", "a")}

    def test_union_and_product(self) -> None:
        e = Product((Union((A, B)), A))
        assert expr_enumerate(e, FREE, depth=5) == {word("a", "a"), word("b", "a")}

    def test_nothing_is_empty(self) -> None:
        assert expr_enumerate(NOTHING, FREE, depth=5) == set()

    def test_expr_to_automaton_of_nothing(self) -> None:
        assert enumerate_labels(expr_to_automaton(NOTHING, FREE)) == set()


class TestFormat:
    @pytest.mark.parametrize(
        "expression, text",
        [
            (NOTHING, "∅"),
            (A, "a"),
            (UNIT, "ϵ"),
            (Literal(frozenset({word("a"), word("b")})), "(a + b)"),
            (Union((A, B)), "(a + b)"),
            (Product((A, B)), "a b"),
            (Star(Product((A, B))), "(a b)*"),
            (Star(A), "a*"),
        ],
    )
    def test_format(self, expression, text: str) -> None:
        assert format_expression(expression, FREE) == text
