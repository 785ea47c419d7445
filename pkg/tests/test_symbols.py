"""Tests for symbols, words and the basic monoids."""

import pytest

from monoidfa.errors import ParseError
from monoidfa.monoids import FREE, TRIVIAL, WORD_PAIRS, split_pair
from monoidfa.symbols import (
    SYMBOLS,
    display_word,
    format_word,
    is_suffix,
    parse_cli_word,
    parse_word,
    safe_name,
    word,
    words_up_to,
)


class TestSymbolTable:
    def test_interning_returns_equal_symbol(self) -> None:
        assert SYMBOLS.intern("abc") == "abc"
        assert "abc" in SYMBOLS

    @pytest.mark.parametrize("name", ["a b", "a,b", "a.b", "a|b", "(a", "", "eps", "_"])
    def test_rejects_reserved_names(self, name: str) -> None:
        with pytest.raises(ParseError):
            SYMBOLS.intern(name)

    def test_fresh_avoids_taken_names(self) -> None:
        assert SYMBOLS.fresh(set()) == "e"
        assert SYMBOLS.fresh({"e"}) == "e1"
        assert SYMBOLS.fresh({"e", "e1", "e2"}) == "e3"
        assert SYMBOLS.fresh({"d"}, prefix="d") == "d1"

    def test_safe_name_replaces_reserved_characters(self) -> None:
        assert safe_name("{v0,v1}") == "{v0_v1}"
        assert safe_name("<a b>") == "<a_b>"


class TestWords:
    def test_word_builder(self) -> None:
        assert word("a", "b") == ("a", "b")
        assert word() == ()

    def test_parse_word_comma_syntax(self) -> None:
        assert parse_word("a,b,a^-1") == ("a", "b", "a^-1")
        assert parse_word("_") == ()
        assert parse_word("") == ()

    def test_format_word(self) -> None:
        assert format_word(("a", "b")) == "a,b"
        assert format_word(()) == "_"

    def test_display_word(self) -> None:
        assert display_word(("a", "b")) == "ab"
        assert display_word(("a", "b^-1")) == "a b^-1"
        assert display_word(()) == "ϵ"

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("aabb", ("a", "a", "b", "b")),
            ("ab^-1", ("a", "b^-1")),
            ("a,bc", ("a", "bc")),
            ("eps", ()),
            ("", ()),
        ],
    )
    def test_parse_cli_word(self, text: str, expected: tuple) -> None:
        assert parse_cli_word(text) == expected

    def test_words_up_to_is_shortest_first(self) -> None:
        words = list(words_up_to("ab", 2))
        assert len(words) == 7
        assert words[0] == ()
        assert [len(w) for w in words] == sorted(len(w) for w in words)

    def test_is_suffix(self) -> None:
        assert is_suffix(("b",), ("a", "b"))
        assert is_suffix((), ("a",))
        assert not is_suffix(("a",), ("a", "b"))
        assert not is_suffix(("a", "a", "b"), ("a", "b"))


class TestMonoids:
    def test_free_monoid_concatenates(self) -> None:
        assert FREE.multiply(word("a"), word("b")) == word("a", "b")
        assert FREE.unit == ()
        assert FREE.product([word("a"), (), word("b", "c")]) == word("a", "b", "c")

    def test_trivial_monoid(self) -> None:
        assert TRIVIAL.multiply("1", "1") == "1"
        assert TRIVIAL.parse("1") == "1"
        with pytest.raises(ParseError):
            TRIVIAL.parse("2")

    def test_product_monoid_parse_and_format(self) -> None:
        pair = WORD_PAIRS.parse("(a,b|_)")
        assert pair == (word("a", "b"), ())
        assert WORD_PAIRS.format(pair) == "(a,b|_)"
        assert WORD_PAIRS.multiply(pair, (word("c"), word("d"))) == (word("a", "b", "c"), word("d"))

    def test_split_pair_respects_nesting(self) -> None:
        assert split_pair("((E|P:e)|_)") == ("(E|P:e)", "_")

    @pytest.mark.parametrize("text", ["a|b", "(ab)", "(a|b"])
    def test_split_pair_rejects_malformed(self, text: str) -> None:
        with pytest.raises(ParseError):
            split_pair(text)
