"""Tests for transducers: basic relations, composition, inversion and images."""

import pytest

from monoidfa.automaton import enumerate_labels, word_automaton
from monoidfa.errors import AlphabetMismatchError, InvalidStructureError
from monoidfa.figures import astar_bstar_automaton, letter_relation
from monoidfa.rational import determinize
from monoidfa.symbols import word, words_up_to
from monoidfa.transducer import (
    Transducer,
    apply,
    basic_relation,
    compose,
    cross,
    empty_transducer,
    enumerate_pairs,
    identity_on,
    image,
    intersect_rational,
    inverse,
    letterize,
    partial_hom,
    relation_of,
)


def _upto(n: int):
    def bounded(w: tuple) -> bool:
        return len(w) <= n

    return bounded


class TestTransducer:
    def test_requires_word_pair_labels(self) -> None:
        with pytest.raises(InvalidStructureError):
            Transducer(astar_bstar_automaton())

    def test_alphabets_include_edge_letters(self) -> None:
        t = letter_relation("a", "b")
        assert t.input_alphabet == frozenset({"a"})
        assert t.output_alphabet == frozenset({"b"})

    def test_letterize_keeps_relation(self) -> None:
        t = relation_of([(word("a", "b", "c"), word("d"))])
        split = letterize(t)
        assert all(len(e.label[0]) <= 1 and len(e.label[1]) <= 1 for e in split.automaton.edges)
        assert enumerate_pairs(split, 3) == {(word("a", "b", "c"), word("d"))}


class TestBasicRelations:
    def test_identity_on(self) -> None:
        pairs = enumerate_pairs(identity_on(astar_bstar_automaton()), 2)
        expected = {(w, w) for w in words_up_to("ab", 2) if list(w) == sorted(w)}
        assert pairs == expected

    def test_cross(self) -> None:
        t = cross(word_automaton(word("a")), word_automaton(word("b", "b")))
        assert enumerate_pairs(t, 3) == {(word("a"), word("b", "b"))}

    def test_partial_hom(self) -> None:
        t = partial_hom([(word("a"), word("x")), (word("b"), ())])
        assert apply(t, word("a", "b", "a"), 5) == {word("x", "x")}

    def test_basic_relation_dispatch(self) -> None:
        t = basic_relation("partial_hom", [(word("a"), word("b"))])
        assert apply(t, word("a"), 2) == {word("b")}
        with pytest.raises(ValueError, match="unknown relation"):
            basic_relation("shuffle")

    def test_empty_and_finite(self) -> None:
        assert enumerate_pairs(empty_transducer(), 3) == set()
        t = relation_of([(word("a"), word("b")), ((), word("c"))])
        assert enumerate_pairs(t, 2) == {(word("a"), word("b")), ((), word("c"))}


class TestApply:
    def test_letter_relation(self) -> None:
        t = letter_relation("a", "b")
        assert apply(t, word("a", "a", "a"), 5) == {word("b", "b", "b")}

    def test_max_len_bounds_images(self) -> None:
        t = letter_relation("a", "b")
        assert apply(t, word("a", "a", "a"), 2) == set()

    def test_foreign_letters_have_no_image(self) -> None:
        assert apply(letter_relation("a", "b"), word("c"), 3) == set()

    def test_inverse(self) -> None:
        t = inverse(letter_relation("a", "b"))
        assert t.input_alphabet == frozenset({"b"})
        assert apply(t, word("b", "b"), 4) == {word("a", "a")}


class TestCompose:
    def test_chains_relations(self) -> None:
        composed = compose(letter_relation("a", "b"), letter_relation("b", "c"))
        assert apply(composed, word("a", "a"), 4) == {word("c", "c")}
        assert enumerate_pairs(composed, 2) == {((), ()), (word("a"), word("c")), (word("a", "a"), word("c", "c"))}

    def test_erasing_middle(self) -> None:
        erase = partial_hom([(word("a"), ()), (word("b"), word("b"))])
        double = partial_hom([(word("b"), word("c", "c"))])
        composed = compose(erase, double)
        assert apply(composed, word("a", "b", "a"), 4) == {word("c", "c")}

    def test_middle_alphabet_mismatch(self) -> None:
        with pytest.raises(AlphabetMismatchError):
            compose(letter_relation("a", "b"), letter_relation("a", "c"))


class TestImage:
    def test_image_of_language(self) -> None:
        t = partial_hom([(word("a"), word("c")), (word("b"), word("d"))])
        images = enumerate_labels(image(astar_bstar_automaton(), t), label_filter=_upto(3))
        expected = {w for w in words_up_to("cd", 3) if list(w) == sorted(w)}
        assert images == expected

    def test_image_alphabet_mismatch(self) -> None:
        with pytest.raises(AlphabetMismatchError):
            image(astar_bstar_automaton(), letter_relation("a", "b"))

    def test_intersect_rational(self) -> None:
        only_ab = determinize(word_automaton(word("a", "b")), "ab")
        meet = intersect_rational(astar_bstar_automaton(), only_ab)
        assert enumerate_labels(meet, label_filter=_upto(4)) == {word("a", "b")}
