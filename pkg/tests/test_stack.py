"""Tests for the stack monoids: normal-form products checked against the
partial functions they denote."""

import itertools
import random

import pytest

from monoidfa.errors import ParseError
from monoidfa.stack import (
    EMPTY_TEST,
    M1,
    M1_ONE,
    M1_ZERO,
    MCF,
    MSA,
    ONE,
    PAIR_ONE,
    ZERO,
    ReadStackAction,
    StackAction,
    StackPairAction,
    apply_action,
    apply_pair,
    format_action,
    generator_of,
    m1_multiply,
    mcf_multiply,
    msa_generators,
    msa_multiply,
    parse_action,
    parse_pair_action,
    parse_read_action,
    pop,
    push,
    stack_symbols,
)
from monoidfa.symbols import words_up_to

SHORT = list(words_up_to("de", 2))
STACKS = list(words_up_to("de", 3))

MCF_SAMPLE = [StackAction(pop=w, push=v) for w in SHORT for v in SHORT] + [ZERO]
M1_SAMPLE = [
    ReadStackAction(pop=w, barrier=b, push=v)
    for w in words_up_to("de", 1)
    for v in words_up_to("de", 1)
    for b in (False, True)
] + [M1_ZERO]


def _compose(x, y, u):
    first = apply_action(x, u)
    return None if first is None else apply_action(y, first)


def _random_m1(rng: random.Random) -> ReadStackAction:
    if rng.random() < 0.05:
        return M1_ZERO

    def stack_word() -> tuple:
        return tuple(rng.choice("de") for _ in range(rng.randint(0, 3)))

    return ReadStackAction(pop=stack_word(), barrier=rng.random() < 0.3, push=stack_word())


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260519)


class TestMcf:
    def test_push_then_pop_cancels(self) -> None:
        assert mcf_multiply(push("d"), pop("d")) == ONE

    def test_mismatched_pop_is_zero(self) -> None:
        assert mcf_multiply(push("d"), pop("e")) == ZERO

    def test_pop_then_push_is_normal_form(self) -> None:
        assert mcf_multiply(pop("d"), push("e")) == StackAction(pop=("d",), push=("e",))

    def test_partial_cancellation(self) -> None:
        assert mcf_multiply(push("d", "e"), pop("e")) == push("d")
        assert mcf_multiply(push("e"), pop("d", "e")) == pop("d")

    def test_zero_absorbs(self) -> None:
        assert mcf_multiply(ZERO, push("d")) == ZERO
        assert mcf_multiply(pop("d"), ZERO) == ZERO

    def test_product_matches_function_composition(self) -> None:
        for x, y in itertools.product(MCF_SAMPLE, repeat=2):
            product = mcf_multiply(x, y)
            for u in STACKS:
                assert apply_action(product, u) == _compose(x, y, u), (x, y, u)

    def test_associative_on_sample(self) -> None:
        sample = [push("d"), pop("d"), push("e"), pop("e"), StackAction(pop=("d",), push=("e",))]
        for x, y, z in itertools.product(sample, repeat=3):
            assert mcf_multiply(mcf_multiply(x, y), z) == mcf_multiply(x, mcf_multiply(y, z))

    def test_monoid_object(self) -> None:
        assert MCF.unit == ONE
        assert MCF.is_zero(ZERO)
        assert MCF.product([push("d"), push("e"), pop("e"), pop("d")]) == ONE


class TestM1:
    def test_emptiness_test_on_empty_stack(self) -> None:
        assert apply_action(EMPTY_TEST, ()) == ()
        assert apply_action(EMPTY_TEST, ("d",)) is None

    def test_push_before_test_is_zero(self) -> None:
        assert m1_multiply(ReadStackAction(push=("d",)), EMPTY_TEST) == M1_ZERO

    def test_pop_before_test_keeps_barrier(self) -> None:
        result = m1_multiply(ReadStackAction(pop=("d",)), EMPTY_TEST)
        assert result == ReadStackAction(pop=("d",), barrier=True)

    def test_product_matches_function_composition(self) -> None:
        for x, y in itertools.product(M1_SAMPLE, repeat=2):
            product = m1_multiply(x, y)
            for u in STACKS:
                assert apply_action(product, u) == _compose(x, y, u), (x, y, u)

    def test_associative_on_random_triples(self, rng: random.Random) -> None:
        stacks = list(words_up_to("de", 4))
        for _ in range(1000):
            x, y, z = _random_m1(rng), _random_m1(rng), _random_m1(rng)
            left = m1_multiply(m1_multiply(x, y), z)
            assert left == m1_multiply(x, m1_multiply(y, z)), (x, y, z)
            for u in stacks:
                middle = _compose(x, y, u)
                expected = None if middle is None else apply_action(z, middle)
                assert apply_action(left, u) == expected, (x, y, z, u)

    def test_monoid_object(self) -> None:
        assert M1.unit == M1_ONE
        assert M1.parse("Q:d.E.P:e") == ReadStackAction(pop=("d",), barrier=True, push=("e",))


class TestMsa:
    def test_componentwise_product(self) -> None:
        up = StackPairAction(down=ReadStackAction(pop=("d",)), up=ReadStackAction(push=("d",)))
        down = StackPairAction(down=ReadStackAction(push=("d",)), up=ReadStackAction(pop=("d",)))
        # moving up then down leaves only the check that the cell held d
        checked = ReadStackAction(pop=("d",), push=("d",))
        assert msa_multiply(up, down) == StackPairAction(down=checked, up=M1_ONE)
        assert msa_multiply(down, up) == StackPairAction(down=M1_ONE, up=checked)

    def test_apply_pair(self) -> None:
        move_down = StackPairAction(down=ReadStackAction(push=("d",)), up=ReadStackAction(pop=("d",)))
        assert apply_pair(move_down, ((), ("e", "d"))) == (("d",), ("e",))
        assert apply_pair(move_down, ((), ("e",))) is None

    def test_generators(self) -> None:
        gens = msa_generators(["d"])
        assert len(gens) == 5
        assert PAIR_ONE in gens

    def test_zero_when_either_side_is_zero(self) -> None:
        assert StackPairAction(down=M1_ZERO).zero
        assert MSA.is_zero(StackPairAction(up=M1_ZERO))


class TestTextSyntax:
    @pytest.mark.parametrize(
        "action, text",
        [
            (ONE, "1"),
            (ZERO, "0"),
            (push("d", "e"), "P:d,e"),
            (StackAction(pop=("d",), push=("e",)), "Q:d.P:e"),
            (ReadStackAction(pop=("d",), barrier=True, push=("e",)), "Q:d.E.P:e"),
        ],
    )
    def test_format(self, action, text: str) -> None:
        assert format_action(action) == text

    def test_parse_multiplies_factors(self) -> None:
        assert parse_action("P:d.Q:d") == ONE
        assert parse_action("P:d.Q:e") == ZERO
        assert parse_action("Q:d.P:e") == StackAction(pop=("d",), push=("e",))

    def test_parse_rejects_emptiness_test_in_mcf(self) -> None:
        with pytest.raises(ParseError):
            parse_action("E")

    @pytest.mark.parametrize("text", ["", "X:d", "P"])
    def test_parse_rejects_malformed(self, text: str) -> None:
        with pytest.raises(ParseError):
            parse_read_action(text)

    def test_pair_syntax(self) -> None:
        pair = parse_pair_action("(E|P:e)")
        assert pair == StackPairAction(down=EMPTY_TEST, up=ReadStackAction(push=("e",)))
        assert str(pair) == "(E|P:e)"
        assert MSA.format(pair) == "(E|P:e)"


class TestHelpers:
    def test_generator_of(self) -> None:
        assert generator_of(push("d")) == ("P", "d")
        assert generator_of(pop("e")) == ("Q", "e")
        assert generator_of(push("d", "e")) is None
        assert generator_of(ONE) is None

    def test_stack_symbols(self) -> None:
        assert stack_symbols([push("d"), pop("e"), ONE]) == frozenset({"d", "e"})
