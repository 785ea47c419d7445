"""Worked examples as executable checks.

Each demo builds its fixture in memory and returns one ``DemoCheck`` per
property it verifies.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from typing import Callable

from monoidfa.automaton import enumerate_labels
from monoidfa.config import Settings
from monoidfa.expressions import expr_enumerate, to_expression
from monoidfa.family import Verdict, accepts_bounded
from monoidfa.figures import (
    anbn_grammar,
    anbn_pda,
    anbncn_stack_automaton,
    astar_bstar_automaton,
    free_wp_grammar,
)
from monoidfa.grammar import cyk, leftmost_derive, to_cnf
from monoidfa.groups import SymmetricAlphabet, free_reduce, howson_intersection
from monoidfa.pushdown import accepts
from monoidfa.rational import determinize, minimize
from monoidfa.symbols import format_word, parse_word, word, words_up_to

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DemoCheck:
    description: str
    passed: bool


def _is_ab(w: tuple) -> bool:
    return list(w) == sorted(w) and set(w) <= {"a", "b"}


def demo_astar_bstar(settings: Settings) -> list[DemoCheck]:
    n = settings.demo_word_len
    aut = astar_bstar_automaton()

    def bounded(w: tuple) -> bool:
        return len(w) <= n

    accepted = enumerate_labels(aut, label_filter=bounded)
    expected = {w for w in words_up_to("ab", n) if _is_ab(w)}
    expression = expr_enumerate(to_expression(aut), aut.monoid, depth=3 * n + 6, label_filter=bounded)
    return [
        DemoCheck(f"accepted words of length <= {n} are exactly a^i b^j", accepted == expected),
        DemoCheck("complete DFA has 3 states", determinize(aut).state_count == 3),
        DemoCheck("minimal DFA has 3 states", minimize(determinize(aut)).state_count == 3),
        DemoCheck(f"rational expression agrees on words of length <= {n}", expression == expected),
    ]


def demo_anbn(settings: Settings) -> list[DemoCheck]:
    n = min(settings.demo_word_len, 10)
    pda = anbn_pda()
    table = {w: accepts(pda, w) for w in words_up_to("ab", n)}
    members = {w for w, ok in table.items() if ok}
    expected = {word(*("a" * k + "b" * k)) for k in range(n // 2 + 1)}
    return [
        DemoCheck(f"accepts exactly a^n b^n among words of length <= {n}", members == expected),
        DemoCheck("accepts the empty word", table[()]),
    ]


def _is_anbncn(w: tuple) -> bool:
    n, rest = divmod(len(w), 3)
    return not rest and w == word(*("a" * n + "b" * n + "c" * n))


def demo_anbncn(settings: Settings) -> list[DemoCheck]:
    sa = anbncn_stack_automaton()
    budget = settings.budget
    checks = []
    for k in range(1, 7):
        w = word(*("a" * k + "b" * k + "c" * k))
        checks.append(DemoCheck(f"accepts a^{k} b^{k} c^{k}", accepts_bounded(sa, w, budget) is Verdict.YES))
    n = min(settings.demo_word_len, 9)
    expected = {True: Verdict.YES, False: Verdict.NO}
    wrong = [
        w
        for w in words_up_to(word("a", "b", "c"), n)
        if accepts_bounded(sa, w, budget) is not expected[_is_anbncn(w)]
    ]
    if wrong:
        logger.debug("stack automaton disagrees on %d words, first %s", len(wrong), format_word(wrong[0]))
    checks.append(DemoCheck(f"accepts exactly a^n b^n c^n among words of length <= {n}", not wrong))
    return checks


def demo_free_wp(settings: Settings) -> list[DemoCheck]:
    n = settings.demo_word_len
    g = free_wp_grammar()
    cnf = to_cnf(g)
    letters = SymmetricAlphabet.from_generators(["a", "b"]).letters
    agree = all(cyk(cnf, w) == (free_reduce(w) == ()) for w in words_up_to(letters, n))
    sample = parse_word("a,b,b^-1,b^-1,b,a^-1")
    derivation = leftmost_derive(g, sample)
    return [
        DemoCheck(f"membership equals free reduction to the empty word on words of length <= {n}", agree),
        DemoCheck("a b b^-1 b^-1 b a^-1 has a leftmost derivation", derivation is not None),
        DemoCheck("a b has no leftmost derivation", leftmost_derive(g, parse_word("a,b")) is None),
        DemoCheck("a^n b^n grammar generates a a b b", cyk(to_cnf(anbn_grammar()), word(*"aabb"))),
    ]


def _exponent(w: tuple) -> int:
    return sum(1 if x == "a" else -1 for x in w)


def demo_howson(settings: Settings) -> list[DemoCheck]:
    alphabet = SymmetricAlphabet.from_generators(["a", "b"])
    sixes = howson_intersection([word("a", "a")], [word("a", "a", "a")], alphabet)
    only_a = all(set(g) <= {"a", "a^-1"} for g in sixes)
    exponent = 0
    for g in sixes:
        exponent = gcd(exponent, abs(_exponent(g)))
    trivial = howson_intersection([word("a")], [word("b")], alphabet)
    return [
        DemoCheck("<a^2> and <a^3> intersect in <a^6>", bool(sixes) and only_a and exponent == 6),
        DemoCheck("<a> and <b> intersect trivially", trivial == []),
    ]


DEMO_REGISTRY: dict[str, Callable[[Settings], list[DemoCheck]]] = {
    "fig1": demo_astar_bstar,
    "fig2": demo_anbn,
    "fig8": demo_anbncn,
    "grammar-G": demo_free_wp,
    "howson": demo_howson,
}

# Descriptive names accepted alongside the registry keys.
DEMO_ALIASES: dict[str, str] = {
    "astar-bstar": "fig1",
    "anbn": "fig2",
    "anbncn": "fig8",
    "free-wp": "grammar-G",
}


def demo_names() -> list[str]:
    return sorted(DEMO_REGISTRY) + sorted(DEMO_ALIASES)


def run_demo(name: str, settings: Settings) -> list[DemoCheck]:
    key = DEMO_ALIASES.get(name, name)
    if key not in DEMO_REGISTRY:
        raise ValueError(f"unknown demo '{name}', expected one of {demo_names()}")
    checks = DEMO_REGISTRY[key](settings)
    logger.debug("demo %s: %d/%d checks passed", key, sum(c.passed for c in checks), len(checks))
    return checks
