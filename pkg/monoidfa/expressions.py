"""Rational expressions over a monoid and the edge-elimination conversion."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Any, Callable, Optional, Union as TypingUnion

from monoidfa.automaton import Automaton, combine, finite_automaton
from monoidfa.errors import BudgetExceededError
from monoidfa.monoids import Monoid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Literal:
    values: frozenset


@dataclass(frozen=True)
class Union:
    children: tuple


@dataclass(frozen=True)
class Product:
    children: tuple


@dataclass(frozen=True)
class Star:
    child: Any


Expression = TypingUnion[Literal, Union, Product, Star]

NOTHING = Literal(frozenset())


def literal(*values: Any) -> Literal:
    return Literal(frozenset(values))


def is_nothing(e: Expression) -> bool:
    return isinstance(e, Literal) and not e.values


def _is_unit(e: Expression, monoid: Monoid) -> bool:
    return isinstance(e, Literal) and e.values == frozenset({monoid.unit})


def union_of(parts: list[Expression]) -> Expression:
    kept: list[Expression] = []
    for p in parts:
        if is_nothing(p):
            continue
        if isinstance(p, Union):
            kept.extend(p.children)
        else:
            kept.append(p)
    kept = list(dict.fromkeys(kept))
    if not kept:
        return NOTHING
    return kept[0] if len(kept) == 1 else Union(tuple(kept))


def product_of(parts: list[Expression], monoid: Monoid) -> Expression:
    if any(is_nothing(p) for p in parts):
        return NOTHING
    kept: list[Expression] = []
    for p in parts:
        if _is_unit(p, monoid):
            continue
        if isinstance(p, Product):
            kept.extend(p.children)
        else:
            kept.append(p)
    if not kept:
        return Literal(frozenset({monoid.unit}))
    return kept[0] if len(kept) == 1 else Product(tuple(kept))


def star_of(e: Expression, monoid: Monoid) -> Expression:
    if is_nothing(e) or _is_unit(e, monoid):
        return Literal(frozenset({monoid.unit}))
    if isinstance(e, Star):
        return e
    return Star(e)


def to_expression(aut: Automaton) -> Expression:
    """Rational expression for the accepted set by recursive edge elimination.

    Removing edge ``e = p -a-> q`` splits the paths of the remaining graph:
    ``S = S0 + S1 a (S2 a)* S3`` where S0 avoids ``e``, S1 runs from the start
    to ``p``, S2 from ``q`` back to ``p`` and S3 from ``q`` to the terminals.
    Edges are eliminated lowest index first; results are memoised on
    (edges removed, start, terminal set).
    """
    monoid = aut.monoid
    edges = aut.edges
    memo: dict[tuple[int, int, frozenset[int]], Expression] = {}

    def solve(k: int, start: int, terminals: frozenset[int]) -> Expression:
        key = (k, start, terminals)
        if key in memo:
            return memo[key]
        if k == len(edges):
            result: Expression = Literal(frozenset({monoid.unit})) if start in terminals else NOTHING
        else:
            e = edges[k]
            a = Literal(frozenset({e.label}))
            s0 = solve(k + 1, start, terminals)
            s1 = solve(k + 1, start, frozenset({e.source}))
            s2 = solve(k + 1, e.target, frozenset({e.source}))
            s3 = solve(k + 1, e.target, terminals)
            through = product_of([s1, a, star_of(product_of([s2, a], monoid), monoid), s3], monoid)
            result = union_of([s0, through])
        memo[key] = result
        return result

    expression = solve(0, aut.initial, aut.terminals)
    logger.debug("edge elimination visited %d subproblems", len(memo))
    return expression


def expr_to_automaton(e: Expression, monoid: Monoid) -> Automaton:
    if isinstance(e, Literal):
        return finite_automaton(sorted(e.values, key=repr), monoid)
    if isinstance(e, Union):
        return reduce(lambda x, y: combine("union", x, y), (expr_to_automaton(c, monoid) for c in e.children))
    if isinstance(e, Product):
        return reduce(lambda x, y: combine("product", x, y), (expr_to_automaton(c, monoid) for c in e.children))
    if isinstance(e, Star):
        return combine("star", expr_to_automaton(e.child, monoid))
    raise TypeError(f"not a rational expression: {e!r}")


def expr_enumerate(
    e: Expression,
    monoid: Monoid,
    depth: int,
    label_filter: Optional[Callable[[Any], bool]] = None,
    limit: int = 1_000_000,
) -> set:
    """Independent bounded evaluation of an expression.

    Every literal element costs one factor; returns the values expressible
    with at most ``depth`` factors that pass ``label_filter``.
    """

    def keep(value: Any) -> bool:
        return label_filter is None or label_filter(value)

    def walk(node: Expression, budget: int) -> dict:
        # value -> least number of factors
        if isinstance(node, Literal):
            if budget < 1:
                return {}
            return {v: 1 for v in node.values if keep(v)}
        if isinstance(node, Union):
            merged: dict = {}
            for child in node.children:
                for v, c in walk(child, budget).items():
                    if c < merged.get(v, budget + 1):
                        merged[v] = c
            return merged
        if isinstance(node, Product):
            acc = {monoid.unit: 0} if keep(monoid.unit) else {}
            for child in node.children:
                part = walk(child, budget)
                nxt: dict = {}
                for u, cu in acc.items():
                    for v, cv in part.items():
                        cost = cu + cv
                        if cost > budget:
                            continue
                        value = monoid.multiply(u, v)
                        if keep(value) and cost < nxt.get(value, budget + 1):
                            nxt[value] = cost
                acc = nxt
            return acc
        if isinstance(node, Star):
            part = walk(node.child, budget)
            acc = {monoid.unit: 0} if keep(monoid.unit) else {}
            frontier = dict(acc)
            while frontier:
                nxt = {}
                for u, cu in frontier.items():
                    for v, cv in part.items():
                        cost = cu + cv
                        if cost > budget:
                            continue
                        value = monoid.multiply(u, v)
                        if keep(value) and cost < acc.get(value, budget + 1):
                            acc[value] = cost
                            nxt[value] = cost
                if len(acc) > limit:
                    raise BudgetExceededError(f"expression evaluation exceeded {limit} values")
                frontier = nxt
            return acc
        raise TypeError(f"not a rational expression: {node!r}")

    return set(walk(e, depth))


def format_expression(e: Expression, monoid: Monoid) -> str:
    if isinstance(e, Literal):
        if not e.values:
            return "∅"
        items = sorted(monoid.display(v) for v in e.values)
        return items[0] if len(items) == 1 else "(" + " + ".join(items) + ")"
    if isinstance(e, Union):
        return "(" + " + ".join(format_expression(c, monoid) for c in e.children) + ")"
    if isinstance(e, Product):
        return " ".join(format_expression(c, monoid) for c in e.children)
    if isinstance(e, Star):
        inner = format_expression(e.child, monoid)
        if isinstance(e.child, Product):
            inner = f"({inner})"
        return f"{inner}*"
    raise TypeError(f"not a rational expression: {e!r}")
