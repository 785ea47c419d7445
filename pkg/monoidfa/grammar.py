"""Grammars.

A grammar is a finite set of productions between sentential forms over
terminals and nonterminals. Context-free grammars (single-nonterminal left
sides) get the full toolchain: normal forms, CYK membership with parse
trees, bounded generation, leftmost derivations and both directions of the
pushdown-automaton correspondence.

Naming convention shared with the grammar file format: a symbol is a
nonterminal when it starts with an uppercase letter or is wrapped in
angle brackets (``<p/q>``); everything else is a terminal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import networkx as nx

from monoidfa.automaton import Automaton, AutomatonBuilder
from monoidfa.errors import InvalidStructureError, NotNormalizedError
from monoidfa.groups import SymmetricAlphabet
from monoidfa.monoids import FREE
from monoidfa.pushdown import PDA_LABELS, Pda, de_accelerate
from monoidfa.rational import remove_epsilon
from monoidfa.stack import ONE, StackAction
from monoidfa.symbols import SYMBOLS, Symbol, Word, safe_name

logger = logging.getLogger(__name__)

Form = tuple[Symbol, ...]


def is_nonterminal_name(symbol: str) -> bool:
    return symbol[:1].isupper() or (symbol.startswith("<") and symbol.endswith(">"))


@dataclass(frozen=True)
class Production:
    lhs: Form
    rhs: Form

    def __str__(self) -> str:
        rhs = " ".join(self.rhs) if self.rhs else "eps"
        return f"{' '.join(self.lhs)} -> {rhs}"


@dataclass(frozen=True)
class Grammar:
    terminals: frozenset[Symbol]
    nonterminals: frozenset[Symbol]
    start: Symbol
    productions: tuple[Production, ...]

    def __post_init__(self) -> None:
        overlap = self.terminals & self.nonterminals
        if overlap:
            raise InvalidStructureError(f"symbols are both terminal and nonterminal: {sorted(overlap)}")
        if self.start not in self.nonterminals:
            raise InvalidStructureError(f"start symbol '{self.start}' is not a nonterminal")
        known = self.terminals | self.nonterminals
        for p in self.productions:
            if not any(s in self.nonterminals for s in p.lhs):
                raise InvalidStructureError(f"left side of '{p}' has no nonterminal")
            stray = [s for s in p.lhs + p.rhs if s not in known]
            if stray:
                raise InvalidStructureError(f"unknown symbols in '{p}': {stray}")

    @classmethod
    def from_productions(
        cls,
        start: Symbol,
        productions: Iterable[Production],
        terminals: Iterable[Symbol] = (),
        nonterminals: Iterable[Symbol] = (),
    ) -> Grammar:
        """Infer symbol classes: left sides of context-free rules and
        nonterminal-looking names are nonterminals, the rest terminals."""
        productions = tuple(dict.fromkeys(productions))
        declared_t = set(terminals)
        nts = set(nonterminals) | {start}
        for p in productions:
            if len(p.lhs) == 1:
                nts.add(p.lhs[0])
            for s in p.lhs + p.rhs:
                if s not in declared_t and is_nonterminal_name(s):
                    nts.add(s)
        ts = set(declared_t)
        for p in productions:
            ts.update(s for s in p.lhs + p.rhs if s not in nts)
        return cls(frozenset(ts), frozenset(nts), start, productions)

    @property
    def is_context_free(self) -> bool:
        return all(len(p.lhs) == 1 and p.lhs[0] in self.nonterminals for p in self.productions)

    @property
    def is_regular(self) -> bool:
        for p in self.productions:
            if len(p.lhs) != 1 or p.lhs[0] not in self.nonterminals:
                return False
            if len(p.rhs) == 1 and p.rhs[0] in self.terminals:
                continue
            if len(p.rhs) == 2 and p.rhs[0] in self.terminals and p.rhs[1] in self.nonterminals:
                continue
            return False
        return True

    @cached_property
    def rules(self) -> dict[Symbol, tuple[Form, ...]]:
        """Right sides per nonterminal (context-free grammars)."""
        table: dict[Symbol, list[Form]] = {a: [] for a in self.nonterminals}
        for p in self.productions:
            if len(p.lhs) == 1:
                table.setdefault(p.lhs[0], []).append(p.rhs)
        return {a: tuple(rhss) for a, rhss in table.items()}

    def require_context_free(self) -> None:
        if not self.is_context_free:
            raise NotNormalizedError("operation needs a context-free grammar")


def _make(start: Symbol, productions: Iterable[Production], like: Grammar, extra_nts: Iterable[Symbol] = ()) -> Grammar:
    productions = tuple(dict.fromkeys(productions))
    nts = {start} | set(extra_nts)
    for p in productions:
        nts.update(s for s in p.lhs + p.rhs if s not in like.terminals)
    return Grammar(like.terminals, frozenset(nts), start, productions)


# === Analyses and cleanup ===


def nullable_symbols(g: Grammar) -> frozenset[Symbol]:
    g.require_context_free()
    nullable: set[Symbol] = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            a = p.lhs[0]
            if a not in nullable and all(s in nullable for s in p.rhs):
                nullable.add(a)
                changed = True
    return frozenset(nullable)


def generating_symbols(g: Grammar) -> frozenset[Symbol]:
    g.require_context_free()
    found: set[Symbol] = set(g.terminals)
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            a = p.lhs[0]
            if a not in found and all(s in found for s in p.rhs):
                found.add(a)
                changed = True
    return frozenset(found - g.terminals)


def remove_useless(g: Grammar) -> Grammar:
    """Drop productions using non-generating or unreachable nonterminals."""
    generating = generating_symbols(g) | g.terminals
    productive = [p for p in g.productions if p.lhs[0] in generating and all(s in generating for s in p.rhs)]
    reachable = {g.start}
    stack = [g.start]
    by_lhs: dict[Symbol, list[Production]] = {}
    for p in productive:
        by_lhs.setdefault(p.lhs[0], []).append(p)
    while stack:
        a = stack.pop()
        for p in by_lhs.get(a, ()):
            for s in p.rhs:
                if s in g.nonterminals and s not in reachable:
                    reachable.add(s)
                    stack.append(s)
    kept = [p for p in productive if p.lhs[0] in reachable]
    return Grammar(g.terminals, frozenset(reachable), g.start, tuple(kept))


def _taken(g: Grammar) -> set[Symbol]:
    return set(g.terminals) | set(g.nonterminals)


def is_normalized(g: Grammar) -> bool:
    """Every right side is all nonterminals, a single terminal, or empty."""
    if not g.is_context_free:
        return False
    for p in g.productions:
        if len(p.rhs) == 1 and p.rhs[0] in g.terminals:
            continue
        if any(s in g.terminals for s in p.rhs):
            return False
    return True


def normalize_rhs(g: Grammar) -> Grammar:
    """Replace terminals inside longer right sides by fresh nonterminals ``A -> a``."""
    g.require_context_free()
    if is_normalized(g):
        return g
    taken = _taken(g)
    proxy: dict[Symbol, Symbol] = {}

    def proxy_for(a: Symbol) -> Symbol:
        if a not in proxy:
            name = SYMBOLS.fresh(taken, prefix=a[:1].upper() + a[1:])
            if not is_nonterminal_name(name):
                name = SYMBOLS.fresh(taken, prefix="T")
            taken.add(name)
            proxy[a] = name
        return proxy[a]

    productions: list[Production] = []
    for p in g.productions:
        if len(p.rhs) >= 2:
            rhs = tuple(proxy_for(s) if s in g.terminals else s for s in p.rhs)
            productions.append(Production(p.lhs, rhs))
        else:
            productions.append(p)
    for a, name in proxy.items():
        productions.append(Production((name,), (a,)))
    return _make(g.start, productions, g)


# === Chomsky normal form ===


def is_cnf(g: Grammar) -> bool:
    if not g.is_context_free:
        return False
    for p in g.productions:
        if len(p.rhs) == 2 and all(s in g.nonterminals and s != g.start for s in p.rhs):
            continue
        if len(p.rhs) == 1 and p.rhs[0] in g.terminals:
            continue
        if not p.rhs and p.lhs[0] == g.start:
            continue
        return False
    return True


def to_cnf(g: Grammar) -> Grammar:
    """START, TERM, BIN, DEL and UNIT steps, then useless-symbol removal.

    The empty word is kept as the single production ``S0 -> eps`` on a start
    symbol that never occurs on a right side.
    """
    g.require_context_free()
    if is_cnf(g):
        return g
    g = remove_useless(g)
    taken = _taken(g)
    start = SYMBOLS.fresh(taken, prefix="S0")
    taken.add(start)
    g = _make(start, (Production((start,), (g.start,)),) + g.productions, g)
    g = normalize_rhs(g)
    taken = _taken(g)

    # BIN
    binary: list[Production] = []
    for p in g.productions:
        rhs = p.rhs
        lhs = p.lhs[0]
        while len(rhs) > 2:
            link = SYMBOLS.fresh(taken, prefix="X")
            taken.add(link)
            binary.append(Production((lhs,), (rhs[0], link)))
            lhs, rhs = link, rhs[1:]
        binary.append(Production((lhs,), rhs))
    g = _make(start, binary, g)

    # DEL
    nullable = nullable_symbols(g)
    without_eps: list[Production] = []
    for p in g.productions:
        variants = [()]
        for s in p.rhs:
            variants = [v + (s,) for v in variants] + ([v for v in variants] if s in nullable else [])
        for rhs in variants:
            if rhs:
                without_eps.append(Production(p.lhs, rhs))
    if start in nullable:
        without_eps.append(Production((start,), ()))
    g = _make(start, without_eps, g)

    # UNIT
    unit_pairs = {(a, a) for a in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if len(p.rhs) == 1 and p.rhs[0] in g.nonterminals:
                for a, b in list(unit_pairs):
                    if b == p.lhs[0] and (a, p.rhs[0]) not in unit_pairs:
                        unit_pairs.add((a, p.rhs[0]))
                        changed = True
    rules: list[Production] = []
    for a, b in sorted(unit_pairs):
        for p in g.productions:
            if p.lhs[0] == b and not (len(p.rhs) == 1 and p.rhs[0] in g.nonterminals):
                if not p.rhs and a != start:
                    continue
                rules.append(Production((a,), p.rhs))
    cnf = remove_useless(_make(start, rules, g))
    logger.debug("CNF has %d nonterminals and %d productions", len(cnf.nonterminals), len(cnf.productions))
    return cnf


# === Membership and generation ===


@dataclass(frozen=True)
class ParseNode:
    symbol: Symbol
    start: int
    end: int
    children: tuple[ParseNode, ...] = ()

    @property
    def height(self) -> int:
        return 1 + max((c.height for c in self.children), default=0)


def _cnf_index(g: Grammar) -> tuple[dict[Symbol, list[Symbol]], dict[tuple[Symbol, Symbol], list[Symbol]]]:
    unary: dict[Symbol, list[Symbol]] = {}
    binary: dict[tuple[Symbol, Symbol], list[Symbol]] = {}
    for p in g.productions:
        if len(p.rhs) == 1:
            unary.setdefault(p.rhs[0], []).append(p.lhs[0])
        elif len(p.rhs) == 2:
            binary.setdefault((p.rhs[0], p.rhs[1]), []).append(p.lhs[0])
    return unary, binary


def cyk_parse(g: Grammar, w: Sequence[Symbol]) -> Optional[ParseNode]:
    """Parse tree of ``w`` from the start symbol of a CNF grammar, or None."""
    if not is_cnf(g):
        raise NotNormalizedError("CYK needs a grammar in Chomsky normal form")
    w = tuple(w)
    n = len(w)
    if n == 0:
        if Production((g.start,), ()) in g.productions:
            return ParseNode(g.start, 0, 0)
        return None
    unary, binary = _cnf_index(g)
    # chart[i][l] maps a nonterminal deriving w[i:i+l] to a back pointer
    chart: list[list[dict]] = [[{} for _ in range(n + 1)] for _ in range(n)]
    for i, a in enumerate(w):
        for lhs in unary.get(a, ()):
            chart[i][1][lhs] = None
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            cell = chart[i][length]
            for split in range(1, length):
                left = chart[i][split]
                right = chart[i + split][length - split]
                if not left or not right:
                    continue
                for b in left:
                    for c in right:
                        for lhs in binary.get((b, c), ()):
                            if lhs not in cell:
                                cell[lhs] = (split, b, c)
    if g.start not in chart[0][n]:
        return None

    def build(symbol: Symbol, i: int, length: int) -> ParseNode:
        pointer = chart[i][length][symbol]
        if pointer is None:
            return ParseNode(symbol, i, i + 1, (ParseNode(w[i], i, i + 1),))
        split, b, c = pointer
        return ParseNode(symbol, i, i + length, (build(b, i, split), build(c, i + split, length - split)))

    return build(g.start, 0, n)


def cyk(g: Grammar, w: Sequence[Symbol]) -> bool:
    return cyk_parse(g, w) is not None


def generate_bounded(g: Grammar, max_len: int) -> set[Word]:
    """Exactly the words of length at most ``max_len`` in L(g)."""
    g = to_cnf(g)
    words: dict[Symbol, set[Word]] = {a: set() for a in g.nonterminals}
    for p in g.productions:
        if len(p.rhs) == 1 and max_len >= 1:
            words[p.lhs[0]].add(p.rhs)
    binary = [p for p in g.productions if len(p.rhs) == 2]
    changed = True
    while changed:
        changed = False
        for p in binary:
            target = words[p.lhs[0]]
            left, right = words[p.rhs[0]], words[p.rhs[1]]
            for u in list(left):
                room = max_len - len(u)
                for v in list(right):
                    if len(v) <= room:
                        uv = u + v
                        if uv not in target:
                            target.add(uv)
                            changed = True
    result = set(words[g.start])
    if Production((g.start,), ()) in g.productions:
        result.add(())
    return result


# === Regular grammars ===


def regular_to_nfa(g: Grammar) -> Automaton:
    """One vertex per nonterminal plus a final vertex; ``A -> aB`` is an edge A -a-> B."""
    if not g.is_regular:
        raise NotNormalizedError("grammar is not regular (productions must be A -> aB or A -> a)")
    b = AutomatonBuilder(FREE)
    index = {a: b.add_vertex(a) for a in sorted(g.nonterminals)}
    final = b.add_vertex("final")
    b.set_initial(index[g.start])
    b.add_terminal(final)
    b.declare_letters(g.terminals)
    for p in g.productions:
        if len(p.rhs) == 1:
            b.add_edge(index[p.lhs[0]], (p.rhs[0],), final)
        else:
            b.add_edge(index[p.lhs[0]], (p.rhs[0],), index[p.rhs[1]])
    return b.build()


@dataclass(frozen=True)
class RegularConversion:
    grammar: Grammar
    epsilon_dropped: bool


def nfa_to_regular(aut: Automaton) -> RegularConversion:
    """``P -> aQ`` per edge and ``P -> a`` per edge into a terminal.

    Regular grammars cannot derive the empty word; when the automaton accepts
    it the grammar generates L minus the empty word and ``epsilon_dropped``
    is set.
    """
    letters = remove_epsilon(aut)
    names = [safe_name(f"<{name}>") for name in letters.names]
    productions: list[Production] = []
    for e in letters.edges:
        (a,) = e.label
        productions.append(Production((names[e.source],), (a, names[e.target])))
        if e.target in letters.terminals:
            productions.append(Production((names[e.source],), (a,)))
    grammar = Grammar(
        terminals=letters.letters(),
        nonterminals=frozenset(names),
        start=names[letters.initial],
        productions=tuple(dict.fromkeys(productions)),
    )
    return RegularConversion(remove_useless(grammar), letters.initial in letters.terminals)


# === Derivations ===


@dataclass(frozen=True)
class DerivationStep:
    position: int
    production: Production


@dataclass(frozen=True)
class Derivation:
    forms: tuple[Form, ...]
    steps: tuple[DerivationStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return " => ".join(" ".join(f) if f else "eps" for f in self.forms)


def leftmost_derive(g: Grammar, w: Sequence[Symbol]) -> Optional[Derivation]:
    """Shortest leftmost derivation of ``w``, searched level by level.

    Sentential forms are pruned when their terminal prefix disagrees with
    ``w``, when they hold more non-nullable symbols than ``w`` has letters,
    or when they grow past ``|w| + 2`` symbols (more when a right side is
    longer). The depth bound is ``4|w| + 8``.
    """
    g.require_context_free()
    w = tuple(w)
    g = remove_useless(g)
    nullable = nullable_symbols(g)
    longest = max((len(p.rhs) for p in g.productions), default=0)
    max_form = len(w) + max(2, longest)
    bound = 4 * len(w) + 8
    by_lhs: dict[Symbol, list[Production]] = {}
    for p in g.productions:
        by_lhs.setdefault(p.lhs[0], []).append(p)

    start: Form = (g.start,)
    parent: dict[Form, Optional[tuple[Form, DerivationStep]]] = {start: None}
    frontier = [start]
    for _ in range(bound + 1):
        nxt: list[Form] = []
        for form in frontier:
            if form == w:
                return _unwind(parent, form)
            position = next((i for i, s in enumerate(form) if s in g.nonterminals), None)
            if position is None:
                continue
            for p in by_lhs.get(form[position], ()):
                new = form[:position] + p.rhs + form[position + 1:]
                if new in parent or len(new) > max_form:
                    continue
                if sum(1 for s in new if s not in nullable) > len(w):
                    continue
                head = 0
                while head < len(new) and new[head] in g.terminals:
                    head += 1
                if new[:head] != w[:head] or head > len(w):
                    continue
                parent[new] = (form, DerivationStep(position, p))
                nxt.append(new)
        if not nxt:
            break
        frontier = nxt
    return None


def _unwind(parent: dict, form: Form) -> Derivation:
    forms = [form]
    steps: list[DerivationStep] = []
    while parent[form] is not None:
        form, step = parent[form]
        forms.append(form)
        steps.append(step)
    return Derivation(tuple(reversed(forms)), tuple(reversed(steps)))


# === Pushdown automata ===


def cfg_to_pda(g: Grammar) -> Pda:
    """Two-vertex pushdown automaton simulating leftmost derivations.

    ``q0 -(P_S, ϵ)-> qt``, then at ``qt``: ``(Q_A P_{α reversed}, ϵ)`` for
    each ``A -> α`` over nonterminals and ``(Q_A, a)`` for each ``A -> a``.
    The top of the stack is the leftmost pending nonterminal.
    """
    if not is_normalized(g):
        raise NotNormalizedError("cfg_to_pda needs right sides that are all nonterminals, one terminal or empty")
    b = AutomatonBuilder(PDA_LABELS)
    q0 = b.add_vertex("q0")
    qt = b.add_vertex("qt")
    b.set_initial(q0)
    b.add_terminal(qt)
    b.add_edge(q0, (StackAction(push=(g.start,)), ()), qt)
    for p in g.productions:
        a = p.lhs[0]
        if len(p.rhs) == 1 and p.rhs[0] in g.terminals:
            b.add_edge(qt, (StackAction(pop=(a,)), p.rhs), qt)
        else:
            b.add_edge(qt, (StackAction(pop=(a,), push=tuple(reversed(p.rhs))), ()), qt)
    return Pda(b.build())


def _realised_pairs(
    n: int,
    pushes: dict[Symbol, list[tuple[int, Word, int]]],
    pops: dict[Symbol, list[tuple[int, Word, int]]],
    neutral: list[tuple[int, Word, int]],
) -> set[tuple[int, int]]:
    """Vertex pairs joined by a path whose stack product is 1.

    Neutral edges seed a reachability graph; each round closes it
    transitively and adds p->q for a push of d on p->r, a realised r->s and
    a pop of d on s->q, until no bracket adds a pair.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((src, r) for src, _, r in neutral)
    while True:
        graph = nx.transitive_closure(graph, reflexive=True)
        brackets = {
            (src, q)
            for d, opening in pushes.items()
            for src, _, r in opening
            for s, _, q in pops.get(d, ())
            if graph.has_edge(r, s) and not graph.has_edge(src, q)
        }
        if not brackets:
            return set(graph.edges)
        graph.add_edges_from(brackets)


def pda_to_cfg(p: Pda) -> Grammar:
    """Nonterminal ``<p/q>`` derives the words read on stack-neutral paths from p to q.

    Productions: splits ``<p/q> -> <p/r> <r/q>``, brackets
    ``<p/q> -> a <r/s> b`` for a push of d on p->r matched by a pop of d on
    s->q, ``<p/p> -> eps``, and ``<p/q> -> a <r/q>`` for each edge p->r
    without stack action. Only pairs realised by some path are emitted.
    """
    p = de_accelerate(p)
    aut = p.automaton
    n = aut.vertex_count
    pushes: dict[Symbol, list[tuple[int, Word, int]]] = {}
    pops: dict[Symbol, list[tuple[int, Word, int]]] = {}
    neutral: list[tuple[int, Word, int]] = []
    for e in aut.edges:
        action, letters = e.label
        if action == ONE:
            neutral.append((e.source, letters, e.target))
        elif action.push:
            pushes.setdefault(action.push[0], []).append((e.source, letters, e.target))
        else:
            pops.setdefault(action.pop[0], []).append((e.source, letters, e.target))

    realised = _realised_pairs(n, pushes, pops, neutral)
    start = SYMBOLS.fresh(p.letters(), prefix="S")

    def nt(x: int, y: int) -> Symbol:
        return safe_name(f"<{aut.names[x]}/{aut.names[y]}>")

    productions: list[Production] = []
    for v in range(n):
        productions.append(Production((nt(v, v),), ()))
    for (src, letters, r) in neutral:
        for q in range(n):
            if (r, q) in realised:
                productions.append(Production((nt(src, q),), letters + (nt(r, q),)))
    for d, opening in pushes.items():
        for (src, a, r) in opening:
            for (s, b_, q) in pops.get(d, ()):
                if (r, s) in realised:
                    productions.append(Production((nt(src, q),), a + (nt(r, s),) + b_))
    for (x, y) in sorted(realised):
        for r in range(n):
            if r != y and (x, r) in realised and (r, y) in realised:
                productions.append(Production((nt(x, y),), (nt(x, r), nt(r, y))))
    for t in sorted(aut.terminals):
        if (aut.initial, t) in realised:
            productions.append(Production((start,), (nt(aut.initial, t),)))

    nonterminals = {start} | {pr.lhs[0] for pr in productions}
    grammar = Grammar(
        terminals=p.letters(),
        nonterminals=frozenset(nonterminals),
        start=start,
        productions=tuple(dict.fromkeys(productions)),
    )
    cleaned = remove_useless(grammar)
    logger.debug("pda_to_cfg: %d realised pairs, %d productions", len(realised), len(cleaned.productions))
    return cleaned


# === Word problem of free groups ===


def free_group_wp_grammar(alphabet: SymmetricAlphabet) -> Grammar:
    """``S -> eps | S S | x S x^-1`` for every letter x of the symmetric alphabet."""
    if not alphabet.generators:
        raise InvalidStructureError("the word-problem grammar needs at least one inverse pair")
    s = SYMBOLS.intern("S")
    productions = [Production((s,), ()), Production((s,), (s, s))]
    for x in alphabet.letters:
        productions.append(Production((s,), (x, s, alphabet.inverse(x))))
    return Grammar(frozenset(alphabet.letters), frozenset({s}), s, tuple(productions))
