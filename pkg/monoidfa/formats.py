"""Line-based text formats for every artifact kind.

Blank lines and ``#`` comments are ignored everywhere. Automaton-like files::

    labels words
    letters a b
    vertex v0 initial terminal
    edge v0 a v0

Transducer files add ``input``/``output`` alphabet lines, grammars are one
rule per line (``S -> a S b | eps``), group tables list ``elements``,
``mul x y = z`` and ``gen a = x`` lines, and Schreier diagrams are vertex
and edge lines with ``base`` and ``tree`` markers.
"""

from __future__ import annotations

from typing import Any, Callable, Iterator

from monoidfa.automaton import Automaton, AutomatonBuilder
from monoidfa.errors import MonoidFAError, ParseError
from monoidfa.family import SA_LABELS, FamilyAcceptor
from monoidfa.grammar import Grammar, Production
from monoidfa.groups import FREE_GROUP, FiniteGroupTable, SchreierDiagram
from monoidfa.monoids import FREE, TRIVIAL, WORD_PAIRS, Monoid
from monoidfa.pushdown import PDA_LABELS, Pda
from monoidfa.stack import M1, MCF, MSA
from monoidfa.symbols import EPSILON_TOKENS, SYMBOLS, Symbol
from monoidfa.transducer import Transducer

LABEL_MONOIDS: dict[str, Monoid] = {
    "words": FREE,
    "trivial": TRIVIAL,
    "pairs": WORD_PAIRS,
    "pda": PDA_LABELS,
    "sa": SA_LABELS,
    "free-group": FREE_GROUP,
    "mcf": MCF,
    "m1": M1,
    "msa": MSA,
}


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def _symbol(name: str, line: int, source: str) -> Symbol:
    try:
        return SYMBOLS.intern(name)
    except ParseError as exc:
        raise ParseError(exc.message, line, source) from None


def _monoid_name(monoid: Monoid) -> str:
    for name, candidate in LABEL_MONOIDS.items():
        if candidate == monoid:
            return name
    raise MonoidFAError(f"no text format for labels in monoid '{monoid.name}'")


# === Automata ===


def _parse_automaton_lines(text: str, source: str, extra: dict[str, list[str]]) -> Automaton:
    monoid: Monoid = FREE
    builder: AutomatonBuilder | None = None
    vertices: dict[str, int] = {}
    initial_seen = False

    def current() -> AutomatonBuilder:
        nonlocal builder
        if builder is None:
            builder = AutomatonBuilder(monoid)
        return builder

    for line, tokens in _lines(text):
        keyword, args = tokens[0], tokens[1:]
        if keyword == "labels":
            if builder is not None:
                raise ParseError("'labels' must come before vertices and edges", line, source)
            if len(args) != 1 or args[0] not in LABEL_MONOIDS:
                raise ParseError(f"expected 'labels' with one of {sorted(LABEL_MONOIDS)}", line, source)
            monoid = LABEL_MONOIDS[args[0]]
        elif keyword == "letters":
            current().declare_letters(_symbol(a, line, source) for a in args)
        elif keyword in extra:
            extra[keyword].extend(_symbol(a, line, source) for a in args)
        elif keyword == "vertex":
            if not args:
                raise ParseError("vertex needs a name", line, source)
            name, flags = args[0], args[1:]
            if name in vertices:
                raise ParseError(f"duplicate vertex '{name}'", line, source)
            unknown = set(flags) - {"initial", "terminal"}
            if unknown:
                raise ParseError(f"unknown vertex flags {sorted(unknown)}", line, source)
            v = current().add_vertex(name)
            vertices[name] = v
            if "initial" in flags:
                if initial_seen:
                    raise ParseError("more than one initial vertex", line, source)
                initial_seen = True
                current().set_initial(v)
            if "terminal" in flags:
                current().add_terminal(v)
        elif keyword == "edge":
            if len(args) != 3:
                raise ParseError("expected 'edge <source> <label> <target>'", line, source)
            src, label_text, dst = args
            for name in (src, dst):
                if name not in vertices:
                    raise ParseError(f"undeclared vertex '{name}'", line, source)
            try:
                label = monoid.parse(label_text)
            except MonoidFAError as exc:
                raise ParseError(f"bad label '{label_text}': {exc}", line, source) from None
            current().add_edge(vertices[src], label, vertices[dst])
        else:
            raise ParseError(f"unknown directive '{keyword}'", line, source)
    if not initial_seen:
        raise ParseError("no initial vertex", None, source)
    return current().build()


def parse_automaton(text: str, source: str = "<text>") -> Automaton:
    return _parse_automaton_lines(text, source, {})


def serialize_automaton(aut: Automaton, header: tuple[str, ...] = ()) -> str:
    lines = [f"labels {_monoid_name(aut.monoid)}", *header]
    if aut.alphabet:
        lines.append("letters " + " ".join(sorted(aut.alphabet)))
    for v, name in enumerate(aut.names):
        flags = [flag for flag, on in (("initial", v == aut.initial), ("terminal", v in aut.terminals)) if on]
        lines.append(" ".join(["vertex", name, *flags]))
    for e in aut.edges:
        lines.append(f"edge {aut.names[e.source]} {aut.monoid.format(e.label)} {aut.names[e.target]}")
    return "\n".join(lines) + "\n"


def _require_labels(aut: Automaton, monoid: Monoid, kind: str, source: str) -> None:
    if aut.monoid != monoid:
        raise ParseError(f"a {kind} file needs 'labels {_monoid_name(monoid)}'", None, source)


def parse_pda(text: str, source: str = "<text>") -> Pda:
    aut = parse_automaton(text, source)
    _require_labels(aut, PDA_LABELS, "pushdown automaton", source)
    return Pda(aut)


def serialize_pda(p: Pda) -> str:
    return serialize_automaton(p.automaton)


def parse_stack_automaton(text: str, source: str = "<text>") -> FamilyAcceptor:
    aut = parse_automaton(text, source)
    _require_labels(aut, SA_LABELS, "stack automaton", source)
    return FamilyAcceptor.sa(aut)


def serialize_stack_automaton(f: FamilyAcceptor) -> str:
    return serialize_automaton(f.automaton)


def parse_transducer(text: str, source: str = "<text>") -> Transducer:
    alphabets: dict[str, list[str]] = {"input": [], "output": []}
    aut = _parse_automaton_lines(text, source, alphabets)
    _require_labels(aut, WORD_PAIRS, "transducer", source)
    return Transducer(aut, frozenset(alphabets["input"]), frozenset(alphabets["output"]))


def serialize_transducer(t: Transducer) -> str:
    header = []
    if t.input_alphabet:
        header.append("input " + " ".join(sorted(t.input_alphabet)))
    if t.output_alphabet:
        header.append("output " + " ".join(sorted(t.output_alphabet)))
    return serialize_automaton(t.automaton, tuple(header))


# === Grammars ===


def parse_grammar(text: str, source: str = "<text>") -> Grammar:
    start: Symbol | None = None
    terminals: list[Symbol] = []
    nonterminals: list[Symbol] = []
    productions: list[Production] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" in line:
            left, right = line.split("->", 1)
            lhs = tuple(_symbol(s, number, source) for s in left.split())
            if not lhs:
                raise ParseError("empty left side", number, source)
            for alternative in right.split("|"):
                tokens = alternative.split()
                if len(tokens) == 1 and tokens[0] in EPSILON_TOKENS:
                    tokens = []
                elif not tokens:
                    raise ParseError("empty alternative; write 'eps' for the empty word", number, source)
                rhs = tuple(_symbol(s, number, source) for s in tokens)
                productions.append(Production(lhs, rhs))
            if start is None and len(lhs) == 1:
                start = lhs[0]
            continue
        keyword, *args = line.split()
        if keyword == "start" and len(args) == 1:
            start = _symbol(args[0], number, source)
        elif keyword == "terminals":
            terminals.extend(_symbol(a, number, source) for a in args)
        elif keyword == "nonterminals":
            nonterminals.extend(_symbol(a, number, source) for a in args)
        else:
            raise ParseError(f"expected a rule 'A -> ...' or a directive, got '{line}'", number, source)
    if start is None:
        raise ParseError("grammar has no start symbol", None, source)
    try:
        return Grammar.from_productions(start, productions, terminals, nonterminals)
    except MonoidFAError as exc:
        raise ParseError(str(exc), None, source) from None


def serialize_grammar(g: Grammar) -> str:
    lines = [f"start {g.start}"]
    if g.terminals:
        lines.append("terminals " + " ".join(sorted(g.terminals)))
    lines.append("nonterminals " + " ".join(sorted(g.nonterminals)))
    lines.extend(str(p) for p in g.productions)
    return "\n".join(lines) + "\n"


# === Group tables ===


def parse_group(text: str, source: str = "<text>") -> FiniteGroupTable:
    name = "group"
    elements: list[str] = []
    products: dict[tuple[str, str], str] = {}
    generators: list[tuple[Symbol, str]] = []
    for line, tokens in _lines(text):
        keyword, args = tokens[0], tokens[1:]
        if keyword == "name" and len(args) == 1:
            name = args[0]
        elif keyword == "elements":
            if elements:
                raise ParseError("elements declared twice", line, source)
            elements = list(args)
        elif keyword == "mul":
            if len(args) != 4 or args[2] != "=":
                raise ParseError("expected 'mul x y = z'", line, source)
            x, y, _, z = args
            for element in (x, y, z):
                if element not in elements:
                    raise ParseError(f"unknown element '{element}'", line, source)
            products[(x, y)] = z
        elif keyword == "gen":
            if len(args) != 3 or args[1] != "=":
                raise ParseError("expected 'gen a = x'", line, source)
            if args[2] not in elements:
                raise ParseError(f"unknown element '{args[2]}'", line, source)
            generators.append((_symbol(args[0], line, source), args[2]))
        else:
            raise ParseError(f"unknown directive '{keyword}'", line, source)
    if not elements:
        raise ParseError("no elements declared", None, source)
    index = {e: i for i, e in enumerate(elements)}
    missing = [f"{x}*{y}" for x in elements for y in elements if (x, y) not in products]
    if missing:
        raise ParseError(f"missing products: {', '.join(missing[:5])}", None, source)
    table = tuple(tuple(index[products[(x, y)]] for y in elements) for x in elements)
    try:
        return FiniteGroupTable(tuple(elements), table, tuple(generators), name=name)
    except MonoidFAError as exc:
        raise ParseError(str(exc), None, source) from None


def serialize_group(g: FiniteGroupTable) -> str:
    lines = [f"name {g.name}", "elements " + " ".join(g.elements)]
    for x in g.elements:
        for y in g.elements:
            lines.append(f"mul {x} {y} = {g.multiply(x, y)}")
    for letter, element in g.generators:
        lines.append(f"gen {letter} = {element}")
    return "\n".join(lines) + "\n"


# === Schreier diagrams ===


def parse_schreier(text: str, source: str = "<text>") -> SchreierDiagram:
    cosets: list[str] = []
    base: str | None = None
    edges: list[tuple[str, str, str]] = []
    tree: list[tuple[str, str, str]] = []
    for line, tokens in _lines(text):
        keyword, args = tokens[0], tokens[1:]
        if keyword == "vertex" and args:
            if args[0] in cosets:
                raise ParseError(f"duplicate vertex '{args[0]}'", line, source)
            cosets.append(args[0])
            if "base" in args[1:]:
                if base is not None:
                    raise ParseError("more than one base vertex", line, source)
                base = args[0]
        elif keyword == "edge" and len(args) in (3, 4):
            src, letter, dst = args[:3]
            for name in (src, dst):
                if name not in cosets:
                    raise ParseError(f"undeclared vertex '{name}'", line, source)
            _symbol(letter, line, source)
            edges.append((src, letter, dst))
            if len(args) == 4:
                if args[3] != "tree":
                    raise ParseError(f"unknown edge marker '{args[3]}'", line, source)
                tree.append((src, letter, dst))
        else:
            raise ParseError(f"unknown directive '{' '.join(tokens)}'", line, source)
    if base is None:
        raise ParseError("no base vertex", None, source)
    try:
        return SchreierDiagram.from_edges(cosets, base, edges, tree)
    except MonoidFAError as exc:
        raise ParseError(str(exc), None, source) from None


def serialize_schreier(d: SchreierDiagram) -> str:
    lines = [" ".join(["vertex", name, *(["base"] if v == d.base else [])]) for v, name in enumerate(d.cosets)]
    emitted: set[tuple[int, Symbol, int]] = set()
    for i, e in enumerate(d.edges):
        reverse = (e.target, SYMBOLS.intern(d.alphabet.inverse(e.letter)), e.source)
        if reverse in emitted and i not in d.tree:
            continue
        emitted.add((e.source, e.letter, e.target))
        marker = " tree" if i in d.tree else ""
        lines.append(f"edge {d.cosets[e.source]} {e.letter} {d.cosets[e.target]}{marker}")
    return "\n".join(lines) + "\n"


# === Registry ===


PARSERS: dict[str, Callable[[str, str], Any]] = {
    "automaton": parse_automaton,
    "pda": parse_pda,
    "sa": parse_stack_automaton,
    "transducer": parse_transducer,
    "grammar": parse_grammar,
    "group": parse_group,
    "schreier": parse_schreier,
}

SERIALIZERS: dict[str, Callable[[Any], str]] = {
    "automaton": serialize_automaton,
    "pda": serialize_pda,
    "sa": serialize_stack_automaton,
    "transducer": serialize_transducer,
    "grammar": serialize_grammar,
    "group": serialize_group,
    "schreier": serialize_schreier,
}


def parse_artifact(kind: str, text: str, source: str = "<text>") -> Any:
    if kind not in PARSERS:
        raise ValueError(f"unknown artifact kind '{kind}', expected one of {sorted(PARSERS)}")
    return PARSERS[kind](text, source)


def serialize_artifact(kind: str, value: Any) -> str:
    if kind not in SERIALIZERS:
        raise ValueError(f"unknown artifact kind '{kind}', expected one of {sorted(SERIALIZERS)}")
    return SERIALIZERS[kind](value)
