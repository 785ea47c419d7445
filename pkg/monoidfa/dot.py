"""Graphviz DOT rendering.

The initial vertex gets an arrow with no source and every terminal vertex an
arrow with no target.
"""

from __future__ import annotations

from typing import Any

from monoidfa.automaton import Automaton
from monoidfa.family import FamilyAcceptor
from monoidfa.groups import SchreierDiagram, schreier_transducer
from monoidfa.pushdown import Pda
from monoidfa.rational import Dfa
from monoidfa.transducer import Transducer


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _as_automaton(artifact: Any) -> Automaton:
    if isinstance(artifact, Automaton):
        return artifact
    if isinstance(artifact, (Pda, FamilyAcceptor, Transducer)):
        return artifact.automaton
    if isinstance(artifact, Dfa):
        return artifact.to_automaton()
    if isinstance(artifact, SchreierDiagram):
        return schreier_transducer(artifact).automaton
    raise TypeError(f"cannot render {type(artifact).__name__} as a graph")


def to_dot(artifact: Any, name: str = "automaton") -> str:
    aut = _as_automaton(artifact)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for vertex in aut.names:
        lines.append(f"  {_quote(vertex)};")
    lines.append('  "__start" [shape=point];')
    lines.append(f'  "__start" -> {_quote(aut.names[aut.initial])};')
    for t in sorted(aut.terminals):
        marker = _quote(f"__end{t}")
        lines.append(f"  {marker} [shape=point];")
        lines.append(f"  {_quote(aut.names[t])} -> {marker};")
    for e in aut.edges:
        label = aut.monoid.display(e.label)
        lines.append(f"  {_quote(aut.names[e.source])} -> {_quote(aut.names[e.target])} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
