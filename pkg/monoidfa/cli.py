"""monoidfa CLI - automata over monoids from the command line.

Usage:
    monoidfa accept fig1 aab
    monoidfa det fig1 --format dot
    monoidfa pda-accept fig2 aabb
    monoidfa stack-accept fig8 aabbcc --budget 100000
    monoidfa cfg-accept grammar_g a,b,b^-1,a^-1
    monoidfa demo fig2

Artifacts are file paths, names in the ``--workspace`` manifest, or bundled
fixture names. Exit status: 0 accept/success, 1 reject, 2 usage or input
error, 3 budget exhausted.
"""

from __future__ import annotations

import logging
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Iterator, Optional

import click

from monoidfa import __version__
from monoidfa.automaton import Automaton
from monoidfa.config import Settings, load_settings
from monoidfa.demos import demo_names, run_demo
from monoidfa.dot import to_dot
from monoidfa.errors import BudgetExceededError
from monoidfa.expressions import format_expression, to_expression
from monoidfa.family import FamilyAcceptor, Verdict, accepts_bounded, default_acceptance
from monoidfa.formats import serialize_artifact
from monoidfa.grammar import (
    Grammar,
    cfg_to_pda,
    cyk,
    free_group_wp_grammar,
    generate_bounded,
    leftmost_derive,
    normalize_rhs,
    pda_to_cfg,
    to_cnf,
)
from monoidfa.groups import (
    FREE_GROUP,
    FiniteGroupTable,
    SchreierDiagram,
    SymmetricAlphabet,
    howson_intersection,
    subgroup_generators,
    wp_dfa,
    wp_lift,
)
from monoidfa.monoids import FREE, ProductMonoid
from monoidfa.pushdown import Pda, accepts, combine_cf, dyck_analyze, pump_cfl
from monoidfa.rational import (
    BOOLEAN_OPERATIONS,
    Dfa,
    boolean,
    determinize,
    distinguishing_word,
    minimize,
    nfa_accepts,
    pump_decompose,
    recognizer_to_dfa,
    transition_monoid,
)
from monoidfa.stack import parse_action
from monoidfa.symbols import display_word, parse_cli_word
from monoidfa.transducer import apply, compose, inverse
from monoidfa.workspace import Workspace, list_fixtures, load_artifact

logger = logging.getLogger(__name__)


class InputError(click.ClickException):
    """Malformed input or unusable artifact; exits with status 2."""

    exit_code = 2


@dataclass
class AppState:
    settings: Settings
    workspace: Optional[Workspace] = None


@contextmanager
def _handle_errors() -> Iterator[None]:
    try:
        yield
    except BudgetExceededError as exc:
        click.echo(f"unknown: {exc}")
        raise SystemExit(3)
    except (FileNotFoundError, KeyError, TypeError, ValueError) as exc:
        raise InputError(exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc))


def _load(state: AppState, name: str, *kinds: str) -> Any:
    kind, value = load_artifact(name, state.workspace)
    if kinds and kind not in kinds:
        raise InputError(f"'{name}' is a {kind}, expected {' or '.join(kinds)}")
    return value


def _free_automaton(state: AppState, name: str) -> Automaton:
    aut = _load(state, name, "automaton")
    if aut.monoid != FREE:
        raise InputError(f"'{name}' is not labelled by words (labels {aut.monoid.name})")
    return aut


def _emit(kind: str, value: Any, fmt: str) -> None:
    if fmt == "dot":
        click.echo(to_dot(value), nl=False)
    else:
        click.echo(serialize_artifact(kind, value), nl=False)


def _verdict(accepted: bool) -> None:
    if accepted:
        click.echo("accept")
        return
    click.echo("reject")
    raise SystemExit(1)


format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "dot"]), default="text", show_default=True,
    help="Output as the text format or as Graphviz DOT.",
)
budget_option = click.option("--budget", type=click.IntRange(min=1), default=None, help="Search budget (overrides config).")


@click.group()
@click.version_option(version=__version__, prog_name="monoidfa")
@click.option("--verbose", "-v", is_flag=True, help="Log construction details at debug level.")
@click.option("--config", "config_path", type=click.Path(), default=None, help="YAML settings file.")
@click.option("--workspace", "workspace_path", type=click.Path(), default=None, help="YAML workspace manifest.")
@click.pass_context
def main(ctx: click.Context, verbose: bool, config_path: Optional[str], workspace_path: Optional[str]) -> None:
    """Finite automata over monoids: rational languages, transducers, pushdown and stack automata, grammars and groups."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        settings = load_settings(config_path)
        workspace = Workspace.load(workspace_path) if workspace_path else None
    except (FileNotFoundError, ValueError) as exc:
        raise InputError(str(exc))
    if workspace is not None and workspace.settings is not None and config_path is None:
        settings = workspace.settings
    logger.debug("settings: %s", settings.to_dict())
    ctx.obj = AppState(settings, workspace)


# === Rational languages ===


@main.command()
@click.argument("automaton")
@click.argument("word")
@click.pass_obj
def accept(state: AppState, automaton: str, word: str) -> None:
    """Decide membership of WORD in a word automaton."""
    with _handle_errors():
        result = nfa_accepts(_free_automaton(state, automaton), parse_cli_word(word))
    _verdict(result)


@main.command()
@click.argument("automaton")
@format_option
@click.pass_obj
def det(state: AppState, automaton: str, fmt: str) -> None:
    """Complete deterministic automaton by the subset construction."""
    with _handle_errors():
        dfa = determinize(_free_automaton(state, automaton))
    _emit("automaton", dfa.to_automaton(), fmt)


@main.command("min")
@click.argument("automaton")
@format_option
@click.pass_obj
def minimize_command(state: AppState, automaton: str, fmt: str) -> None:
    """Minimal complete deterministic automaton."""
    with _handle_errors():
        dfa = minimize(determinize(_free_automaton(state, automaton)))
    _emit("automaton", dfa.to_automaton(), fmt)


@main.command()
@click.argument("automaton")
@click.option("--dfa", "as_dfa", is_flag=True, help="Print the recognising automaton over the monoid instead.")
@format_option
@click.pass_obj
def monoid(state: AppState, automaton: str, as_dfa: bool, fmt: str) -> None:
    """Transition monoid of a word automaton, bounded by transition_monoid_limit."""
    with _handle_errors():
        aut = _free_automaton(state, automaton)
        tm = transition_monoid(aut, limit=state.settings.transition_monoid_limit)
        if as_dfa:
            dfa = recognizer_to_dfa(tm, aut.letters())
    if as_dfa:
        _emit("automaton", dfa.to_automaton(), fmt)
        return
    click.echo(f"elements: {tm.size}")
    for letter, element in tm.generators:
        click.echo(f"{letter} -> m{element}")
    click.echo("accept: " + " ".join(f"m{i}" for i in sorted(tm.accept)))


def _joint_dfas(state: AppState, names: tuple[str, ...]) -> list[Dfa]:
    automata = [_free_automaton(state, n) for n in names]
    letters = set()
    for aut in automata:
        letters |= aut.letters()
    return [determinize(aut, letters) for aut in automata]


@main.command("bool")
@click.argument("operation", type=click.Choice(sorted(BOOLEAN_OPERATIONS)))
@click.argument("first")
@click.argument("second", required=False)
@format_option
@click.pass_obj
def boolean_command(state: AppState, operation: str, first: str, second: Optional[str], fmt: str) -> None:
    """Complement, intersection or union over the joint alphabet."""
    names = (first,) if second is None else (first, second)
    with _handle_errors():
        dfas = _joint_dfas(state, names)
        result = boolean(operation, *dfas)
    _emit("automaton", result.to_automaton(), fmt)


@main.command()
@click.argument("first")
@click.argument("second")
@click.pass_obj
def equiv(state: AppState, first: str, second: str) -> None:
    """Decide whether two word automata accept the same language."""
    with _handle_errors():
        a, b = _joint_dfas(state, (first, second))
        witness = distinguishing_word(a, b)
    if witness is None:
        click.echo("equivalent")
        return
    click.echo(f"not equivalent: {display_word(witness)}")
    raise SystemExit(1)


@main.command()
@click.argument("automaton")
@click.argument("word")
@click.pass_obj
def pump(state: AppState, automaton: str, word: str) -> None:
    """Split an accepted WORD as x y z with x yⁱ z accepted."""
    with _handle_errors():
        dfa = determinize(_free_automaton(state, automaton))
        result = pump_decompose(dfa, parse_cli_word(word))
    click.echo(f"x = {display_word(result.x)}")
    click.echo(f"y = {display_word(result.y)}")
    click.echo(f"z = {display_word(result.z)}")


@main.command("to-regex")
@click.argument("automaton")
@click.pass_obj
def to_regex(state: AppState, automaton: str) -> None:
    """Rational expression for the accepted set."""
    with _handle_errors():
        aut = _load(state, automaton, "automaton")
        click.echo(format_expression(to_expression(aut), aut.monoid))


@main.command("to-dot")
@click.argument("artifact")
@click.pass_obj
def to_dot_command(state: AppState, artifact: str) -> None:
    """Graphviz rendering of an automaton-like artifact."""
    with _handle_errors():
        value = _load(state, artifact, "automaton", "pda", "sa", "transducer", "schreier")
        click.echo(to_dot(value), nl=False)


# === Transducers ===


@main.command("compose")
@click.argument("first")
@click.argument("second")
@format_option
@click.pass_obj
def compose_command(state: AppState, first: str, second: str, fmt: str) -> None:
    """Relational composite of two transducers."""
    with _handle_errors():
        result = compose(_load(state, first, "transducer"), _load(state, second, "transducer"))
    _emit("transducer", result, fmt)


@main.command("invert")
@click.argument("transducer")
@format_option
@click.pass_obj
def invert_command(state: AppState, transducer: str, fmt: str) -> None:
    """Swap the input and output tapes."""
    with _handle_errors():
        result = inverse(_load(state, transducer, "transducer"))
    _emit("transducer", result, fmt)


@main.command("apply")
@click.argument("transducer")
@click.argument("word")
@click.option("--max-len", type=click.IntRange(min=0), default=None, help="Longest image to list.")
@click.pass_obj
def apply_command(state: AppState, transducer: str, word: str, max_len: Optional[int]) -> None:
    """List the images of WORD, shortest first."""
    limit = max_len if max_len is not None else state.settings.max_output_len
    with _handle_errors():
        images = apply(_load(state, transducer, "transducer"), parse_cli_word(word), limit)
    if not images:
        click.echo("no image")
        raise SystemExit(1)
    for image_word in sorted(images, key=lambda w: (len(w), w)):
        click.echo(display_word(image_word))


# === Families, pushdown and stack automata ===


def _acceptor(state: AppState, name: str, monoid_name: Optional[str]) -> FamilyAcceptor:
    kind, value = load_artifact(name, state.workspace)
    if isinstance(value, Pda):
        return value.acceptor
    if isinstance(value, FamilyAcceptor):
        return value
    if kind == "automaton":
        if value.monoid == FREE:
            return FamilyAcceptor.trivial(value)
        if isinstance(value.monoid, ProductMonoid) and value.monoid.right == FREE:
            return FamilyAcceptor(value, default_acceptance(monoid_name or value.monoid.left.name))
    raise InputError(f"'{name}' is not labelled by pairs (monoid element, word)")


def _report(verdict: Verdict) -> None:
    if verdict is Verdict.YES:
        click.echo("accept")
    elif verdict is Verdict.NO:
        click.echo("reject")
        raise SystemExit(1)
    else:
        click.echo("unknown")
        raise SystemExit(3)


@main.command("family-accept")
@click.argument("artifact")
@click.argument("word")
@click.option("--monoid", "monoid_name", type=click.Choice(["trivial", "mcf", "msa"]), default=None,
              help="Accept set of this monoid (default: inferred from the labels).")
@budget_option
@click.pass_obj
def family_accept(state: AppState, artifact: str, word: str, monoid_name: Optional[str], budget: Optional[int]) -> None:
    """Bounded search for a successful path labelled (x, WORD) with x accepted."""
    settings = state.settings.with_budget(budget)
    with _handle_errors():
        verdict = accepts_bounded(_acceptor(state, artifact, monoid_name), parse_cli_word(word), settings.budget)
    _report(verdict)


@main.command("stack-accept")
@click.argument("automaton")
@click.argument("word")
@budget_option
@click.pass_obj
def stack_accept(state: AppState, automaton: str, word: str, budget: Optional[int]) -> None:
    """Stack automaton membership; 'unknown' when the budget runs out."""
    settings = state.settings.with_budget(budget)
    with _handle_errors():
        verdict = accepts_bounded(_load(state, automaton, "sa"), parse_cli_word(word), settings.budget)
    _report(verdict)


@main.command("pda-accept")
@click.argument("pda")
@click.argument("word")
@click.pass_obj
def pda_accept(state: AppState, pda: str, word: str) -> None:
    """Exact pushdown membership through the equivalent grammar."""
    with _handle_errors():
        result = accepts(_load(state, pda, "pda"), parse_cli_word(word))
    _verdict(result)


@main.command("pda-cat")
@click.argument("first")
@click.argument("second")
@format_option
@click.pass_obj
def pda_cat(state: AppState, first: str, second: str, fmt: str) -> None:
    """Pushdown automaton for the product of two languages."""
    with _handle_errors():
        result = combine_cf("product", _load(state, first, "pda"), _load(state, second, "pda"))
    _emit("pda", result, fmt)


@main.command("pda-star")
@click.argument("pda")
@format_option
@click.pass_obj
def pda_star(state: AppState, pda: str, fmt: str) -> None:
    """Pushdown automaton for the star of a language."""
    with _handle_errors():
        result = combine_cf("star", _load(state, pda, "pda"))
    _emit("pda", result, fmt)


@main.command()
@click.argument("actions", nargs=-1, required=True)
def dyck(actions: tuple[str, ...]) -> None:
    """Matched push/pop analysis of a generator sequence such as P:d P:e Q:e Q:d."""
    with _handle_errors():
        analysis = dyck_analyze([parse_action(a) for a in actions])
    if analysis is None:
        click.echo("product is not the identity")
        raise SystemExit(1)

    def show(node: Any, depth: int) -> None:
        label = f"wrap {node.symbol}" if node.kind == "wrap" else "split"
        click.echo(f"{'  ' * depth}{label} [{node.start}, {node.end})")
        for child in node.children:
            show(child, depth + 1)

    show(analysis.tree, 0)
    if analysis.long_factor is not None:
        start, end = analysis.long_factor
        click.echo(f"identity factor: [{start}, {end})")


# === Grammars ===


@main.command("cfg-accept")
@click.argument("grammar")
@click.argument("word")
@click.pass_obj
def cfg_accept(state: AppState, grammar: str, word: str) -> None:
    """CYK membership in a context-free grammar."""
    with _handle_errors():
        result = cyk(to_cnf(_load(state, grammar, "grammar")), parse_cli_word(word))
    _verdict(result)


@main.command("cfg-gen")
@click.argument("grammar")
@click.option("--max-len", type=click.IntRange(min=0), default=None, help="Longest word to list.")
@click.pass_obj
def cfg_gen(state: AppState, grammar: str, max_len: Optional[int]) -> None:
    """List the generated words up to a length, shortest first."""
    limit = max_len if max_len is not None else state.settings.max_output_len
    with _handle_errors():
        words = generate_bounded(_load(state, grammar, "grammar"), limit)
    for w in sorted(words, key=lambda w: (len(w), w)):
        click.echo(display_word(w))


@main.command("cfg2pda")
@click.argument("grammar")
@format_option
@click.pass_obj
def cfg2pda(state: AppState, grammar: str, fmt: str) -> None:
    """Two-vertex pushdown automaton simulating leftmost derivations."""
    with _handle_errors():
        result = cfg_to_pda(normalize_rhs(_load(state, grammar, "grammar")))
    _emit("pda", result, fmt)


@main.command("pda2cfg")
@click.argument("pda")
@click.pass_obj
def pda2cfg(state: AppState, pda: str) -> None:
    """Context-free grammar of a pushdown automaton."""
    with _handle_errors():
        result = pda_to_cfg(_load(state, pda, "pda"))
    _emit("grammar", result, "text")


@main.command()
@click.argument("grammar")
@click.argument("word")
@click.pass_obj
def leftmost(state: AppState, grammar: str, word: str) -> None:
    """Shortest leftmost derivation of WORD."""
    with _handle_errors():
        derivation = leftmost_derive(_load(state, grammar, "grammar"), parse_cli_word(word))
    if derivation is None:
        click.echo("no derivation")
        raise SystemExit(1)
    for form in derivation.forms:
        click.echo(" ".join(form) if form else "eps")


@main.command("cfl-pump")
@click.argument("grammar")
@click.argument("word")
@click.pass_obj
def cfl_pump(state: AppState, grammar: str, word: str) -> None:
    """Split a generated WORD as u v w x y with u vⁱ w xⁱ y generated."""
    with _handle_errors():
        g: Grammar = _load(state, grammar, "grammar")
        result = pump_cfl(g, parse_cli_word(word))
    for part in ("u", "v", "w", "x", "y"):
        click.echo(f"{part} = {display_word(getattr(result, part))}")
    click.echo(f"k = {result.k}")


# === Groups ===


@main.command("wp-finite")
@click.argument("group")
@click.argument("word", required=False)
@format_option
@click.pass_obj
def wp_finite(state: AppState, group: str, word: Optional[str], fmt: str) -> None:
    """Word-problem automaton of a finite group, or membership of WORD in it."""
    with _handle_errors():
        table: FiniteGroupTable = _load(state, group, "group")
        dfa = wp_dfa(table)
        if word is not None:
            result = dfa.accepts(parse_cli_word(word))
    if word is not None:
        _verdict(result)
        return
    _emit("automaton", minimize(dfa).to_automaton(), fmt)


@main.command("subgroup-gens")
@click.argument("automaton")
@click.pass_obj
def subgroup_gens(state: AppState, automaton: str) -> None:
    """Generators of the subgroup generated by the accepted set."""
    with _handle_errors():
        aut = _load(state, automaton, "automaton")
        if aut.monoid != FREE_GROUP:
            raise InputError(f"'{automaton}' is not labelled by free-group elements")
        gens = subgroup_generators(aut, FREE_GROUP)
    for g in gens:
        click.echo(display_word(g))


@main.command()
@click.option("--first", "-1", "first", multiple=True, required=True, help="Generator of the first subgroup (a,b^-1).")
@click.option("--second", "-2", "second", multiple=True, required=True, help="Generator of the second subgroup.")
def howson(first: tuple[str, ...], second: tuple[str, ...]) -> None:
    """Generators of the intersection of two subgroups of a free group."""
    with _handle_errors():
        gens1 = [parse_cli_word(g) for g in first]
        gens2 = [parse_cli_word(g) for g in second]
        alphabet = SymmetricAlphabet.from_letters(x for g in gens1 + gens2 for x in g)
        result = howson_intersection(gens1, gens2, alphabet)
    if not result:
        click.echo("trivial")
        return
    for g in result:
        click.echo(display_word(g))


@main.command("schreier-rewrite")
@click.argument("diagram")
@click.argument("word")
@click.option("--word-problem", is_flag=True, help="Decide whether WORD is the identity instead.")
@click.pass_obj
def schreier_rewrite(state: AppState, diagram: str, word: str, word_problem: bool) -> None:
    """Rewrite WORD over the subgroup generators of a Schreier diagram."""
    with _handle_errors():
        d: SchreierDiagram = _load(state, diagram, "schreier")
        w = parse_cli_word(word)
        if word_problem:
            cnf = to_cnf(free_group_wp_grammar(d.delta_alphabet))
            result = wp_lift(d, lambda v: cyk(cnf, v), w)
        else:
            rewritten = d.rewrite(w)
    if word_problem:
        _verdict(result)
        return
    if rewritten is None:
        click.echo("undefined")
        raise SystemExit(1)
    click.echo(display_word(rewritten))


# === Housekeeping ===


@main.command()
@click.argument("name", type=click.Choice(demo_names()))
@click.option("--max-len", type=click.IntRange(min=0), default=None, help="Word length for exhaustive checks.")
@click.pass_obj
def demo(state: AppState, name: str, max_len: Optional[int]) -> None:
    """Run the checks of a worked example."""
    settings = state.settings
    if max_len is not None:
        settings = Settings.from_dict({**settings.to_dict(), "demo_word_len": max(max_len, 1)})
    with _handle_errors():
        checks = run_demo(name, settings)
    for check in checks:
        click.echo(f"{'PASS' if check.passed else 'FAIL'}  {check.description}")
    if not all(c.passed for c in checks):
        raise SystemExit(1)


@main.command("list")
def list_command() -> None:
    """List the bundled fixtures."""
    fixtures = list_fixtures()
    if not fixtures:
        click.echo("No fixtures found.")
        return
    click.echo(f"Bundled fixtures ({len(fixtures)}):\n")
    for info in fixtures:
        click.echo(f"  {info['name']:20s} {info['kind']}")


@main.command()
@click.argument("path", type=click.Path(exists=True))
def validate(path: str) -> None:
    """Validate a workspace manifest or settings file."""
    from monoidfa.validator import validate_file

    result = validate_file(path)
    if result.is_valid:
        click.echo(f"Valid: {result.path}")
    else:
        click.echo(f"Invalid: {result.path}", err=True)
        for error in result.errors:
            click.echo(f"  - {error}", err=True)
        raise SystemExit(1)


if __name__ == "__main__":
    main()
