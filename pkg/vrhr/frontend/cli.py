"""Command-line entry point: ``vrhr <command> SPEC [options]``.

Exit codes: 0 positive or passed, 1 negative or failed, 2 usage or spec
error, 3 truncated by a bound.
"""

import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Final, List, Optional

import click

from vrhr._enum import Algebra, CheckStatus, EnumerationStatus
from vrhr.algebra.evaluate import eval_hr, evaluate
from vrhr.behavior.builder import build_behavior
from vrhr.behavior.dot import behavior_to_dot
from vrhr.behavior.system import system_from_graph
from vrhr.config import DEFAULT_MAX_TRACE_LENGTH, Bounds, get_bundled_spec, get_log_level
from vrhr.errors import (
    GrammarError,
    NetError,
    ResolutionError,
    SpecSyntaxError,
    TermError,
    TranslationError,
    VrhrError,
)
from vrhr.frontend import report as verdicts
from vrhr.frontend.parser import load_spec, parse_term
from vrhr.frontend.printer import print_spec
from vrhr.frontend.spec import SpecFile, resolve_spec
from vrhr.grammar.derivation import Derivation, DerivationStep, replay_derivation
from vrhr.grammar.enumerate import enumerate_language
from vrhr.grammar.grammar import Grammar
from vrhr.graph.dot import graph_to_dot
from vrhr.graph.labeled import LabeledGraph
from vrhr.oracle.suite import SuiteSetup, language_terms, random_terms, run_suite
from vrhr.petri.dot import net_to_dot
from vrhr.reach.formula import eval_formula
from vrhr.reach.prp import PrpInstance, replay_witness, solve_prp
from vrhr.translate.alphabet import expanded_alphabet
from vrhr.translate.expand import expand_term
from vrhr.translate.spec import translate_spec

_LOGGER: Final = logging.getLogger(__name__)

_LOG_FORMAT: Final = "%(asctime)s %(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class _Options:
    as_json: bool
    workers: int
    seed: int


def _configure_logging(verbose: int) -> None:
    if verbose >= 2:
        level = "DEBUG"
    elif verbose == 1:
        level = "INFO"
    else:
        level = get_log_level()
    logging.basicConfig(level=level, format=_LOG_FORMAT)


def _spec_path(name: str) -> Path:
    path = Path(name)
    if path.is_file():
        return path
    bundled = get_bundled_spec(name)
    if bundled.is_file():
        return bundled
    raise click.UsageError(f"no spec file {name!r}")


def _load(name: str, resolve: bool = True) -> SpecFile:
    path = _spec_path(name)
    _LOGGER.info("loading %s", path)
    try:
        return load_spec(path, resolve=resolve)
    except (SpecSyntaxError, ResolutionError) as exc:
        raise click.UsageError(f"{path}: {exc}") from exc


def _grammar(spec: SpecFile, name: Optional[str]) -> Grammar:
    try:
        return spec.grammar(name)
    except ResolutionError as exc:
        raise click.UsageError(str(exc)) from exc


def _rules(text: Optional[str]) -> List[int]:
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise click.BadParameter(f"rule indices must be integers: {text}") from exc


def _derive(grammar: Grammar, start: Optional[str], rules: str) -> Derivation:
    """Leftmost derivation applying ``rules`` (comma-separated indices) in order."""
    if start is None:
        if not grammar.axioms:
            raise click.UsageError(f"grammar {grammar.name} has no axiom; pass --start")
        start = grammar.axioms[0]
    try:
        return replay_derivation(grammar, start, [DerivationStep(r) for r in _rules(rules)])
    except GrammarError as exc:
        raise click.UsageError(str(exc)) from exc


def _derived_graph(spec: SpecFile, grammar: Grammar, derivation: Derivation) -> LabeledGraph:
    try:
        return evaluate(derivation.term, spec.alphabet, grammar.algebra)
    except TermError as exc:
        raise click.UsageError(f"derived term does not evaluate: {exc}") from exc


_BOUND_HELP: Final = {
    "max_steps": "Derivation step bound.",
    "max_vertices": "Vertex bound on derived systems.",
    "max_states": "State bound per system.",
    "max_graphs": "Cap on enumerated graphs.",
}


def _remember_bound(ctx: click.Context, param: click.Parameter, value: Optional[int]) -> None:
    if value is not None:
        ctx.meta.setdefault("overrides", {})[param.name] = value


def _bound_options(f):
    """Bound flags, accepted before and after the subcommand name."""
    for name, help_text in reversed(_BOUND_HELP.items()):
        f = click.option(
            "--" + name.replace("_", "-"),
            name,
            type=int,
            default=None,
            expose_value=False,
            callback=_remember_bound,
            help=help_text,
        )(f)
    return f


def _finish(ctx: click.Context, verdict: verdicts.VerdictDict) -> None:
    opts: _Options = ctx.obj
    click.echo(verdicts.to_json(verdict) if opts.as_json else verdicts.render_text(verdict))
    ctx.exit(verdict["exit_code"])


@click.group()
@_bound_options
@click.option("--json", "as_json", is_flag=True, help="Machine-readable verdicts.")
@click.option(
    "--deterministic/--parallel",
    default=True,
    help="Check instances one after another, or in a process pool.",
)
@click.option("--workers", type=int, default=os.cpu_count() or 1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-v", "--verbose", count=True)
@click.pass_context
def cli(
    ctx: click.Context,
    as_json: bool,
    deterministic: bool,
    workers: int,
    seed: int,
    verbose: int,
) -> None:
    """Bounded verification of grammar-defined process networks."""
    _configure_logging(verbose)
    ctx.obj = _Options(
        as_json=as_json,
        workers=1 if deterministic else max(1, workers),
        seed=seed,
    )


def _bounds(ctx: click.Context, base: Optional[Bounds] = None) -> Bounds:
    """``base`` (usually an analysis' settings) with the command-line bounds on top."""
    return (base or Bounds.default()).merged(**ctx.meta.get("overrides", {}))


@cli.command()
@click.argument("spec")
@click.pass_context
def check(ctx: click.Context, spec: str) -> None:
    """Report every syntax and reference problem of SPEC."""
    loaded = _load(spec, resolve=False)
    _finish(ctx, verdicts.check_verdict(resolve_spec(loaded), spec))


@cli.command(name="eval")
@click.argument("spec")
@click.option("--grammar", "grammar_name", default=None)
@click.option("--start", default=None, help="Start nonterminal; defaults to the first axiom.")
@click.option("--rules", default="", help="Comma-separated rule indices, applied leftmost.")
@click.option("--term", "term_text", default=None, help="Evaluate this term instead.")
@click.option("--algebra", type=click.Choice(["vr", "hr"]), default="vr", show_default=True)
@click.pass_context
def eval_command(
    ctx: click.Context,
    spec: str,
    grammar_name: Optional[str],
    start: Optional[str],
    rules: str,
    term_text: Optional[str],
    algebra: str,
) -> None:
    """Print the graph of a derivation (or of a term) as DOT."""
    loaded = _load(spec)
    if term_text is not None:
        try:
            graph = evaluate(parse_term(term_text), loaded.alphabet, Algebra.from_keyword(algebra))
        except (SpecSyntaxError, TermError) as exc:
            raise click.UsageError(str(exc)) from exc
    else:
        grammar = _grammar(loaded, grammar_name)
        derivation = _derive(grammar, start, rules)
        graph = _derived_graph(loaded, grammar, derivation)
    if ctx.obj.as_json:
        click.echo(json.dumps(graph.to_dict(), indent=2))
    else:
        click.echo(graph_to_dot(graph))


@cli.command(name="enumerate")
@click.argument("spec")
@_bound_options
@click.option("--grammar", "grammar_name", default=None)
@click.pass_context
def enumerate_command(ctx: click.Context, spec: str, grammar_name: Optional[str]) -> None:
    """List one graph per isomorphism class of the bounded language."""
    loaded = _load(spec)
    grammar = _grammar(loaded, grammar_name)
    language = enumerate_language(grammar, loaded.alphabet, _bounds(ctx))
    members = list(language)
    if ctx.obj.as_json:
        payload = {
            "status": language.status.value,
            "members": [
                {"derivation": m.derivation.to_dict(), "graph": m.graph.to_dict()} for m in members
            ],
        }
        click.echo(json.dumps(payload, indent=2))
    else:
        for i, member in enumerate(members):
            steps = ",".join(str(s.rule) for s in member.derivation.steps)
            click.echo(f"{i:>4}  {len(member.graph):>3} vertices  rules {steps}")
        click.echo(f"{len(members)} graphs, enumeration {language.status.value}")
    if language.status is EnumerationStatus.TRUNCATED:
        ctx.exit(CheckStatus.TRUNCATED.exit_code)


@cli.command()
@click.argument("spec")
@click.option("-o", "--output", type=click.Path(dir_okay=False, writable=True), default=None)
def translate(spec: str, output: Optional[str]) -> None:
    """Rewrite a VR spec as an HR spec with the same verdicts."""
    loaded = _load(spec)
    try:
        text = print_spec(translate_spec(loaded))
    except TranslationError as exc:
        raise click.UsageError(str(exc)) from exc
    if output is None:
        click.echo(text, nl=False)
    else:
        Path(output).write_text(text, encoding="utf-8")
        _LOGGER.info("wrote %s", output)


def _prp_instance(ctx: click.Context, loaded: SpecFile, analysis_name: Optional[str]) -> PrpInstance:
    try:
        analysis = loaded.analysis(analysis_name)
    except ResolutionError as exc:
        raise click.UsageError(str(exc)) from exc
    labeling = loaded.labelings[analysis.labeling] if analysis.labeling else {}
    return PrpInstance(
        grammar=loaded.grammars[analysis.grammar],
        alphabet=loaded.alphabet,
        types=loaded.processes,
        labeling=labeling,
        formula=loaded.formulas[analysis.formula],
        bounds=_bounds(ctx, analysis.bounds()),
        variables=loaded.variables,
    )


@cli.command()
@click.argument("spec")
@_bound_options
@click.option("--analysis", "analysis_name", default=None)
@click.pass_context
def prp(ctx: click.Context, spec: str, analysis_name: Optional[str]) -> None:
    """Decide the bounded parameterized reachability question of an analysis."""
    inst = _prp_instance(ctx, _load(spec), analysis_name)
    _finish(ctx, verdicts.prp_verdict(solve_prp(inst), spec))


@cli.command()
@click.argument("spec")
@_bound_options
@click.option("--grammar", "grammar_name", default=None)
@click.option("--labeling", "labeling_name", default=None)
@click.option("--max-len", type=int, default=DEFAULT_MAX_TRACE_LENGTH, show_default=True)
@click.option("--random", "random_count", type=int, default=0, help="Also check N random terms.")
@click.pass_context
def equiv(
    ctx: click.Context,
    spec: str,
    grammar_name: Optional[str],
    labeling_name: Optional[str],
    max_len: int,
    random_count: int,
) -> None:
    """Check that translated systems behave like their sources."""
    opts: _Options = ctx.obj
    bounds = _bounds(ctx)
    loaded = _load(spec)
    try:
        expanded = expanded_alphabet(loaded.processes, loaded.alphabet)
    except TranslationError as exc:
        raise click.UsageError(str(exc)) from exc
    if labeling_name is not None and labeling_name not in loaded.labelings:
        raise click.UsageError(f"unknown labeling {labeling_name}")
    if labeling_name is None and len(loaded.labelings) == 1:
        labeling_name = next(iter(loaded.labelings))
    labeling = loaded.labelings.get(labeling_name or "", {})

    note = None
    terms = []
    if loaded.grammars:
        grammar = _grammar(loaded, grammar_name)
        try:
            terms, status = language_terms(grammar, expanded, bounds)
        except TranslationError as exc:
            raise click.UsageError(str(exc)) from exc
        if status is EnumerationStatus.TRUNCATED:
            note = "language enumeration truncated"
    if random_count:
        terms.extend(
            random_terms(expanded, random_count, opts.seed, bounds.max_vertices or 6)
        )
    if not terms:
        raise click.UsageError("nothing to check: no grammar and no --random terms")

    setup = SuiteSetup(expanded, labeling, bounds, loaded.variables, max_len, opts.seed)
    instances = run_suite(terms, setup, opts.workers)
    verdict = verdicts.equiv_verdict(instances, bounds, spec, note)
    if note and verdict["status"] == CheckStatus.PASSED.value:
        verdict["status"] = CheckStatus.TRUNCATED.value
        verdict["exit_code"] = CheckStatus.TRUNCATED.exit_code
    _finish(ctx, verdict)


@cli.command()
@click.argument("spec")
@click.argument("witness", type=click.File("r"))
@click.option("--analysis", "analysis_name", default=None)
@click.pass_context
def replay(ctx: click.Context, spec: str, witness, analysis_name: Optional[str]) -> None:
    """Re-run a witness (or a prp verdict holding one) and re-check the formula."""
    inst = _prp_instance(ctx, _load(spec), analysis_name)
    data = json.load(witness)
    if data.get("witness") is not None:
        data = data["witness"]
    elif "derivation" not in data:
        raise click.UsageError("no witness in the given file")
    try:
        rebuilt = replay_witness(inst, data)
    except (GrammarError, NetError, TermError) as exc:
        click.echo(f"witness does not replay: {exc}", err=True)
        ctx.exit(CheckStatus.FAILED.exit_code)
    holds = eval_formula(inst.formula, rebuilt.valuation)
    click.echo(f"replayed {len(rebuilt.firing)} firings; formula {'holds' if holds else 'fails'}")
    status = CheckStatus.PASSED if holds else CheckStatus.FAILED
    ctx.exit(status.exit_code)


@cli.command()
@click.argument("spec")
@click.option("--process", "process_name", default=None, help="Draw one process type.")
@click.option("--grammar", "grammar_name", default=None)
@click.option("--rules", default="", help="Comma-separated rule indices, applied leftmost.")
@click.option(
    "--what",
    type=click.Choice(["graph", "behavior", "translated"]),
    default="behavior",
    show_default=True,
)
def dot(
    spec: str, process_name: Optional[str], grammar_name: Optional[str], rules: str, what: str
) -> None:
    """Graphviz source for a process type or a derived system."""
    loaded = _load(spec)
    if process_name is not None:
        if process_name not in loaded.processes:
            raise click.UsageError(f"unknown process type {process_name}")
        ptype = loaded.processes[process_name]
        click.echo(
            net_to_dot(
                ptype.net,
                name=process_name,
                colour_of=lambda t: "yellow" if t in ptype.internal else "black",
            )
        )
        return

    grammar = _grammar(loaded, grammar_name)
    derivation = _derive(grammar, None, rules)
    graph = _derived_graph(loaded, grammar, derivation)
    if what == "graph":
        click.echo(graph_to_dot(graph))
    elif what == "behavior":
        try:
            behavior = build_behavior(system_from_graph(graph, loaded.alphabet), loaded.processes)
        except VrhrError as exc:
            raise click.UsageError(str(exc)) from exc
        click.echo(behavior_to_dot(behavior))
    else:
        if grammar.algebra is not Algebra.VR:
            raise click.UsageError("--what translated needs a VR grammar")
        try:
            expanded = expanded_alphabet(loaded.processes, loaded.alphabet)
            translated = eval_hr(expand_term(derivation.term, expanded), expanded.alphabet)
        except VrhrError as exc:
            raise click.UsageError(str(exc)) from exc
        click.echo(graph_to_dot(translated, expanded.epsilon))


def main() -> None:
    cli(prog_name="vrhr")

