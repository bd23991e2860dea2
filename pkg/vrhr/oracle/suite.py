"""End-to-end checks of the translation on concrete systems."""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Final, List, Mapping, Sequence, Tuple

from vrhr._enum import Algebra, CheckStatus, EnumerationStatus
from vrhr.algebra.generate import TermGenerator
from vrhr.algebra.terms import Term, render_term
from vrhr.behavior.builder import EdgeTransition
from vrhr.config import DEFAULT_MAX_TRACE_LENGTH, Bounds
from vrhr.errors import ExpansionMismatchError, TranslationError, VrhrError
from vrhr.grammar.enumerate import enumerate_language
from vrhr.grammar.grammar import Grammar
from vrhr.graph.epsilon import validate_epsilon_graph
from vrhr.oracle.context import MarkingRelationContext, build_context, marking_json
from vrhr.oracle.related import markings_related
from vrhr.oracle.routing import check_fuel_decrease, check_routing_invariant
from vrhr.oracle.stutter import check_bounded_stutter_trace_equivalence, check_valuation_set_equality
from vrhr.reach.explore import ExplorationResult, explore
from vrhr.report import ValidationReport
from vrhr.translate.alphabet import ExpandedAlphabet
from vrhr.translate.trichotomy import check_edge_trichotomy

_LOGGER: Final = logging.getLogger(__name__)

_RELATION_SAMPLES: Final = 16
_MAX_REPORTED: Final = 10

LabeledTerm = Tuple[str, Term]


@dataclass(frozen=True)
class InstanceReport:
    label: str
    term: str
    source_vertices: int
    translated_vertices: int
    report: ValidationReport

    @property
    def status(self) -> CheckStatus:
        return self.report.status

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "term": self.term,
            "source_vertices": self.source_vertices,
            "translated_vertices": self.translated_vertices,
            "status": self.status.value,
            "violations": [v.to_dict() for v in self.report],
            "note": self.report.note,
        }


def _check_routing_everywhere(
    ctx: MarkingRelationContext, exploration: ExplorationResult
) -> ValidationReport:
    report = ValidationReport("routing invariant")
    for state in exploration.states:
        found = check_routing_invariant(ctx, state)
        report.extend(found)
        if len(report) >= _MAX_REPORTED:
            break
    return report


def check_relation_invariance(
    ctx: MarkingRelationContext,
    source: ExplorationResult,
    translated: ExplorationResult,
    rng: random.Random,
) -> ValidationReport:
    """Routing firings never change whether a source marking is related."""
    report = ValidationReport("relation invariance")
    initial = markings_related(ctx, source.states[0], translated.states[0])
    if not (initial.related and initial.canonical):
        report.add("initial-unrelated", "initial markings are not canonically related")

    samples = source.states
    if len(samples) > _RELATION_SAMPLES:
        samples = rng.sample(samples, _RELATION_SAMPLES)
    routing = ctx.expanded.epsilon.routing
    for src, t, dst in translated.edges:
        if not isinstance(t, EdgeTransition) or t.label not in routing:
            continue
        before_state, after_state = translated.states[src], translated.states[dst]
        for m in samples:
            before = markings_related(ctx, m, before_state).related
            after = markings_related(ctx, m, after_state).related
            if before != after:
                report.add(
                    "relation-changed",
                    f"firing {t} from {marking_json(before_state)} changes relation to {marking_json(m)}",
                    str(t),
                )
                if len(report) >= _MAX_REPORTED:
                    return report
    return report


def check_instance(
    ctx: MarkingRelationContext,
    bounds: Bounds,
    max_len: int = DEFAULT_MAX_TRACE_LENGTH,
    seed: int = 0,
) -> ValidationReport:
    report = ValidationReport("instance")
    report.extend(check_edge_trichotomy(ctx.translated.graph, ctx.expanded))
    report.extend(validate_epsilon_graph(ctx.translated.graph, ctx.expanded.epsilon))

    source = explore(ctx.behavior, bounds.max_states)
    translated = explore(ctx.translated_behavior, bounds.max_states)
    if not (source.exhaustive and translated.exhaustive):
        report.mark_truncated(f"a behavior exceeds {bounds.max_states} states")
    report.extend(_check_routing_everywhere(ctx, translated))
    report.extend(check_relation_invariance(ctx, source, translated, random.Random(seed)))
    explored = (source, translated)
    report.extend(check_fuel_decrease(ctx, bounds.max_states, translated))
    report.extend(check_valuation_set_equality(ctx, bounds.max_states, explored))
    report.extend(
        check_bounded_stutter_trace_equivalence(ctx, max_len, bounds.max_states, explored)
    )
    return report


@dataclass(frozen=True)
class SuiteSetup:
    expanded: ExpandedAlphabet
    labeling: Mapping[str, str]
    bounds: Bounds
    variables: Tuple[str, ...] = ()
    max_len: int = DEFAULT_MAX_TRACE_LENGTH
    seed: int = 0


def _run_one(job: Tuple[SuiteSetup, LabeledTerm]) -> InstanceReport:
    setup, (label, term) = job
    try:
        ctx = build_context(term, setup.expanded, setup.labeling, setup.variables)
    except VrhrError as exc:
        report = ValidationReport("instance")
        code = "expansion-mismatch" if isinstance(exc, ExpansionMismatchError) else "untranslatable"
        report.add(code, str(exc))
        return InstanceReport(label, render_term(term), 0, 0, report)
    report = check_instance(ctx, setup.bounds, setup.max_len, setup.seed)
    _LOGGER.debug("%s: %s", label, report.status.value)
    return InstanceReport(
        label, render_term(term), len(ctx.source), len(ctx.translated), report
    )


def run_suite(
    terms: Sequence[LabeledTerm], setup: SuiteSetup, workers: int = 1
) -> List[InstanceReport]:
    """Check every term; results keep the order of ``terms`` whatever ``workers`` is."""
    jobs = [(setup, item) for item in terms]
    if workers <= 1:
        results = [_run_one(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs))
    failed = sum(1 for r in results if r.status is CheckStatus.FAILED)
    _LOGGER.info("checked %d instances, %d failed", len(results), failed)
    return results


def language_terms(
    grammar: Grammar, expanded: ExpandedAlphabet, bounds: Bounds
) -> Tuple[List[LabeledTerm], EnumerationStatus]:
    if grammar.algebra is not Algebra.VR:
        raise TranslationError(f"{grammar.name} is not a VR grammar")
    language = enumerate_language(grammar, expanded.source, bounds)
    terms = [(f"{grammar.name}#{i}", member.derivation.term) for i, member in enumerate(language)]
    return terms, language.status


def random_terms(
    expanded: ExpandedAlphabet, count: int, seed: int, max_vertices: int = 6
) -> List[LabeledTerm]:
    generator = TermGenerator(
        expanded.source, expanded.observable, random.Random(seed), max_vertices
    )
    return [(f"random#{i}", generator.term()) for i in range(count)]
