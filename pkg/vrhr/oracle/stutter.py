"""Valuation-level comparison of a source behavior and its translation."""

import logging
from typing import (
    Dict,
    Final,
    FrozenSet,
    Iterable,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
    TypeVar,
)

from vrhr.behavior.builder import BehaviorNet
from vrhr.behavior.labeling import LiftedLabeling
from vrhr.oracle.context import MarkingRelationContext
from vrhr.reach.check import state_valuation
from vrhr.reach.explore import ExplorationResult, explore
from vrhr.report import ValidationReport

_LOGGER: Final = logging.getLogger(__name__)

ValuationKey = Tuple[int, ...]
AtomTrace = Tuple[ValuationKey, ...]

T = TypeVar("T")


def stutter_collapse(trace: Sequence[T]) -> Tuple[T, ...]:
    """Merge maximal runs of equal consecutive entries."""
    collapsed: List[T] = []
    for entry in trace:
        if not collapsed or collapsed[-1] != entry:
            collapsed.append(entry)
    return tuple(collapsed)


def _valuations(
    exploration: ExplorationResult, lifted: LiftedLabeling, variables: Sequence[str]
) -> List[ValuationKey]:
    keys = []
    for state in exploration.states:
        valuation = state_valuation(state, lifted, variables)
        keys.append(tuple(valuation[x] for x in variables))
    return keys


def _render(key: ValuationKey, variables: Sequence[str]) -> str:
    return "{" + ", ".join(f"{x}: {n}" for x, n in zip(variables, key)) + "}"


Explored = Tuple[ExplorationResult, ExplorationResult]


def _explore_both(
    ctx: MarkingRelationContext,
    max_states: int,
    report: ValidationReport,
    explored: Optional[Explored] = None,
) -> Explored:
    if explored is None:
        explored = explore(ctx.behavior, max_states), explore(ctx.translated_behavior, max_states)
    source, translated = explored
    for name, exploration in (("source", source), ("translated", translated)):
        if not exploration.exhaustive:
            report.mark_truncated(f"{name} behavior exceeds {max_states} states")
    return source, translated


def _compare(
    report: ValidationReport,
    source: Iterable,
    translated: Iterable,
    code: str,
    render,
) -> None:
    source_set, translated_set = set(source), set(translated)
    for item in sorted(source_set - translated_set):
        report.add(code, f"only the source reaches {render(item)}", "source")
    for item in sorted(translated_set - source_set):
        report.add(code, f"only the translation reaches {render(item)}", "translated")


def reachable_valuations(
    n: BehaviorNet, lifted: LiftedLabeling, variables: Sequence[str], max_states: int
) -> Tuple[Set[ValuationKey], bool]:
    exploration = explore(n, max_states)
    return set(_valuations(exploration, lifted, variables)), exploration.exhaustive


def check_valuation_set_equality(
    ctx: MarkingRelationContext, max_states: int, explored: Optional[Explored] = None
) -> ValidationReport:
    report = ValidationReport("valuation sets")
    source, translated = _explore_both(ctx, max_states, report, explored)
    if report.truncated:
        return report
    variables = ctx.variables
    _compare(
        report,
        _valuations(source, ctx.lifted, variables),
        _valuations(translated, ctx.translated_lifted, variables),
        "valuation-mismatch",
        lambda key: _render(key, variables),
    )
    return report


def _closure(
    start: Iterable[int], successors: Dict[int, List[int]], keys: List[ValuationKey]
) -> FrozenSet[int]:
    """States reachable from ``start`` without changing the valuation."""
    seen = set(start)
    stack = list(seen)
    while stack:
        state = stack.pop()
        for nxt in successors.get(state, ()):
            if nxt not in seen and keys[nxt] == keys[state]:
                seen.add(nxt)
                stack.append(nxt)
    return frozenset(seen)


def collapsed_traces(
    exploration: ExplorationResult, keys: List[ValuationKey], max_len: int
) -> Set[AtomTrace]:
    """Collapsed valuation sequences of firing-sequence prefixes with at most ``max_len`` changes.

    Works on sets of states per trace, so each trace is expanded once.
    """
    successors: Dict[int, List[int]] = {}
    for src, _, dst in exploration.edges:
        successors.setdefault(src, []).append(dst)

    initial: AtomTrace = (keys[0],)
    frontier: Dict[AtomTrace, FrozenSet[int]] = {initial: _closure([0], successors, keys)}
    traces: Set[AtomTrace] = {initial}
    for _ in range(max_len):
        grown: Dict[AtomTrace, Set[int]] = {}
        for trace, states in frontier.items():
            for state in states:
                for nxt in successors.get(state, ()):
                    if keys[nxt] != trace[-1]:
                        grown.setdefault(trace + (keys[nxt],), set()).add(nxt)
        frontier = {trace: _closure(states, successors, keys) for trace, states in grown.items()}
        traces.update(frontier)
        if not frontier:
            break
    return traces


def check_bounded_stutter_trace_equivalence(
    ctx: MarkingRelationContext,
    max_len: int,
    max_states: int,
    explored: Optional[Explored] = None,
) -> ValidationReport:
    """Both sides produce the same collapsed valuation traces up to ``max_len`` changes."""
    report = ValidationReport("stutter traces")
    source, translated = _explore_both(ctx, max_states, report, explored)
    if report.truncated:
        return report
    variables = ctx.variables
    source_traces = collapsed_traces(source, _valuations(source, ctx.lifted, variables), max_len)
    translated_traces = collapsed_traces(
        translated, _valuations(translated, ctx.translated_lifted, variables), max_len
    )
    _compare(
        report,
        source_traces,
        translated_traces,
        "trace-mismatch",
        lambda trace: " ".join(_render(key, variables) for key in trace),
    )
    _LOGGER.debug(
        "%d source traces, %d translated traces", len(source_traces), len(translated_traces)
    )
    return report
