import logging
from typing import Dict, Final, List, Optional, Set, Tuple

from vrhr.behavior.builder import EdgeTransition, State
from vrhr.errors import FuelError
from vrhr.oracle.context import MarkingRelationContext, marking_json
from vrhr.reach.explore import ExplorationResult, explore
from vrhr.report import ValidationReport
from vrhr.translate import names

_LOGGER: Final = logging.getLogger(__name__)

_COST_FREE: Final = (names.IDLE, names.WAIT)


def waiting_predecessors(ctx: MarkingRelationContext, state: State, router: int) -> List[int]:
    """Predecessors of ``router`` that wait on it: a router in ``t.wait`` or a half vertex in ``t.bar``."""
    t = ctx.router_transition(router)
    waiting = []
    for w in ctx.predecessors.get(router, ()):
        expected = names.half_place(t) if ctx.is_half(w) else names.router_place(t, names.WAIT)
        if state[w] == expected:
            waiting.append(w)
    return waiting


def check_routing_invariant(ctx: MarkingRelationContext, state: State) -> ValidationReport:
    """A router is busy iff exactly one of its predecessors waits on it."""
    report = ValidationReport("routing invariant")
    for router in ctx.routers():
        t = ctx.router_transition(router)
        busy = state[router] != names.router_place(t, names.IDLE)
        waiting = waiting_predecessors(ctx, state, router)
        if len(waiting) > 1:
            report.add(
                "several-waiting",
                f"{len(waiting)} predecessors wait on one router in {marking_json(state)}",
                str(router),
            )
        elif busy and not waiting:
            report.add("busy-unclaimed", f"router busy with nobody waiting in {marking_json(state)}", str(router))
        elif waiting and not busy:
            report.add("idle-claimed", f"router idle while {waiting[0]} waits in {marking_json(state)}", str(router))
    return report


class CostTable:
    """Cost of one token on a place of the translated behavior, solved by memoized recursion."""

    def __init__(self, ctx: MarkingRelationContext) -> None:
        self._ctx = ctx
        self._memo: Dict[Tuple[str, int], int] = {}
        self._active: Set[Tuple[str, int]] = set()

    def cost(self, place: str, vertex: int) -> int:
        key = (place, vertex)
        if key in self._memo:
            return self._memo[key]
        if key in self._active:
            raise FuelError(f"cost of {place} at {vertex} depends on itself")
        self._active.add(key)
        try:
            value = self._solve(place, vertex)
        finally:
            self._active.discard(key)
        self._memo[key] = value
        return value

    def _solve(self, place: str, vertex: int) -> int:
        ctx = self._ctx
        t = ctx.router_transition(vertex)
        if t is not None:
            if place in (names.router_place(t, s) for s in _COST_FREE):
                return 0
            if place == names.router_place(t, names.ACTIVE):
                parent = ctx.parent.get(vertex)
                return 0 if parent is None else 1 + self.cost(place, parent)
            if place == names.router_place(t, names.REPLY):
                return 1 + max(
                    (self._reply_cost(t, w) for w in ctx.predecessors.get(vertex, ())),
                    default=0,
                )
            return 0

        ptype = ctx.expanded.types[ctx.translated.proc[vertex]]
        original = ctx.expanded.source_types[ctx.expanded.original_type(ptype.name)]
        if place not in original.places:
            return 0
        costs = [
            self.cost(names.router_place(x, names.ACTIVE), ctx.router_of[(vertex, x)])
            for x in original.transitions_from(place)
            if (vertex, x) in ctx.router_of
        ]
        return 1 + max(costs, default=0)

    def _reply_cost(self, t: str, w: int) -> int:
        ctx = self._ctx
        if ctx.is_half(w):
            ptype = ctx.expanded.owner_of(t)
            return self.cost(ptype.post_place(t), w)
        return self.cost(names.router_place(t, names.REPLY), w)


def fuel(ctx: MarkingRelationContext, state: State, table: Optional[CostTable] = None) -> int:
    """Sum of token costs; every routing firing makes it strictly smaller."""
    table = table or CostTable(ctx)
    return sum(table.cost(place, v) for v, place in enumerate(state))


def check_fuel_decrease(
    ctx: MarkingRelationContext,
    max_states: int,
    exploration: Optional[ExplorationResult] = None,
) -> ValidationReport:
    """Every routing firing lowers the fuel; a given ``exploration`` is reused."""
    report = ValidationReport("fuel")
    if exploration is None:
        exploration = explore(ctx.translated_behavior, max_states)
    if not exploration.exhaustive:
        report.mark_truncated(f"translated behavior exceeds {max_states} states")
    routing = ctx.expanded.epsilon.routing
    table = CostTable(ctx)
    values = [fuel(ctx, state, table) for state in exploration.states]
    for src, t, dst in exploration.edges:
        if not isinstance(t, EdgeTransition) or t.label not in routing:
            continue
        if values[dst] >= values[src]:
            report.add(
                "fuel-not-decreasing",
                f"fuel {values[src]} -> {values[dst]} on {t} from {marking_json(exploration.states[src])}",
                str(t),
            )
    _LOGGER.debug("fuel checked on %d states", len(exploration))
    return report
