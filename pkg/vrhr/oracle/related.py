from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from vrhr._enum import RelationCondition
from vrhr.behavior.builder import State
from vrhr.oracle.context import MarkingRelationContext
from vrhr.translate import names


@dataclass(frozen=True, slots=True)
class RelationResult:
    related: bool
    canonical: bool
    conditions: Tuple[Optional[RelationCondition], ...]

    def to_dict(self) -> dict:
        return {
            "related": self.related,
            "canonical": self.canonical,
            "conditions": [c.value if c else None for c in self.conditions],
        }


def wait_path_end(
    ctx: MarkingRelationContext, state: State, vertex: int, t: str
) -> Optional[int]:
    """Follow ``t``-routers upward from ``vertex`` while they wait; return the first that does not."""
    router = ctx.router_of.get((vertex, t))
    wait = names.router_place(t, names.WAIT)
    seen = set()
    while router is not None and state[router] == wait and router not in seen:
        seen.add(router)
        router = ctx.parent.get(router)
    return router


def _routed(
    ctx: MarkingRelationContext,
    state: State,
    vertex: int,
    transitions: Iterable[str],
    end_state: str,
) -> bool:
    for t in transitions:
        if state[vertex] != names.half_place(t):
            continue
        end = wait_path_end(ctx, state, vertex, t)
        if end is not None and state[end] == names.router_place(t, end_state):
            return True
    return False


def markings_related(
    ctx: MarkingRelationContext, source_state: State, translated_state: State
) -> RelationResult:
    """Relate a source marking to a translated one, token by token.

    A token on ``q`` at ``v`` is matched directly, by a pending attempt at a
    transition leaving ``q`` still being routed, or by a committed transition
    entering ``q`` whose reply is on its way back.
    """
    conditions = []
    for v, q in enumerate(source_state):
        half = ctx.vertex_map[v]
        ptype = ctx.expanded.source_types[ctx.source.proc[v]]
        observable = ptype.observable
        if translated_state[half] == q:
            conditions.append(RelationCondition.DIRECT)
        elif _routed(
            ctx,
            translated_state,
            half,
            (t for t in ptype.transitions_from(q) if t in observable),
            names.ACTIVE,
        ):
            conditions.append(RelationCondition.ROUTING)
        elif _routed(
            ctx,
            translated_state,
            half,
            (t for t in ptype.transitions_into(q) if t in observable),
            names.REPLY,
        ):
            conditions.append(RelationCondition.REPLYING)
        else:
            conditions.append(None)
    return RelationResult(
        related=all(c is not None for c in conditions),
        canonical=all(c is RelationCondition.DIRECT for c in conditions),
        conditions=tuple(conditions),
    )
