from typing import List, Tuple

from vrhr.petri.process import LocalTransition, ProcessType
from vrhr.translate import names


def halve(p: ProcessType) -> ProcessType:
    """Split every observable ``t: q -> q'`` into ``t.try: q -> t.bar`` and ``t.commit: t.bar -> q'``."""
    places = list(p.places)
    transitions: List[Tuple[LocalTransition, bool]] = []
    for (t, source, target), observable in p.ordered_transitions():
        if not observable:
            transitions.append(((t, source, target), False))
            continue
        bar = names.half_place(t)
        places.append(bar)
        transitions.append(((names.attempt(t), source, bar), True))
        transitions.append(((names.commit(t), bar, target), True))
    return ProcessType.from_ordered(
        names.half_type(p.name), places, p.initial_place, transitions
    )


def make_router(t: str) -> ProcessType:
    idle, active, wait, reply = (
        names.router_place(t, state)
        for state in (names.IDLE, names.ACTIVE, names.WAIT, names.REPLY)
    )
    return ProcessType.build(
        names.router_type(t),
        [idle, active, wait, reply],
        idle,
        observable=[
            (names.RECV, idle, active),
            (names.FWD, active, wait),
            (t, active, reply),
            (names.ACK, wait, reply),
            (names.RESET, reply, idle),
        ],
    )
