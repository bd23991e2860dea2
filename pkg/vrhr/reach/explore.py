import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Deque, Dict, Final, List, Optional, Tuple

from vrhr._enum import ExplorationStatus
from vrhr.behavior.builder import BehaviorNet, State, Transition

_LOGGER: Final = logging.getLogger(__name__)

StateEdge = Tuple[int, Transition, int]


@dataclass
class ExplorationResult:
    """Reachable states in discovery order, with a BFS tree over them.

    State ids are positions in ``states``; id 0 is the initial state.
    """

    states: List[State] = field(default_factory=list)
    index: Dict[State, int] = field(default_factory=dict)
    parents: List[Optional[Tuple[int, Transition]]] = field(default_factory=list)
    depth: List[int] = field(default_factory=list)
    edges: List[StateEdge] = field(default_factory=list)
    status: ExplorationStatus = ExplorationStatus.EXHAUSTIVE
    stopped_at: Optional[int] = None

    def __len__(self) -> int:
        return len(self.states)

    @property
    def exhaustive(self) -> bool:
        return self.status is ExplorationStatus.EXHAUSTIVE

    def add(self, state: State, parent: Optional[Tuple[int, Transition]]) -> int:
        state_id = len(self.states)
        self.states.append(state)
        self.index[state] = state_id
        self.parents.append(parent)
        self.depth.append(0 if parent is None else self.depth[parent[0]] + 1)
        return state_id

    def path_to(self, state_id: int) -> List[Transition]:
        """Shortest firing sequence from the initial state."""
        path: List[Transition] = []
        parent = self.parents[state_id]
        while parent is not None:
            state_id, t = parent
            path.append(t)
            parent = self.parents[state_id]
        path.reverse()
        return path

    def successors_of(self, state_id: int) -> List[Tuple[Transition, int]]:
        return [(t, dst) for src, t, dst in self.edges if src == state_id]


def explore(
    n: BehaviorNet,
    max_states: int,
    stop: Optional[Callable[[State], bool]] = None,
) -> ExplorationResult:
    """Breadth-first search over the compact states of ``n``.

    ``stop`` is tested on every newly found state; the first state that
    satisfies it ends the search, so it is found at the least depth.
    """
    result = ExplorationResult()
    queue: Deque[int] = deque([result.add(n.initial_state, None)])
    if stop is not None and stop(n.initial_state):
        result.status, result.stopped_at = ExplorationStatus.STOPPED, 0
        return result

    while queue:
        current = queue.popleft()
        for t, successor in n.successors(result.states[current]):
            known = result.index.get(successor)
            if known is None:
                if len(result.states) >= max_states:
                    result.status = ExplorationStatus.TRUNCATED
                    _LOGGER.warning("exploration stopped after %d states", len(result))
                    return result
                known = result.add(successor, (current, t))
                if stop is not None and stop(successor):
                    result.edges.append((current, t, known))
                    result.status, result.stopped_at = ExplorationStatus.STOPPED, known
                    return result
                queue.append(known)
            result.edges.append((current, t, known))

    _LOGGER.debug("explored %d states, %d edges", len(result), len(result.edges))
    return result
