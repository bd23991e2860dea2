import logging
from dataclasses import dataclass
from typing import Dict, Final, Iterable, Optional, Tuple

from vrhr._enum import ExplorationStatus, ReachStatus
from vrhr.behavior.builder import BehaviorNet, State, Transition
from vrhr.behavior.labeling import LiftedLabeling
from vrhr.petri.net import Marking
from vrhr.reach.explore import explore
from vrhr.reach.formula import Formula, eval_formula, free_variables

_LOGGER: Final = logging.getLogger(__name__)


def valuation_of(
    m: Marking, lifted: LiftedLabeling, variables: Iterable[str] = ()
) -> Dict[str, int]:
    """Tokens per variable; every variable in ``variables`` defaults to 0."""
    valuation = dict.fromkeys(variables, 0)
    valuation.update(dict.fromkeys(lifted.values(), 0))
    for place, count in m.items():
        variable = lifted.get(place)
        if variable is not None:
            valuation[variable] += count
    return valuation


def state_valuation(
    state: State, lifted: LiftedLabeling, variables: Iterable[str] = ()
) -> Dict[str, int]:
    """``valuation_of`` for the one-token-per-vertex encoding."""
    valuation = dict.fromkeys(variables, 0)
    valuation.update(dict.fromkeys(lifted.values(), 0))
    for v, q in enumerate(state):
        variable = lifted.get((q, v))
        if variable is not None:
            valuation[variable] += 1
    return valuation


@dataclass(frozen=True)
class ReachabilityResult:
    status: ReachStatus
    firing: Tuple[Transition, ...] = ()
    state: Optional[State] = None
    valuation: Optional[Dict[str, int]] = None
    states_explored: int = 0

    @property
    def sat(self) -> bool:
        return self.status is ReachStatus.SAT


def check_reachability(
    n: BehaviorNet,
    lifted: LiftedLabeling,
    f: Formula,
    max_states: int,
    variables: Iterable[str] = (),
) -> ReachabilityResult:
    names = set(variables) | free_variables(f)

    def _satisfied(state: State) -> bool:
        return eval_formula(f, state_valuation(state, lifted, names))

    exploration = explore(n, max_states, stop=_satisfied)
    if exploration.status is ExplorationStatus.STOPPED:
        found = exploration.stopped_at
        state = exploration.states[found]
        return ReachabilityResult(
            ReachStatus.SAT,
            tuple(exploration.path_to(found)),
            state,
            state_valuation(state, lifted, names),
            len(exploration),
        )
    status = ReachStatus.UNSAT if exploration.exhaustive else ReachStatus.TRUNCATED
    _LOGGER.debug("%s after %d states", status.value, len(exploration))
    return ReachabilityResult(status, states_explored=len(exploration))
