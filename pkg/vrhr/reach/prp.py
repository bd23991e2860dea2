import logging
from dataclasses import dataclass, field
from typing import Dict, Final, Mapping, Optional, Tuple

from vrhr._enum import EnumerationStatus, PrpStatus, ReachStatus
from vrhr.algebra.evaluate import evaluate
from vrhr.behavior.builder import State, Transition, build_behavior, transition_from_json
from vrhr.behavior.labeling import Labeling, lift_labeling
from vrhr.behavior.system import System, system_from_graph
from vrhr.config import Bounds
from vrhr.grammar.derivation import Derivation, derivation_from_dict
from vrhr.grammar.enumerate import enumerate_language
from vrhr.grammar.grammar import Grammar
from vrhr.graph.alphabet import VertexLabelAlphabet
from vrhr.petri.process import ProcessType
from vrhr.reach.check import check_reachability, state_valuation
from vrhr.reach.formula import Formula, free_variables

_LOGGER: Final = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrpInstance:
    """Is some state satisfying ``formula`` reachable in some system of ``grammar``?"""

    grammar: Grammar
    alphabet: VertexLabelAlphabet
    types: Mapping[str, ProcessType]
    labeling: Labeling
    formula: Formula
    bounds: Bounds = field(default_factory=Bounds.default)
    variables: Tuple[str, ...] = ()

    @property
    def all_variables(self) -> Tuple[str, ...]:
        names = set(self.variables) | set(self.labeling.values()) | free_variables(self.formula)
        return tuple(sorted(names))


@dataclass(frozen=True)
class Witness:
    derivation: Derivation
    system: System
    firing: Tuple[Transition, ...]
    state: State
    valuation: Dict[str, int]

    def to_dict(self) -> dict:
        return {
            "derivation": self.derivation.to_dict(),
            "system": self.system.graph.to_dict(),
            "firing": [t.to_json() for t in self.firing],
            "marking": list(self.state),
            "valuation": dict(sorted(self.valuation.items())),
        }


@dataclass(frozen=True)
class PrpResult:
    status: PrpStatus
    bounds: Bounds
    witness: Optional[Witness] = None
    systems_checked: int = 0
    states_explored: int = 0
    enumeration: EnumerationStatus = EnumerationStatus.EXHAUSTED

    def stats(self) -> Dict[str, object]:
        return {
            "systems_checked": self.systems_checked,
            "states_explored": self.states_explored,
            "enumeration": self.enumeration.value,
        }


def solve_prp(inst: PrpInstance) -> PrpResult:
    variables = inst.all_variables
    language = enumerate_language(inst.grammar, inst.alphabet, inst.bounds)
    systems = states = 0
    cut = False

    for member in language:
        system = system_from_graph(member.graph, inst.alphabet)
        behavior = build_behavior(system, inst.types)
        lifted = lift_labeling(inst.labeling, behavior)
        result = check_reachability(
            behavior, lifted, inst.formula, inst.bounds.max_states, variables
        )
        systems += 1
        states += result.states_explored
        if result.status is ReachStatus.TRUNCATED:
            _LOGGER.warning("state bound hit on a %d-vertex system", len(system))
            cut = True
        if result.sat:
            witness = Witness(
                member.derivation, system, result.firing, result.state, result.valuation
            )
            _LOGGER.info("positive after %d systems", systems)
            return PrpResult(
                PrpStatus.POSITIVE, inst.bounds, witness, systems, states, language.status
            )

    if language.status is EnumerationStatus.TRUNCATED:
        cut = True
    status = PrpStatus.TRUNCATED if cut else PrpStatus.NEGATIVE
    _LOGGER.info("%s after %d systems", status.value, systems)
    return PrpResult(status, inst.bounds, None, systems, states, language.status)


def replay_witness(inst: PrpInstance, data: Mapping) -> Witness:
    """Rebuild a witness from its JSON form, re-running every step.

    Raises ``GrammarError`` or ``NotEnabledError`` when the derivation or the
    firing sequence does not replay.
    """
    derivation = derivation_from_dict(inst.grammar, data["derivation"])
    graph = evaluate(derivation.term, inst.alphabet, inst.grammar.algebra)
    system = system_from_graph(graph, inst.alphabet)
    behavior = build_behavior(system, inst.types)
    firing = tuple(transition_from_json(t) for t in data["firing"])
    state = behavior.replay(firing)
    lifted = lift_labeling(inst.labeling, behavior)
    return Witness(derivation, system, firing, state, state_valuation(state, lifted, inst.all_variables))
