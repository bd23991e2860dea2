import logging
from dataclasses import dataclass
from typing import Dict, Final, Iterable, List, Mapping, Optional, Tuple

from vrhr.algebra.evaluate import eval_hr, eval_vr
from vrhr.algebra.terms import Term
from vrhr.behavior.builder import BehaviorNet, State, build_behavior
from vrhr.behavior.labeling import LiftedLabeling, lift_labeling
from vrhr.behavior.system import System, system_from_graph
from vrhr.errors import ExpansionMismatchError
from vrhr.graph.epsilon import expand_with_origin
from vrhr.graph.isomorphism import isomorphic
from vrhr.translate.alphabet import ExpandedAlphabet, drop_ports
from vrhr.translate.expand import expand_term
from vrhr.translate.labeling import lift_variable_labeling

_LOGGER: Final = logging.getLogger(__name__)


@dataclass(frozen=True)
class MarkingRelationContext:
    """A source system, its translation, and what is needed to relate their markings.

    ``vertex_map[v]`` is the halved vertex of the translated system that
    stands for vertex ``v`` of the source system.
    """

    theta: Term
    expanded: ExpandedAlphabet
    source: System
    translated: System
    behavior: BehaviorNet
    translated_behavior: BehaviorNet
    lifted: LiftedLabeling
    translated_lifted: LiftedLabeling
    vertex_map: Tuple[int, ...]
    variables: Tuple[str, ...]
    # routing structure of the translated system
    parent: Mapping[int, int]
    predecessors: Mapping[int, Tuple[int, ...]]
    router_of: Mapping[Tuple[int, str], int]

    def router_transition(self, vertex: int) -> Optional[str]:
        return self.expanded.router_transition(self.translated.proc[vertex])

    def is_half(self, vertex: int) -> bool:
        return self.expanded.is_half_type(self.translated.proc[vertex])

    def routers(self) -> List[int]:
        return [v for v in range(len(self.translated)) if self.router_transition(v) is not None]


def marking_json(state: State) -> Dict[str, str]:
    """Vertex to place map, the serialized form of a counterexample marking."""
    return {str(v): q for v, q in enumerate(state)}


def _routing_structure(
    translated: System, expanded: ExpandedAlphabet
) -> Tuple[Dict[int, int], Dict[int, Tuple[int, ...]], Dict[Tuple[int, str], int]]:
    forward = expanded.epsilon.forward
    parent: Dict[int, int] = {}
    predecessors: Dict[int, List[int]] = {}
    router_of: Dict[Tuple[int, str], int] = {}
    for s, label, t in translated.graph.edges:
        if label not in forward:
            continue
        predecessors.setdefault(t, []).append(s)
        transition = expanded.router_transition(translated.proc[t])
        if expanded.is_half_type(translated.proc[s]) and transition is not None:
            router_of[(s, transition)] = t
        else:
            parent[s] = t
    return parent, {v: tuple(ws) for v, ws in predecessors.items()}, router_of


def build_context(
    theta: Term,
    expanded: ExpandedAlphabet,
    labeling: Mapping[str, str],
    variables: Iterable[str] = (),
) -> MarkingRelationContext:
    """Evaluate ``theta`` and its translation, and match their vertices.

    Raises ``ExpansionMismatchError`` when the expansion of the translated
    system is not isomorphic to the source system.
    """
    source_graph = eval_vr(theta, expanded.source)
    translated_graph = eval_hr(expand_term(theta, expanded), expanded.alphabet)
    source = system_from_graph(source_graph, expanded.source)
    translated = system_from_graph(translated_graph, expanded.alphabet)

    collapsed, survivors = expand_with_origin(translated_graph, expanded.epsilon)
    match = isomorphic(drop_ports(source_graph, expanded.source), expanded.restore(collapsed))
    if not match:
        raise ExpansionMismatchError("expansion of the translated system differs from the source system")
    vertex_map = tuple(survivors[match.mapping[v]] for v in range(len(source)))

    behavior = build_behavior(source, expanded.source_types)
    translated_behavior = build_behavior(translated, expanded.types)
    lifted = lift_labeling(labeling, behavior)
    translated_lifted = lift_labeling(
        lift_variable_labeling(labeling, expanded), translated_behavior
    )
    parent, predecessors, router_of = _routing_structure(translated, expanded)
    _LOGGER.debug(
        "context: %d source vertices, %d translated vertices", len(source), len(translated)
    )
    return MarkingRelationContext(
        theta=theta,
        expanded=expanded,
        source=source,
        translated=translated,
        behavior=behavior,
        translated_behavior=translated_behavior,
        lifted=lifted,
        translated_lifted=translated_lifted,
        vertex_map=vertex_map,
        variables=tuple(sorted(set(variables) | set(labeling.values()))),
        parent=parent,
        predecessors=predecessors,
        router_of=router_of,
    )
