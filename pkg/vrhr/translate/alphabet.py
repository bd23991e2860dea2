from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Tuple

from vrhr.errors import TranslationError
from vrhr.graph.alphabet import EpsilonAlphabet, VertexLabelAlphabet
from vrhr.graph.labeled import LabeledGraph
from vrhr.petri.process import ProcessType
from vrhr.translate import names
from vrhr.translate.halve import halve, make_router


@dataclass(frozen=True)
class ExpandedAlphabet:
    """Process types, ports and routing labels of translated systems."""

    source_types: Mapping[str, ProcessType]
    source: VertexLabelAlphabet
    types: Mapping[str, ProcessType]
    alphabet: VertexLabelAlphabet
    epsilon: EpsilonAlphabet
    observable: Mapping[str, Tuple[str, ...]]
    owner: Mapping[str, str]

    def transitions_of_port(self, port: str) -> Tuple[str, ...]:
        ptype = self.source.type_of(port)
        if ptype is None:
            raise TranslationError(f"unknown port {port}")
        return self.observable[ptype]

    def owner_of(self, transition: str) -> ProcessType:
        return self.source_types[self.owner[transition]]

    def is_half_type(self, name: str) -> bool:
        return name.endswith(f".{names.HALF_SUFFIX}") and name in self.types

    def router_transition(self, name: str) -> Optional[str]:
        suffix = f".{names.ROUTER_SUFFIX}"
        if name.endswith(suffix) and name in self.types:
            return name[: -len(suffix)]
        return None

    def original_type(self, half_type: str) -> str:
        return half_type[: -len(names.HALF_SUFFIX) - 1]

    def restore(self, g: LabeledGraph) -> LabeledGraph:
        """Erase ports and map halved types back to the types they came from."""
        ports = self.alphabet.ports | self.source.ports

        def _restore(labels):
            return {
                self.original_type(lb) if self.is_half_type(lb) else lb
                for lb in labels
                if lb not in ports
            }

        return g.map_labels(_restore)


def drop_ports(g: LabeledGraph, alphabet: VertexLabelAlphabet) -> LabeledGraph:
    return g.without_labels(alphabet.ports)


def _reject_dotted(types: Mapping[str, ProcessType], alphabet: VertexLabelAlphabet) -> None:
    used = [*types, *alphabet.ports]
    for ptype in types.values():
        used.extend(str(x) for x in ptype.places)
        used.extend(ptype.transitions)
    clashes = names.dotted(used)
    if clashes:
        raise TranslationError(f"names reserved for the translation: {', '.join(sorted(set(clashes)))}")


def expanded_alphabet(
    types: Mapping[str, ProcessType], alphabet: VertexLabelAlphabet
) -> ExpandedAlphabet:
    _reject_dotted(types, alphabet)

    observable: Dict[str, Tuple[str, ...]] = {}
    owner: Dict[str, str] = {}
    for name, ptype in types.items():
        observable[name] = tuple(t for t in ptype.transitions if t in ptype.observable)
        for t in observable[name]:
            if t in owner:
                raise TranslationError(
                    f"observable transition {t} is declared by both {owner[t]} and {name}"
                )
            owner[t] = name

    expanded_types: Dict[str, ProcessType] = {}
    for ptype in types.values():
        half = halve(ptype)
        expanded_types[half.name] = half
    for t in owner:
        router = make_router(t)
        expanded_types[router.name] = router

    port_type: Dict[str, str] = {}
    for port, ptype in alphabet.port_type.items():
        port_type[names.half_port(port)] = names.half_type(ptype)
        for t in observable[ptype]:
            port_type[names.representative(port, t)] = names.router_type(t)
            port_type[names.overlined(port, t)] = names.router_type(t)

    generated = [*expanded_types, *port_type]
    if len(set(generated)) != len(generated):
        raise TranslationError("generated names collide; rename a port or transition")

    pair = {(names.attempt(t), names.RECV): (names.RESET, names.commit(t)) for t in owner}
    pair[(names.FWD, names.RECV)] = (names.RESET, names.ACK)

    return ExpandedAlphabet(
        source_types=dict(types),
        source=alphabet,
        types=expanded_types,
        alphabet=VertexLabelAlphabet.build(expanded_types, port_type),
        epsilon=EpsilonAlphabet(pair),
        observable=observable,
        owner=owner,
    )
