import logging
from dataclasses import dataclass
from typing import Dict, Final, Iterator, List, Mapping, Sequence, Tuple

from vrhr.behavior.system import System, validate_system
from vrhr.errors import InvalidSystemError, NotEnabledError, UnknownTransitionError
from vrhr.petri.net import Marking, Net, PetriNet
from vrhr.petri.process import ProcessType

_LOGGER: Final = logging.getLogger(__name__)

Move = Tuple[int, str, str]
State = Tuple[str, ...]
BehaviorPlace = Tuple[str, int]


@dataclass(frozen=True, slots=True)
class EdgeTransition:
    source: int
    label: Tuple[str, str]
    target: int

    def __str__(self) -> str:
        return f"{self.source}-({self.label[0]},{self.label[1]})->{self.target}"

    def to_json(self) -> dict:
        return {"edge": [self.source, list(self.label), self.target]}


@dataclass(frozen=True, slots=True)
class InternalTransition:
    name: str
    vertex: int

    def __str__(self) -> str:
        return f"{self.name}@{self.vertex}"

    def to_json(self) -> dict:
        return {"internal": [self.name, self.vertex]}


Transition = EdgeTransition | InternalTransition


def transition_key(t: Transition) -> tuple:
    if isinstance(t, EdgeTransition):
        return 0, t.source, t.label, t.target
    return 1, t.vertex, t.name


def transition_from_json(data: Mapping) -> Transition:
    if "edge" in data:
        source, label, target = data["edge"]
        return EdgeTransition(int(source), (str(label[0]), str(label[1])), int(target))
    name, vertex = data["internal"]
    return InternalTransition(str(name), int(vertex))


class BehaviorNet:
    """Behavior of a system, with one token per vertex.

    States are tuples holding the marked local place of every vertex, which
    is the compact form of a marking of the underlying Petri net.
    """

    __slots__ = ("system", "types", "transitions", "initial_state", "_moves", "_by_place", "_rank")

    def __init__(
        self,
        system: System,
        types: Mapping[str, ProcessType],
        moves: Mapping[Transition, Tuple[Move, ...]],
    ) -> None:
        self.system = system
        self.types = dict(types)
        self.transitions: Tuple[Transition, ...] = tuple(sorted(moves, key=transition_key))
        self.initial_state: State = tuple(types[p].initial_place for p in system.proc)
        self._moves: Dict[Transition, Tuple[Move, ...]] = dict(moves)
        self._rank = {t: i for i, t in enumerate(self.transitions)}
        self._by_place: Dict[Tuple[int, str], List[Transition]] = {}
        for t in self.transitions:
            vertex, place, _ = self._moves[t][0]
            self._by_place.setdefault((vertex, place), []).append(t)

    def __len__(self) -> int:
        return len(self.system)

    @property
    def places(self) -> List[BehaviorPlace]:
        return [
            (q, v)
            for v, name in enumerate(self.system.proc)
            for q in self.types[name].places
        ]

    @property
    def place_count(self) -> int:
        return len(self.places)

    @property
    def transition_count(self) -> int:
        return len(self.transitions)

    def moves(self, t: Transition) -> Tuple[Move, ...]:
        if t not in self._moves:
            raise UnknownTransitionError(t)
        return self._moves[t]

    def is_enabled(self, state: State, t: Transition) -> bool:
        return all(state[v] == source for v, source, _ in self.moves(t))

    def fire(self, state: State, t: Transition) -> State:
        if not self.is_enabled(state, t):
            raise NotEnabledError(t)
        nxt = list(state)
        for v, _, target in self._moves[t]:
            nxt[v] = target
        return tuple(nxt)

    def successors(self, state: State) -> Iterator[Tuple[Transition, State]]:
        candidates: List[Transition] = []
        for v, place in enumerate(state):
            candidates.extend(self._by_place.get((v, place), ()))
        candidates.sort(key=self._rank.__getitem__)
        for t in candidates:
            if all(state[v] == source for v, source, _ in self._moves[t]):
                nxt = list(state)
                for v, _, target in self._moves[t]:
                    nxt[v] = target
                yield t, tuple(nxt)

    def replay(self, seq: Sequence[Transition], start: State | None = None) -> State:
        state = self.initial_state if start is None else start
        for index, t in enumerate(seq):
            if not self.is_enabled(state, t):
                raise NotEnabledError(t, index)
            state = self.fire(state, t)
        return state

    def marking_of(self, state: State) -> Marking:
        return Marking({(q, v): 1 for v, q in enumerate(state)})

    def state_of(self, marking: Marking) -> State:
        places: Dict[int, str] = {}
        for (q, v), n in marking.items():
            if n != 1 or v in places:
                raise InvalidSystemError("marking does not hold exactly one token per vertex")
            places[v] = q
        if sorted(places) != list(range(len(self.system))):
            raise InvalidSystemError("marking does not hold exactly one token per vertex")
        return tuple(places[v] for v in range(len(self.system)))

    def is_internal(self, t: Transition) -> bool:
        return isinstance(t, InternalTransition)

    def to_petri_net(self) -> PetriNet:
        arcs = []
        for t in self.transitions:
            for v, source, target in self._moves[t]:
                arcs.extend([((source, v), t), (t, (target, v))])
        net = Net.build(self.places, self.transitions, arcs)
        return PetriNet(net, self.marking_of(self.initial_state))


def build_behavior(s: System, types: Mapping[str, ProcessType]) -> BehaviorNet:
    report = validate_system(s, types)
    report.raise_if_failed(InvalidSystemError)

    moves: Dict[Transition, Tuple[Move, ...]] = {}
    for v, name in enumerate(s.proc):
        ptype = types[name]
        for t in sorted(ptype.internal):
            moves[InternalTransition(t, v)] = ((v, ptype.pre_place(t), ptype.post_place(t)),)
    for src, label, dst in s.graph.edges:
        t, t_prime = label  # type: ignore[misc]
        left, right = types[s.proc[src]], types[s.proc[dst]]
        moves[EdgeTransition(src, (t, t_prime), dst)] = (
            (src, left.pre_place(t), left.post_place(t)),
            (dst, right.pre_place(t_prime), right.post_place(t_prime)),
        )

    behavior = BehaviorNet(s, types, moves)
    _LOGGER.debug(
        "behavior of %d vertices: %d places, %d transitions",
        len(s),
        behavior.place_count,
        behavior.transition_count,
    )
    return behavior
