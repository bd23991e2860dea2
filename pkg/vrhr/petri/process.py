from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Tuple

from vrhr.petri.net import Marking, Net, PetriNet
from vrhr.report import ValidationReport

LocalTransition = Tuple[str, str, str]


@dataclass(frozen=True)
class ProcessType:
    """A one-token net whose transitions are split into observable and internal."""

    name: str
    net: PetriNet
    observable: FrozenSet[str]

    @classmethod
    def build(
        cls,
        name: str,
        places: Iterable[str],
        init: str,
        observable: Iterable[LocalTransition] = (),
        internal: Iterable[LocalTransition] = (),
    ) -> "ProcessType":
        """Build from ``(name, source, target)`` triples; declaration order is kept."""
        transitions = [(t, True) for t in observable] + [(t, False) for t in internal]
        return cls.from_ordered(name, places, init, transitions)

    @classmethod
    def from_ordered(
        cls,
        name: str,
        places: Iterable[str],
        init: str,
        transitions: Iterable[Tuple[LocalTransition, bool]],
    ) -> "ProcessType":
        ordered = list(transitions)
        arcs = []
        for (t, source, target), _ in ordered:
            arcs.extend([(source, t), (t, target)])
        net = Net.build(tuple(places), tuple(t for (t, _, _), _ in ordered), arcs)
        visible = frozenset(t for (t, _, _), is_obs in ordered if is_obs)
        return cls(name, PetriNet(net, Marking({init: 1})), visible)

    @property
    def places(self) -> Tuple[str, ...]:
        return self.net.net.places  # type: ignore[return-value]

    @property
    def transitions(self) -> Tuple[str, ...]:
        return self.net.net.transitions  # type: ignore[return-value]

    @property
    def internal(self) -> FrozenSet[str]:
        return frozenset(self.transitions) - self.observable

    @property
    def initial_place(self) -> str:
        return next(iter(self.net.initial.marked()))

    def pre_place(self, t: str) -> str:
        return next(iter(self.net.net.pre(t)))

    def post_place(self, t: str) -> str:
        return next(iter(self.net.net.post(t)))

    def local(self, t: str) -> LocalTransition:
        return t, self.pre_place(t), self.post_place(t)

    def transitions_from(self, place: str) -> List[str]:
        return [t for t in self.transitions if place in self.net.net.pre(t)]

    def transitions_into(self, place: str) -> List[str]:
        return [t for t in self.transitions if place in self.net.net.post(t)]

    def ordered_transitions(self) -> List[Tuple[LocalTransition, bool]]:
        return [(self.local(t), t in self.observable) for t in self.transitions]


def validate_process_type(p: ProcessType) -> ValidationReport:
    report = ValidationReport(f"process {p.name}")
    net = p.net.net
    places = set(net.places)

    if len(places) != len(net.places):
        report.add("duplicate-place", "a place is declared twice")
    if len(set(net.transitions)) != len(net.transitions):
        report.add("duplicate-transition", "a transition is declared twice")
    for name in sorted(places & set(net.transitions)):
        report.add("overlap", "name is both a place and a transition", name)

    for (x, y), w in net.weights.items():
        if w not in (0, 1):
            report.add("weight", f"arc {x}->{y} has weight {w}", str(x))
        for node in (x, y):
            if node not in places and node not in net.transitions:
                report.add("unknown-node", f"arc mentions unknown node {node}", str(node))

    marked = [(q, n) for q, n in p.net.initial.items()]
    if len(marked) != 1 or marked[0][1] != 1:
        report.add("initial", f"expected one place with one token, got {len(marked)} marked places")
    elif marked[0][0] not in places:
        report.add("initial", f"initial place {marked[0][0]} is not a place")

    for t in net.transitions:
        pre, post = net.pre(t), net.post(t)
        if len(pre) != 1:
            report.add("predecessors", f"{len(pre)} predecessor places", str(t))
        if len(post) != 1:
            report.add("successors", f"{len(post)} successor places", str(t))

    for t in sorted(p.observable - set(net.transitions)):
        report.add("unknown-transition", "observable name is not a transition", t)
    return report
