from dataclasses import dataclass, field
from functools import cached_property
from typing import AbstractSet, FrozenSet, Iterable, Mapping, Optional, Tuple, Union

from vrhr.report import ValidationReport

EdgeLabel = Union[str, Tuple[str, str]]
Sort = FrozenSet[str]


def render_label(label: EdgeLabel) -> str:
    if isinstance(label, tuple):
        return f"({label[0]},{label[1]})"
    return label


@dataclass(frozen=True)
class VertexLabelAlphabet:
    """Process-type names, port names and the type of every port."""

    process_types: FrozenSet[str]
    port_type: Mapping[str, str] = field(default_factory=dict)

    @classmethod
    def build(
        cls, process_types: Iterable[str], port_type: Mapping[str, str]
    ) -> "VertexLabelAlphabet":
        return cls(frozenset(process_types), dict(sorted(port_type.items())))

    @cached_property
    def ports(self) -> FrozenSet[str]:
        return frozenset(self.port_type)

    def is_port(self, label: str) -> bool:
        return label in self.port_type

    def type_of(self, port: str) -> Optional[str]:
        return self.port_type.get(port)

    def ports_of_type(self, process_type: str) -> Tuple[str, ...]:
        return tuple(p for p, t in self.port_type.items() if t == process_type)

    def validate(self) -> ValidationReport:
        report = ValidationReport("alphabet")
        for name in sorted(self.process_types & self.ports):
            report.add("overlap", "name is both a port and a process type", name)
        for port, ptype in self.port_type.items():
            if ptype not in self.process_types:
                report.add("unknown-type", f"port has unknown type {ptype}", port)
        return report


@dataclass(frozen=True)
class EpsilonAlphabet:
    """Forward routing labels, their reverses and the pairing between them."""

    pair: Mapping[EdgeLabel, EdgeLabel]

    @property
    def forward(self) -> FrozenSet[EdgeLabel]:
        return frozenset(self.pair)

    @property
    def backward(self) -> FrozenSet[EdgeLabel]:
        return frozenset(self.pair.values())

    @property
    def routing(self) -> FrozenSet[EdgeLabel]:
        return self.forward | self.backward

    def reverse(self, label: EdgeLabel) -> EdgeLabel:
        return self.pair[label]

    def validate(self, delta: AbstractSet[EdgeLabel] = frozenset()) -> ValidationReport:
        report = ValidationReport("epsilon alphabet")
        if len(self.backward) != len(self.pair):
            report.add("not-bijective", "two forward labels share a reverse label")
        if self.forward & self.backward:
            report.add("overlap", "forward and backward labels intersect")
        if delta & self.routing:
            report.add("overlap", "routing labels intersect the edge alphabet")
        return report


def sort_of_labels(labels: Iterable[AbstractSet[str]], ports: AbstractSet[str]) -> Sort:
    return frozenset(label for label_set in labels for label in label_set if label in ports)
