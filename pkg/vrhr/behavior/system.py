from dataclasses import dataclass
from typing import Mapping, Optional, Tuple

from vrhr.errors import InvalidSystemError
from vrhr.graph.alphabet import VertexLabelAlphabet, render_label
from vrhr.graph.labeled import LabeledGraph
from vrhr.petri.process import ProcessType
from vrhr.report import ValidationReport


@dataclass(frozen=True)
class System:
    """A graph whose vertices run process types and whose edges pair observable transitions."""

    graph: LabeledGraph
    proc: Tuple[str, ...]
    port: Tuple[Optional[str], ...]

    def __len__(self) -> int:
        return len(self.graph)


def system_from_graph(g: LabeledGraph, alphabet: VertexLabelAlphabet) -> System:
    procs = []
    ports = []
    for v, labels in enumerate(g.labels):
        types = sorted(labels & alphabet.process_types)
        if len(types) != 1:
            raise InvalidSystemError(
                f"vertex {v} must carry exactly one process type, has {types or 'none'}"
            )
        procs.append(types[0])
        vertex_ports = sorted(labels & alphabet.ports)
        ports.append(vertex_ports[0] if vertex_ports else None)
    return System(g, tuple(procs), tuple(ports))


def validate_system(s: System, types: Mapping[str, ProcessType]) -> ValidationReport:
    report = ValidationReport("system")
    for v, name in enumerate(s.proc):
        if name not in types:
            report.add("unknown-type", f"unknown process type {name}", str(v))
    for src, label, dst in s.graph.edges:
        subject = f"{src}-{render_label(label)}->{dst}"
        if not isinstance(label, tuple) or len(label) != 2:
            report.add("edge-label", "edge label is not a transition pair", subject)
            continue
        for vertex, t in ((src, label[0]), (dst, label[1])):
            ptype = types.get(s.proc[vertex])
            if ptype is not None and t not in ptype.observable:
                report.add(
                    "not-observable",
                    f"{t} is not observable in {ptype.name}",
                    subject,
                )
    return report
