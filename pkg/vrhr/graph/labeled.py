from typing import (
    AbstractSet,
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

import networkx as nx

from vrhr.graph.alphabet import (
    EdgeLabel,
    Sort,
    VertexLabelAlphabet,
    render_label,
    sort_of_labels,
)
from vrhr.report import ValidationReport

Edge = Tuple[int, EdgeLabel, int]


def _edge_key(edge: Edge) -> Tuple[int, str, int]:
    return edge[0], render_label(edge[1]), edge[2]


class LabeledGraph:
    """Immutable graph over dense integer vertices ``0..n-1``.

    Every vertex carries a frozen set of labels; edges are triples
    ``(source, label, target)`` kept sorted and free of duplicates.
    """

    __slots__ = ("labels", "edges", "_hash")

    def __init__(
        self,
        labels: Sequence[Iterable[str]] = (),
        edges: Iterable[Edge] = (),
    ) -> None:
        self.labels: Tuple[FrozenSet[str], ...] = tuple(frozenset(ls) for ls in labels)
        self.edges: Tuple[Edge, ...] = tuple(sorted(set(edges), key=_edge_key))
        self._hash: Optional[int] = None

    @classmethod
    def empty(cls) -> "LabeledGraph":
        return cls()

    @classmethod
    def single(cls, labels: Iterable[str]) -> "LabeledGraph":
        return cls([labels])

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self.labels == other.labels and self.edges == other.edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.labels, self.edges))
        return self._hash

    def __repr__(self) -> str:
        return f"LabeledGraph(vertices={len(self)}, edges={len(self.edges)})"

    @property
    def vertices(self) -> range:
        return range(len(self.labels))

    def edge_labels(self) -> FrozenSet[EdgeLabel]:
        return frozenset(label for _, label, _ in self.edges)

    def sort(self, ports: AbstractSet[str]) -> Sort:
        return sort_of_labels(self.labels, ports)

    def vertices_with(self, label: str) -> List[int]:
        return [v for v, ls in enumerate(self.labels) if label in ls]

    def out_edges(self, vertex: int) -> List[Edge]:
        return [e for e in self.edges if e[0] == vertex]

    def in_edges(self, vertex: int) -> List[Edge]:
        return [e for e in self.edges if e[2] == vertex]

    def edges_between(self, source: int, target: int) -> FrozenSet[EdgeLabel]:
        return frozenset(lb for s, lb, t in self.edges if s == source and t == target)

    def disjoint_union(self, other: "LabeledGraph") -> "LabeledGraph":
        offset = len(self)
        shifted = ((s + offset, lb, t + offset) for s, lb, t in other.edges)
        return LabeledGraph(self.labels + other.labels, [*self.edges, *shifted])

    def with_edges(self, extra: Iterable[Edge]) -> "LabeledGraph":
        return LabeledGraph(self.labels, [*self.edges, *extra])

    def map_labels(self, fn: Callable[[FrozenSet[str]], Iterable[str]]) -> "LabeledGraph":
        return LabeledGraph([fn(ls) for ls in self.labels], self.edges)

    def induced(self, keep: Sequence[int]) -> "LabeledGraph":
        """Sub-graph on ``keep``, re-indexed in the given order."""
        index = {v: i for i, v in enumerate(keep)}
        edges = [
            (index[s], lb, index[t])
            for s, lb, t in self.edges
            if s in index and t in index
        ]
        return LabeledGraph([self.labels[v] for v in keep], edges)

    def relabel_ports(
        self, mapping: Mapping[str, str], ports: AbstractSet[str]
    ) -> "LabeledGraph":
        def _apply(labels: FrozenSet[str]) -> FrozenSet[str]:
            kept = {lb for lb in labels if lb not in ports}
            kept.update(mapping[lb] for lb in labels if lb in ports and lb in mapping)
            return frozenset(kept)

        return self.map_labels(_apply)

    def without_labels(self, drop: AbstractSet[str]) -> "LabeledGraph":
        return self.map_labels(lambda labels: labels - drop)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        for v, labels in enumerate(self.labels):
            graph.add_node(v, labels=labels)
        grouped: Dict[Tuple[int, int], set] = {}
        for s, lb, t in self.edges:
            grouped.setdefault((s, t), set()).add(lb)
        for (s, t), labels in grouped.items():
            graph.add_edge(s, t, labels=frozenset(labels))
        return graph

    def to_dict(self) -> dict:
        return {
            "vertices": [sorted(ls) for ls in self.labels],
            "edges": [[s, render_label(lb), t] for s, lb, t in self.edges],
        }


def validate_graph(g: LabeledGraph, alphabet: VertexLabelAlphabet) -> ValidationReport:
    report = ValidationReport("graph")
    size = len(g)
    for s, lb, t in g.edges:
        if not (0 <= s < size and 0 <= t < size):
            report.add("dangling-edge", f"edge {render_label(lb)} leaves the graph", f"{s}->{t}")
        elif s == t:
            report.add("self-loop", f"self-loop at {s}", str(s))
    for v, labels in enumerate(g.labels):
        ports = sorted(labels & alphabet.ports)
        if len(ports) > 1:
            report.add("two-ports", f"two ports on one vertex: {', '.join(ports)}", str(v))
        for port in ports:
            ptype = alphabet.type_of(port)
            if ptype not in labels:
                report.add("missing-type", f"port {port} without its type {ptype}", str(v))
    return report


def is_hr_graph(g: LabeledGraph, alphabet: VertexLabelAlphabet) -> bool:
    """Whether every port labels at most one vertex (the sources of an HR graph)."""
    seen: set = set()
    for labels in g.labels:
        for port in labels & alphabet.ports:
            if port in seen:
                return False
            seen.add(port)
    return True
