import random
from typing import Mapping, Optional, Sequence

from vrhr.algebra.portmap import PortMap
from vrhr.algebra.sorts import infer_sort
from vrhr.algebra.terms import AddEdge, Relab, Term, Union, Vertex
from vrhr.graph.alphabet import VertexLabelAlphabet


class TermGenerator:
    """Seeded source of ground, well-typed VR terms with pair-labelled edges."""

    def __init__(
        self,
        alphabet: VertexLabelAlphabet,
        observable: Mapping[str, Sequence[str]],
        rng: random.Random,
        max_vertices: int = 6,
        ports: Optional[Sequence[str]] = None,
        edge_probability: float = 0.6,
        relab_probability: float = 0.3,
    ) -> None:
        self._alphabet = alphabet
        self._observable = observable
        self._rng = rng
        self._max_vertices = max_vertices
        self._ports = sorted(ports if ports is not None else alphabet.ports)
        self._edge_probability = edge_probability
        self._relab_probability = relab_probability

    def term(self) -> Term:
        size = self._rng.randint(1, self._max_vertices)
        term = self._build(size)
        if self._rng.random() < 0.5:
            term = Relab(PortMap.empty(), term)
        return term

    def _build(self, size: int) -> Term:
        if size == 1:
            node: Term = Vertex(self._rng.choice(self._ports))
        else:
            split = self._rng.randint(1, size - 1)
            node = Union(self._build(split), self._build(size - split))
        if self._rng.random() < self._edge_probability:
            node = self._add_edge(node)
        if self._rng.random() < self._relab_probability:
            node = self._relabel(node)
        return node

    def _add_edge(self, node: Term) -> Term:
        candidates = [
            p
            for p in sorted(infer_sort(node, self._alphabet))
            if self._observable.get(self._alphabet.type_of(p) or "")
        ]
        if len(candidates) < 2:
            return node
        source, target = self._rng.sample(candidates, 2)
        label = (
            self._rng.choice(list(self._observable[self._alphabet.type_of(source)])),
            self._rng.choice(list(self._observable[self._alphabet.type_of(target)])),
        )
        return AddEdge(label, source, target, node)

    def _relabel(self, node: Term) -> Term:
        mapping = {}
        for port in sorted(infer_sort(node, self._alphabet)):
            if self._rng.random() < 0.2:
                continue
            ptype = self._alphabet.type_of(port)
            same_type = [p for p in self._ports if self._alphabet.type_of(p) == ptype]
            mapping[port] = self._rng.choice(same_type)
        return Relab(PortMap.of(mapping), node)
