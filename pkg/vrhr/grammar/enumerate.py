import logging
from collections import deque
from dataclasses import dataclass
from typing import Deque, Dict, Final, Hashable, Iterator, List, Set

from vrhr._enum import Algebra, EnumerationStatus
from vrhr.algebra.evaluate import evaluate
from vrhr.algebra.terms import Term, nonterminal_occurrences, vertex_leaves
from vrhr.config import ISOMORPHISM_VERTEX_CAP, Bounds
from vrhr.errors import TermError
from vrhr.grammar.derivation import Derivation, DerivationStep, step
from vrhr.grammar.grammar import Grammar
from vrhr.graph.alphabet import VertexLabelAlphabet
from vrhr.graph.isomorphism import fingerprint, isomorphic
from vrhr.graph.labeled import LabeledGraph
from vrhr.translate.names import HALF_SUFFIX

_LOGGER: Final = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class LanguageMember:
    derivation: Derivation
    graph: LabeledGraph


class LanguageEnumeration:
    """Breadth-first slice of a grammar's language.

    Iterate it to get one member per isomorphism class, in deterministic
    order; ``status`` tells afterwards whether a bound cut the slice.
    """

    def __init__(
        self, grammar: Grammar, alphabet: VertexLabelAlphabet, bounds: Bounds
    ) -> None:
        self.grammar = grammar
        self.alphabet = alphabet
        self.bounds = bounds
        self.status = EnumerationStatus.RUNNING
        self.terms_seen = 0
        self.graphs_yielded = 0
        self.duplicates = 0
        self.rejected = 0
        self._bounded = False
        self._half_types = frozenset(
            t for t in alphabet.process_types if t.endswith(f".{HALF_SUFFIX}")
        )

    def __iter__(self) -> Iterator[LanguageMember]:
        self.status = EnumerationStatus.RUNNING
        queue: Deque[Derivation] = deque()
        seen: Set[Term] = set()
        for axiom in self.grammar.axioms:
            start = Derivation.initial(axiom)
            if start.term not in seen:
                seen.add(start.term)
                queue.append(start)
        classes: Dict[Hashable, List[LabeledGraph]] = {}

        while queue:
            derivation = queue.popleft()
            occurrences = nonterminal_occurrences(derivation.term)
            if not occurrences:
                graph = self._graph_of(derivation)
                if graph is None or self._is_duplicate(graph, classes):
                    continue
                self.graphs_yielded += 1
                yield LanguageMember(derivation, graph)
                if self._capped() and queue:
                    self.status = EnumerationStatus.TRUNCATED
                    _LOGGER.warning("stopped after %d graphs", self.graphs_yielded)
                    return
                continue
            if len(derivation) >= self.bounds.max_steps:
                self._bounded = True
                continue
            for index, rule in self.grammar.rules_for(occurrences[0].name):
                term = step(derivation.term, rule, 0)
                if term in seen:
                    continue
                seen.add(term)
                self.terms_seen += 1
                if self._too_large(term):
                    self._bounded = True
                    continue
                queue.append(derivation.extended(DerivationStep(index, 0), term))

        self.status = (
            EnumerationStatus.BOUNDED if self._bounded else EnumerationStatus.EXHAUSTED
        )
        _LOGGER.info(
            "enumerated %s: %d graphs from %d terms (%s)",
            self.grammar.name,
            self.graphs_yielded,
            self.terms_seen,
            self.status.value,
        )

    def _capped(self) -> bool:
        cap = self.bounds.max_graphs
        return cap is not None and self.graphs_yielded >= cap

    def _too_large(self, term: Term) -> bool:
        # VR vertex count only grows along a derivation
        cap = self.bounds.max_vertices
        return (
            cap is not None
            and self.grammar.algebra is Algebra.VR
            and vertex_leaves(term) > cap
        )

    def _graph_of(self, derivation: Derivation) -> LabeledGraph | None:
        try:
            graph = evaluate(derivation.term, self.alphabet, self.grammar.algebra)
        except TermError as exc:
            self.rejected += 1
            _LOGGER.warning("derivation %s rejected: %s", derivation.to_dict(), exc)
            return None
        cap = self.bounds.max_vertices
        if cap is not None and self.vertex_count(graph) > cap:
            self._bounded = True
            return None
        return graph

    def vertex_count(self, graph: LabeledGraph) -> int:
        """Vertices counted against ``max_vertices``: only halves once routers exist."""
        if not self._half_types:
            return len(graph)
        return sum(1 for labels in graph.labels if labels & self._half_types)

    def _is_duplicate(
        self, graph: LabeledGraph, classes: Dict[Hashable, List[LabeledGraph]]
    ) -> bool:
        bucket = classes.setdefault(fingerprint(graph), [])
        if len(graph) <= ISOMORPHISM_VERTEX_CAP:
            for other in bucket:
                if isomorphic(graph, other):
                    self.duplicates += 1
                    return True
        bucket.append(graph)
        return False


def enumerate_language(
    g: Grammar, alphabet: VertexLabelAlphabet, bounds: Bounds
) -> LanguageEnumeration:
    return LanguageEnumeration(g, alphabet, bounds)
