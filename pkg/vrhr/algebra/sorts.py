from typing import Mapping, Optional

from vrhr.algebra.terms import (
    AddEdge,
    Compose,
    Edge,
    Empty,
    NonterminalRef,
    Relab,
    Term,
    Union,
    Vertex,
)
from vrhr.errors import TermError
from vrhr.graph.alphabet import Sort, VertexLabelAlphabet


def infer_sort(
    t: Term,
    alphabet: Optional[VertexLabelAlphabet] = None,
    ref_sorts: Optional[Mapping[str, Sort]] = None,
) -> Sort:
    """Sort of the value of ``t`` without evaluating it.

    Nonterminal occurrences are only accepted when ``ref_sorts`` names
    their sort. With an alphabet, relabelings are type-checked.
    """
    if isinstance(t, Vertex):
        return frozenset({t.port})
    if isinstance(t, Edge):
        return frozenset({t.source, t.target})
    if isinstance(t, Empty):
        return frozenset()
    if isinstance(t, (Union, Compose)):
        return infer_sort(t.left, alphabet, ref_sorts) | infer_sort(
            t.right, alphabet, ref_sorts
        )
    if isinstance(t, AddEdge):
        return infer_sort(t.child, alphabet, ref_sorts)
    if isinstance(t, Relab):
        if alphabet is not None and t.mapping.untyped_pairs(alphabet):
            bad = ", ".join(f"{a}->{b}" for a, b in t.mapping.untyped_pairs(alphabet))
            raise TermError(f"relabeling is not type-preserving: {bad}")
        return t.mapping.apply(infer_sort(t.child, alphabet, ref_sorts))
    if isinstance(t, NonterminalRef):
        if ref_sorts is None or t.name not in ref_sorts:
            raise TermError(f"term is not ground: nonterminal {t.name}")
        return ref_sorts[t.name]
    raise TermError(f"unknown term node {t!r}")
