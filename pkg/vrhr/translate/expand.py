import logging
from typing import Dict, Final, Mapping, Optional, Tuple

from vrhr.algebra.portmap import PortMap
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
    compose_all,
)
from vrhr.errors import TranslationError
from vrhr.graph.alphabet import Sort
from vrhr.translate import names
from vrhr.translate.alphabet import ExpandedAlphabet

_LOGGER: Final = logging.getLogger(__name__)


def routing_edges(port: str, new_port: str, t: str) -> Term:
    """Forward request and backward acknowledgement between two ``t``-routers."""
    old, new = names.representative(port, t), names.overlined(new_port, t)
    return Compose(
        Edge((names.FWD, names.RECV), old, new),
        Edge((names.RESET, names.ACK), new, old),
    )


def half_edges(port: str, t: str) -> Term:
    """Attempt and commit edges between a halved vertex and its ``t``-router."""
    half, rep = names.half_port(port), names.representative(port, t)
    return Compose(
        Edge((names.attempt(t), names.RECV), half, rep),
        Edge((names.RESET, names.commit(t)), rep, half),
    )


def enc(alpha: PortMap, expanded: ExpandedAlphabet) -> Term:
    """Wire the current representatives to fresh overlined ones along ``alpha``."""
    return compose_all(
        [
            routing_edges(src, dst, t)
            for src, dst in alpha.pairs
            for t in expanded.transitions_of_port(src)
        ]
    )


def _fresh(
    expanded: ExpandedAlphabet, promoted: Sort, kept: Sort = frozenset()
) -> PortMap:
    mapping: Dict[str, str] = {}
    for port in promoted:
        for t in expanded.transitions_of_port(port):
            mapping[names.overlined(port, t)] = names.representative(port, t)
    for port in kept:
        for t in expanded.transitions_of_port(port):
            mapping[names.representative(port, t)] = names.representative(port, t)
    return PortMap.of(mapping)


def _expand(
    t: Term, expanded: ExpandedAlphabet, refs: Mapping[str, Sort]
) -> Tuple[Term, Sort]:
    if isinstance(t, Vertex):
        transitions = expanded.transitions_of_port(t.port)
        body = compose_all(
            [Vertex(names.half_port(t.port))] + [half_edges(t.port, x) for x in transitions]
        )
        keep = PortMap.identity(names.representative(t.port, x) for x in transitions)
        return Relab(keep, body), frozenset({t.port})

    if isinstance(t, AddEdge):
        child, sort = _expand(t.child, expanded, refs)
        if t.source not in sort or t.target not in sort:
            _LOGGER.debug("add-edge %s -> %s has no partner; dropped", t.source, t.target)
            return child, sort
        if not isinstance(t.label, tuple):
            raise TranslationError(f"edge label {t.label!r} is not a transition pair")
        left, right = t.label
        if left not in expanded.transitions_of_port(t.source):
            raise TranslationError(f"{left} is not observable at port {t.source}")
        if right not in expanded.transitions_of_port(t.target):
            raise TranslationError(f"{right} is not observable at port {t.target}")
        edge = Edge(
            t.label,
            names.representative(t.source, left),
            names.representative(t.target, right),
        )
        return Compose(edge, child), sort

    if isinstance(t, Relab):
        child, sort = _expand(t.child, expanded, refs)
        alpha = t.mapping.restricted(sort)
        image = alpha.apply(sort)
        body = compose_all([child, enc(alpha, expanded)])
        return Relab(_fresh(expanded, image), body), image

    if isinstance(t, Union):
        left, left_sort = _expand(t.left, expanded, refs)
        right, right_sort = _expand(t.right, expanded, refs)
        shared = left_sort & right_sort
        link = enc(PortMap.identity(shared), expanded)
        sides = [
            Relab(_fresh(expanded, shared, sort - shared), compose_all([term, link]))
            for term, sort in ((left, left_sort), (right, right_sort))
        ]
        return Compose(*sides), left_sort | right_sort

    if isinstance(t, NonterminalRef):
        if t.name not in refs:
            raise TranslationError(f"no sort known for nonterminal {t.name}")
        return t, refs[t.name]

    if isinstance(t, Empty):
        return t, frozenset()

    raise TranslationError(f"{type(t).__name__} is not a VR operation")


def expand_term(
    theta: Term,
    expanded: ExpandedAlphabet,
    ref_sorts: Optional[Mapping[str, Sort]] = None,
) -> Term:
    """HR term whose value expands back to the value of the VR term ``theta``.

    Nonterminal occurrences are kept; ``ref_sorts`` gives the VR sort each
    one stands for.
    """
    return _expand(theta, expanded, ref_sorts or {})[0]
