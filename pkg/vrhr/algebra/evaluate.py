import logging
from typing import Dict, Final, List

from vrhr._enum import Algebra
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
from vrhr.graph.alphabet import VertexLabelAlphabet
from vrhr.graph.labeled import LabeledGraph, is_hr_graph

_LOGGER: Final = logging.getLogger(__name__)


def _vertex(port: str, alphabet: VertexLabelAlphabet) -> LabeledGraph:
    ptype = alphabet.type_of(port)
    if ptype is None:
        raise TermError(f"unknown port {port}")
    return LabeledGraph.single({port, ptype})


def _relab(t: Relab, child: LabeledGraph, alphabet: VertexLabelAlphabet) -> LabeledGraph:
    untyped = t.mapping.untyped_pairs(alphabet)
    if untyped:
        raise TermError(f"relabeling is not type-preserving: {untyped}")
    return child.relabel_ports(t.mapping.as_dict(), alphabet.ports)


def eval_vr(t: Term, alphabet: VertexLabelAlphabet) -> LabeledGraph:
    if isinstance(t, Vertex):
        return _vertex(t.port, alphabet)
    if isinstance(t, Empty):
        return LabeledGraph.empty()
    if isinstance(t, Union):
        return eval_vr(t.left, alphabet).disjoint_union(eval_vr(t.right, alphabet))
    if isinstance(t, AddEdge):
        if t.source == t.target:
            raise TermError(f"add-edge needs two distinct ports, got {t.source} twice")
        child = eval_vr(t.child, alphabet)
        sources = child.vertices_with(t.source)
        targets = child.vertices_with(t.target)
        # an absent port class adds nothing
        return child.with_edges((s, t.label, d) for s in sources for d in targets)
    if isinstance(t, Relab):
        return _relab(t, eval_vr(t.child, alphabet), alphabet)
    if isinstance(t, NonterminalRef):
        raise TermError(f"cannot evaluate non-ground term: nonterminal {t.name}")
    raise TermError(f"{type(t).__name__} is not a VR operation")


def _fuse(left: LabeledGraph, right: LabeledGraph, alphabet: VertexLabelAlphabet) -> LabeledGraph:
    source_of: Dict[str, int] = {}
    for v, labels in enumerate(left.labels):
        for port in labels & alphabet.ports:
            source_of[port] = v

    labels: List[set] = [set(ls) for ls in left.labels]
    target: List[int] = []
    for labels_r in right.labels:
        shared = [source_of[p] for p in labels_r & alphabet.ports if p in source_of]
        if shared:
            labels[shared[0]].update(labels_r)
            target.append(shared[0])
        else:
            target.append(len(labels))
            labels.append(set(labels_r))

    edges = [*left.edges, *((target[s], lb, target[d]) for s, lb, d in right.edges)]
    return LabeledGraph(labels, edges)


def _check_hr(g: LabeledGraph, alphabet: VertexLabelAlphabet, where: str) -> LabeledGraph:
    if not is_hr_graph(g, alphabet):
        raise TermError(f"{where} leaves the HR domain: a source labels two vertices")
    return g


def eval_hr(t: Term, alphabet: VertexLabelAlphabet) -> LabeledGraph:
    if isinstance(t, Vertex):
        return _vertex(t.port, alphabet)
    if isinstance(t, Empty):
        return LabeledGraph.empty()
    if isinstance(t, Edge):
        if t.source == t.target:
            raise TermError(f"edge needs two distinct sources, got {t.source} twice")
        pair = _vertex(t.source, alphabet).disjoint_union(_vertex(t.target, alphabet))
        return pair.with_edges([(0, t.label, 1)])
    if isinstance(t, Compose):
        left = eval_hr(t.left, alphabet)
        right = eval_hr(t.right, alphabet)
        return _check_hr(_fuse(left, right, alphabet), alphabet, "composition")
    if isinstance(t, Relab):
        if not t.mapping.is_injective():
            raise TermError("HR relabeling must be injective")
        child = eval_hr(t.child, alphabet)
        return _check_hr(_relab(t, child, alphabet), alphabet, "relabeling")
    if isinstance(t, NonterminalRef):
        raise TermError(f"cannot evaluate non-ground term: nonterminal {t.name}")
    raise TermError(f"{type(t).__name__} is not an HR operation")


def evaluate(t: Term, alphabet: VertexLabelAlphabet, algebra: Algebra) -> LabeledGraph:
    graph = eval_hr(t, alphabet) if algebra is Algebra.HR else eval_vr(t, alphabet)
    _LOGGER.debug("evaluated term to %r", graph)
    return graph
