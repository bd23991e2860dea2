import logging
from typing import Dict, Final, List, Set, Tuple

from vrhr.errors import GraphError
from vrhr.graph.alphabet import EpsilonAlphabet, render_label
from vrhr.graph.labeled import Edge, LabeledGraph
from vrhr.report import ValidationReport

_LOGGER: Final = logging.getLogger(__name__)


def _forward_edges(g: LabeledGraph, eps: EpsilonAlphabet) -> List[Edge]:
    forward = eps.forward
    return [e for e in g.edges if e[1] in forward]


def _find_cycle(size: int, successors: Dict[int, List[int]]) -> List[int]:
    white, grey, black = 0, 1, 2
    colour = [white] * size
    for root in range(size):
        if colour[root] != white:
            continue
        stack: List[Tuple[int, int]] = [(root, 0)]
        path = [root]
        colour[root] = grey
        while stack:
            vertex, child_index = stack[-1]
            children = successors.get(vertex, [])
            if child_index < len(children):
                stack[-1] = (vertex, child_index + 1)
                child = children[child_index]
                if colour[child] == grey:
                    return path[path.index(child) :]
                if colour[child] == white:
                    colour[child] = grey
                    stack.append((child, 0))
                    path.append(child)
            else:
                colour[vertex] = black
                stack.pop()
                path.pop()
    return []


def validate_epsilon_graph(g: LabeledGraph, eps: EpsilonAlphabet) -> ValidationReport:
    """Checks reverse-edge pairing and the forest shape of the routing edges."""
    report = ValidationReport("epsilon graph")
    present = set(g.edges)
    forward = _forward_edges(g, eps)

    for s, lb, t in forward:
        if (t, eps.reverse(lb), s) not in present:
            report.add(
                "unpaired",
                f"edge {render_label(lb)} has no reverse {render_label(eps.reverse(lb))}",
                f"{s}->{t}",
            )
    backward_of = {b: f for f, b in eps.pair.items()}
    for s, lb, t in g.edges:
        if lb in backward_of and (t, backward_of[lb], s) not in present:
            report.add("unpaired", f"reverse edge {render_label(lb)} has no forward edge", f"{s}->{t}")

    targets = {t for _, _, t in forward}
    successors: Dict[int, List[int]] = {}
    labels_out: Dict[int, List[str]] = {}
    for s, lb, t in forward:
        successors.setdefault(s, []).append(t)
        labels_out.setdefault(s, []).append(render_label(lb))
    for vertex, parents in successors.items():
        if vertex in targets:
            unique = len(parents) <= 1
        else:
            # a leaf may point at one parent per routing label
            unique = len(labels_out[vertex]) == len(set(labels_out[vertex]))
        if not unique:
            report.add("non-unique-parent", "non-unique parent", str(vertex))

    cycle = _find_cycle(len(g), successors)
    if cycle:
        report.add("cycle", "cycle " + " -> ".join(map(str, cycle)), str(cycle[0]))
    return report


def epsilon_closure(g: LabeledGraph, eps: EpsilonAlphabet) -> List[Set[int]]:
    """For every vertex, the vertices reachable from it along forward routing edges."""
    successors: Dict[int, List[int]] = {}
    for s, _, t in _forward_edges(g, eps):
        successors.setdefault(s, []).append(t)
    closure: List[Set[int]] = []
    for v in g.vertices:
        seen = {v}
        stack = [v]
        while stack:
            for nxt in successors.get(stack.pop(), []):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        closure.append(seen)
    return closure


def expand_with_origin(
    g: LabeledGraph, eps: EpsilonAlphabet
) -> Tuple[LabeledGraph, Tuple[int, ...]]:
    """Expansion together with the original id of every surviving vertex."""
    report = validate_epsilon_graph(g, eps)
    report.raise_if_failed(GraphError)

    forward = _forward_edges(g, eps)
    targets = {t for _, _, t in forward}
    survivors = tuple(v for v in g.vertices if v not in targets)
    index = {v: i for i, v in enumerate(survivors)}

    reached_by: Dict[int, List[int]] = {}
    for v, reach in zip(g.vertices, epsilon_closure(g, eps)):
        if v in index:
            for w in reach:
                reached_by.setdefault(w, []).append(index[v])

    routing = eps.routing
    edges = set()
    for s, lb, t in g.edges:
        if lb in routing:
            continue
        for v1 in reached_by.get(s, []):
            for v2 in reached_by.get(t, []):
                if v1 != v2:
                    edges.add((v1, lb, v2))

    expanded = LabeledGraph([g.labels[v] for v in survivors], edges)
    _LOGGER.debug(
        "expanded %d vertices into %d (%d edges)", len(g), len(expanded), len(expanded.edges)
    )
    return expanded, survivors


def expand(g: LabeledGraph, eps: EpsilonAlphabet) -> LabeledGraph:
    return expand_with_origin(g, eps)[0]
