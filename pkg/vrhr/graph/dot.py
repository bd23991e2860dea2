from typing import Optional

from graphviz import Digraph

from vrhr.graph.alphabet import EpsilonAlphabet, render_label
from vrhr.graph.labeled import LabeledGraph


def graph_to_dot(
    g: LabeledGraph, eps: Optional[EpsilonAlphabet] = None, name: str = "graph"
) -> str:
    dot = Digraph(name)
    dot.attr(rankdir="LR")
    routing = eps.routing if eps is not None else frozenset()
    for v in g.vertices:
        label = ", ".join(sorted(g.labels[v]))
        dot.node(f"v{v}", f"{v}: {{{label}}}", shape="ellipse")
    for s, lb, t in g.edges:
        style = "dashed" if lb in routing else "solid"
        dot.edge(f"v{s}", f"v{t}", label=render_label(lb), style=style)
    return dot.source
