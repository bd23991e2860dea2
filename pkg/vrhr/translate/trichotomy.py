from typing import Dict, FrozenSet, Optional, Tuple

from vrhr._enum import EdgeKind
from vrhr.graph.alphabet import render_label
from vrhr.graph.labeled import LabeledGraph
from vrhr.report import ValidationReport
from vrhr.translate import names
from vrhr.translate.alphabet import ExpandedAlphabet


def _vertex_kind(labels: FrozenSet[str], expanded: ExpandedAlphabet) -> Tuple[str, Optional[str]]:
    for label in labels:
        if expanded.is_half_type(label):
            return "half", None
        t = expanded.router_transition(label)
        if t is not None:
            return "router", t
    return "other", None


def classify_edges(
    g: LabeledGraph,
    u: int,
    v: int,
    expanded: ExpandedAlphabet,
) -> Optional[EdgeKind]:
    """Which of the allowed shapes the edges from ``u`` to ``v`` take, if any."""
    there = g.edges_between(u, v)
    back = g.edges_between(v, u)
    kind_u, t_u = _vertex_kind(g.labels[u], expanded)
    kind_v, t_v = _vertex_kind(g.labels[v], expanded)

    if kind_u == "half" and kind_v == "router":
        attempt = (names.attempt(t_v), names.RECV)
        commit = (names.RESET, names.commit(t_v))
        if there == {attempt} and back == {commit}:
            return EdgeKind.HALF_TO_ROUTER
    if kind_u == "router" and kind_v == "half":
        attempt = (names.attempt(t_u), names.RECV)
        commit = (names.RESET, names.commit(t_u))
        if there == {commit} and back == {attempt}:
            return EdgeKind.ROUTER_TO_HALF
    if kind_u == "router" and kind_v == "router":
        forward = (names.FWD, names.RECV)
        backward = (names.RESET, names.ACK)
        if t_u == t_v and there == {forward} and back == {backward}:
            return EdgeKind.ROUTER_FORWARD
        if t_u == t_v and there == {backward} and back == {forward}:
            return EdgeKind.ROUTER_BACKWARD
        if there == {(t_u, t_v)} and not (back & {forward, backward}):
            return EdgeKind.RENDEZVOUS
    return None


def check_edge_trichotomy(s_prime: LabeledGraph, expanded: ExpandedAlphabet) -> ValidationReport:
    """Every connected ordered pair is a half/router link, a rendezvous or a router link."""
    report = ValidationReport("edge trichotomy")
    pairs: Dict[Tuple[int, int], None] = {}
    for u, _, v in s_prime.edges:
        pairs[(u, v)] = None
    for u, v in pairs:
        if classify_edges(s_prime, u, v, expanded) is None:
            labels = ", ".join(sorted(render_label(lb) for lb in s_prime.edges_between(u, v)))
            report.add("unexpected-edges", f"edge set {{{labels}}} fits no allowed shape", f"{u}->{v}")
    return report
