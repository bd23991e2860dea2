from collections import Counter
from dataclasses import dataclass
from typing import Dict, Hashable, Optional

from networkx.algorithms.isomorphism import DiGraphMatcher

from vrhr.config import ISOMORPHISM_VERTEX_CAP
from vrhr.errors import ResourceLimitError
from vrhr.graph.alphabet import render_label
from vrhr.graph.labeled import LabeledGraph


@dataclass(frozen=True, slots=True)
class IsomorphismResult:
    found: bool
    mapping: Optional[Dict[int, int]] = None

    def __bool__(self) -> bool:
        return self.found


def fingerprint(g: LabeledGraph) -> Hashable:
    """Isomorphism-invariant summary: label and labelled-degree multisets."""
    out_deg: Counter = Counter()
    in_deg: Counter = Counter()
    for s, lb, t in g.edges:
        out_deg[(s, render_label(lb))] += 1
        in_deg[(t, render_label(lb))] += 1
    per_vertex = Counter(
        (
            tuple(sorted(labels)),
            tuple(sorted((lb, n) for (v, lb), n in out_deg.items() if v == vertex)),
            tuple(sorted((lb, n) for (v, lb), n in in_deg.items() if v == vertex)),
        )
        for vertex, labels in enumerate(g.labels)
    )
    return len(g), len(g.edges), tuple(sorted(per_vertex.items()))


def _same_labels(a: dict, b: dict) -> bool:
    return a["labels"] == b["labels"]


def isomorphic(
    g1: LabeledGraph, g2: LabeledGraph, cap: int = ISOMORPHISM_VERTEX_CAP
) -> IsomorphismResult:
    """Label- and edge-preserving bijection from ``g1`` onto ``g2``, if any."""
    if max(len(g1), len(g2)) > cap:
        raise ResourceLimitError(
            f"isomorphism test on {max(len(g1), len(g2))} vertices exceeds cap {cap}"
        )
    if fingerprint(g1) != fingerprint(g2):
        return IsomorphismResult(False)
    matcher = DiGraphMatcher(
        g1.to_networkx(),
        g2.to_networkx(),
        node_match=_same_labels,
        edge_match=_same_labels,
    )
    if not matcher.is_isomorphic():
        return IsomorphismResult(False)
    mapping: Dict[int, int] = {int(k): int(v) for k, v in matcher.mapping.items()}
    return IsomorphismResult(True, mapping)
