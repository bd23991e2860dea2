from typing import Optional

from vrhr._enum import Algebra
from vrhr.algebra.sorts import infer_sort
from vrhr.algebra.terms import (
    AddEdge,
    Compose,
    Edge,
    Relab,
    Term,
    Union,
    Vertex,
    algebra_of,
    is_ground,
    mixes_algebras,
    preorder,
    render_term,
)
from vrhr.errors import TermError
from vrhr.graph.alphabet import VertexLabelAlphabet, render_label
from vrhr.report import ValidationReport


def validate_term(
    t: Term, alphabet: VertexLabelAlphabet, algebra: Optional[Algebra] = None
) -> ValidationReport:
    """Static well-formedness of a (possibly non-ground) term."""
    report = ValidationReport("term")
    algebra = algebra or algebra_of(t) or Algebra.VR

    if mixes_algebras(t):
        report.add("mixed-algebra", "term mixes VR and HR operations")
    for node in preorder(t):
        if algebra is Algebra.HR and isinstance(node, (Union, AddEdge)):
            report.add("wrong-algebra", f"{type(node).__name__} in an HR term")
        if algebra is Algebra.VR and isinstance(node, (Compose, Edge)):
            report.add("wrong-algebra", f"{type(node).__name__} in a VR term")

        if isinstance(node, Vertex) and not alphabet.is_port(node.port):
            report.add("unknown-port", f"unknown port {node.port}", render_term(node))
        elif isinstance(node, (Edge, AddEdge)):
            _check_edge_operator(node, alphabet, report)
        elif isinstance(node, Relab):
            _check_relabeling(node, alphabet, algebra, report)
    return report


def _check_edge_operator(
    node: Edge | AddEdge, alphabet: VertexLabelAlphabet, report: ValidationReport
) -> None:
    subject = f"{render_label(node.label)}; {node.source} -> {node.target}"
    if node.source == node.target:
        report.add("same-ports", f"edge operator uses {node.source} twice", subject)
    for port in (node.source, node.target):
        if not alphabet.is_port(port):
            report.add("unknown-port", f"unknown port {port}", subject)
    if not isinstance(node, AddEdge) or not is_ground(node.child):
        return
    try:
        child_sort = infer_sort(node.child, alphabet)
    except TermError:
        return
    for port in (node.source, node.target):
        if port not in child_sort:
            # one-sided graphs stay in the language, so this only warns
            report.warn("dangling-port", f"dangling add-edge port {port}", subject)


def _check_relabeling(
    node: Relab,
    alphabet: VertexLabelAlphabet,
    algebra: Algebra,
    report: ValidationReport,
) -> None:
    subject = render_term(node)[:60]
    for src, dst in node.mapping.pairs:
        if not alphabet.is_port(src) or not alphabet.is_port(dst):
            report.add("unknown-port", f"relabeling mentions unknown port in {src}->{dst}", subject)
    for src, dst in node.mapping.untyped_pairs(alphabet):
        if alphabet.is_port(src) and alphabet.is_port(dst):
            report.add("untyped", f"not type-preserving: {src} -> {dst}", subject)
    if algebra is Algebra.HR and not node.mapping.is_injective():
        report.add("not-injective", "HR relabeling is not injective", subject)
