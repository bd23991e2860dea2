"""Term trees of the VR and HR graph algebras.

Both signatures share ``Vertex``, ``Relab``, ``NonterminalRef`` and the
``Empty`` constant; ``Union``/``AddEdge`` are VR-only and
``Compose``/``Edge`` are HR-only.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from vrhr._enum import Algebra
from vrhr.algebra.portmap import PortMap
from vrhr.graph.alphabet import EdgeLabel, render_label


@dataclass(frozen=True, slots=True)
class Vertex:
    port: str


@dataclass(frozen=True, slots=True)
class Edge:
    label: EdgeLabel
    source: str
    target: str


@dataclass(frozen=True, slots=True)
class Union:
    left: "Term"
    right: "Term"


@dataclass(frozen=True, slots=True)
class Compose:
    left: "Term"
    right: "Term"


@dataclass(frozen=True, slots=True)
class AddEdge:
    label: EdgeLabel
    source: str
    target: str
    child: "Term"


@dataclass(frozen=True, slots=True)
class Relab:
    mapping: PortMap
    child: "Term"


@dataclass(frozen=True, slots=True)
class NonterminalRef:
    name: str


@dataclass(frozen=True, slots=True)
class Empty:
    pass


Term = Vertex | Edge | Union | Compose | AddEdge | Relab | NonterminalRef | Empty

_VR_ONLY = (Union, AddEdge)
_HR_ONLY = (Compose, Edge)


def children(t: Term) -> Tuple[Term, ...]:
    if isinstance(t, (Union, Compose)):
        return t.left, t.right
    if isinstance(t, (AddEdge, Relab)):
        return (t.child,)
    return ()


def with_children(t: Term, kids: Tuple[Term, ...]) -> Term:
    if isinstance(t, Union):
        return Union(*kids)
    if isinstance(t, Compose):
        return Compose(*kids)
    if isinstance(t, AddEdge):
        return AddEdge(t.label, t.source, t.target, kids[0])
    if isinstance(t, Relab):
        return Relab(t.mapping, kids[0])
    return t


def preorder(t: Term) -> List[Term]:
    nodes: List[Term] = []
    stack = [t]
    while stack:
        node = stack.pop()
        nodes.append(node)
        stack.extend(reversed(children(node)))
    return nodes


def nonterminal_occurrences(t: Term) -> List[NonterminalRef]:
    return [n for n in preorder(t) if isinstance(n, NonterminalRef)]


def is_ground(t: Term) -> bool:
    return not nonterminal_occurrences(t)


def vertex_leaves(t: Term) -> int:
    return sum(1 for n in preorder(t) if isinstance(n, Vertex))


def term_size(t: Term) -> int:
    return len(preorder(t))


def replace_nonterminal(t: Term, position: int, rhs: Term) -> Term:
    """Replace the ``position``-th nonterminal occurrence (preorder) by ``rhs``."""
    remaining = [position]

    def _walk(node: Term) -> Term:
        if remaining[0] < 0:
            return node
        if isinstance(node, NonterminalRef):
            remaining[0] -= 1
            return rhs if remaining[0] == -1 else node
        kids = children(node)
        if not kids:
            return node
        return with_children(node, tuple(_walk(k) for k in kids))

    return _walk(t)


def rename_nonterminals(t: Term, names: List[str]) -> Term:
    """Rename occurrences, in preorder, to the given names."""
    queue = list(reversed(names))

    def _walk(node: Term) -> Term:
        if isinstance(node, NonterminalRef):
            return NonterminalRef(queue.pop())
        kids = children(node)
        if not kids:
            return node
        return with_children(node, tuple(_walk(k) for k in kids))

    return _walk(t)


def algebra_of(t: Term) -> Optional[Algebra]:
    """The signature a term commits to, or None if it only uses shared operators."""
    nodes = preorder(t)
    if any(isinstance(n, _VR_ONLY) for n in nodes):
        return Algebra.VR
    if any(isinstance(n, _HR_ONLY) for n in nodes):
        return Algebra.HR
    return None


def mixes_algebras(t: Term) -> bool:
    nodes = preorder(t)
    return any(isinstance(n, _VR_ONLY) for n in nodes) and any(
        isinstance(n, _HR_ONLY) for n in nodes
    )


def compose_all(terms: List[Term]) -> Term:
    """Left-nested composition; ``Empty`` operands are dropped."""
    result: Term = Empty()
    for term in terms:
        if isinstance(term, Empty):
            continue
        result = term if isinstance(result, Empty) else Compose(result, term)
    return result


def render_term(t: Term) -> str:
    if isinstance(t, Vertex):
        return f"vertex[{t.port}]"
    if isinstance(t, Edge):
        return f"edge[{render_label(t.label)}; {t.source} -> {t.target}]"
    if isinstance(t, Union):
        return f"union({render_term(t.left)}, {render_term(t.right)})"
    if isinstance(t, Compose):
        return f"compose({render_term(t.left)}, {render_term(t.right)})"
    if isinstance(t, AddEdge):
        head = f"add_edge[{render_label(t.label)}; {t.source} -> {t.target}]"
        return f"{head}({render_term(t.child)})"
    if isinstance(t, Relab):
        body = ", ".join(f"{src} -> {dst}" for src, dst in t.mapping.pairs)
        return f"relab[{body}]({render_term(t.child)})"
    if isinstance(t, NonterminalRef):
        return t.name
    return "empty"
