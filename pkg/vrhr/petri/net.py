import logging
from collections import deque
from dataclasses import dataclass, field
from typing import (
    Dict,
    Final,
    Hashable,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from vrhr.errors import NotEnabledError, UnknownTransitionError

_LOGGER: Final = logging.getLogger(__name__)

Node = Hashable


class Marking:
    """Token counts; places without tokens are not stored."""

    __slots__ = ("_tokens", "_hash")

    def __init__(self, tokens: Optional[Mapping[Node, int]] = None) -> None:
        self._tokens: Dict[Node, int] = {q: n for q, n in (tokens or {}).items() if n}
        self._hash: Optional[int] = None

    def __getitem__(self, place: Node) -> int:
        return self._tokens.get(place, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Marking):
            return NotImplemented
        return self._tokens == other._tokens

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._tokens.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{q!r}: {n}" for q, n in sorted(self._tokens.items(), key=repr))
        return f"Marking({{{body}}})"

    def items(self) -> Iterator[Tuple[Node, int]]:
        return iter(self._tokens.items())

    def marked(self) -> List[Node]:
        return list(self._tokens)

    def total(self) -> int:
        return sum(self._tokens.values())

    def to_dict(self) -> Dict[Node, int]:
        return dict(self._tokens)


@dataclass(frozen=True)
class Net:
    """Places, transitions and the weighted incidence relation."""

    places: Tuple[Node, ...]
    transitions: Tuple[Node, ...]
    weights: Mapping[Tuple[Node, Node], int] = field(default_factory=dict)
    _pre: Dict[Node, Dict[Node, int]] = field(init=False, repr=False, compare=False)
    _post: Dict[Node, Dict[Node, int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        pre: Dict[Node, Dict[Node, int]] = {t: {} for t in self.transitions}
        post: Dict[Node, Dict[Node, int]] = {t: {} for t in self.transitions}
        for (x, y), w in self.weights.items():
            if not w:
                continue
            if x in pre:
                post[x][y] = w
            elif y in pre:
                pre[y][x] = w
        object.__setattr__(self, "_pre", pre)
        object.__setattr__(self, "_post", post)

    @classmethod
    def build(
        cls,
        places: Iterable[Node],
        transitions: Iterable[Node],
        arcs: Iterable[Tuple[Node, Node]],
    ) -> "Net":
        weights: Dict[Tuple[Node, Node], int] = {}
        for arc in arcs:
            weights[arc] = weights.get(arc, 0) + 1
        return cls(tuple(places), tuple(transitions), weights)

    def pre(self, t: Node) -> Dict[Node, int]:
        if t not in self._pre:
            raise UnknownTransitionError(t)
        return self._pre[t]

    def post(self, t: Node) -> Dict[Node, int]:
        if t not in self._post:
            raise UnknownTransitionError(t)
        return self._post[t]


@dataclass(frozen=True)
class PetriNet:
    net: Net
    initial: Marking


def enabled(n: PetriNet, m: Marking, t: Node) -> bool:
    return all(m[q] >= w for q, w in n.net.pre(t).items())


def fire(n: PetriNet, m: Marking, t: Node) -> Marking:
    if not enabled(n, m, t):
        raise NotEnabledError(t)
    tokens = m.to_dict()
    for q, w in n.net.pre(t).items():
        tokens[q] = tokens.get(q, 0) - w
    for q, w in n.net.post(t).items():
        tokens[q] = tokens.get(q, 0) + w
    return Marking(tokens)


def replay(n: PetriNet, seq: Sequence[Node], start: Optional[Marking] = None) -> Marking:
    marking = n.initial if start is None else start
    for index, t in enumerate(seq):
        if not enabled(n, marking, t):
            raise NotEnabledError(t, index)
        marking = fire(n, marking, t)
    return marking


def reachable_markings(n: PetriNet, max_states: int) -> Tuple[Set[Marking], bool]:
    """Plain breadth-first search over sparse markings.

    Returns the markings found and whether the search was exhaustive.
    """
    visited = {n.initial}
    queue = deque([n.initial])
    while queue:
        marking = queue.popleft()
        for t in n.net.transitions:
            if not enabled(n, marking, t):
                continue
            successor = fire(n, marking, t)
            if successor in visited:
                continue
            if len(visited) >= max_states:
                _LOGGER.warning("stopped after %d markings", len(visited))
                return visited, False
            visited.add(successor)
            queue.append(successor)
    return visited, True
