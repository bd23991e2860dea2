from dataclasses import dataclass
from typing import AbstractSet, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from vrhr.graph.alphabet import VertexLabelAlphabet


@dataclass(frozen=True, slots=True)
class PortMap:
    """Partial map on ports, stored as sorted pairs so it hashes."""

    pairs: Tuple[Tuple[str, str], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[str, str]) -> "PortMap":
        return cls(tuple(sorted(mapping.items())))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, str]]) -> "PortMap":
        return cls.of(dict(pairs))

    @classmethod
    def identity(cls, ports: Iterable[str]) -> "PortMap":
        return cls.of({p: p for p in ports})

    @classmethod
    def empty(cls) -> "PortMap":
        return cls()

    def __len__(self) -> int:
        return len(self.pairs)

    def get(self, port: str) -> Optional[str]:
        return self.as_dict().get(port)

    def as_dict(self) -> Dict[str, str]:
        return dict(self.pairs)

    @property
    def domain(self) -> FrozenSet[str]:
        return frozenset(src for src, _ in self.pairs)

    @property
    def image(self) -> FrozenSet[str]:
        return frozenset(dst for _, dst in self.pairs)

    def is_injective(self) -> bool:
        return len(self.image) == len(self.pairs)

    def restricted(self, ports: AbstractSet[str]) -> "PortMap":
        return PortMap(tuple(p for p in self.pairs if p[0] in ports))

    def apply(self, ports: AbstractSet[str]) -> FrozenSet[str]:
        mapping = self.as_dict()
        return frozenset(mapping[p] for p in ports if p in mapping)

    def untyped_pairs(self, alphabet: VertexLabelAlphabet) -> List[Tuple[str, str]]:
        return [
            (src, dst)
            for src, dst in self.pairs
            if alphabet.type_of(src) is None
            or alphabet.type_of(src) != alphabet.type_of(dst)
        ]
