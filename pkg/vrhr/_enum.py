from enum import Enum
from typing import Final, Optional

_EXIT_POSITIVE: Final = 0
_EXIT_NEGATIVE: Final = 1
EXIT_USAGE: Final = 2
_EXIT_TRUNCATED: Final = 3


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


class Algebra(Enum):
    VR = "vr"
    HR = "hr"

    @classmethod
    def from_keyword(cls, keyword: str) -> "Algebra":
        return cls(keyword.strip().lower())


class ExplorationStatus(Enum):
    EXHAUSTIVE = "exhaustive"
    TRUNCATED = "truncated"
    STOPPED = "stopped"


class EnumerationStatus(Enum):
    """How a bounded language enumeration ended.

    ``BOUNDED`` means the step or vertex bound cut some derivations; every
    graph inside the bounds was still produced. ``TRUNCATED`` means the
    ``max_graphs`` cap stopped the enumeration early.
    """

    RUNNING = "running"
    EXHAUSTED = "exhausted"
    BOUNDED = "bounded"
    TRUNCATED = "truncated"


class ReachStatus(Enum):
    SAT = "sat"
    UNSAT = "unsat"
    TRUNCATED = "truncated"


class PrpStatus(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    TRUNCATED = "truncated"

    @property
    def exit_code(self) -> int:
        mapping = {
            PrpStatus.POSITIVE: _EXIT_POSITIVE,
            PrpStatus.NEGATIVE: _EXIT_NEGATIVE,
            PrpStatus.TRUNCATED: _EXIT_TRUNCATED,
        }
        return mapping[self]


class CheckStatus(Enum):
    PASSED = "passed"
    FAILED = "failed"
    TRUNCATED = "truncated"

    @property
    def exit_code(self) -> int:
        mapping = {
            CheckStatus.PASSED: _EXIT_POSITIVE,
            CheckStatus.FAILED: _EXIT_NEGATIVE,
            CheckStatus.TRUNCATED: _EXIT_TRUNCATED,
        }
        return mapping[self]

    @classmethod
    def worst(cls, *statuses: "CheckStatus") -> "CheckStatus":
        if cls.FAILED in statuses:
            return cls.FAILED
        if cls.TRUNCATED in statuses:
            return cls.TRUNCATED
        return cls.PASSED


class EdgeKind(Enum):
    """Shape of the edge set between two vertices of a translated system."""

    HALF_TO_ROUTER = "half_to_router"
    ROUTER_TO_HALF = "router_to_half"
    RENDEZVOUS = "rendezvous"
    ROUTER_FORWARD = "router_forward"
    ROUTER_BACKWARD = "router_backward"


class RelationCondition(Enum):
    """Which clause relates a source token to the translated marking."""

    DIRECT = "i"
    ROUTING = "ii"
    REPLYING = "iii"

    @classmethod
    def from_tag(cls, tag: str) -> Optional["RelationCondition"]:
        try:
            return cls(tag)
        except ValueError:
            return None


