"""Names generated by the VR to HR translation.

Input names never contain a dot, so every generated name below is fresh.
"""

from typing import Final, Iterable, List

HALF_SUFFIX: Final = "half"
ROUTER_SUFFIX: Final = "router"

RECV: Final = "route.recv"
FWD: Final = "route.fwd"
ACK: Final = "route.ack"
RESET: Final = "route.reset"

IDLE: Final = "idle"
ACTIVE: Final = "active"
WAIT: Final = "wait"
REPLY: Final = "reply"


def half_type(process_type: str) -> str:
    return f"{process_type}.{HALF_SUFFIX}"


def router_type(transition: str) -> str:
    return f"{transition}.{ROUTER_SUFFIX}"


def half_place(transition: str) -> str:
    return f"{transition}.bar"


def attempt(transition: str) -> str:
    return f"{transition}.try"


def commit(transition: str) -> str:
    return f"{transition}.commit"


def router_place(transition: str, state: str) -> str:
    return f"{transition}.{state}"


def half_port(port: str) -> str:
    return f"{port}.{HALF_SUFFIX}"


def representative(port: str, transition: str) -> str:
    return f"{port}.{transition}"


def overlined(port: str, transition: str) -> str:
    return f"{port}.{transition}.bar"


def dotted(names: Iterable[str]) -> List[str]:
    return [n for n in names if "." in n]
