from typing import Dict

import pytest

from vrhr.algebra.portmap import PortMap
from vrhr.algebra.terms import AddEdge, Relab, Term, Union, Vertex
from vrhr.config import get_bundled_spec
from vrhr.frontend.parser import load_spec
from vrhr.frontend.spec import SpecFile
from vrhr.graph.alphabet import VertexLabelAlphabet
from vrhr.petri.process import ProcessType

SEND_RECV = ("send", "recv")


def make_once() -> ProcessType:
    return ProcessType.build("Once", ["on", "off"], "on", observable=[("send", "on", "off")])


def make_loop() -> ProcessType:
    return ProcessType.build(
        "Loop",
        ["free", "busy"],
        "free",
        observable=[("recv", "free", "busy")],
        internal=[("handle", "busy", "free")],
    )


def make_updown() -> ProcessType:
    return ProcessType.build(
        "P", ["lo", "hi"], "lo", observable=[("up", "lo", "hi"), ("dn", "hi", "lo")]
    )


def union_all(*terms: Term) -> Term:
    result = terms[0]
    for t in terms[1:]:
        result = Union(result, t)
    return result


def k_nm(n: int, m: int, forget: bool = True) -> Term:
    """Complete bipartite term: ``n`` senders on ``pi``, ``m`` receivers on ``pi2``."""
    leaves = [Vertex("pi")] * n + [Vertex("pi2")] * m
    body = AddEdge(SEND_RECV, "pi", "pi2", union_all(*leaves))
    return Relab(PortMap.empty(), body) if forget else body


@pytest.fixture
def once() -> ProcessType:
    return make_once()


@pytest.fixture
def loop() -> ProcessType:
    return make_loop()


@pytest.fixture
def updown() -> ProcessType:
    return make_updown()


@pytest.fixture
def types() -> Dict[str, ProcessType]:
    return {"Once": make_once(), "Loop": make_loop()}


@pytest.fixture
def alphabet() -> VertexLabelAlphabet:
    return VertexLabelAlphabet.build({"Once", "Loop"}, {"pi": "Once", "pi2": "Loop"})


@pytest.fixture
def labeling() -> Dict[str, str]:
    return {"on": "x", "off": "y"}


@pytest.fixture
def k43() -> Term:
    return k_nm(4, 3, forget=False)


@pytest.fixture(scope="session")
def k_nm_spec() -> SpecFile:
    return load_spec(get_bundled_spec("k_nm"))
