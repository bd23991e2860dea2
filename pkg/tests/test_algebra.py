import random

import pytest

from vrhr._enum import Algebra
from vrhr.algebra.evaluate import eval_hr, eval_vr, evaluate
from vrhr.algebra.generate import TermGenerator
from vrhr.algebra.portmap import PortMap
from vrhr.algebra.sorts import infer_sort
from vrhr.algebra.terms import (
    AddEdge,
    Compose,
    Edge,
    Empty,
    NonterminalRef,
    Relab,
    Union,
    Vertex,
    algebra_of,
    compose_all,
    render_term,
    term_size,
    vertex_leaves,
)
from vrhr.algebra.validate import validate_term
from vrhr.errors import TermError
from vrhr.frontend.parser import parse_term
from vrhr.graph.alphabet import VertexLabelAlphabet
from vrhr.graph.labeled import is_hr_graph

from conftest import SEND_RECV, k_nm

OBSERVABLE = {"Once": ("send",), "Loop": ("recv",)}


@pytest.fixture
def twin_alphabet() -> VertexLabelAlphabet:
    return VertexLabelAlphabet.build(
        {"Once", "Loop"}, {"pi": "Once", "pi3": "Once", "pi2": "Loop"}
    )


def test_unforgotten_k43(alphabet, k43):
    g = eval_vr(k43, alphabet)
    assert len(g) == 7
    assert len(g.edges) == 12
    senders = g.vertices_with("pi")
    receivers = g.vertices_with("pi2")
    assert len(senders) == 4 and len(receivers) == 3
    assert all((s, SEND_RECV, r) in g.edges for s in senders for r in receivers)


def test_forgetting_ports(alphabet):
    g = eval_vr(k_nm(2, 1), alphabet)
    assert g.sort(alphabet.ports) == frozenset()
    assert sorted(sorted(ls) for ls in g.labels) == [["Loop"], ["Once"], ["Once"]]


def test_vr_relabeling_merges_classes(twin_alphabet):
    merge = PortMap.of({"pi3": "pi", "pi": "pi", "pi2": "pi2"})
    body = Union(Union(Vertex("pi"), Vertex("pi3")), Vertex("pi2"))
    t = AddEdge(SEND_RECV, "pi", "pi2", Relab(merge, body))
    assert len(eval_vr(t, twin_alphabet).edges) == 2


def test_union_adds_no_edges(alphabet):
    g = eval_vr(Union(Vertex("pi"), Vertex("pi2")), alphabet)
    assert len(g) == 2 and not g.edges


def test_dangling_add_edge_is_a_no_op(alphabet):
    t = AddEdge(SEND_RECV, "pi", "pi2", Vertex("pi"))
    assert eval_vr(t, alphabet) == eval_vr(Vertex("pi"), alphabet)
    report = validate_term(t, alphabet)
    assert report.ok
    assert "dangling-port" in report.codes()


def test_hr_composition_fuses_sources(alphabet):
    edge = Edge(SEND_RECV, "pi", "pi2")
    g = eval_hr(Compose(Vertex("pi"), edge), alphabet)
    assert len(g) == 2
    assert g.edges == ((0, SEND_RECV, 1),)
    assert eval_hr(Compose(edge, edge), alphabet) == eval_hr(edge, alphabet)
    assert is_hr_graph(g, alphabet)


def test_hr_relabeling_must_be_injective(twin_alphabet):
    t = Relab(PortMap.of({"pi": "pi", "pi3": "pi"}), Compose(Vertex("pi"), Vertex("pi3")))
    with pytest.raises(TermError):
        eval_hr(t, twin_alphabet)
    assert "not-injective" in validate_term(t, twin_alphabet, Algebra.HR).codes()


@pytest.mark.parametrize(
    "term, algebra",
    [
        (NonterminalRef("S"), Algebra.VR),
        (AddEdge(SEND_RECV, "pi", "pi", Vertex("pi")), Algebra.VR),
        (Union(Vertex("pi"), Vertex("pi2")), Algebra.HR),
        (Compose(Vertex("pi"), Vertex("pi2")), Algebra.VR),
        (Vertex("nowhere"), Algebra.VR),
        (Relab(PortMap.of({"pi": "pi2"}), Vertex("pi")), Algebra.VR),
    ],
)
def test_evaluation_errors(alphabet, term, algebra):
    with pytest.raises(TermError):
        evaluate(term, alphabet, algebra)


def test_validation_codes(alphabet):
    mixed = Union(Vertex("pi"), Edge(SEND_RECV, "pi", "pi2"))
    assert "mixed-algebra" in validate_term(mixed, alphabet).codes()
    untyped = Relab(PortMap.of({"pi": "pi2"}), Vertex("pi"))
    assert "untyped" in validate_term(untyped, alphabet).codes()
    assert "unknown-port" in validate_term(Vertex("nowhere"), alphabet).codes()


def test_sorts(alphabet, k43):
    assert infer_sort(k43, alphabet) == {"pi", "pi2"}
    assert infer_sort(k_nm(1, 1), alphabet) == frozenset()
    assert infer_sort(NonterminalRef("K"), ref_sorts={"K": frozenset({"pi"})}) == {"pi"}
    with pytest.raises(TermError):
        infer_sort(NonterminalRef("K"))


def test_term_measures(k43):
    assert vertex_leaves(k43) == 7
    assert term_size(k43) == 7 + 6 + 1
    assert algebra_of(k43) is Algebra.VR
    assert algebra_of(Vertex("pi")) is None


def test_compose_all_drops_empty():
    assert compose_all([]) == Empty()
    assert compose_all([Empty(), Vertex("pi"), Empty()]) == Vertex("pi")
    assert compose_all([Vertex("pi"), Vertex("pi2")]) == Compose(Vertex("pi"), Vertex("pi2"))


def test_rendered_term_parses_back(k43):
    assert parse_term(render_term(k43)) == k43
    forgotten = k_nm(2, 2)
    assert render_term(forgotten).startswith("relab[](add_edge[(send,recv); pi -> pi2](")


def test_generator_is_seeded(alphabet):
    first = TermGenerator(alphabet, OBSERVABLE, random.Random(7), max_vertices=5)
    second = TermGenerator(alphabet, OBSERVABLE, random.Random(7), max_vertices=5)
    assert [first.term() for _ in range(10)] == [second.term() for _ in range(10)]


def test_generated_terms_are_well_formed(alphabet):
    generator = TermGenerator(alphabet, OBSERVABLE, random.Random(3), max_vertices=5)
    for _ in range(50):
        t = generator.term()
        assert validate_term(t, alphabet).ok, render_term(t)
        g = eval_vr(t, alphabet)
        assert 1 <= len(g) <= 5
        assert all(isinstance(lb, tuple) for _, lb, _ in g.edges)
