import pytest

from vrhr._enum import Algebra, EdgeKind
from vrhr.algebra.evaluate import eval_hr, eval_vr
from vrhr.algebra.sorts import infer_sort
from vrhr.algebra.terms import AddEdge, Union, Vertex
from vrhr.errors import TranslationError
from vrhr.frontend.parser import parse_spec
from vrhr.frontend.printer import print_spec
from vrhr.graph.alphabet import VertexLabelAlphabet
from vrhr.graph.epsilon import expand, validate_epsilon_graph
from vrhr.graph.isomorphism import isomorphic
from vrhr.graph.labeled import is_hr_graph
from vrhr.translate.alphabet import drop_ports, expanded_alphabet
from vrhr.translate.expand import expand_term
from vrhr.translate.halve import halve, make_router
from vrhr.translate.labeling import lift_variable_labeling
from vrhr.translate.spec import translate_spec
from vrhr.translate.trichotomy import check_edge_trichotomy, classify_edges

from conftest import k_nm


@pytest.fixture
def expanded(types, alphabet):
    return expanded_alphabet(types, alphabet)


def test_halving(once, loop):
    half = halve(once)
    assert half.name == "Once.half"
    assert half.places == ("on", "off", "send.bar")
    assert half.ordered_transitions() == [
        (("send.try", "on", "send.bar"), True),
        (("send.commit", "send.bar", "off"), True),
    ]
    assert halve(loop).internal == {"handle"}


def test_router_type():
    router = make_router("send")
    assert router.name == "send.router"
    assert router.places == ("send.idle", "send.active", "send.wait", "send.reply")
    assert router.initial_place == "send.idle"
    assert router.observable == {"route.recv", "route.fwd", "send", "route.ack", "route.reset"}
    assert router.transitions_from("send.active") == ["route.fwd", "send"]


def test_expanded_alphabet(expanded):
    assert set(expanded.types) == {"Once.half", "Loop.half", "send.router", "recv.router"}
    assert expanded.alphabet.port_type == {
        "pi.half": "Once.half",
        "pi.send": "send.router",
        "pi.send.bar": "send.router",
        "pi2.half": "Loop.half",
        "pi2.recv": "recv.router",
        "pi2.recv.bar": "recv.router",
    }
    assert expanded.epsilon.pair[("send.try", "route.recv")] == ("route.reset", "send.commit")
    assert expanded.epsilon.pair[("route.fwd", "route.recv")] == ("route.reset", "route.ack")
    assert expanded.router_transition("recv.router") == "recv"
    assert expanded.original_type("Loop.half") == "Loop"
    assert expanded.owner_of("send").name == "Once"


def test_dotted_input_names_are_rejected(types):
    dotted = VertexLabelAlphabet.build({"Once", "Loop"}, {"p.q": "Once"})
    with pytest.raises(TranslationError):
        expanded_alphabet(types, dotted)


def test_single_vertex_expansion(expanded):
    theta = expand_term(Vertex("pi"), expanded)
    g = eval_hr(theta, expanded.alphabet)
    assert len(g) == 2
    assert g.sort(expanded.alphabet.ports) == {"pi.send"}
    assert infer_sort(theta, expanded.alphabet) == {"pi.send"}
    half = g.vertices_with("Once.half")[0]
    router = g.vertices_with("send.router")[0]
    assert classify_edges(g, half, router, expanded) is EdgeKind.HALF_TO_ROUTER


@pytest.mark.parametrize("n, m", [(1, 1), (2, 1), (4, 3)])
def test_expansion_restores_the_source(expanded, alphabet, n, m):
    for forget in (False, True):
        theta = k_nm(n, m, forget)
        translated = eval_hr(expand_term(theta, expanded), expanded.alphabet)
        assert is_hr_graph(translated, expanded.alphabet)
        assert validate_epsilon_graph(translated, expanded.epsilon).ok
        assert check_edge_trichotomy(translated, expanded).ok
        restored = expanded.restore(expand(translated, expanded.epsilon))
        assert isomorphic(restored, drop_ports(eval_vr(theta, alphabet), alphabet))


def test_k43_translation_size(expanded, k43):
    translated = eval_hr(expand_term(k43, expanded), expanded.alphabet)
    # each vertex keeps a half and gains one router per observable transition
    assert len(translated.vertices_with("Once.half")) == 4
    assert len(translated.vertices_with("Loop.half")) == 3
    assert len(expand(translated, expanded.epsilon)) == 7


def test_non_pair_label_is_rejected(expanded):
    theta = AddEdge("plain", "pi", "pi2", Union(Vertex("pi"), Vertex("pi2")))
    with pytest.raises(TranslationError):
        expand_term(theta, expanded)


def test_lifted_variable_labeling(expanded, labeling):
    assert lift_variable_labeling(labeling, expanded) == {
        "on": "x",
        "off": "y",
        "send.active": "x",
        "send.reply": "y",
    }


def test_spec_translation_round_trips(k_nm_spec):
    translated = translate_spec(k_nm_spec)
    assert translated.grammars["Gamma"].algebra is Algebra.HR
    assert translated.analyses["main"] == k_nm_spec.analyses["main"]
    assert translated.labelings["L"]["send.reply"] == "y"
    assert parse_spec(print_spec(translated)) == translated


def test_hr_spec_is_not_translated(k_nm_spec):
    with pytest.raises(TranslationError):
        translate_spec(translate_spec(k_nm_spec))
