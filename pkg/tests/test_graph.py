import pytest

from vrhr.algebra.evaluate import eval_vr
from vrhr.errors import GraphError, ResourceLimitError
from vrhr.graph.alphabet import EpsilonAlphabet, VertexLabelAlphabet
from vrhr.graph.dot import graph_to_dot
from vrhr.graph.epsilon import expand, expand_with_origin, validate_epsilon_graph
from vrhr.graph.isomorphism import fingerprint, isomorphic
from vrhr.graph.labeled import LabeledGraph, is_hr_graph, validate_graph

from vrhr.translate import names
from vrhr.translate.alphabet import drop_ports, expanded_alphabet

from conftest import SEND_RECV, k_nm

EPS = EpsilonAlphabet({"e": "e.back"})


def _chain() -> LabeledGraph:
    # a -e-> b -e-> c, and c -d-> c2
    return LabeledGraph(
        [{"a"}, {"b"}, {"c"}, {"c2"}],
        [(0, "e", 1), (1, "e.back", 0), (1, "e", 2), (2, "e.back", 1), (2, "d", 3)],
    )


def test_single_vertex_is_valid(alphabet):
    assert validate_graph(LabeledGraph.single({"pi", "Once"}), alphabet).ok


@pytest.mark.parametrize(
    "graph, code",
    [
        (LabeledGraph([{"Once"}], [(0, "d", 0)]), "self-loop"),
        (LabeledGraph([{"pi", "pi2", "Once", "Loop"}]), "two-ports"),
        (LabeledGraph([{"pi"}]), "missing-type"),
        (LabeledGraph([{"Once"}], [(0, "d", 3)]), "dangling-edge"),
    ],
)
def test_invalid_graphs(alphabet, graph, code):
    report = validate_graph(graph, alphabet)
    assert not report.ok
    assert code in report.codes()


def test_hr_domain(alphabet, k43):
    assert is_hr_graph(LabeledGraph.empty(), alphabet)
    assert is_hr_graph(LabeledGraph([{"pi", "Once"}, {"pi2", "Loop"}]), alphabet)
    # the four senders all carry pi
    assert not is_hr_graph(eval_vr(k43, alphabet), alphabet)


def test_alphabet_validation():
    bad = VertexLabelAlphabet.build({"P", "q"}, {"q": "P", "r": "Missing"})
    assert set(bad.validate().codes()) == {"overlap", "unknown-type"}


def test_valid_epsilon_forest():
    assert validate_epsilon_graph(_chain(), EPS).ok


def test_unpaired_routing_edge():
    g = LabeledGraph([{"a"}, {"b"}], [(0, "e", 1)])
    assert "unpaired" in validate_epsilon_graph(g, EPS).codes()


def test_two_parents_for_one_label():
    g = LabeledGraph(
        [{"a"}, {"b"}, {"c"}],
        [(0, "e", 1), (1, "e.back", 0), (0, "e", 2), (2, "e.back", 0)],
    )
    assert "non-unique-parent" in validate_epsilon_graph(g, EPS).codes()


def test_routing_cycle():
    g = LabeledGraph(
        [{"a"}, {"b"}],
        [(0, "e", 1), (1, "e.back", 0), (1, "e", 0), (0, "e.back", 1)],
    )
    report = validate_epsilon_graph(g, EPS)
    assert "cycle" in report.codes()
    with pytest.raises(GraphError):
        expand(g, EPS)


def test_expand_closes_routing_paths():
    expanded, survivors = expand_with_origin(_chain(), EPS)
    assert survivors == (0, 3)
    assert expanded == LabeledGraph([{"a"}, {"c2"}], [(0, "d", 1)])


def test_expand_without_routing_is_identity(alphabet, k43):
    g = eval_vr(k43, alphabet)
    assert expand(g, EPS) == g


def test_expand_is_idempotent():
    once = expand(_chain(), EPS)
    assert expand(once, EPS) == once


def test_expand_keeps_edges_between_survivors():
    g = LabeledGraph([{"a"}, {"b"}], [(0, "d", 1)])
    assert expand(g, EPS).edges == ((0, "d", 1),)


def test_isomorphic_to_renamed_copy(alphabet, k43):
    g = eval_vr(k43, alphabet)
    order = list(reversed(g.vertices))
    renamed = g.induced(order)
    result = isomorphic(g, renamed)
    assert result
    for s, lb, t in g.edges:
        assert (result.mapping[s], lb, result.mapping[t]) in renamed.edges


def test_bipartite_sides_matter(alphabet):
    k43 = eval_vr(k_nm(4, 3), alphabet)
    k34 = eval_vr(k_nm(3, 4), alphabet)
    assert fingerprint(k43) != fingerprint(k34)
    assert not isomorphic(k43, k34)


def test_empty_graphs_are_isomorphic():
    assert isomorphic(LabeledGraph.empty(), LabeledGraph.empty())


def test_isomorphism_cap(alphabet, k43):
    g = eval_vr(k43, alphabet)
    with pytest.raises(ResourceLimitError):
        isomorphic(g, g, cap=3)


def test_dot_dashes_routing_edges():
    source = graph_to_dot(_chain(), EPS)
    assert "style=dashed" in source
    assert 'label=d style=solid' in source


def _k43_epsilon_graph() -> LabeledGraph:
    """Four senders and three receivers, each behind its own router, joined by one shared router per side."""
    attempt = {t: (names.attempt(t), names.RECV) for t in ("send", "recv")}
    commit = {t: (names.RESET, names.commit(t)) for t in ("send", "recv")}
    fwd, ack = (names.FWD, names.RECV), (names.RESET, names.ACK)

    labels = (
        [{names.half_type("Once")}] * 4
        + [{names.half_type("Loop")}] * 3
        + [{names.router_type("send")}] * 4
        + [{names.router_type("recv")}] * 3
        + [{names.router_type("send")}, {names.router_type("recv")}]
    )
    shared = {"send": 14, "recv": 15}
    edges = []
    for half in range(7):
        t = "send" if half < 4 else "recv"
        own = half + 7
        edges += [(half, attempt[t], own), (own, commit[t], half)]
        edges += [(own, fwd, shared[t]), (shared[t], ack, own)]
    edges.append((shared["send"], SEND_RECV, shared["recv"]))
    return LabeledGraph(labels, edges)


def test_hand_built_epsilon_graph_expands_to_k43(types, alphabet, k43):
    expanded = expanded_alphabet(types, alphabet)
    graph = _k43_epsilon_graph()
    assert validate_epsilon_graph(graph, expanded.epsilon).ok

    collapsed, survivors = expand_with_origin(graph, expanded.epsilon)
    assert survivors == tuple(range(7))
    assert len(collapsed.edges) == 12
    assert all(lb == SEND_RECV for _, lb, _ in collapsed.edges)
    assert isomorphic(drop_ports(eval_vr(k43, alphabet), alphabet), expanded.restore(collapsed))
