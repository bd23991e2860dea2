import pytest

from vrhr.errors import NotEnabledError, UnknownTransitionError
from vrhr.petri.dot import net_to_dot
from vrhr.petri.net import Marking, Net, PetriNet, enabled, fire, reachable_markings, replay
from vrhr.petri.process import ProcessType, validate_process_type


@pytest.fixture
def counter() -> PetriNet:
    # two tokens cycling through a and b
    arcs = [("a", "go"), ("go", "b"), ("b", "back"), ("back", "a")]
    net = Net.build(["a", "b"], ["go", "back"], arcs)
    return PetriNet(net, Marking({"a": 2}))


def test_process_type_accessors(loop):
    assert loop.places == ("free", "busy")
    assert loop.transitions == ("recv", "handle")
    assert loop.initial_place == "free"
    assert loop.internal == {"handle"}
    assert loop.local("recv") == ("recv", "free", "busy")
    assert loop.transitions_from("busy") == ["handle"]
    assert loop.transitions_into("busy") == ["recv"]
    assert loop.ordered_transitions() == [
        (("recv", "free", "busy"), True),
        (("handle", "busy", "free"), False),
    ]
    assert validate_process_type(loop).ok


def test_invalid_process_types():
    bad_init = ProcessType.build("Bad", ["a", "b"], "z", observable=[("t", "a", "b")])
    assert "initial" in validate_process_type(bad_init).codes()
    clash = ProcessType.build("Clash", ["a", "t"], "a", observable=[("t", "a", "t")])
    assert "overlap" in validate_process_type(clash).codes()


def test_marking_ignores_empty_places():
    assert Marking({"a": 1, "b": 0}) == Marking({"a": 1})
    assert Marking({"a": 2})["b"] == 0
    assert Marking({"a": 2, "b": 1}).total() == 3


def test_fire_and_replay(counter):
    assert enabled(counter, counter.initial, "go")
    assert not enabled(counter, counter.initial, "back")
    after = fire(counter, counter.initial, "go")
    assert after == Marking({"a": 1, "b": 1})
    assert replay(counter, ["go", "go", "back"]) == Marking({"a": 1, "b": 1})
    with pytest.raises(NotEnabledError) as info:
        replay(counter, ["go", "back", "back"])
    assert info.value.index == 2
    with pytest.raises(UnknownTransitionError):
        fire(counter, counter.initial, "jump")


def test_reachable_markings(counter):
    markings, exhaustive = reachable_markings(counter, max_states=100)
    assert exhaustive
    assert markings == {Marking({"a": 2}), Marking({"a": 1, "b": 1}), Marking({"b": 2})}
    cut, exhaustive = reachable_markings(counter, max_states=2)
    assert not exhaustive
    assert len(cut) == 2


def test_process_type_net_dot(loop):
    source = net_to_dot(loop.net, name="Loop")
    assert "shape=circle" in source
    assert "shape=box" in source
    assert source.count("->") == 4
