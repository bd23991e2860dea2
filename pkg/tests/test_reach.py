import json

import pytest

from vrhr._enum import ExplorationStatus, PrpStatus, ReachStatus
from vrhr.algebra.evaluate import eval_vr
from vrhr.behavior.builder import EdgeTransition, InternalTransition, build_behavior
from vrhr.behavior.labeling import lift_labeling
from vrhr.behavior.system import system_from_graph
from vrhr.config import VERDICT_SCHEMA, Bounds
from vrhr.errors import MissingVariableError
from vrhr.frontend.parser import parse_formula
from vrhr.frontend.report import prp_verdict
from vrhr.reach.check import check_reachability, state_valuation, valuation_of
from vrhr.reach.explore import explore
from vrhr.reach.formula import Add, Compare, Const, Var, eval_formula, free_variables, render_formula
from vrhr.reach.prp import PrpInstance, replay_witness, solve_prp
from vrhr.translate.spec import translate_spec

from conftest import SEND_RECV, k_nm

ALPHA = "y >= x + 2"


def _setup(n, m, types, alphabet, labeling):
    behavior = build_behavior(system_from_graph(eval_vr(k_nm(n, m), alphabet), alphabet), types)
    return behavior, lift_labeling(labeling, behavior)


def _instance(spec, formula=None, bounds=None) -> PrpInstance:
    analysis = spec.analysis("main")
    return PrpInstance(
        grammar=spec.grammars[analysis.grammar],
        alphabet=spec.alphabet,
        types=spec.processes,
        labeling=spec.labelings[analysis.labeling],
        formula=parse_formula(formula) if formula else spec.formulas[analysis.formula],
        bounds=bounds or analysis.bounds(),
        variables=spec.variables,
    )


def test_formula_evaluation():
    alpha = parse_formula(ALPHA)
    assert alpha == Compare(">=", Var("y"), Add(Var("x"), Const(2)))
    assert eval_formula(alpha, {"x": 1, "y": 3})
    assert not eval_formula(alpha, {"x": 1, "y": 2})
    assert free_variables(alpha) == {"x", "y"}
    with pytest.raises(MissingVariableError):
        eval_formula(alpha, {"x": 1})


def test_unknown_comparison():
    with pytest.raises(ValueError):
        Compare("~", Var("x"), Const(1))


@pytest.mark.parametrize(
    "text",
    [
        "(a + b) * c = 2 and not (x < 1 or y > 2)",
        "a = 0 or b != 1 and c <= 2",
        "not not x >= 2 * (y + 1)",
        "(a = 1 or b = 1) and false",
    ],
)
def test_rendered_formula_parses_back(text):
    formula = parse_formula(text)
    assert parse_formula(render_formula(formula)) == formula


def test_exploration_of_k43(types, alphabet):
    behavior, _ = _setup(4, 3, types, alphabet, {})
    result = explore(behavior, max_states=1000)
    assert result.status is ExplorationStatus.EXHAUSTIVE
    assert len(result) == 99
    deepest = max(range(len(result)), key=result.depth.__getitem__)
    path = result.path_to(deepest)
    assert len(path) == result.depth[deepest]
    assert behavior.replay(path) == result.states[deepest]


def test_exploration_bound(types, alphabet):
    behavior, _ = _setup(4, 3, types, alphabet, {})
    result = explore(behavior, max_states=10)
    assert result.status is ExplorationStatus.TRUNCATED
    assert len(result) == 10


def test_k11_has_three_states(types, alphabet):
    behavior, _ = _setup(1, 1, types, alphabet, {})
    assert len(explore(behavior, max_states=100)) == 3


def test_valuations_agree(types, alphabet, labeling):
    behavior, lifted = _setup(2, 1, types, alphabet, labeling)
    state = behavior.replay([EdgeTransition(0, SEND_RECV, 2)])
    expected = {"x": 1, "y": 1}
    assert state_valuation(state, lifted) == expected
    assert valuation_of(behavior.marking_of(state), lifted) == expected
    assert state_valuation(state, lifted, ["z"]) == {**expected, "z": 0}


def test_reachable_in_k43(types, alphabet, labeling):
    behavior, lifted = _setup(4, 3, types, alphabet, labeling)
    result = check_reachability(behavior, lifted, parse_formula(ALPHA), max_states=1000)
    assert result.sat
    assert len(result.firing) == 3
    assert result.valuation == {"x": 1, "y": 3}
    assert behavior.replay(result.firing) == result.state


def test_unreachable_in_k11(types, alphabet, labeling):
    behavior, lifted = _setup(1, 1, types, alphabet, labeling)
    result = check_reachability(behavior, lifted, parse_formula(ALPHA), max_states=1000)
    assert result.status is ReachStatus.UNSAT
    assert result.states_explored == 3


def test_state_bound_gives_truncated(types, alphabet, labeling):
    behavior, lifted = _setup(4, 3, types, alphabet, labeling)
    result = check_reachability(behavior, lifted, parse_formula("y >= 9"), max_states=5)
    assert result.status is ReachStatus.TRUNCATED


def test_prp_positive_on_k_nm(k_nm_spec):
    result = solve_prp(_instance(k_nm_spec))
    assert result.status is PrpStatus.POSITIVE
    witness = result.witness
    assert sorted(witness.system.proc) == ["Loop", "Once", "Once"]
    assert [type(t) for t in witness.firing] == [EdgeTransition, InternalTransition, EdgeTransition]
    assert witness.valuation == {"x": 0, "y": 2}
    assert len(witness.derivation) <= 6


def test_prp_negative_up_to_the_bound(k_nm_spec):
    inst = _instance(k_nm_spec, "y >= x + 10", Bounds(max_vertices=5))
    result = solve_prp(inst)
    assert result.status is PrpStatus.NEGATIVE
    assert result.witness is None
    assert result.systems_checked > 0


@pytest.mark.parametrize(
    "max_vertices, status", [(2, PrpStatus.NEGATIVE), (3, PrpStatus.POSITIVE)]
)
def test_vertex_bound_keeps_verdict_after_translation(k_nm_spec, max_vertices, status):
    bounds = Bounds(max_steps=6, max_vertices=max_vertices)
    source = solve_prp(_instance(k_nm_spec, bounds=bounds))
    translated = solve_prp(_instance(translate_spec(k_nm_spec), bounds=bounds))
    assert source.status is status
    assert translated.status is status
    if status is PrpStatus.POSITIVE:
        assert translated.witness.valuation == source.witness.valuation


def test_prp_truncated_by_state_bound(k_nm_spec):
    inst = _instance(k_nm_spec, "y >= x + 10", Bounds(max_steps=6, max_states=2))
    assert solve_prp(inst).status is PrpStatus.TRUNCATED


def test_witness_replays(k_nm_spec):
    inst = _instance(k_nm_spec)
    witness = solve_prp(inst).witness
    data = json.loads(json.dumps(witness.to_dict()))
    again = replay_witness(inst, data)
    assert again.valuation == witness.valuation
    assert eval_formula(inst.formula, again.valuation)


def test_verdict_matches_schema(k_nm_spec):
    jsonschema = pytest.importorskip("jsonschema")
    verdict = prp_verdict(solve_prp(_instance(k_nm_spec)), "k_nm")
    schema = json.loads(VERDICT_SCHEMA.read_text(encoding="utf-8"))
    jsonschema.validate(json.loads(json.dumps(verdict)), schema)
    assert verdict["exit_code"] == 0
