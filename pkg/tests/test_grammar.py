import pytest

from vrhr._enum import Algebra, EnumerationStatus
from vrhr.algebra.evaluate import eval_hr, eval_vr
from vrhr.algebra.terms import NonterminalRef, Union, Vertex
from vrhr.config import Bounds
from vrhr.errors import GrammarError, TranslationError
from vrhr.grammar.derivation import (
    Derivation,
    DerivationStep,
    derivation_from_dict,
    replay_derivation,
    step,
)
from vrhr.grammar.enumerate import enumerate_language
from vrhr.grammar.grammar import Grammar, Rule, validate_grammar
from vrhr.grammar.translate import nonterminal_sorts, translate_grammar
from vrhr.graph.epsilon import expand
from vrhr.graph.isomorphism import isomorphic
from vrhr.translate.alphabet import expanded_alphabet

from conftest import k_nm

K11_STEPS = [0, 3, 1, 2]


@pytest.fixture
def gamma(k_nm_spec) -> Grammar:
    return k_nm_spec.grammars["Gamma"]


def _derive(g: Grammar, rules) -> Derivation:
    return replay_derivation(g, g.axioms[0], [DerivationStep(r) for r in rules])


def test_example_grammar_shape(gamma, k_nm_spec):
    assert gamma.algebra is Algebra.VR
    assert gamma.nonterminals == ("S", "K")
    assert [i for i, _ in gamma.rules_for("K")] == [1, 2, 3]
    assert validate_grammar(gamma, k_nm_spec.alphabet).ok


def test_grammar_validation(alphabet):
    g = Grammar.build("G", Algebra.VR, [Rule("S", NonterminalRef("X"))], [])
    codes = validate_grammar(g, alphabet).codes()
    assert "no-axiom" in codes
    assert "unknown-nonterminal" in codes


def test_leftmost_derivation_of_k11(gamma, k_nm_spec):
    derivation = _derive(gamma, K11_STEPS)
    assert len(derivation) == 4
    g = eval_vr(derivation.term, k_nm_spec.alphabet)
    assert isomorphic(g, eval_vr(k_nm(1, 1), k_nm_spec.alphabet))


def test_step_errors(gamma):
    with pytest.raises(GrammarError):
        step(NonterminalRef("S"), gamma.rules[0], 1)
    with pytest.raises(GrammarError):
        step(NonterminalRef("S"), gamma.rules[1], 0)
    with pytest.raises(GrammarError):
        replay_derivation(gamma, "Nope", [])
    with pytest.raises(GrammarError):
        replay_derivation(gamma, "S", [DerivationStep(9)])


def test_step_at_any_position(gamma):
    pair = step(NonterminalRef("K"), gamma.rules[3], 0)
    assert pair == Union(NonterminalRef("K"), NonterminalRef("K"))
    assert step(pair, gamma.rules[2], 1) == Union(NonterminalRef("K"), Vertex("pi2"))


def test_derivation_json_replays(gamma):
    derivation = _derive(gamma, K11_STEPS)
    again = derivation_from_dict(gamma, derivation.to_dict())
    assert again == derivation


def test_bounded_language_of_k_nm(gamma, k_nm_spec):
    language = enumerate_language(gamma, k_nm_spec.alphabet, Bounds(max_steps=6))
    members = list(language)
    # K(n, m) for 1 <= n + m <= 3
    assert len(members) == 9
    assert sorted(len(m.graph) for m in members) == [1, 1, 2, 2, 2, 3, 3, 3, 3]
    assert language.status is EnumerationStatus.BOUNDED
    assert language.duplicates > 0


def test_vertex_bound(gamma, k_nm_spec):
    bounds = Bounds(max_steps=6, max_vertices=2)
    members = list(enumerate_language(gamma, k_nm_spec.alphabet, bounds))
    assert len(members) == 5
    assert all(len(m.graph) <= 2 for m in members)


def test_vertex_bound_counts_halves_of_translated_graphs(gamma, types, alphabet):
    expanded = expanded_alphabet(types, alphabet)
    hr = translate_grammar(gamma, expanded).grammar
    language = enumerate_language(hr, expanded.alphabet, Bounds(max_steps=6, max_vertices=2))
    members = list(language)
    restored = [expanded.restore(expand(m.graph, expanded.epsilon)) for m in members]
    assert members
    assert all(language.vertex_count(m.graph) <= 2 for m in members)
    assert any(len(m.graph) > 2 for m in members)
    assert sorted(len(g) for g in restored)[-1] == 2
    assert language.status is EnumerationStatus.BOUNDED


def test_graph_cap_truncates(gamma, k_nm_spec):
    language = enumerate_language(gamma, k_nm_spec.alphabet, Bounds(max_steps=6, max_graphs=2))
    assert len(list(language)) == 2
    assert language.status is EnumerationStatus.TRUNCATED


def test_finite_language_is_exhausted(alphabet):
    g = Grammar.build("One", Algebra.VR, [Rule("S", Vertex("pi"))], ["S"])
    language = enumerate_language(g, alphabet, Bounds())
    assert len(list(language)) == 1
    assert language.status is EnumerationStatus.EXHAUSTED


def test_nonterminal_sorts(gamma, k_nm_spec):
    sorts = nonterminal_sorts(gamma, k_nm_spec.alphabet)
    assert sorts["K"] == (frozenset({"pi"}), frozenset({"pi2"}), frozenset({"pi", "pi2"}))
    assert sorts["S"] == (frozenset(),)


def test_translated_grammar_is_sort_indexed(gamma, types, alphabet):
    translation = translate_grammar(gamma, expanded_alphabet(types, alphabet))
    hr = translation.grammar
    assert hr.algebra is Algebra.HR
    assert hr.name == gamma.name
    assert hr.axioms == ("S.0",)
    assert set(hr.nonterminals) == {"S.0", "K.0", "K.1", "K.2"}
    # S -> ... K three times, two leaf rules, union over 3 x 3 sorts
    assert len(hr.rules) == 3 + 1 + 1 + 9
    assert translation.indexed_name("K", frozenset({"pi2"})) == "K.1"


def test_corresponding_derivation_expands_to_the_source(gamma, types, alphabet):
    expanded = expanded_alphabet(types, alphabet)
    translation = translate_grammar(gamma, expanded)
    for rules in (K11_STEPS, [0, 3, 3, 1, 1, 2]):
        source = _derive(gamma, rules)
        mirrored = translation.corresponding(source)
        assert len(mirrored) == len(source)
        translated = eval_hr(mirrored.term, expanded.alphabet)
        restored = expanded.restore(expand(translated, expanded.epsilon))
        assert isomorphic(restored, eval_vr(source.term, alphabet))


def test_translation_rejects_hr_and_dotted(types, alphabet):
    expanded = expanded_alphabet(types, alphabet)
    hr = Grammar.build("H", Algebra.HR, [Rule("S", Vertex("pi"))], ["S"])
    with pytest.raises(TranslationError):
        translate_grammar(hr, expanded)
    dotted = Grammar.build("D", Algebra.VR, [Rule("S.x", Vertex("pi"))], ["S.x"])
    with pytest.raises(TranslationError):
        translate_grammar(dotted, expanded)
