"""Grammar-level VR to HR translation.

The translation of a union depends on the sorts of its arguments, so every
nonterminal ``X`` is split into one copy ``X.i`` per sort it can derive.
A rule is translated once per combination of sorts of its nonterminal
occurrences, which keeps derivations of both grammars in lockstep.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Final, Iterator, List, Mapping, Optional, Set, Tuple

from vrhr._enum import Algebra
from vrhr.algebra.sorts import infer_sort
from vrhr.algebra.terms import Term, nonterminal_occurrences, rename_nonterminals
from vrhr.errors import GrammarError, TranslationError
from vrhr.grammar.derivation import Derivation, DerivationStep, replay_derivation
from vrhr.grammar.grammar import Grammar, Rule
from vrhr.graph.alphabet import Sort, VertexLabelAlphabet
from vrhr.translate.alphabet import ExpandedAlphabet
from vrhr.translate.expand import expand_term

_LOGGER: Final = logging.getLogger(__name__)

_PLACEHOLDER: Final = "_{}"

SortCombination = Tuple[Sort, ...]


def _sort_key(sort: Sort) -> Tuple[int, Tuple[str, ...]]:
    return len(sort), tuple(sorted(sort))


def _placeholders(rhs: Term) -> Tuple[Term, List[str], List[str]]:
    origins = [ref.name for ref in nonterminal_occurrences(rhs)]
    slots = [_PLACEHOLDER.format(i) for i in range(len(origins))]
    return rename_nonterminals(rhs, slots), slots, origins


def _combinations(
    origins: List[str], known: Mapping[str, Set[Sort]]
) -> Iterator[SortCombination]:
    choices = [sorted(known.get(name, ()), key=_sort_key) for name in origins]
    return itertools.product(*choices)


def nonterminal_sorts(
    g: Grammar, alphabet: Optional[VertexLabelAlphabet] = None
) -> Dict[str, Tuple[Sort, ...]]:
    """Every sort each nonterminal can derive, as a least fixpoint.

    Sorts of a nonterminal come out ordered by size, then by their sorted
    port names; that order numbers the indexed copies.
    """
    known: Dict[str, Set[Sort]] = {name: set() for name in g.nonterminals}
    prepared = [(rule.lhs, *_placeholders(rule.rhs)) for rule in g.rules]
    changed = True
    while changed:
        changed = False
        for lhs, rhs, slots, origins in prepared:
            for combination in _combinations(origins, known):
                sort = infer_sort(rhs, alphabet, dict(zip(slots, combination)))
                if sort not in known[lhs]:
                    known[lhs].add(sort)
                    changed = True
    return {name: tuple(sorted(sorts, key=_sort_key)) for name, sorts in known.items()}


@dataclass(frozen=True)
class GrammarTranslation:
    source: Grammar
    grammar: Grammar
    sorts: Mapping[str, Tuple[Sort, ...]]
    origin: Mapping[Tuple[int, SortCombination], int]

    def indexed_name(self, nonterminal: str, sort: Sort) -> str:
        try:
            return f"{nonterminal}.{self.sorts[nonterminal].index(sort)}"
        except (KeyError, ValueError):
            raise GrammarError(f"{nonterminal} never derives sort {sorted(sort)}") from None

    def corresponding(self, derivation: Derivation) -> Derivation:
        """The derivation of the HR grammar that mirrors a complete VR derivation."""
        root = _Node()
        pending: List[_Node] = [root]
        order: List[Tuple[_Node, int]] = []
        for s in derivation.steps:
            if not 0 <= s.position < len(pending):
                raise GrammarError(f"position {s.position} out of range")
            node = pending[s.position]
            node.rule = s.rule
            node.children = [
                _Node() for _ in nonterminal_occurrences(self.source.rules[s.rule].rhs)
            ]
            pending[s.position : s.position + 1] = node.children
            order.append((node, s.position))
        if pending:
            raise GrammarError("derivation is not complete")

        sort = self._sort_of(root)
        steps = []
        for node, position in order:
            combination = tuple(self._sort_of(child) for child in node.children)
            steps.append(DerivationStep(self.origin[(node.rule, combination)], position))
        return replay_derivation(
            self.grammar, self.indexed_name(derivation.start, sort), steps
        )

    def _sort_of(self, node: "_Node") -> Sort:
        if node.sort is None:
            rhs, slots, _ = _placeholders(self.source.rules[node.rule].rhs)
            refs = {slot: self._sort_of(child) for slot, child in zip(slots, node.children)}
            node.sort = infer_sort(rhs, None, refs)
        return node.sort


class _Node:
    __slots__ = ("rule", "children", "sort")

    def __init__(self) -> None:
        self.rule = -1
        self.children: List["_Node"] = []
        self.sort: Optional[Sort] = None


def translate_grammar(g: Grammar, expanded: ExpandedAlphabet) -> GrammarTranslation:
    if g.algebra is not Algebra.VR:
        raise TranslationError(f"grammar {g.name} is not a VR grammar")
    dotted = [name for name in g.nonterminals if "." in name]
    if dotted:
        raise TranslationError(f"names reserved for the translation: {', '.join(dotted)}")

    sorts = nonterminal_sorts(g, expanded.source)
    known = {name: set(found) for name, found in sorts.items()}

    def indexed(name: str, sort: Sort) -> str:
        return f"{name}.{sorts[name].index(sort)}"

    rules: List[Rule] = []
    origin: Dict[Tuple[int, SortCombination], int] = {}
    for index, rule in enumerate(g.rules):
        rhs, slots, origins = _placeholders(rule.rhs)
        for combination in _combinations(origins, known):
            refs = dict(zip(slots, combination))
            lhs_sort = infer_sort(rhs, expanded.source, refs)
            translated = expand_term(rhs, expanded, refs)
            renamed = [
                indexed(origins[slots.index(ref.name)], refs[ref.name])
                for ref in nonterminal_occurrences(translated)
            ]
            origin[(index, combination)] = len(rules)
            rules.append(Rule(indexed(rule.lhs, lhs_sort), rename_nonterminals(translated, renamed)))

    axioms = [indexed(axiom, sort) for axiom in g.axioms for sort in sorts.get(axiom, ())]
    _LOGGER.info(
        "translated grammar %s: %d rules into %d, %d axioms",
        g.name,
        len(g.rules),
        len(rules),
        len(axioms),
    )
    return GrammarTranslation(
        source=g,
        grammar=Grammar.build(g.name, Algebra.HR, rules, axioms),
        sorts=sorts,
        origin=origin,
    )
