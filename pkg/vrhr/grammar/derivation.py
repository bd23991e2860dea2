from dataclasses import dataclass
from typing import Iterable, List, Mapping, Tuple

from vrhr.algebra.terms import NonterminalRef, Term, nonterminal_occurrences, replace_nonterminal
from vrhr.errors import GrammarError
from vrhr.grammar.grammar import Grammar, Rule


@dataclass(frozen=True, slots=True)
class DerivationStep:
    rule: int
    position: int = 0

    def to_dict(self) -> dict:
        return {"rule": self.rule, "position": self.position}


@dataclass(frozen=True, slots=True)
class Derivation:
    start: str
    steps: Tuple[DerivationStep, ...]
    term: Term

    @classmethod
    def initial(cls, start: str) -> "Derivation":
        return cls(start, (), NonterminalRef(start))

    def __len__(self) -> int:
        return len(self.steps)

    def extended(self, step_: DerivationStep, term: Term) -> "Derivation":
        return Derivation(self.start, self.steps + (step_,), term)

    def to_dict(self) -> dict:
        return {"start": self.start, "steps": [s.to_dict() for s in self.steps]}


def step(t: Term, rule: Rule, position: int) -> Term:
    """Replace one nonterminal occurrence, addressed in preorder, by the rule's rhs."""
    occurrences = nonterminal_occurrences(t)
    if not 0 <= position < len(occurrences):
        raise GrammarError(
            f"position {position} out of range: term has {len(occurrences)} nonterminals"
        )
    found = occurrences[position].name
    if found != rule.lhs:
        raise GrammarError(f"rule for {rule.lhs} applied at an occurrence of {found}")
    return replace_nonterminal(t, position, rule.rhs)


def replay_derivation(
    g: Grammar, start: str, steps: Iterable[DerivationStep]
) -> Derivation:
    if start not in g.nonterminals:
        raise GrammarError(f"unknown start nonterminal {start}")
    derivation = Derivation.initial(start)
    for s in steps:
        if not 0 <= s.rule < len(g.rules):
            raise GrammarError(f"no rule {s.rule} in grammar {g.name}")
        derivation = derivation.extended(s, step(derivation.term, g.rules[s.rule], s.position))
    return derivation


def derivation_from_dict(g: Grammar, data: Mapping) -> Derivation:
    steps: List[DerivationStep] = [
        DerivationStep(int(s["rule"]), int(s.get("position", 0))) for s in data["steps"]
    ]
    return replay_derivation(g, str(data["start"]), steps)
