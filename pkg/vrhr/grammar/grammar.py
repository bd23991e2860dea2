from dataclasses import dataclass
from typing import Iterable, List, Tuple

from vrhr._enum import Algebra
from vrhr.algebra.terms import Term, nonterminal_occurrences
from vrhr.algebra.validate import validate_term
from vrhr.graph.alphabet import VertexLabelAlphabet
from vrhr.report import ValidationReport


@dataclass(frozen=True, slots=True)
class Rule:
    lhs: str
    rhs: Term


@dataclass(frozen=True)
class Grammar:
    name: str
    algebra: Algebra
    rules: Tuple[Rule, ...]
    axioms: Tuple[str, ...]

    @classmethod
    def build(
        cls, name: str, algebra: Algebra, rules: Iterable[Rule], axioms: Iterable[str]
    ) -> "Grammar":
        return cls(name, algebra, tuple(rules), tuple(axioms))

    @property
    def nonterminals(self) -> Tuple[str, ...]:
        """Axioms first, then rule heads, each once, in declaration order."""
        ordered = dict.fromkeys(self.axioms)
        ordered.update(dict.fromkeys(r.lhs for r in self.rules))
        return tuple(ordered)

    def rules_for(self, lhs: str) -> List[Tuple[int, Rule]]:
        return [(i, r) for i, r in enumerate(self.rules) if r.lhs == lhs]


def validate_grammar(g: Grammar, alphabet: VertexLabelAlphabet) -> ValidationReport:
    report = ValidationReport(f"grammar {g.name}")
    if not g.axioms:
        report.add("no-axiom", "grammar has no axiom")
    known = set(g.nonterminals)
    heads = {r.lhs for r in g.rules}
    for axiom in g.axioms:
        if axiom not in heads:
            report.warn("unproductive-axiom", "axiom has no rule", axiom)
    for index, rule in enumerate(g.rules):
        subject = f"rule {index} ({rule.lhs})"
        for ref in nonterminal_occurrences(rule.rhs):
            if ref.name not in known:
                report.add("unknown-nonterminal", f"unknown nonterminal {ref.name}", subject)
        for violation in validate_term(rule.rhs, alphabet, g.algebra):
            report.add(violation.code, violation.message, subject, violation.severity)
    return report
