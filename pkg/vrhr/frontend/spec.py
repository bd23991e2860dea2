"""The in-memory form of a spec file and its cross-reference checks."""

import logging
from dataclasses import dataclass, field, replace
from typing import Final, Mapping, Optional, Tuple, Union

from vrhr.config import Bounds
from vrhr.errors import ResolutionError
from vrhr.grammar.grammar import Grammar, validate_grammar
from vrhr.graph.alphabet import VertexLabelAlphabet
from vrhr.petri.process import ProcessType, validate_process_type
from vrhr.reach.formula import Formula, free_variables
from vrhr.report import ValidationReport

_LOGGER: Final = logging.getLogger(__name__)

BOUND_NAMES: Final = ("max_steps", "max_vertices", "max_states", "max_graphs")
_UNBOUNDABLE: Final = ("max_vertices", "max_graphs")

BoundSetting = Union[int, None]


@dataclass(frozen=True)
class Analysis:
    """A named PRP question: grammar, labeling, formula and bound settings.

    A ``None`` bound setting means the file asked for ``unbounded``.
    """

    name: str
    grammar: str
    formula: str
    labeling: Optional[str] = None
    settings: Tuple[Tuple[str, BoundSetting], ...] = ()

    def bounds(self, base: Optional[Bounds] = None) -> Bounds:
        return replace(base or Bounds.default(), **dict(self.settings))


@dataclass(frozen=True)
class SpecFile:
    processes: Mapping[str, ProcessType] = field(default_factory=dict)
    ports: Mapping[str, str] = field(default_factory=dict)
    variables: Tuple[str, ...] = ()
    grammars: Mapping[str, Grammar] = field(default_factory=dict)
    labelings: Mapping[str, Mapping[str, str]] = field(default_factory=dict)
    formulas: Mapping[str, Formula] = field(default_factory=dict)
    analyses: Mapping[str, Analysis] = field(default_factory=dict)
    imports: Tuple[str, ...] = field(default=(), compare=False)

    @property
    def alphabet(self) -> VertexLabelAlphabet:
        return VertexLabelAlphabet.build(self.processes, self.ports)

    def merged(self, other: "SpecFile") -> "SpecFile":
        """Declarations of ``self`` followed by those of ``other``; later names win."""
        return SpecFile(
            processes={**self.processes, **other.processes},
            ports={**self.ports, **other.ports},
            variables=tuple(dict.fromkeys(self.variables + other.variables)),
            grammars={**self.grammars, **other.grammars},
            labelings={**self.labelings, **other.labelings},
            formulas={**self.formulas, **other.formulas},
            analyses={**self.analyses, **other.analyses},
            imports=self.imports + other.imports,
        )

    def analysis(self, name: Optional[str] = None) -> Analysis:
        if name is None:
            if len(self.analyses) != 1:
                raise ResolutionError(
                    f"spec declares {len(self.analyses)} analyses; name one of {sorted(self.analyses)}"
                )
            return next(iter(self.analyses.values()))
        if name not in self.analyses:
            raise ResolutionError(f"unknown analysis {name}")
        return self.analyses[name]

    def grammar(self, name: Optional[str] = None) -> Grammar:
        if name is None:
            if len(self.grammars) != 1:
                raise ResolutionError(
                    f"spec declares {len(self.grammars)} grammars; name one of {sorted(self.grammars)}"
                )
            return next(iter(self.grammars.values()))
        if name not in self.grammars:
            raise ResolutionError(f"unknown grammar {name}")
        return self.grammars[name]


def resolve_spec(spec: SpecFile) -> ValidationReport:
    """Check every cross-reference of a parsed spec."""
    report = ValidationReport("spec")
    for ptype in spec.processes.values():
        report.extend(validate_process_type(ptype))
    report.extend(spec.alphabet.validate())

    places = {q for ptype in spec.processes.values() for q in ptype.places}
    declared = set(spec.variables)
    for name, labeling in spec.labelings.items():
        for place, variable in labeling.items():
            if place not in places:
                report.add("unknown-place", f"labels unknown place {place}", f"labeling {name}")
            if variable not in declared:
                report.add("unknown-variable", f"undeclared variable {variable}", f"labeling {name}")
    for name, formula in spec.formulas.items():
        for variable in sorted(free_variables(formula) - declared):
            report.add("unknown-variable", f"undeclared variable {variable}", f"formula {name}")

    for grammar in spec.grammars.values():
        report.extend(validate_grammar(grammar, spec.alphabet))

    for analysis in spec.analyses.values():
        subject = f"analysis {analysis.name}"
        if analysis.grammar not in spec.grammars:
            report.add("unknown-grammar", f"unknown grammar {analysis.grammar}", subject)
        if analysis.formula not in spec.formulas:
            report.add("unknown-formula", f"unknown formula {analysis.formula}", subject)
        if analysis.labeling is not None and analysis.labeling not in spec.labelings:
            report.add("unknown-labeling", f"unknown labeling {analysis.labeling}", subject)
        for key, value in analysis.settings:
            if key not in BOUND_NAMES:
                report.add("unknown-bound", f"unknown bound {key}", subject)
            elif value is None and key not in _UNBOUNDABLE:
                report.add("unknown-bound", f"{key} cannot be unbounded", subject)
    _LOGGER.debug("resolved spec: %d violations", len(report))
    return report
