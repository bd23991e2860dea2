from typing import List

from vrhr.algebra.terms import render_term
from vrhr.frontend.spec import Analysis, SpecFile
from vrhr.grammar.grammar import Grammar
from vrhr.petri.process import ProcessType
from vrhr.reach.formula import render_formula

_INDENT = "    "


def _process(p: ProcessType) -> List[str]:
    lines = [f"process {p.name} {{", f"{_INDENT}places {', '.join(p.places)};"]
    lines.append(f"{_INDENT}init {p.initial_place};")
    for (t, source, target), observable in p.ordered_transitions():
        keyword = "obs" if observable else "int"
        lines.append(f"{_INDENT}{keyword} {t}: {source} -> {target};")
    lines.append("}")
    return lines


def _grammar(g: Grammar) -> List[str]:
    lines = [f"{g.algebra.value} grammar {g.name} {{"]
    if g.axioms:
        lines.append(f"{_INDENT}axiom {', '.join(g.axioms)};")
    lines.extend(f"{_INDENT}{rule.lhs} -> {render_term(rule.rhs)};" for rule in g.rules)
    lines.append("}")
    return lines


def _analysis(a: Analysis) -> List[str]:
    lines = [f"analysis {a.name} {{", f"{_INDENT}grammar {a.grammar};"]
    if a.labeling is not None:
        lines.append(f"{_INDENT}labeling {a.labeling};")
    lines.append(f"{_INDENT}formula {a.formula};")
    for key, value in a.settings:
        lines.append(f"{_INDENT}{key} = {'unbounded' if value is None else value};")
    lines.append("}")
    return lines


def print_spec(spec: SpecFile) -> str:
    """Spec text that parses back to ``spec``; imports come out inlined."""
    blocks: List[List[str]] = [_process(p) for p in spec.processes.values()]
    if spec.ports:
        blocks.append([f"port {port}: {ptype};" for port, ptype in spec.ports.items()])
    if spec.variables:
        blocks.append([f"vars {', '.join(spec.variables)};"])
    blocks.extend(_grammar(g) for g in spec.grammars.values())
    for name, labeling in spec.labelings.items():
        body = [f"{_INDENT}{place} -> {variable};" for place, variable in labeling.items()]
        blocks.append([f"labeling {name} {{", *body, "}"])
    if spec.formulas:
        blocks.append(
            [f"formula {name} = {render_formula(f)};" for name, f in spec.formulas.items()]
        )
    blocks.extend(_analysis(a) for a in spec.analyses.values())
    return "\n\n".join("\n".join(block) for block in blocks) + "\n"
