import logging
from typing import Dict, Final

from vrhr._enum import Algebra
from vrhr.errors import TranslationError
from vrhr.frontend.spec import SpecFile
from vrhr.grammar.grammar import Grammar
from vrhr.grammar.translate import translate_grammar
from vrhr.translate.alphabet import expanded_alphabet
from vrhr.translate.labeling import lift_variable_labeling

_LOGGER: Final = logging.getLogger(__name__)


def translate_spec(spec: SpecFile) -> SpecFile:
    """HR spec with the same verdicts: expanded types and ports, translated grammars, lifted labelings."""
    expanded = expanded_alphabet(spec.processes, spec.alphabet)
    grammars: Dict[str, Grammar] = {}
    for name, grammar in spec.grammars.items():
        if grammar.algebra is not Algebra.VR:
            raise TranslationError(f"grammar {name} is already an HR grammar")
        grammars[name] = translate_grammar(grammar, expanded).grammar
    labelings = {
        name: lift_variable_labeling(labeling, expanded)
        for name, labeling in spec.labelings.items()
    }
    _LOGGER.info(
        "translated spec: %d process types, %d ports, %d grammars",
        len(expanded.types),
        len(expanded.alphabet.ports),
        len(grammars),
    )
    return SpecFile(
        processes=dict(expanded.types),
        ports=dict(expanded.alphabet.port_type),
        variables=spec.variables,
        grammars=grammars,
        labelings=labelings,
        formulas=dict(spec.formulas),
        analyses=dict(spec.analyses),
    )
