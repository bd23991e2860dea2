from typing import Dict, Mapping

from vrhr.behavior.builder import BehaviorNet, BehaviorPlace

Labeling = Mapping[str, str]
LiftedLabeling = Dict[BehaviorPlace, str]


def lift_labeling(labeling: Labeling, behavior: BehaviorNet) -> LiftedLabeling:
    """Label each behavior place ``(q, v)`` with the variable of ``q``, if any."""
    return {(q, v): labeling[q] for q, v in behavior.places if q in labeling}
