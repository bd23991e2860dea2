from typing import Dict, Mapping

from vrhr.translate import names
from vrhr.translate.alphabet import ExpandedAlphabet


def lift_variable_labeling(
    labeling: Mapping[str, str], expanded: ExpandedAlphabet
) -> Dict[str, str]:
    """Labeling of the translated places.

    Original places keep their variable, ``t.active`` counts as the place
    before ``t`` and ``t.reply`` as the place after it. Half places and the
    idle and wait places carry no variable.
    """
    lifted = dict(labeling)
    for t in expanded.owner:
        ptype = expanded.owner_of(t)
        before, after = ptype.pre_place(t), ptype.post_place(t)
        if before in labeling:
            lifted[names.router_place(t, names.ACTIVE)] = labeling[before]
        if after in labeling:
            lifted[names.router_place(t, names.REPLY)] = labeling[after]
    return lifted
