from typing import Callable, Dict, Final, Hashable, Optional

from graphviz import Digraph

from vrhr.petri.net import PetriNet

_PLACE_STYLE: Final = {"shape": "circle"}
_TRANSITION_STYLE: Final = {"shape": "box", "style": "filled"}


def net_to_dot(
    n: PetriNet,
    name: str = "net",
    colour_of: Optional[Callable[[Hashable], str]] = None,
) -> str:
    """Places as circles (with their initial tokens), transitions as boxes."""
    dot = Digraph(name)
    dot.attr(rankdir="LR")
    ids: Dict[Hashable, str] = {}
    for i, place in enumerate(n.net.places):
        ids[place] = f"p{i}"
        tokens = n.initial[place]
        label = f"{place}\n{'●' * tokens}" if tokens else str(place)
        dot.node(ids[place], label, **_PLACE_STYLE)
    for i, transition in enumerate(n.net.transitions):
        ids[transition] = f"t{i}"
        colour = colour_of(transition) if colour_of else "black"
        font = "white" if colour == "black" else "black"
        dot.node(
            ids[transition],
            str(transition),
            fillcolor=colour,
            fontcolor=font,
            **_TRANSITION_STYLE,
        )
        for place, weight in n.net.pre(transition).items():
            dot.edge(ids[place], ids[transition], label=str(weight) if weight > 1 else "")
        for place, weight in n.net.post(transition).items():
            dot.edge(ids[transition], ids[place], label=str(weight) if weight > 1 else "")
    return dot.source
