from vrhr.behavior.builder import BehaviorNet
from vrhr.petri.dot import net_to_dot


def behavior_to_dot(b: BehaviorNet, name: str = "behavior") -> str:
    """Rendezvous transitions black, internal ones yellow."""
    return net_to_dot(
        b.to_petri_net(),
        name=name,
        colour_of=lambda t: "yellow" if b.is_internal(t) else "black",
    )
