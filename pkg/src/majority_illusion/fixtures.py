"""Small hand-built networks with known illusion behaviour."""

from __future__ import annotations

from .errors import ConstructionError
from .network import BLUE, RED, Labelling, LabelledNetwork, SocialNetwork, illusion_report

__all__ = ["NINE_AGENT_NAMES", "nine_agent_illusion", "fixture_star_example"]

NINE_AGENT_NAMES = ("A", "B", "C", "D", "E", "E'", "F", "G", "H")


def nine_agent_illusion() -> LabelledNetwork:
    """Nine nodes: a red 4-clique with five blue satellites, everyone illuded.

    Satellites: E' and F (adjacent to each other) each touch A and B; E
    touches C; G and H touch D.
    """
    idx = {name: i for i, name in enumerate(NINE_AGENT_NAMES)}
    clique = ["A", "B", "C", "D"]
    edges = [(idx[u], idx[v]) for i, u in enumerate(clique) for v in clique[i + 1 :]]
    edges += [
        (idx[u], idx[v])
        for u, v in [("E'", "F"), ("F", "A"), ("E'", "B"), ("D", "H"), ("E", "C"), ("E'", "A"), ("F", "B"), ("G", "D")]
    ]
    colours = tuple(RED if name in clique else BLUE for name in NINE_AGENT_NAMES)
    ln = LabelledNetwork(SocialNetwork.from_edges(9, edges), Labelling(colours))
    report = illusion_report(ln)
    if report.global_winner != BLUE or report.illuded_count != 9:
        raise ConstructionError("nine-agent example lost its full illusion")
    return ln


def fixture_star_example() -> LabelledNetwork:
    """Blue centre 0 with red leaves 1, 2 plus a blue edge 3-4; only the centre is illuded."""
    sn = SocialNetwork.from_edges(5, [(0, 1), (0, 2), (3, 4)])
    return LabelledNetwork(sn, Labelling((BLUE, RED, RED, BLUE, BLUE)))
