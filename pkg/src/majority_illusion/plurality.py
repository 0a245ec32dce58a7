"""Plurality winners and plurality illusion for palettes of any size."""

from __future__ import annotations

from collections import Counter
from typing import Optional

from .errors import ConstructionError
from .network import IllusionReport, Labelling, SocialNetwork
from .solvers import solve_one_illusion
from .thresholds import Fraction, as_fraction, at_least_fraction

__all__ = [
    "MultiLabelling",
    "plurality_winner",
    "local_plurality_winner",
    "plurality_illusion_report",
    "is_q_plurality_illusion",
    "plurality_only_example",
    "NINE0_NAMES",
    "BLUE",
    "RED",
    "GREEN",
]

MultiLabelling = Labelling

BLUE, RED, GREEN = 0, 1, 2


def _unique_argmax(counts: Counter) -> Optional[int]:
    if not counts:
        return None
    ranked = counts.most_common(2)
    if len(ranked) > 1 and ranked[0][1] == ranked[1][1]:
        return None
    return ranked[0][0]


def plurality_winner(sn: SocialNetwork, ml: Labelling) -> Optional[int]:
    """The uniquely most frequent colour, ``None`` when the top is shared."""
    return _unique_argmax(Counter(ml.colours))


def local_plurality_winner(sn: SocialNetwork, ml: Labelling, i: int) -> Optional[int]:
    return _unique_argmax(Counter(ml.colours[j] for j in sn.neighbours(i)))


def plurality_illusion_report(sn: SocialNetwork, ml: Labelling) -> IllusionReport:
    winner = plurality_winner(sn, ml)
    local = tuple(local_plurality_winner(sn, ml, i) for i in sn.nodes)
    if winner is None:
        under = frozenset()
    else:
        under = frozenset(i for i, c in enumerate(local) if c is not None and c != winner)
    n = sn.node_count
    return IllusionReport(
        global_winner=winner,
        local_winners=local,
        under_illusion=under,
        illuded_count=len(under),
        fraction=Fraction(len(under), n) if n else Fraction(0),
    )


def is_q_plurality_illusion(sn: SocialNetwork, ml: Labelling, q) -> bool:
    q = as_fraction(q)
    return at_least_fraction(plurality_illusion_report(sn, ml).illuded_count, sn.node_count, q)


NINE0_NAMES = ("A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L", "M")


def plurality_only_example() -> tuple[SocialNetwork, Labelling]:
    """Thirteen nodes, three colours, full plurality illusion.

    Left part: a 4-clique A B (red) C D (green), each with one blue pendant
    E F G H.  Right part: green centre I with neighbours J (blue), K, L (red)
    and M (green).  Blue leads 5 to 4 to 4.
    """
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 5), (2, 6), (3, 7)]
    edges += [(8, 9), (8, 10), (8, 11), (8, 12)]
    colours = (RED, RED, GREEN, GREEN, BLUE, BLUE, BLUE, BLUE, GREEN, BLUE, RED, RED, GREEN)
    sn = SocialNetwork.from_edges(13, edges)
    ml = Labelling(colours, palette_size=3)
    report = plurality_illusion_report(sn, ml)
    if report.global_winner != BLUE or report.illuded_count != 13:
        raise ConstructionError("plurality-only example lost its full plurality illusion")
    if solve_one_illusion(sn) is not None:
        raise ConstructionError("plurality-only example admits a binary full illusion")
    return sn, ml
