"""Labelled social networks, majority winners and illusion detection.

Networks are undirected, irreflexive and immutable.  Nodes are the dense
integers ``0..n-1``; gadget builders keep any structure they need in separate
role metadata.  Colours are small non-negative integers: ``Colour.BLUE == 0``
and ``Colour.RED == 1`` in the binary setting, further palette entries are used
only by :mod:`majority_illusion.plurality`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Optional

from .errors import DomainError, PaletteError, PlanValidityError
from .thresholds import as_fraction, at_least_fraction

__all__ = [
    "Colour",
    "BLUE",
    "RED",
    "SocialNetwork",
    "NetworkBuilder",
    "Labelling",
    "LabelledNetwork",
    "IllusionReport",
    "EditPlan",
    "normalize_pair",
    "majority_winner",
    "local_winner",
    "margin_of_victory",
    "illusion_report",
    "is_q_illusion",
    "apply_edit_plan",
    "disjoint_union",
    "swap_colours",
]


class Colour(IntEnum):
    BLUE = 0
    RED = 1

    @property
    def tag(self) -> str:
        return "b" if self is Colour.BLUE else "r"


BLUE = Colour.BLUE
RED = Colour.RED


def normalize_pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SocialNetwork:
    node_count: int
    edges: frozenset[tuple[int, int]]
    adjacency: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.node_count
        if not isinstance(n, int) or n < 0:
            raise DomainError(f"node_count must be a non-negative integer, got {n!r}")
        normalized = set()
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for edge in self.edges:
            u, v = edge
            if u == v:
                raise DomainError(f"self-loop on node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge {edge!r} has an endpoint outside 0..{n - 1}")
            pair = normalize_pair(u, v)
            normalized.add(pair)
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "adjacency", tuple(frozenset(s) for s in nbrs))

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[tuple[int, int]]) -> "SocialNetwork":
        return cls(node_count, frozenset(tuple(e) for e in edges))

    @property
    def nodes(self) -> range:
        return range(self.node_count)

    def neighbours(self, i: int) -> frozenset[int]:
        self._check_node(i)
        return self.adjacency[i]

    def degree(self, i: int) -> int:
        return len(self.neighbours(i))

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_pair(u, v) in self.edges

    def _check_node(self, i):
        if not isinstance(i, int) or not 0 <= i < self.node_count:
            raise DomainError(f"node {i!r} is not in 0..{self.node_count - 1}")

    def __len__(self):
        return self.node_count


class NetworkBuilder:
    """Mutable scratch space used by the gadget constructions."""

    def __init__(self):
        self.node_count = 0
        self.edges: set[tuple[int, int]] = set()
        self.colours: list[int] = []
        self.roles: list[str] = []

    def add_node(self, role: str, colour: int = BLUE) -> int:
        self.roles.append(role)
        self.colours.append(int(colour))
        self.node_count += 1
        return self.node_count - 1

    def add_nodes(self, count: int, role: str, colour: int = BLUE) -> list[int]:
        return [self.add_node(role, colour) for _ in range(count)]

    def add_edge(self, u: int, v: int):
        if u == v:
            raise DomainError(f"self-loop on node {u}")
        self.edges.add(normalize_pair(u, v))

    def add_clique(self, members):
        members = list(members)
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                self.add_edge(u, v)

    def network(self) -> SocialNetwork:
        return SocialNetwork(self.node_count, frozenset(self.edges))

    def labelled(self) -> "LabelledNetwork":
        return LabelledNetwork(self.network(), Labelling(tuple(self.colours)))


@dataclass(frozen=True)
class Labelling:
    colours: tuple[int, ...]
    palette_size: int = 2

    def __post_init__(self):
        colours = tuple(int(c) for c in self.colours)
        if self.palette_size < 2:
            raise PaletteError(f"palette must have at least 2 colours, got {self.palette_size}")
        for c in colours:
            if not 0 <= c < self.palette_size:
                raise PaletteError(f"colour {c} outside palette of size {self.palette_size}")
        object.__setattr__(self, "colours", colours)

    @classmethod
    def from_reds(cls, node_count: int, reds: Iterable[int]) -> "Labelling":
        colours = [BLUE] * node_count
        for i in reds:
            colours[i] = RED
        return cls(tuple(colours))

    def __len__(self):
        return len(self.colours)

    def __getitem__(self, i):
        return self.colours[i]

    @property
    def reds(self) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.colours) if c == RED)

    def count(self, colour: int) -> int:
        return self.colours.count(colour)


@dataclass(frozen=True)
class LabelledNetwork:
    network: SocialNetwork
    labelling: Labelling

    def __post_init__(self):
        if len(self.labelling) != self.network.node_count:
            raise DomainError(
                f"labelling covers {len(self.labelling)} nodes, network has {self.network.node_count}"
            )

    @property
    def node_count(self) -> int:
        return self.network.node_count

    def with_network(self, network: SocialNetwork) -> "LabelledNetwork":
        return LabelledNetwork(network, self.labelling)

    def _require_binary(self):
        if self.labelling.palette_size != 2:
            raise PaletteError(
                f"binary operation on a palette of size {self.labelling.palette_size}"
            )


@dataclass(frozen=True)
class IllusionReport:
    global_winner: Optional[Colour]
    local_winners: tuple[Optional[Colour], ...]
    under_illusion: frozenset[int]
    illuded_count: int
    fraction: Fraction

    def to_dict(self) -> dict:
        def tag(c):
            return None if c is None else Colour(c).tag

        return {
            "global_winner": tag(self.global_winner),
            "local_winners": [tag(c) for c in self.local_winners],
            "under_illusion": sorted(self.under_illusion),
            "illuded_count": self.illuded_count,
            "node_count": len(self.local_winners),
            "fraction": f"{self.fraction.numerator}/{self.fraction.denominator}",
        }


def _strict_winner(blue: int, red: int) -> Optional[Colour]:
    if blue > red:
        return BLUE
    if red > blue:
        return RED
    return None


def majority_winner(ln: LabelledNetwork) -> Optional[Colour]:
    """Colour held by a strict majority of all nodes, ``None`` on a tie."""
    ln._require_binary()
    red = ln.labelling.count(RED)
    return _strict_winner(ln.node_count - red, red)


def margin_of_victory(ln: LabelledNetwork, i: int) -> int:
    """Blue neighbours minus red neighbours of ``i``."""
    ln._require_binary()
    colours = ln.labelling.colours
    red = sum(colours[j] for j in ln.network.neighbours(i))
    return ln.network.degree(i) - 2 * red


def local_winner(ln: LabelledNetwork, i: int) -> Optional[Colour]:
    margin = margin_of_victory(ln, i)
    if margin > 0:
        return BLUE
    if margin < 0:
        return RED
    return None


def margins(ln: LabelledNetwork) -> list[int]:
    ln._require_binary()
    colours = ln.labelling.colours
    return [len(nb) - 2 * sum(colours[j] for j in nb) for nb in ln.network.adjacency]


def illusion_report(ln: LabelledNetwork) -> IllusionReport:
    winner = majority_winner(ln)
    local = []
    for m in margins(ln):
        local.append(BLUE if m > 0 else RED if m < 0 else None)
    if winner is None:
        under = frozenset()
    else:
        under = frozenset(i for i, c in enumerate(local) if c is not None and c != winner)
    n = ln.node_count
    return IllusionReport(
        global_winner=winner,
        local_winners=tuple(local),
        under_illusion=under,
        illuded_count=len(under),
        fraction=Fraction(len(under), n) if n else Fraction(0),
    )


def is_q_illusion(ln: LabelledNetwork, q) -> bool:
    q = as_fraction(q)
    if not 0 <= q <= 1:
        raise DomainError(f"q must lie in [0, 1], got {q}")
    return at_least_fraction(illusion_report(ln).illuded_count, ln.node_count, q)


@dataclass(frozen=True)
class EditPlan:
    additions: frozenset[tuple[int, int]] = frozenset()
    removals: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        adds = frozenset(normalize_pair(*p) for p in self.additions)
        rems = frozenset(normalize_pair(*p) for p in self.removals)
        for u, v in adds | rems:
            if u == v:
                raise PlanValidityError(f"self-loop ({u}, {v}) in edit plan")
        if adds & rems:
            raise PlanValidityError(f"pairs both added and removed: {sorted(adds & rems)}")
        object.__setattr__(self, "additions", adds)
        object.__setattr__(self, "removals", rems)

    @classmethod
    def of(cls, add=(), remove=()) -> "EditPlan":
        return cls(frozenset(map(tuple, add)), frozenset(map(tuple, remove)))

    @property
    def size(self) -> int:
        return len(self.additions) + len(self.removals)

    def inverse(self) -> "EditPlan":
        return EditPlan(self.removals, self.additions)

    def validate_against(self, sn: SocialNetwork):
        for u, v in self.additions | self.removals:
            if not (0 <= u < sn.node_count and 0 <= v < sn.node_count):
                raise PlanValidityError(f"pair ({u}, {v}) references a missing node")
        present = sorted(self.additions & sn.edges)
        if present:
            raise PlanValidityError(f"cannot add existing edges {present}")
        missing = sorted(self.removals - sn.edges)
        if missing:
            raise PlanValidityError(f"cannot remove non-edges {missing}")

    def to_dict(self) -> dict:
        return {
            "add": [list(p) for p in sorted(self.additions)],
            "remove": [list(p) for p in sorted(self.removals)],
        }


def apply_edit_plan(sn: SocialNetwork, plan: EditPlan) -> SocialNetwork:
    plan.validate_against(sn)
    return SocialNetwork(sn.node_count, (sn.edges - plan.removals) | plan.additions)


def disjoint_union(first: LabelledNetwork, second: LabelledNetwork) -> LabelledNetwork:
    """Place ``second`` after ``first``; node ``i`` of ``second`` becomes ``n1 + i``."""
    if first.labelling.palette_size != second.labelling.palette_size:
        raise PaletteError("cannot join networks with different palettes")
    off = first.node_count
    edges = first.network.edges | {(u + off, v + off) for u, v in second.network.edges}
    network = SocialNetwork(off + second.node_count, frozenset(edges))
    colours = first.labelling.colours + second.labelling.colours
    return LabelledNetwork(network, Labelling(colours, first.labelling.palette_size))


def swap_colours(labelling: Labelling) -> Labelling:
    if labelling.palette_size != 2:
        raise PaletteError("colour swap is defined for binary labellings only")
    return Labelling(tuple(1 - c for c in labelling.colours))
