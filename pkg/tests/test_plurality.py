import pytest
from hypothesis import given, strategies as st

from majority_illusion.network import Labelling, LabelledNetwork, SocialNetwork, illusion_report
from majority_illusion.plurality import (
    BLUE,
    GREEN,
    RED,
    plurality_only_example,
    is_q_plurality_illusion,
    local_plurality_winner,
    plurality_illusion_report,
    plurality_winner,
)
from majority_illusion.solvers import all_one_illusions


@st.composite
def coloured_networks(draw, palette=3, max_nodes=9):
    n = draw(st.integers(1, max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    colours = draw(st.lists(st.integers(0, palette - 1), min_size=n, max_size=n))
    return SocialNetwork.from_edges(n, edges), Labelling(tuple(colours), palette)


def test_winner_examples():
    sn = SocialNetwork(13, frozenset())
    counts = Labelling((0,) * 5 + (1,) * 4 + (2,) * 4, 3)
    assert plurality_winner(sn, counts) == BLUE
    assert plurality_winner(SocialNetwork(6, frozenset()), Labelling((0, 0, 0, 1, 1, 1), 3)) is None
    assert plurality_winner(SocialNetwork(3, frozenset()), Labelling((2, 2, 2), 3)) == GREEN


def test_local_winner_tie_and_empty():
    sn = SocialNetwork.from_edges(3, [(0, 1), (0, 2)])
    assert local_plurality_winner(sn, Labelling((0, 1, 2), 3), 0) is None
    assert local_plurality_winner(sn, Labelling((0, 1, 1), 3), 0) == RED
    assert local_plurality_winner(sn, Labelling((0, 1, 1), 3), 1) == BLUE
    assert local_plurality_winner(SocialNetwork(1, frozenset()), Labelling((0,), 3), 0) is None


def test_plurality_example():
    sn, ml = plurality_only_example()
    assert sn.node_count == 13
    report = plurality_illusion_report(sn, ml)
    assert report.global_winner == BLUE and report.illuded_count == 13
    assert is_q_plurality_illusion(sn, ml, 1)
    assert len(all_one_illusions(sn)) == 0


def test_unanimous_has_no_illusion():
    sn = SocialNetwork.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert plurality_illusion_report(sn, Labelling((GREEN,) * 4, 3)).illuded_count == 0


@given(coloured_networks(palette=2))
def test_binary_palette_matches_majority(net):
    sn, lab = net
    ours = plurality_illusion_report(sn, lab)
    core = illusion_report(LabelledNetwork(sn, lab))
    assert ours.under_illusion == core.under_illusion
    assert ours.global_winner == core.global_winner
    assert list(ours.local_winners) == list(core.local_winners)


@given(coloured_networks(palette=3), st.permutations([0, 1, 2]))
def test_permuting_colours_is_equivariant(net, perm):
    sn, lab = net
    moved = Labelling(tuple(perm[c] for c in lab.colours), 3)
    before = plurality_illusion_report(sn, lab)
    after = plurality_illusion_report(sn, moved)
    assert after.under_illusion == before.under_illusion
    if before.global_winner is None:
        assert after.global_winner is None
    else:
        assert after.global_winner == perm[before.global_winner]


@pytest.mark.parametrize("q, expected", [("1", True), ("1/2", True), ("0", True)])
def test_q_plurality(q, expected):
    sn, ml = plurality_only_example()
    assert is_q_plurality_illusion(sn, ml, q) is expected
