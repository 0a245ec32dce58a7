from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from majority_illusion.errors import DomainError, PaletteError, PlanValidityError, FractionError
from majority_illusion.fixtures import nine_agent_illusion, fixture_star_example
from majority_illusion.network import (
    BLUE,
    RED,
    EditPlan,
    Labelling,
    LabelledNetwork,
    SocialNetwork,
    apply_edit_plan,
    illusion_report,
    is_q_illusion,
    local_winner,
    majority_winner,
    margin_of_victory,
    swap_colours,
)


def ln_of(n, edges, colours):
    return LabelledNetwork(SocialNetwork.from_edges(n, edges), Labelling(tuple(colours)))


@st.composite
def labelled_networks(draw, max_nodes=10):
    n = draw(st.integers(0, max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    colours = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return ln_of(n, edges, colours)


def test_majority_winner_examples():
    assert majority_winner(ln_of(3, [], [BLUE] * 3)) == BLUE
    assert majority_winner(ln_of(4, [], [BLUE, BLUE, RED, RED])) is None
    assert majority_winner(nine_agent_illusion()) == BLUE


def test_local_winner_examples():
    isolated = ln_of(1, [], [BLUE])
    assert local_winner(isolated, 0) is None
    star = ln_of(3, [(0, 1), (0, 2)], [BLUE, RED, RED])
    assert local_winner(star, 0) == RED
    tie = ln_of(3, [(0, 1), (0, 2)], [BLUE, BLUE, RED])
    assert local_winner(tie, 0) is None
    with pytest.raises(DomainError):
        local_winner(star, 5)


def test_margin_examples():
    assert margin_of_victory(ln_of(1, [], [RED]), 0) == 0
    ln = ln_of(4, [(0, 1), (0, 2), (0, 3)], [RED, BLUE, BLUE, RED])
    assert margin_of_victory(ln, 0) == 1


def test_report_examples():
    clique = ln_of(4, [(u, v) for u in range(4) for v in range(u + 1, 4)], [BLUE] * 4)
    assert illusion_report(clique).illuded_count == 0
    star = fixture_star_example()
    report = illusion_report(star)
    assert report.under_illusion == frozenset({0})
    assert report.fraction == Fraction(1, 5)
    nine = illusion_report(nine_agent_illusion())
    assert nine.illuded_count == 9 and nine.fraction == 1


def test_is_q_illusion_examples():
    star = fixture_star_example()
    assert is_q_illusion(nine_agent_illusion(), 1)
    assert is_q_illusion(star, "1/5")
    assert not is_q_illusion(star, "1/4")
    assert is_q_illusion(star, 0)
    with pytest.raises(FractionError):
        is_q_illusion(star, "1/0")


def test_report_dict_shape():
    data = illusion_report(fixture_star_example()).to_dict()
    assert data["global_winner"] == "b"
    assert data["local_winners"][0] == "r"
    assert data["fraction"] == "1/5"


def test_construction_errors():
    with pytest.raises(DomainError):
        SocialNetwork.from_edges(2, [(0, 0)])
    with pytest.raises(DomainError):
        SocialNetwork.from_edges(2, [(0, 2)])
    with pytest.raises(DomainError):
        LabelledNetwork(SocialNetwork(2, frozenset()), Labelling((BLUE,)))
    with pytest.raises(PaletteError):
        Labelling((0, 3))
    three = LabelledNetwork(SocialNetwork(2, frozenset()), Labelling((0, 2), palette_size=3))
    with pytest.raises(PaletteError):
        illusion_report(three)


def test_edges_are_normalised_and_deduplicated():
    sn = SocialNetwork.from_edges(3, [(1, 0), (0, 1), (2, 1)])
    assert sn.edges == frozenset({(0, 1), (1, 2)})
    assert sn.neighbours(1) == frozenset({0, 2})


def test_apply_edit_plan_examples():
    sn = SocialNetwork(2, frozenset())
    assert apply_edit_plan(sn, EditPlan()) == sn
    assert apply_edit_plan(sn, EditPlan.of(add=[(0, 1)])).edges == frozenset({(0, 1)})
    path = SocialNetwork.from_edges(2, [(0, 1)])
    assert apply_edit_plan(path, EditPlan.of(remove=[(1, 0)])).edges == frozenset()


def test_invalid_plans():
    path = SocialNetwork.from_edges(3, [(0, 1)])
    with pytest.raises(PlanValidityError):
        apply_edit_plan(path, EditPlan.of(add=[(0, 1)]))
    with pytest.raises(PlanValidityError):
        apply_edit_plan(path, EditPlan.of(remove=[(1, 2)]))
    with pytest.raises(PlanValidityError):
        EditPlan.of(add=[(1, 1)])
    with pytest.raises(PlanValidityError):
        EditPlan.of(add=[(0, 2)], remove=[(2, 0)])
    with pytest.raises(PlanValidityError):
        apply_edit_plan(path, EditPlan.of(add=[(0, 7)]))


@given(labelled_networks())
def test_colour_swap_preserves_illuded_set(ln):
    swapped = LabelledNetwork(ln.network, swap_colours(ln.labelling))
    assert illusion_report(swapped).under_illusion == illusion_report(ln).under_illusion


@given(labelled_networks())
def test_ties_never_illuded(ln):
    report = illusion_report(ln)
    for i in ln.network.nodes:
        if margin_of_victory(ln, i) == 0:
            assert i not in report.under_illusion


@given(labelled_networks())
def test_dependants_force_red_neighbours(ln):
    report = illusion_report(ln)
    if report.illuded_count == ln.node_count and report.global_winner == BLUE:
        for i in ln.network.nodes:
            nbrs = ln.network.neighbours(i)
            if len(nbrs) == 1:
                assert ln.labelling[next(iter(nbrs))] == RED


@given(labelled_networks(), st.integers(1, 12), st.integers(0, 12), st.integers(0, 12))
def test_q_illusion_monotone(ln, b, a1, a2):
    lo, hi = sorted((Fraction(min(a1, b), b), Fraction(min(a2, b), b)))
    if is_q_illusion(ln, hi):
        assert is_q_illusion(ln, lo)


@given(labelled_networks(), st.data())
def test_plan_then_inverse_is_identity(ln, data):
    sn = ln.network
    n = sn.node_count
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=6)) if pairs else []
    plan = EditPlan.of(add=[p for p in chosen if p not in sn.edges], remove=[p for p in chosen if p in sn.edges])
    edited = apply_edit_plan(sn, plan)
    assert len(edited.edges ^ sn.edges) == plan.size
    assert apply_edit_plan(edited, plan.inverse()) == sn


@given(labelled_networks())
def test_report_consistent_with_definitions(ln):
    report = illusion_report(ln)
    winner = majority_winner(ln) if ln.node_count else None
    for i in ln.network.nodes:
        local = local_winner(ln, i)
        expected = winner is not None and local is not None and local != winner
        assert (i in report.under_illusion) == expected
