from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from majority_illusion.errors import DomainError, FractionError, PreconditionError
from majority_illusion.thresholds import (
    as_fraction,
    at_least_fraction,
    format_fraction,
    min_count_for,
    threshold_h_plus,
    threshold_h_plus_scan,
    threshold_h_sharp,
    threshold_h_sharp_scan,
    threshold_h_star,
    threshold_h_star_scan,
)

GRID = sorted({Fraction(a, b) for b in range(1, 13) for a in range(0, b + 1)})


@pytest.mark.parametrize("k, q, expected", [(10, "1", 0), (4, "3/4", 2), (3, "2/3", 3)])
def test_h_star_examples(k, q, expected):
    assert threshold_h_star(k, q) == expected


@pytest.mark.parametrize(
    "m, k, q, expected",
    [
        (1, 4, "1/2", 5),
        # the largest h keeping (1 + h)/(6 + h) below 2/3 is 8: 9/14 < 2/3 <= 10/15
        (1, 2, "2/3", 8),
    ],
)
def test_h_sharp_examples(m, k, q, expected):
    assert threshold_h_sharp(m, k, q) == expected
    assert threshold_h_sharp_scan(m, k, q) == expected


@pytest.mark.parametrize("m, k, q, expected", [(3, 4, "1/2", 3), (2, 2, "1/3", 5)])
def test_h_plus_examples(m, k, q, expected):
    assert threshold_h_plus(m, k, q) == expected


def test_closed_forms_match_scans_on_grid():
    for k in range(1, 51):
        for q in GRID:
            if Fraction(1, 2) < q <= 1:
                assert threshold_h_star(k, q) == threshold_h_star_scan(k, q)
            if not 0 < q < 1:
                continue
            for m in range(1, 51):
                if m * q.denominator < q.numerator * k:
                    assert threshold_h_sharp(m, k, q) == threshold_h_sharp_scan(m, k, q)
                else:
                    assert threshold_h_plus(m, k, q) == threshold_h_plus_scan(m, k, q)


fractions_in_unit = st.builds(
    lambda b, a: Fraction(a % b or 1, b), st.integers(2, 40), st.integers(1, 1000)
)


@given(st.integers(1, 500), st.integers(1, 500), fractions_in_unit)
def test_h_sharp_or_plus_defining_pairs(m, k, q):
    a, b = q.numerator, q.denominator
    if b * m < a * k:
        h = threshold_h_sharp(m, k, q)
        assert b * (m + h) < a * (k + h + 4)
        assert b * (m + h + 1) >= a * (k + h + 5)
    else:
        h = threshold_h_plus(m, k, q)
        assert h >= 1
        assert b * m < a * (k + h)
        assert b * m >= a * (k + h - 1)


@given(st.integers(1, 1000), st.integers(2, 60), st.integers(0, 1000))
def test_h_star_is_maximal(k, b, seed):
    a = b // 2 + 1 + seed % (b - b // 2)
    q = Fraction(min(a, b), b)
    h = threshold_h_star(k, q)
    assert (k + h) / Fraction(k + 2 * h) >= q
    assert (k + h + 1) / Fraction(k + 2 * h + 2) < q


@pytest.mark.parametrize("q", ["1/2", "0", "5/4", "-1/3"])
def test_h_star_rejects_out_of_range(q):
    with pytest.raises(DomainError):
        threshold_h_star(5, q)


def test_preconditions():
    with pytest.raises(PreconditionError):
        threshold_h_sharp(3, 4, "1/2")
    with pytest.raises(PreconditionError):
        threshold_h_plus(1, 4, "1/2")
    with pytest.raises(DomainError):
        threshold_h_sharp(1, 4, "1")
    with pytest.raises(DomainError):
        threshold_h_plus(0, 4, "1/2")


@pytest.mark.parametrize(
    "text, expected",
    [("3/4", Fraction(3, 4)), (" 6 / 8 ", Fraction(3, 4)), ("1", Fraction(1)), ((2, 3), Fraction(2, 3)), (0, Fraction(0))],
)
def test_as_fraction(text, expected):
    assert as_fraction(text) == expected


@pytest.mark.parametrize("bad", ["1/0", "0.75", "half", 0.5, True, (1, 0), None])
def test_as_fraction_rejects(bad):
    with pytest.raises(FractionError):
        as_fraction(bad)


def test_format_is_lowest_terms():
    assert format_fraction(as_fraction("6/8")) == "3/4"


@given(st.integers(0, 200), st.integers(1, 200), st.integers(1, 50), st.integers(0, 50))
def test_at_least_fraction_matches_exact_comparison(count, total, b, a):
    q = Fraction(min(a, b), b)
    assert at_least_fraction(count, total, q) == (Fraction(count) >= q * total)
    t = min_count_for(total, q)
    assert at_least_fraction(t, total, q) and not at_least_fraction(t - 1, total, q)
