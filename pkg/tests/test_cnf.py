import itertools

import pytest
from hypothesis import given, strategies as st

from majority_illusion.cnf import (
    CnfFormula,
    brute_force_sat,
    canonical,
    dpll_sat,
    enumerate_2p2n,
    enumerate_3cnf,
    evaluate,
    generate_2p2n,
    generate_3cnf,
    is_2p2n,
    is_3cnf,
    parse_dimacs,
    satisfies,
    serialize_dimacs,
)
from majority_illusion.errors import CapacityError, DomainError, GenerationError, ParseError


@st.composite
def formulas(draw, max_vars=6, max_clauses=8):
    m = draw(st.integers(1, max_vars))
    literal = st.integers(1, m).flatmap(lambda v: st.sampled_from([v, -v]))
    clauses = draw(st.lists(st.lists(literal, min_size=1, max_size=4), max_size=max_clauses))
    return CnfFormula(m, tuple(map(tuple, clauses)))


def truth_table_sat(f):
    for bits in itertools.product([False, True], repeat=f.variable_count):
        model = {v + 1: bits[v] for v in range(f.variable_count)}
        if evaluate(f, model):
            return model
    return None


def test_parse_basic():
    f = parse_dimacs("c hello\np cnf 3 2\n1 -2 0\n2 3\n-1 0\n")
    assert f == CnfFormula(3, ((1, -2), (2, 3, -1)))


def test_percent_terminates_input():
    f = parse_dimacs("p cnf 1 1\n1 0\n%\n0\n")
    assert f.clauses == ((1,),)


@pytest.mark.parametrize(
    "text, line",
    [
        ("1 2 0\n", 1),
        ("p cnf 2 1\n1 x 0\n", 2),
        ("p cnf 2 1\n1 3 0\n", 2),
        ("p cnf 2 2\n1 0\n", 2),
        ("p cnf 2 1\n1 2\n", 2),
        ("p dnf 2 1\n", 1),
        ("p cnf 2 1\np cnf 2 1\n", 2),
        ("c only comments\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_dimacs(text)
    assert info.value.line == line


@given(formulas())
def test_dimacs_round_trip(f):
    assert parse_dimacs(serialize_dimacs(f, comments=["x"])) == f


def test_formula_validation():
    with pytest.raises(DomainError):
        CnfFormula(2, ((3,),))
    with pytest.raises(DomainError):
        CnfFormula(2, ((0, 1),))
    assert CnfFormula.of([(1, -4)]).variable_count == 4
    assert str(CnfFormula.of([(1, -2)])) == "(p1 | ~p2)"


def test_classifiers():
    assert is_3cnf(CnfFormula.of([(1, 1, 2)]))
    assert not is_3cnf(CnfFormula.of([(1, 1, 2)]), strict=True)
    assert not is_3cnf(CnfFormula.of([(1, 2)]))
    xor = CnfFormula.of([(1, 2), (-1, -2), (1, -2), (-1, 2)])
    assert is_2p2n(xor)
    assert not is_2p2n(CnfFormula.of([(1, -1)]))
    assert not is_2p2n(CnfFormula(0, ()))


def test_sat_examples():
    f = CnfFormula.of([(1, 2), (-1,)])
    assert brute_force_sat(f) == {1: False, 2: True}
    assert dpll_sat(f) == {1: False, 2: True}
    assert brute_force_sat(CnfFormula(0, ())) == {}
    assert brute_force_sat(CnfFormula(1, ((),))) is None
    xor = CnfFormula.of([(1, 2), (-1, -2), (1, -2), (-1, 2)])
    assert brute_force_sat(xor) is None and dpll_sat(xor) is None


def test_brute_force_cap():
    with pytest.raises(CapacityError):
        brute_force_sat(CnfFormula(27, ((1,),)))


@given(formulas())
def test_oracles_agree_with_truth_table(f):
    reference = truth_table_sat(f)
    brute = brute_force_sat(f)
    dpll = dpll_sat(f)
    assert brute == reference  # same lexicographic order: x1 first, False before True
    assert (dpll is None) == (reference is None)
    if dpll is not None:
        assert satisfies(f, dpll)


def test_satisfies_tolerates_partial_models():
    assert not satisfies(CnfFormula.of([(1, 2)]), {1: False})


@given(st.integers(1, 8), st.integers(1, 10), st.integers(0, 2**31))
def test_generate_3cnf(m, n, seed):
    f = generate_3cnf(m, n, seed)
    assert f.clause_count == n and f.variable_count == m
    assert is_3cnf(f, strict=m >= 3)
    assert f == generate_3cnf(m, n, seed)


@given(st.integers(1, 6), st.integers(0, 2**31))
def test_generate_2p2n(m, seed):
    f = generate_2p2n(m, seed)
    assert is_2p2n(f)
    assert all(len(c) in (2, 3) for c in f.clauses)
    assert f == generate_2p2n(m, seed)


def test_generator_errors():
    with pytest.raises(GenerationError):
        generate_3cnf(0, 1, 0)
    with pytest.raises(GenerationError):
        generate_2p2n(0, 0)
    with pytest.raises(GenerationError):
        generate_2p2n(1, 0, sizes=(3,))


def test_enumeration_counts():
    # multiset partitions of {a, a, b, b} number 9
    assert len(list(enumerate_2p2n(1))) == 9
    assert len(list(enumerate_2p2n(2))) == 712
    # one variable: 4 possible clauses, any non-empty subset of them
    assert len(list(enumerate_3cnf(1, 3))) == 14
    assert len(list(enumerate_3cnf(2, 3))) == 1322


def test_enumerations_are_valid_and_distinct():
    seen = set()
    for f in enumerate_2p2n(2):
        assert is_2p2n(f)
        key = canonical(f).clauses
        assert key not in seen
        seen.add(key)
    for f in enumerate_3cnf(2, 2):
        assert is_3cnf(f)
        assert {abs(x) for c in f.clauses for x in c} == {1, 2}
