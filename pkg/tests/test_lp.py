from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from toriclcs.lp import (
    FarkasCertificate,
    Feasible,
    Infeasible,
    check_certificate,
    check_witness,
    make_problem,
    solve_feasibility,
)


def test_interval_feasible():
    lp = make_problem(1, [((1,), ">=", 1), ((1,), "<=", 2)])
    res = solve_feasibility(lp)
    assert res == Feasible((Fraction(1),))


def test_interval_infeasible():
    lp = make_problem(1, [((1,), ">=", 1), ((1,), "<=", 0)])
    res = solve_feasibility(lp)
    assert isinstance(res, Infeasible)
    assert res.certificate.multipliers == (1, 1)


def test_equalities():
    lp = make_problem(2, [((1, 1), "=", 1), ((1, -1), "=", 3)])
    assert solve_feasibility(lp) == Feasible((Fraction(2), Fraction(-1)))
    lp = make_problem(2, [((1, 1), "=", 1), ((2, 2), "=", 3)])
    res = solve_feasibility(lp)
    assert isinstance(res, Infeasible)
    assert check_certificate(lp, res.certificate)


def test_bad_certificates_rejected():
    lp = make_problem(1, [((1,), ">=", 1), ((1,), "<=", 0)])
    assert not check_certificate(lp, FarkasCertificate((Fraction(1), Fraction(2))))
    assert not check_certificate(lp, FarkasCertificate((Fraction(-1), Fraction(-1))))
    assert not check_certificate(lp, FarkasCertificate((Fraction(1),)))


def test_degenerate_system():
    # many constraints tight at the origin
    rows = [((1, 0), ">=", 0), ((0, 1), ">=", 0), ((1, 1), ">=", 0), ((1, -1), "<=", 0),
            ((-1, 1), "<=", 0), ((1, 1), "<=", 0)]
    res = solve_feasibility(make_problem(2, rows))
    assert isinstance(res, Feasible)
    rows.append(((1, 2), ">=", 1))
    res = solve_feasibility(make_problem(2, rows))
    assert isinstance(res, Infeasible)


def _box_oracle(rows):
    """Feasibility by scanning a rational grid; only used on 2-variable problems
    whose vertices lie on that grid."""
    grid = [Fraction(i, 2) for i in range(-12, 13)]
    return any(check_witness(make_problem(2, rows), (x, y)) for x in grid for y in grid)


small_rows = st.lists(
    st.tuples(
        st.tuples(st.integers(-2, 2), st.integers(-2, 2)).filter(lambda a: a != (0, 0)),
        st.sampled_from(["<=", ">="]),
        st.integers(-3, 3),
    ),
    min_size=1,
    max_size=5,
)


@settings(max_examples=150, deadline=None)
@given(small_rows)
def test_random_small_systems(rows):
    lp = make_problem(2, rows)
    res = solve_feasibility(lp)
    if isinstance(res, Feasible):
        assert check_witness(lp, res.witness)
    else:
        assert check_certificate(lp, res.certificate)
        assert not _box_oracle(rows)


def test_unconstrained_variable():
    lp = make_problem(3, [((1, 0, 0), ">=", 5), ((0, 1, 0), "<=", -2)])
    res = solve_feasibility(lp)
    assert isinstance(res, Feasible) and check_witness(lp, res.witness)


def test_relation_validation():
    with pytest.raises(ValueError):
        make_problem(1, [((1,), "<", 0)])
