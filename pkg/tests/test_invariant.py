import random
from fractions import Fraction

import pytest

from conftest import random_cones, random_unimodular
from toriclcs import exactlat as el
from toriclcs.cone import build_cone, transform
from toriclcs.errors import (
    BadPeriod,
    BadScale,
    NotCompactSlice,
    NotGood,
    NotInCone,
    SearchBudgetExceeded,
    ZeroPoint,
)
from toriclcs.goodness import check_good
from toriclcs.invariant import (
    EquivalenceWitness,
    compose_witness,
    cone_equivalence,
    deck_reduce,
    gl_equivalent,
    invariants_equal,
    invert_witness,
    make_invariant,
    moment_slice,
    orbit_summary,
    verify_witness,
)

HALF = Fraction(1, 2)
ORTHANT = build_cone(2, [(1, 0), (0, 1)])
SQUARE = build_cone(3, [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
NONGOOD = build_cone(3, [(1, 0, 0), (1, 2, 0), (0, 0, 1)])


def inv(normals, a=1, lam=HALF):
    return make_invariant(build_cone(len(normals[0]), normals), a, lam)


def test_make_invariant():
    i = make_invariant(ORTHANT, 1, HALF)
    assert i.period_a == 1 and i.scale_lambda == HALF and i.report.good


def test_make_invariant_errors():
    with pytest.raises(NotGood) as err:
        make_invariant(NONGOOD, 1, HALF)
    assert err.value.report.violation.active == (1, 2)
    with pytest.raises(BadPeriod):
        make_invariant(ORTHANT, 0, HALF)
    for lam in (0, 1, 2, -HALF):
        with pytest.raises(BadScale):
            make_invariant(ORTHANT, 1, lam)


def test_invariants_equal():
    base = inv([(1, 0), (0, 1)])
    assert invariants_equal(base, inv([(0, 1), (1, 0)]))
    assert not invariants_equal(base, inv([(1, 0), (0, 1)], a=2))
    assert not invariants_equal(base, inv([(1, 0), (-1, 2)]))


def test_gl_equivalent_skew():
    w = gl_equivalent(inv([(1, 0), (0, 1)]), inv([(1, 0), (-1, 1)]))
    assert w is not None
    assert w.matrix_U == ((1, 0), (1, 1))
    assert verify_witness(ORTHANT, build_cone(2, [(1, 0), (-1, 1)]), w)


def test_gl_equivalent_negative():
    assert gl_equivalent(inv([(1, 0), (0, 1)]), inv([(1, 0), (-1, 2)])) is None
    assert cone_equivalence(ORTHANT, SQUARE) is None
    assert gl_equivalent(inv([(1, 0), (0, 1)]), inv([(1, 0), (-1, 1)], a=3)) is None


def test_search_budget():
    with pytest.raises(SearchBudgetExceeded):
        cone_equivalence(SQUARE, SQUARE, budget=2)


def test_witness_algebra():
    rng = random.Random(5)
    for c in random_cones(12, 25, max_n=3):
        u1, u2 = random_unimodular(rng, c.dim), random_unimodular(rng, c.dim)
        c2 = transform(c, u1)
        c3 = transform(c2, u2)
        w1 = cone_equivalence(c, c2)
        w2 = cone_equivalence(c2, c3)
        assert w1 is not None and w2 is not None
        assert verify_witness(c, c2, w1) and verify_witness(c2, c3, w2)
        assert verify_witness(c, c3, compose_witness(w1, w2))
        assert verify_witness(c2, c, invert_witness(w1))
        assert check_good(c2).good == check_good(c).good


def test_reflexive_and_symmetric(atlas):
    for c in atlas.values():
        w = cone_equivalence(c, c)
        assert w is not None and verify_witness(c, c, w)
    a, b = atlas["orthant2"], atlas["skew2"]
    w = cone_equivalence(a, b)
    back = cone_equivalence(b, a)
    assert verify_witness(b, a, back) and verify_witness(b, a, invert_witness(w))


def test_equal_implies_identity_witness():
    i1, i2 = inv([(1, 0), (0, 1)]), inv([(0, 1), (1, 0)])
    assert invariants_equal(i1, i2)
    w = gl_equivalent(i1, i2)
    assert w is not None and verify_witness(i1.cone, i2.cone, w)
    assert verify_witness(i1.cone, i2.cone, EquivalenceWitness(el.identity(2), (2, 1)))


def test_bad_witness_rejected():
    assert not verify_witness(ORTHANT, ORTHANT, EquivalenceWitness(((2, 0), (0, 1)), (1, 2)))
    assert not verify_witness(ORTHANT, ORTHANT, EquivalenceWitness(((0, 1), (1, 0)), (1, 2)))


def test_moment_slice_examples():
    p = moment_slice(ORTHANT, (1, 1))
    assert set(p.vertices) == {(1, 0), (0, 1)}
    p = moment_slice(SQUARE, (0, 0, 1))
    assert set(p.vertices) == {(x, y, 1) for x in (1, -1) for y in (1, -1)}
    with pytest.raises(NotCompactSlice):
        moment_slice(ORTHANT, (1, -1))


def test_moment_slice_properties():
    rng = random.Random(2)
    for c in random_cones(14, 30, max_n=4):
        # a sum of normals pairs positively with every ray
        A = tuple(sum(col) for col in zip(*c.normals))
        p = moment_slice(c, A)
        assert len(p.vertices) == len(c.rays)
        for v in p.vertices:
            assert el.dot(v, A) == 1
            assert all(x >= 0 for x in c.pairings(v))


@pytest.mark.parametrize(
    "l, rep, m",
    [
        ((4, 0), (1, 0), 2),
        ((1, 0), (1, 0), 0),
        ((Fraction(1, 3), Fraction(1, 3)), (Fraction(1, 3), Fraction(1, 3)), 0),
        ((Fraction(1, 8), 0), (1, 0), -3),
    ],
)
def test_deck_reduce_examples(l, rep, m):
    assert deck_reduce(l, (1, 1), HALF, ORTHANT) == (tuple(Fraction(x) for x in rep), m)


def test_deck_reduce_errors():
    with pytest.raises(ZeroPoint):
        deck_reduce((0, 0), (1, 1), HALF, ORTHANT)
    with pytest.raises(NotInCone):
        deck_reduce((-1, 1), (1, 1), HALF, ORTHANT)
    with pytest.raises(BadScale):
        deck_reduce((1, 1), (1, 1), 1, ORTHANT)


def test_deck_reduce_equivariance():
    rng = random.Random(4)
    for _ in range(40):
        l = (Fraction(rng.randint(1, 50), rng.randint(1, 50)), Fraction(rng.randint(0, 50), rng.randint(1, 50)))
        lam = Fraction(rng.randint(1, 9), 10)
        rep, m = deck_reduce(l, (1, 1), lam, ORTHANT)
        assert deck_reduce(rep, (1, 1), lam, ORTHANT) == (rep, 0)
        for j in (-3, -1, 2, 5):
            moved = tuple(lam**j * x for x in l)
            assert deck_reduce(moved, (1, 1), lam, ORTHANT) == (rep, m - j)


def test_deck_reduce_extreme_scales():
    lam = Fraction(999, 1000)
    rep, m = deck_reduce((Fraction(10**30), 1), (1, 1), lam, ORTHANT)
    s = rep[0] + rep[1]
    assert lam < s <= 1
    rep, m = deck_reduce((Fraction(1, 10**40), 0), (1, 1), Fraction(1, 10**6), ORTHANT)
    assert (rep, m) == ((Fraction(1, 10**4), 0), -6)


def test_orbit_summary_rows():
    assert [r.rank_k for r in orbit_summary(ORTHANT).rows] == [1, 1]
    assert [r.lattice_basis for r in orbit_summary(ORTHANT).rows] == [((1, 0),), ((0, 1),)]
    assert [r.rank_k for r in orbit_summary(SQUARE).rows] == [1] * 4 + [2] * 4
    orth3 = build_cone(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert [r.rank_k for r in orbit_summary(orth3).rows] == [1] * 3 + [2] * 3


def test_orbit_summary_orbit_space():
    t = orbit_summary(SQUARE, (0, 0, 1), 2)
    assert t.orbit_space["polytope_dim"] == 2
    assert t.orbit_space["circle_period"] == 2
    assert len(t.orbit_space["polytope_vertices"]) == 4
    with pytest.raises(NotGood):
        orbit_summary(NONGOOD)
