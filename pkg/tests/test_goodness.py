import random

import pytest

from conftest import random_cone, random_cones, random_unimodular
from toriclcs import exactlat as el
from toriclcs.cone import build_cone, transform
from toriclcs.errors import TooLarge
from toriclcs.goodness import brute_force_good, check_good, check_good_normals

NONGOOD = [(1, 0, 0), (1, 2, 0), (0, 0, 1)]


@pytest.mark.parametrize("name", ["orthant2", "orthant3", "orthant4", "square_cone", "skew2", "wedge2"])
def test_good_atlas(atlas, name):
    rep = check_good(atlas[name])
    assert rep.good and rep.interior_ok and rep.violation is None
    assert all(cert.valid for cert in rep.certificates)


def test_orthant3_certificates():
    rep = check_good(build_cone(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
    assert len(rep.certificates) == 6
    assert all(cert.saturation.snf_diagonal == (1,) * cert.face.codim for cert in rep.certificates)


def test_nongood_violation():
    rep = check_good(build_cone(3, NONGOOD))
    assert not rep.good
    assert rep.violation.active == (1, 2)
    assert rep.violation_certificate.saturation.snf_diagonal == (1, 2)


@pytest.mark.parametrize(
    "dim, normals, expected",
    [(2, [(1, 0), (0, 1)], True), (2, [(1, 0), (-1, 2)], True), (3, NONGOOD, False)],
)
def test_brute_force_examples(dim, normals, expected):
    assert brute_force_good(build_cone(dim, normals)) is expected


def test_brute_force_guard():
    # vertices of a convex parabola arc give 13 irredundant facets
    normals = [(k, k * k - 50, 100) for k in range(-6, 7)]
    c = build_cone(3, normals, normalize=True)
    assert c.num_facets == 13
    with pytest.raises(TooLarge):
        brute_force_good(c)


def test_check_good_normals_degenerate():
    assert check_good_normals(2, [(1, 0)]).interior_ok is False
    assert check_good_normals(2, [(1, 0), (-1, 0)]).good is False
    assert check_good_normals(3, NONGOOD).interior_ok is True


def test_oracle_agreement_atlas(atlas):
    for c in atlas.values():
        assert check_good(c).good == brute_force_good(c)


def test_unimodular_invariance():
    rng = random.Random(17)
    for c in random_cones(4, 40, max_n=3):
        u = random_unimodular(rng, c.dim)
        assert abs(el.det(u)) == 1
        assert check_good(transform(c, u)).good == check_good(c).good


def test_dim_two_good_iff_primitive():
    rng = random.Random(9)
    seen = 0
    while seen < 60:
        normals = [(rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(2)]
        if not all(any(v) for v in normals):
            continue
        rep = check_good_normals(2, normals, normalize=True)
        if not rep.interior_ok:
            continue
        seen += 1
        # after normalization normals are primitive, and the cone is pointed
        assert rep.good
    c = random_cone(rng, 2, 2)
    assert c is None or check_good(c).good


def test_violations_recheckable():
    found = 0
    for c in random_cones(8, 80, max_n=3, min_n=3):
        rep = check_good(c)
        if rep.good:
            continue
        found += 1
        f = rep.violation
        vecs = [c.normals[j - 1] for j in f.active]
        recount = el.rank(vecs)
        # either too many facets meet there or the normals miss a sublattice
        assert len(f.active) != recount or max(el.snf_diagonal(vecs)) > 1
        centre = tuple(sum(r[i] for r in f.rays) for i in range(c.dim))
        assert c.active_set(centre) == f.active
    assert found > 0
