"""The classification pair ``(C, a)`` and the data derived from it.

``a`` is the positive period of the Lee class and ``lam`` an exact rational in
(0, 1) standing in for the deck contraction ``exp(-a)``. Only ``lam`` enters
arithmetic; ``a`` is used for labelling and equality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from . import exactlat as el
from .cone import Cone, Face, membership, OUTSIDE
from .errors import (
    BadPeriod,
    BadScale,
    DimensionMismatch,
    NotCompactSlice,
    NotGood,
    NotInCone,
    SearchBudgetExceeded,
    ZeroPoint,
)
from .goodness import GoodnessReport, check_good

DEFAULT_SEARCH_BUDGET = 100_000


@dataclass(frozen=True)
class LcsInvariant:
    cone: Cone
    period_a: Fraction
    scale_lambda: Fraction
    report: Optional[GoodnessReport] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class MomentPolytope:
    lee_vector_A: el.IntVector
    vertices: Tuple[el.RatVector, ...]


@dataclass(frozen=True)
class SubtorusRow:
    face: Face
    rank_k: int
    lattice_basis: el.IntMatrix


@dataclass(frozen=True)
class SubtorusTable:
    rows: Tuple[SubtorusRow, ...]
    orbit_space: Optional[Dict] = None


@dataclass(frozen=True)
class EquivalenceWitness:
    """``U`` maps cone 1 onto cone 2; normal ``j`` of cone 1 goes to normal ``perm[j-1]``."""

    matrix_U: el.IntMatrix
    facet_permutation: Tuple[int, ...]


def _check_scale(lam) -> Fraction:
    lam = Fraction(lam)
    if not 0 < lam < 1:
        raise BadScale(f"scale must lie in (0, 1), got {lam}")
    return lam


def make_invariant(c: Cone, a, lam) -> LcsInvariant:
    report = check_good(c)
    if not report.good:
        raise NotGood("cone is not good", report)
    a = Fraction(a)
    if a <= 0:
        raise BadPeriod(f"period must be positive, got {a}")
    return LcsInvariant(c, a, _check_scale(lam), report)


def invariants_equal(i1: LcsInvariant, i2: LcsInvariant) -> bool:
    """Equality of pairs for a fixed torus: same period, same set of normals."""
    if i1.cone.dim != i2.cone.dim:
        raise DimensionMismatch("invariants live in different dimensions")
    return i1.period_a == i2.period_a and set(i1.cone.normals) == set(i2.cone.normals)


def _facet_signatures(c: Cone) -> Tuple[Tuple[int, ...], ...]:
    sig = []
    for j in range(1, c.num_facets + 1):
        sig.append(tuple(sorted(f.codim for f in c.faces if j in f.active)))
    return tuple(sig)


def verify_witness(c1: Cone, c2: Cone, w: EquivalenceWitness) -> bool:
    u = w.matrix_U
    if abs(el.det(u)) != 1:
        return False
    if sorted(w.facet_permutation) != list(range(1, c2.num_facets + 1)):
        return False
    if c1.num_facets != c2.num_facets:
        return False
    inv_t = el.transpose(el.unimodular_inverse(u))
    for j, nu in enumerate(c1.normals):
        image = tuple(el.dot(row, nu) for row in inv_t)
        if image != c2.normals[w.facet_permutation[j] - 1]:
            return False
    return True


def compose_witness(w1: EquivalenceWitness, w2: EquivalenceWitness) -> EquivalenceWitness:
    """Witness for cone 1 -> cone 3 from witnesses 1 -> 2 and 2 -> 3."""
    u = el.matmul(w2.matrix_U, w1.matrix_U)
    perm = tuple(w2.facet_permutation[p - 1] for p in w1.facet_permutation)
    return EquivalenceWitness(u, perm)


def invert_witness(w: EquivalenceWitness) -> EquivalenceWitness:
    perm = [0] * len(w.facet_permutation)
    for j, p in enumerate(w.facet_permutation, start=1):
        perm[p - 1] = j
    return EquivalenceWitness(el.unimodular_inverse(w.matrix_U), tuple(perm))


def gl_equivalent(
    i1: LcsInvariant, i2: LcsInvariant, budget: int = DEFAULT_SEARCH_BUDGET
) -> Optional[EquivalenceWitness]:
    """Search for a unimodular ``U`` carrying the first cone onto the second.

    This is an extension beyond equality of pairs: it identifies invariants
    that differ by an automorphism of the torus.
    """
    c1, c2 = i1.cone, i2.cone
    if c1.dim != c2.dim:
        raise DimensionMismatch("invariants live in different dimensions")
    if i1.period_a != i2.period_a or c1.num_facets != c2.num_facets:
        return None
    return cone_equivalence(c1, c2, budget)


def cone_equivalence(c1: Cone, c2: Cone, budget: int = DEFAULT_SEARCH_BUDGET) -> Optional[EquivalenceWitness]:
    n, d = c1.dim, c1.num_facets
    if d != c2.num_facets or n != c2.dim:
        return None
    s1, s2 = _facet_signatures(c1), _facet_signatures(c2)
    if sorted(s1) != sorted(s2):
        return None
    basis = []
    for j in range(d):
        if el.rank([c1.normals[i] for i in basis] + [c1.normals[j]]) > len(basis):
            basis.append(j)
        if len(basis) == n:
            break
    options = [[t for t in range(d) if s2[t] == s1[j]] for j in basis]
    bound = 1
    for opts in options:
        bound *= len(opts)
    if bound > budget:
        raise SearchBudgetExceeded(f"{bound} candidate matchings exceed budget {budget}")
    targets2 = {nu: t for t, nu in enumerate(c2.normals)}
    src = el.transpose([c1.normals[j] for j in basis])
    src_inv = el.inverse_rational(src)
    for choice in _injective_products(options):
        dst = el.transpose([c2.normals[t] for t in choice])
        # W maps normals of cone 1 to normals of cone 2, W = U^{-T}
        w = el.matmul(dst, src_inv)
        if any(Fraction(x).denominator != 1 for row in w for x in row):
            continue
        w = tuple(tuple(int(x) for x in row) for row in w)
        if abs(el.det(w)) != 1:
            continue
        perm = []
        for nu in c1.normals:
            t = targets2.get(tuple(el.dot(row, nu) for row in w))
            if t is None:
                break
            perm.append(t + 1)
        if len(perm) != d or len(set(perm)) != d:
            continue
        u = el.transpose(el.unimodular_inverse(w))
        return EquivalenceWitness(u, tuple(perm))
    return None


def _injective_products(options, taken=()):
    if not options:
        yield taken
        return
    for t in options[0]:
        if t not in taken:
            yield from _injective_products(options[1:], taken + (t,))


def _check_lee_vector(c: Cone, A: Sequence[int]) -> el.IntVector:
    A = tuple(int(x) for x in A)
    if len(A) != c.dim:
        raise DimensionMismatch(f"Lee vector has length {len(A)}, cone has dim {c.dim}")
    bad = [r.direction for r in c.rays if el.dot(r.direction, A) <= 0]
    if bad:
        raise NotCompactSlice(f"ray {list(bad[0])} pairs nonpositively with A={list(A)}")
    return A


def moment_slice(c: Cone, A: Sequence[int]) -> MomentPolytope:
    """Vertices of the compact slice ``C ∩ {<l, A> = 1}``."""
    A = _check_lee_vector(c, A)
    verts = {
        tuple(Fraction(x, el.dot(r.direction, A)) for x in r.direction) for r in c.rays
    }
    return MomentPolytope(A, tuple(sorted(verts)))


def _scale_exponent(s: Fraction, lam: Fraction) -> int:
    """The unique ``m`` with ``lam < lam**m * s <= 1``."""
    ls = math.log(s.numerator) - math.log(s.denominator)
    ll = math.log(lam.numerator) - math.log(lam.denominator)
    m = math.ceil(ls / -ll)
    while lam**m * s > 1:
        m += 1
    while lam**m * s <= lam:
        m -= 1
    return m


def deck_reduce(l: Sequence, A: Sequence[int], lam, c: Cone) -> Tuple[el.RatVector, int]:
    """Move ``l`` by the deck scaling into the slab ``lam < <l, A> <= 1``.

    Returns ``(rep, m)`` with ``rep = lam**m * l``.
    """
    lam = _check_scale(lam)
    l = tuple(Fraction(x) for x in l)
    if len(l) != c.dim:
        raise DimensionMismatch(f"point has length {len(l)}, cone has dim {c.dim}")
    if not any(l):
        raise ZeroPoint("the apex is not acted on freely")
    if membership(c, l).kind == OUTSIDE:
        raise NotInCone(f"{[str(x) for x in l]} is outside the cone")
    A = _check_lee_vector(c, A)
    m = _scale_exponent(el.dot(l, A), lam)
    f = lam**m
    return tuple(f * x for x in l), m


def orbit_summary(c: Cone, A: Optional[Sequence[int]] = None, a=None) -> SubtorusTable:
    report = check_good(c)
    if not report.good:
        raise NotGood("orbit summary needs a good cone", report)
    rows = tuple(
        SubtorusRow(f, f.codim, f.annihilator_basis) for f in c.faces if 0 < f.codim < c.dim
    )
    orbit = None
    if A is not None and a is not None:
        a = Fraction(a)
        if a <= 0:
            raise BadPeriod(f"period must be positive, got {a}")
        poly = moment_slice(c, A)
        orbit = {
            "polytope_vertices": poly.vertices,
            "polytope_dim": c.dim - 1,
            "circle_period": a,
            "description": "P_A x R/aZ",
        }
    return SubtorusTable(rows, orbit)
