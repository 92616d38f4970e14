"""Rational polyhedral cones given by inward facet normals.

A cone is ``{l : <l, nu_j> >= 0 for all j}`` in Q^n. Facets are labelled
1..d in the order the normals were given; every active set reported by this
package uses those 1-based labels.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import List, Sequence, Tuple

from . import exactlat as el
from .errors import (
    DimensionMismatch,
    EmptyInterior,
    NonPrimitiveNormal,
    NotPointed,
    RedundantNormal,
    ZeroNormal,
)
from .lp import Infeasible, make_problem, solve_feasibility

log = logging.getLogger(__name__)

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"


@dataclass(frozen=True)
class Ray:
    direction: el.IntVector
    active: Tuple[int, ...]


@dataclass(frozen=True)
class Face:
    active: Tuple[int, ...]
    codim: int
    annihilator_basis: el.IntMatrix
    rays: Tuple[el.IntVector, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class Membership:
    kind: str
    active: Tuple[int, ...] = ()


@dataclass(frozen=True)
class Cone:
    dim: int
    normals: el.IntMatrix
    warnings: Tuple[str, ...] = field(default=(), compare=False)

    @property
    def num_facets(self) -> int:
        return len(self.normals)

    def pairings(self, l: Sequence) -> Tuple:
        if len(l) != self.dim:
            raise DimensionMismatch(f"point has length {len(l)}, cone has dim {self.dim}")
        return tuple(el.dot(l, nu) for nu in self.normals)

    def active_set(self, l: Sequence) -> Tuple[int, ...]:
        return tuple(j + 1 for j, p in enumerate(self.pairings(l)) if p == 0)

    @cached_property
    def rays(self) -> Tuple[Ray, ...]:
        return tuple(
            Ray(r, self.active_set(r)) for r in double_description(self.normals, self.dim)
        )

    @cached_property
    def faces(self) -> Tuple[Face, ...]:
        return _face_lattice(self)


def _strict_feasible(normals, dim) -> bool:
    """Is there ``l`` with ``<l, nu> >= 1`` for every normal (an interior point)?"""
    rows = [(nu, ">=", 1) for nu in normals]
    return not isinstance(solve_feasibility(make_problem(dim, rows)), Infeasible)


def _implied(normals, dim, j) -> bool:
    """Is ``<l, nu_j> >= 0`` implied by the other inequalities?"""
    rows = [(nu, ">=", 0) for i, nu in enumerate(normals) if i != j]
    rows.append((normals[j], "<=", -1))
    return isinstance(solve_feasibility(make_problem(dim, rows)), Infeasible)


def build_cone(dim: int, normals: Sequence[Sequence[int]], normalize: bool = False) -> Cone:
    """Validate facet normals and return a :class:`Cone`.

    With ``normalize`` set, non-primitive normals are divided by their gcd and
    redundant ones dropped, each change recorded in ``Cone.warnings``.
    Otherwise such input raises.
    """
    if dim < 1:
        raise DimensionMismatch("dim must be at least 1")
    if not normals:
        raise EmptyInterior("a cone needs at least one normal")
    warnings: List[str] = []
    vecs = []
    for j, nu in enumerate(normals, start=1):
        nu = tuple(int(x) for x in nu)
        if len(nu) != dim:
            raise DimensionMismatch(f"normal {j} has length {len(nu)}, expected {dim}")
        if not any(nu):
            raise ZeroNormal(f"normal {j} is zero")
        if not el.is_primitive(nu):
            if not normalize:
                raise NonPrimitiveNormal(f"normal {j} = {list(nu)} is not primitive")
            prim = el.primitive(nu)
            warnings.append(f"normal {j} {list(nu)} divided by {el.content(nu)} to {list(prim)}")
            nu = prim
        vecs.append(nu)

    if not _strict_feasible(vecs, dim):
        raise EmptyInterior("the cone has empty interior")
    if el.rank(vecs) < dim:
        raise NotPointed("normals have rank below dim, so the cone contains a line")

    kept = list(range(len(vecs)))
    for j in range(len(vecs)):
        current = [vecs[i] for i in kept]
        pos = kept.index(j)
        if _implied(current, dim, pos):
            if not normalize:
                raise RedundantNormal(f"normal {j + 1} = {list(vecs[j])} is implied by the others")
            warnings.append(f"normal {j + 1} {list(vecs[j])} is redundant and was dropped")
            kept.remove(j)
    for w in warnings:
        log.info(w)
    return Cone(dim, tuple(vecs[i] for i in kept), tuple(warnings))


def _initial_rays(basis_rows, dim):
    inv = el.inverse_rational(basis_rows)
    return [el.integral_direction(col) for col in zip(*inv)]


def double_description(normals: Sequence[Sequence[int]], dim: int) -> List[el.IntVector]:
    """Extreme rays of a pointed cone ``{l : <l, nu> >= 0}``.

    Normals are inserted in index order. Two rays are combined only if the
    processed constraints tight at both have rank ``dim - 2``.
    """
    normals = [tuple(nu) for nu in normals]
    chosen: List[int] = []
    for j, nu in enumerate(normals):
        if el.rank([normals[i] for i in chosen] + [nu]) > len(chosen):
            chosen.append(j)
        if len(chosen) == dim:
            break
    if len(chosen) < dim:
        raise NotPointed("normals do not span, the cone is not pointed")
    rays = _initial_rays([normals[i] for i in chosen], dim)
    processed = list(chosen)
    for j, nu in enumerate(normals):
        if j in chosen:
            continue
        vals = [el.dot(r, nu) for r in rays]
        plus = [r for r, v in zip(rays, vals) if v > 0]
        zero = [r for r, v in zip(rays, vals) if v == 0]
        minus = [(r, v) for r, v in zip(rays, vals) if v < 0]
        pos = [(r, v) for r, v in zip(rays, vals) if v > 0]
        tight = {r: frozenset(i for i in processed if el.dot(r, normals[i]) == 0) for r in rays}
        new = []
        for p, vp in pos:
            for m, vm in minus:
                common = tight[p] & tight[m]
                if len(common) < dim - 2:
                    continue
                if el.rank([normals[i] for i in common]) != dim - 2:
                    continue
                new.append(el.primitive([vp * a - vm * b for a, b in zip(m, p)]))
        rays = sorted(set(plus + zero + new))
        processed.append(j)
    return sorted(set(rays))


def rays(c: Cone) -> Tuple[Ray, ...]:
    return c.rays


def cone_from_rays(generators: Sequence[Sequence[int]]) -> Cone:
    """H-representation of the cone generated by ``generators`` (dual double description)."""
    gens = [el.primitive(g) for g in generators]
    dim = len(gens[0])
    normals = double_description(gens, dim)
    return Cone(dim, tuple(normals))


def _face_lattice(c: Cone) -> Tuple[Face, ...]:
    ray_dirs = [r.direction for r in c.rays]
    on_facet = [
        frozenset(i for i, r in enumerate(c.rays) if j + 1 in r.active)
        for j in range(c.num_facets)
    ]
    seen = {frozenset(range(len(ray_dirs)))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for s in frontier:
            for f in on_facet:
                t = s & f
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    faces = []
    for s in seen:
        active = tuple(j + 1 for j in range(c.num_facets) if s <= on_facet[j])
        basis = tuple(c.normals[j - 1] for j in active)
        codim = el.rank(basis) if basis else 0
        faces.append(Face(active, codim, basis, tuple(ray_dirs[i] for i in sorted(s))))
    faces.sort(key=lambda f: (f.codim, f.active))
    return tuple(faces)


def face_lattice(c: Cone) -> Tuple[Face, ...]:
    """All nonempty faces, apex and the whole cone included, ordered by (codim, active)."""
    return c.faces


def membership(c: Cone, l: Sequence) -> Membership:
    vals = c.pairings([Fraction(x) for x in l])
    if any(v < 0 for v in vals):
        return Membership(OUTSIDE)
    active = tuple(j + 1 for j, v in enumerate(vals) if v == 0)
    return Membership(BOUNDARY, active) if active else Membership(INTERIOR)


def transform(c: Cone, u: Sequence[Sequence[int]]) -> Cone:
    """Image ``U(C)`` of the cone under a unimodular ``U``; normals map by ``U^{-T}``."""
    inv_t = el.transpose(el.unimodular_inverse(u))
    normals = tuple(tuple(el.dot(row, nu) for row in inv_t) for nu in c.normals)
    return Cone(c.dim, normals)


__all__ = [
    "Cone",
    "Face",
    "Membership",
    "Ray",
    "build_cone",
    "cone_from_rays",
    "double_description",
    "face_lattice",
    "membership",
    "rays",
    "transform",
    "INTERIOR",
    "BOUNDARY",
    "OUTSIDE",
]
