"""Good-cone test with per-face certificates, plus a brute-force oracle.

A cone is good when its interior is nonempty and every face of codimension
``k`` with ``0 < k < n`` lies on exactly ``k`` facets whose normals extend to
a Z-basis of Z^n.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Tuple

from . import exactlat as el
from .cone import Cone, Face, build_cone
from .errors import EmptyInterior, NotPointed, TooLarge
from .lp import Infeasible, make_problem, solve_feasibility

BRUTE_FORCE_MAX_FACETS = 12


@dataclass(frozen=True)
class FaceCertificate:
    face: Face
    count_ok: bool
    saturation: el.SaturationReport

    @property
    def valid(self) -> bool:
        return self.count_ok and self.saturation.saturated


@dataclass(frozen=True)
class GoodnessReport:
    good: bool
    interior_ok: bool
    certificates: Tuple[FaceCertificate, ...] = ()
    violation: Optional[Face] = None

    @property
    def violation_certificate(self) -> Optional[FaceCertificate]:
        for cert in self.certificates:
            if cert.face == self.violation:
                return cert
        return None


def face_certificate(c: Cone, face: Face) -> FaceCertificate:
    count_ok = len(face.active) == face.codim
    return FaceCertificate(face, count_ok, el._saturation(face.annihilator_basis))


def check_good(c: Cone) -> GoodnessReport:
    """Certify goodness face by face; faces are visited in (codim, active) order."""
    certs = tuple(
        face_certificate(c, f) for f in c.faces if 0 < f.codim < c.dim
    )
    violation = next((cert.face for cert in certs if not cert.valid), None)
    return GoodnessReport(violation is None, True, certs, violation)


def check_good_normals(dim: int, normals: Sequence[Sequence[int]], normalize: bool = False) -> GoodnessReport:
    """Goodness as a predicate on raw normals.

    A cone with empty interior or containing a line is reported as not good
    with ``interior_ok`` false instead of raising.
    """
    try:
        c = build_cone(dim, normals, normalize=normalize)
    except (NotPointed, EmptyInterior):
        return GoodnessReport(False, False)
    return check_good(c)


def _feasible(dim, rows) -> bool:
    return not isinstance(solve_feasibility(make_problem(dim, rows)), Infeasible)


def brute_force_good(c: Cone) -> bool:
    """Exhaustive check over all facet subsets, independent of the face lattice.

    Each subset's zero set is probed by LP, its maximal active set recovered
    by further LPs, and saturation decided by the gcd of maximal minors
    rather than by Smith normal form.
    """
    d, n = c.num_facets, c.dim
    if d > BRUTE_FORCE_MAX_FACETS:
        raise TooLarge(f"{d} facets exceeds the brute-force guard of {BRUTE_FORCE_MAX_FACETS}")
    normals = c.normals
    if not _feasible(n, [(nu, ">=", 1) for nu in normals]):
        return False
    if el.rank(normals) < n:
        return False
    total = tuple(sum(col) for col in zip(*normals))
    trivial = []
    checked = set()
    for size in range(1, d + 1):
        for subset in combinations(range(d), size):
            s = set(subset)
            if any(t <= s for t in trivial):
                continue
            base = [(normals[j], "=", 0) for j in subset]
            base += [(normals[j], ">=", 0) for j in range(d) if j not in s]
            if not _feasible(n, base + [(total, "=", 1)]):
                trivial.append(s)
                continue
            active = set(subset)
            for j in range(d):
                if j not in active and not _feasible(n, base + [(normals[j], ">=", 1)]):
                    active.add(j)
            key = frozenset(active)
            if key in checked:
                continue
            checked.add(key)
            vecs = [normals[j] for j in sorted(active)]
            codim = el.rank(vecs)
            if not 0 < codim < n:
                continue
            if len(vecs) != codim or el.minors_gcd(vecs) != 1:
                return False
    return True
