"""Exact rational feasibility LP with Farkas certificates.

Variables are free (sign unrestricted). Every constraint is read in the
normalized form ``sign * (a . x) <= sign * b``, with ``sign = -1`` for ``>=``
rows. A Farkas certificate is a multiplier per row, nonnegative on inequality
rows and of any sign on ``=`` rows, whose combination of normalized rows is
``0 <= c`` with ``c < 0``.

The solver is a dictionary simplex on a sparse exact tableau. Free variables
are pivoted into the basis first and never leave it; phase one uses a single
auxiliary variable and Bland's rule.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import CertificateError, CycleGuardTripped, DimensionMismatch

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

RELATIONS = ("<=", ">=", "=")


@dataclass(frozen=True)
class Constraint:
    coefficients: Tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")


@dataclass(frozen=True)
class LPProblem:
    num_vars: int
    constraints: Tuple[Constraint, ...]
    description: str = ""

    def __post_init__(self):
        for c in self.constraints:
            if len(c.coefficients) != self.num_vars:
                raise DimensionMismatch("constraint length differs from num_vars")


@dataclass(frozen=True)
class FarkasCertificate:
    multipliers: Tuple[Fraction, ...]


@dataclass(frozen=True)
class Feasible:
    witness: Tuple[Fraction, ...]
    pivots: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Infeasible:
    certificate: FarkasCertificate
    pivots: int = field(default=0, compare=False)


LPResult = Union[Feasible, Infeasible]


def make_problem(num_vars, rows, description="") -> LPProblem:
    """Build an :class:`LPProblem` from ``(coefficients, relation, rhs)`` triples."""
    def frac(x):
        return x if type(x) is Fraction else Fraction(x)

    cons = tuple(Constraint(tuple(map(frac, a)), rel, frac(b)) for a, rel, b in rows)
    return LPProblem(num_vars, cons, description)


def _sign(rel: str) -> int:
    return -1 if rel == ">=" else 1


def check_witness(lp: LPProblem, x: Sequence) -> bool:
    if len(x) != lp.num_vars:
        return False
    for c in lp.constraints:
        lhs = sum(Fraction(a) * xi for a, xi in zip(c.coefficients, x) if a)
        if c.relation == "<=" and not lhs <= c.rhs:
            return False
        if c.relation == ">=" and not lhs >= c.rhs:
            return False
        if c.relation == "=" and lhs != c.rhs:
            return False
    return True


def certificate_combination(lp: LPProblem, cert: FarkasCertificate):
    """Combined normalized row: returns ``(coefficients, rhs)``."""
    coef = [Fraction(0)] * lp.num_vars
    rhs = Fraction(0)
    for y, c in zip(cert.multipliers, lp.constraints):
        if not y:
            continue
        s = _sign(c.relation) * y
        for j, a in enumerate(c.coefficients):
            if a:
                coef[j] += s * a
        rhs += s * c.rhs
    return coef, rhs


def check_certificate(lp: LPProblem, cert: FarkasCertificate) -> bool:
    if len(cert.multipliers) != len(lp.constraints):
        return False
    for y, c in zip(cert.multipliers, lp.constraints):
        if c.relation != "=" and y < 0:
            return False
    coef, rhs = certificate_combination(lp, cert)
    return not any(coef) and rhs < 0


def _normalize_multipliers(ys: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Rescale to the primitive integer vector on the same ray."""
    den = 1
    for y in ys:
        den = den * y.denominator // gcd(den, y.denominator)
    ints = [int(y * den) for y in ys]
    g = 0
    for v in ints:
        g = gcd(g, v)
    g = g or 1
    return tuple(Fraction(v // g) for v in ints)


CONST = "c"


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def solve_feasibility(lp: LPProblem, max_pivots: int = 1_000_000) -> LPResult:
    """Decide feasibility exactly, returning a verified witness or certificate."""
    n = lp.num_vars
    # one <= row per inequality; equalities become a pair of opposite rows
    rows: List[Tuple[Dict[int, Fraction], Fraction, int, int]] = []
    for idx, c in enumerate(lp.constraints):
        orients = (1, -1) if c.relation == "=" else (_sign(c.relation),)
        for s in orients:
            a = {j: _Q(s * v) for j, v in enumerate(c.coefficients) if v}
            rows.append((a, _Q(s * c.rhs), idx, s))

    x0 = -1
    # variable keys: 0..n-1 structural, x0 = -1, slack of row i = n + i
    tab: List[Dict] = []
    basis: List[int] = []
    for i, (a, b, _, _) in enumerate(rows):
        r = {j: -v for j, v in a.items()}
        if b:
            r[CONST] = b
        tab.append(r)
        basis.append(n + i)
    free_rows = set()
    pivots = 0

    def pivot(r: int, col: int) -> None:
        row = tab[r]
        p = row[col]
        inv = -1 / p
        new = {k: v * inv for k, v in row.items() if k != col}
        new[basis[r]] = -inv
        tab[r] = new
        basis[r] = col
        for i, ri in enumerate(tab):
            if i == r:
                continue
            f = ri.pop(col, None)
            if f is None:
                continue
            for k, v in new.items():
                nv = ri.get(k, 0) + f * v
                if nv:
                    ri[k] = nv
                else:
                    ri.pop(k, None)

    for j in range(n):
        r = next((i for i, ri in enumerate(tab) if i not in free_rows and j in ri), None)
        if r is not None:
            pivot(r, j)
            free_rows.add(r)
            pivots += 1
    # auxiliary relaxation is added after elimination so it cannot cancel
    for i, ri in enumerate(tab):
        if i not in free_rows:
            ri[x0] = _Q(1)

    def values() -> Tuple[Fraction, ...]:
        x = [Fraction(0)] * n
        for i, var in enumerate(basis):
            if 0 <= var < n:
                x[var] = _to_fraction(tab[i].get(CONST, 0))
        return tuple(x)

    def finish_feasible():
        x = values()
        if not check_witness(lp, x):
            raise CertificateError("simplex witness failed verification")
        return Feasible(x, pivots)

    negative = [(tab[i].get(CONST, 0), i) for i in range(len(tab)) if i not in free_rows]
    negative = [t for t in negative if t[0] < 0]
    if not negative:
        return finish_feasible()
    pivot(min(negative)[1], x0)
    pivots += 1

    while True:
        rx = next((i for i, v in enumerate(basis) if v == x0), None)
        if rx is None:
            return finish_feasible()
        # maximize -x0
        obj = {k: -v for k, v in tab[rx].items()}
        entering = [k for k, v in obj.items() if k != CONST and v > 0]
        if not entering:
            if obj.get(CONST, 0) >= 0:
                return finish_feasible()
            break
        e = min(entering)
        best = None
        for i, ri in enumerate(tab):
            if i in free_rows:
                continue
            a = ri.get(e)
            if a is not None and a < 0:
                key = (ri.get(CONST, 0) / -a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise CertificateError("phase one objective unbounded")
        pivot(best[1], e)
        pivots += 1
        if pivots > max_pivots:
            raise CycleGuardTripped(f"no termination after {max_pivots} pivots")

    # objective row -x0 = w + sum d_k v_k with d_k <= 0; slack multipliers are -d_k
    ys = [Fraction(0)] * len(lp.constraints)
    for k, v in obj.items():
        if k == CONST or k < n:
            continue
        _, _, idx, s = rows[k - n]
        sign = _sign(lp.constraints[idx].relation)
        ys[idx] += _to_fraction(-v * s * sign)
    cert = FarkasCertificate(_normalize_multipliers(ys))
    if not check_certificate(lp, cert):
        raise CertificateError("simplex certificate failed verification")
    return Infeasible(cert, pivots)
