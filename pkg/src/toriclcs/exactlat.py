"""Exact integer lattice arithmetic.

Vectors are tuples of Python ints and matrices are tuples of row tuples, so
every value is hashable and arbitrary precision. Rational vectors are tuples
of :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional, Sequence, Tuple

from .errors import DependentInput, DimensionMismatch, ZeroVector

IntVector = Tuple[int, ...]
IntMatrix = Tuple[IntVector, ...]
RatVector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class SaturationReport:
    saturated: bool
    snf_diagonal: Tuple[int, ...]
    completion: Optional[IntMatrix] = None


def as_matrix(m: Sequence[Sequence[int]]) -> IntMatrix:
    rows = tuple(tuple(int(x) for x in row) for row in m)
    if not rows or not rows[0]:
        raise DimensionMismatch("matrix must be nonempty")
    if any(len(r) != len(rows[0]) for r in rows):
        raise DimensionMismatch("ragged matrix")
    return rows


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]):
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def transpose(m: Sequence[Sequence[int]]):
    return tuple(tuple(col) for col in zip(*m))


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its entries."""
    g = content(v)
    if g == 0:
        raise ZeroVector("zero vector has no primitive direction")
    return tuple(x // g for x in v)


def integral_direction(v: Sequence[Fraction]) -> IntVector:
    """Primitive integer vector positively proportional to a rational vector."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def is_primitive(v: Sequence[int]) -> bool:
    g = content(v)
    if g == 0:
        raise ZeroVector("primitivity is undefined for the zero vector")
    return g == 1


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    a = [list(r) for r in m]
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatch("determinant needs a square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q of a list of integer or rational rows."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    r = 0
    for c in range(len(a[0])):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def solve_rational(m: Sequence[Sequence], b: Sequence) -> Optional[RatVector]:
    """Solve the square system m x = b over Q; None if m is singular."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(m, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(row[n] for row in a)


def inverse_rational(m: Sequence[Sequence]) -> Optional[Tuple[RatVector, ...]]:
    n = len(m)
    cols = [solve_rational(m, [int(i == j) for i in range(n)]) for j in range(n)]
    if any(c is None for c in cols):
        return None
    return transpose(cols)


def unimodular_inverse(m: Sequence[Sequence[int]]) -> IntMatrix:
    inv = inverse_rational(m)
    if inv is None or any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


def hnf(m: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``h = u @ m`` and ``u`` unimodular. ``h`` is in
    row echelon form, zero rows at the bottom, every pivot positive and every
    entry above a pivot reduced into ``[0, pivot)``.
    """
    a = [list(r) for r in as_matrix(m)]
    nr, nc = len(a), len(a[0])
    u = [list(r) for r in identity(nr)]
    r = 0
    for c in range(nc):
        if r == nr:
            break
        while True:
            nz = [i for i in range(r, nr) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(a[i][c]), i))
            a[r], a[p] = a[p], a[r]
            u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, nr):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    done = done and a[i][c] == 0
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return tuple(map(tuple, a)), tuple(map(tuple, u))


def in_row_lattice(h: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of ``v`` in the Z-span of the rows of an HNF matrix ``h``."""
    v = list(v)
    for row in h:
        c = next((j for j, x in enumerate(row) if x), None)
        if c is None:
            break
        q, rem = divmod(v[c], row[c])
        if rem:
            return False
        v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def snf(m: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``d = u @ m @ v`` with unimodular ``u`` and ``v``.

    The diagonal of ``d`` is nonnegative and forms a divisibility chain.
    """
    a = [list(r) for r in as_matrix(m)]
    nr, nc = len(a), len(a[0])
    u = [list(r) for r in identity(nr)]
    v = [list(r) for r in identity(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(nr, nc)):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
            rest = [(abs(a[i][t]), i, t) for i in range(t + 1, nr) if a[i][t]]
            rest += [(abs(a[t][j]), t, j) for j in range(t + 1, nc) if a[t][j]]
            if rest:
                _, i, j = min(rest)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return tuple(map(tuple, a)), tuple(map(tuple, u)), tuple(map(tuple, v))


def snf_diagonal(m: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    d, _, _ = snf(m)
    return tuple(d[i][i] for i in range(min(len(d), len(d[0]))))


def minors_gcd(rows: Sequence[Sequence[int]], k: Optional[int] = None) -> int:
    """gcd of all ``k x k`` minors; ``k`` defaults to the number of rows."""
    k = len(rows) if k is None else k
    g = 0
    for cols in combinations(range(len(rows[0])), k):
        for rs in combinations(range(len(rows)), k):
            g = gcd(g, det([[rows[r][c] for c in cols] for r in rs]))
    return g


def _saturation(vectors: Sequence[Sequence[int]]) -> SaturationReport:
    """Saturation data of the Z-span of ``vectors``, dependent input allowed."""
    d, _, v = snf(vectors)
    diag = tuple(d[i][i] for i in range(min(len(d), len(d[0]))))
    r = sum(1 for x in diag if x)
    saturated = all(x == 1 for x in diag if x)
    completion = None
    if saturated:
        rest = unimodular_inverse(v)[r:]
        completion = hnf(rest)[0] if rest else ()
    return SaturationReport(saturated, diag, completion)


def saturation_check(vectors: Sequence[Sequence[int]]) -> SaturationReport:
    """Decide whether independent integer vectors extend to a basis of Z^n.

    When they do, ``completion`` holds ``n - k`` further rows that finish the
    basis.
    """
    rows = [tuple(int(x) for x in v) for v in vectors]
    if not rows:
        raise DimensionMismatch("need at least one vector")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("vectors have different lengths")
    if len(rows) > n or rank(rows) < len(rows):
        raise DependentInput("vectors are linearly dependent over Q")
    return _saturation(rows)
