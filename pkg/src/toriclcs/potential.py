"""Exact LP certification that convex, deck-equivariant potentials are positive.

The potential restricted to a flow line is sampled on the grid ``t_k = k/N``
over one period (period normalized to 1). Samples outside ``[0, N)`` are tied
to the base ones by ``u_{k+N} = lam * u_k``. Strict convexity becomes
``u_{k-1} - 2 u_k + u_{k+1} >= eps`` on the window ``[-N, 2N]``.

The base system must be feasible, and adding ``u_{k0} <= 0`` must make it
infeasible for every ``k0``: a convex sample sequence that shrinks by
``lam`` each period cannot touch zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple

from .errors import BadEps, BadGrid, BadScale, CertificateError, EpsTooLarge
from .lp import (
    Constraint,
    FarkasCertificate,
    Feasible,
    LPProblem,
    check_certificate,
    check_witness,
    make_problem,
    solve_feasibility,
)

SURROGATE_MAX_DEN = 10**6
CERTIFIED = "Certified"
REFUTATION = "RefutationFound"


@dataclass(frozen=True)
class AnchorResult:
    anchor: int
    certificate: Optional[FarkasCertificate]
    witness: Optional[Tuple[Fraction, ...]] = None
    pivots: int = 0


@dataclass(frozen=True)
class PositivityVerdict:
    lam: Fraction
    grid_N: int
    eps: Fraction
    eps_max: Optional[Fraction]
    base_feasible: bool
    witness: Tuple[Fraction, ...]
    anchors_infeasible: bool
    certificates: Tuple[FarkasCertificate, ...]
    analytic_crosscheck: bool
    refutation: Optional[AnchorResult] = None

    @property
    def verdict(self) -> str:
        ok = self.base_feasible and self.anchors_infeasible and self.refutation is None
        return CERTIFIED if ok else REFUTATION


def _validate(lam, N, eps):
    lam = Fraction(lam)
    if not 0 < lam < 1:
        raise BadScale(f"lambda must lie in (0, 1), got {lam}")
    if not isinstance(N, int) or isinstance(N, bool) or N < 4:
        raise BadGrid(f"grid must be an integer >= 4, got {N!r}")
    eps = Fraction(eps)
    if eps <= 0:
        raise BadEps(f"eps must be positive, got {eps}")
    return lam, N, eps


def window_sample(k: int, N: int, lam: Fraction) -> Tuple[int, Fraction]:
    """Express ``u_k`` as ``factor * u_base`` with ``base`` in ``[0, N)``."""
    q, base = divmod(k, N)
    return base, lam**q


def convexity_rows(lam: Fraction, N: int):
    """Second-difference coefficient rows for every interior index of ``[-N, 2N]``."""
    rows = []
    for k in range(-N + 1, 2 * N):
        coef = [Fraction(0)] * N
        for kk, w in ((k - 1, 1), (k, -2), (k + 1, 1)):
            base, f = window_sample(kk, N, lam)
            coef[base] += w * f
        rows.append(tuple(coef))
    return rows


def build_lp(lam, N: int, eps, anchor: Optional[int] = None) -> LPProblem:
    lam, N, eps = _validate(lam, N, eps)
    rows = [(coef, ">=", eps) for coef in convexity_rows(lam, N)]
    base = make_problem(N, rows, f"equivariant convexity, lambda={lam}, N={N}, eps={eps}")
    return base if anchor is None else with_anchor(base, anchor)


def with_anchor(base: LPProblem, anchor: int) -> LPProblem:
    """Append the nonpositivity row ``u_anchor <= 0`` to a base LP."""
    N = base.num_vars
    if not 0 <= anchor < N:
        raise BadGrid(f"anchor must lie in [0, {N}), got {anchor}")
    unit = tuple(Fraction(int(j == anchor)) for j in range(N))
    row = Constraint(unit, "<=", Fraction(0))
    desc = f"{base.description}, anchor u_{anchor} <= 0"
    return LPProblem(N, base.constraints + (row,), desc)


def best_lower_root(lam: Fraction, N: int, max_den: int = SURROGATE_MAX_DEN) -> Fraction:
    """Largest fraction ``p/q <= lam**(1/N)`` with ``q <= max_den``.

    Batched Stern-Brocot descent with exact comparisons ``(p/q)**N <= lam``.
    """
    lam = Fraction(lam)
    num, den = lam.numerator, lam.denominator

    def below(p, q):
        return p**N * den <= num * q**N

    def max_steps(ok: Callable[[int], bool], limit: int) -> int:
        if limit <= 0 or not ok(1):
            return 0
        k = 1
        while 2 * k <= limit and ok(2 * k):
            k *= 2
        lo, hi = k, min(2 * k, limit + 1)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ok(mid):
                lo = mid
            else:
                hi = mid
        return lo

    # lo <= root < hi, lo and hi Farey neighbours
    lp, lq, hp, hq = 0, 1, 1, 1
    if below(1, 1):
        return Fraction(1)
    while True:
        k = max_steps(lambda k: below(lp + k * hp, lq + k * hq), (max_den - lq) // hq)
        lp, lq = lp + k * hp, lq + k * hq
        k2 = max_steps(lambda k: not below(hp + k * lp, hq + k * lq), (max_den - hq) // lq)
        hp, hq = hp + k2 * lp, hq + k2 * lq
        if k == 0 and k2 == 0:
            return Fraction(lp, lq)


def surrogate_witness(lam, N: int) -> Tuple[Fraction, ...]:
    """Geometric samples ``q**k`` for ``k < N`` with ``q`` just below ``lam**(1/N)``."""
    q = best_lower_root(Fraction(lam), N)
    return tuple(q**k for k in range(N))


def second_differences(lam, N: int, u) -> Tuple[Fraction, ...]:
    return tuple(sum(c * x for c, x in zip(coef, u) if c) for coef in convexity_rows(Fraction(lam), N))


def eps_max(lam, N: int) -> Optional[Fraction]:
    """Smallest second difference of the surrogate witness, or None if it is not convex."""
    lam, N, _ = _validate(lam, N, 1)
    diffs = second_differences(lam, N, surrogate_witness(lam, N))
    m = min(diffs)
    return m if m > 0 else None


def tent_certificate(lam, N: int, eps, anchor: int) -> FarkasCertificate:
    """Hand-built infeasibility certificate for the anchored LP.

    Tent weights ``N - |k - anchor|`` on the convexity rows collapse the
    second differences to the chord inequality over ``[anchor - N, anchor + N]``,
    i.e. ``(lam + 1/lam - 2) * u_anchor >= eps * N**2``. Adding the anchor row
    with weight ``lam + 1/lam - 2`` leaves ``0 <= -eps * N**2``.
    """
    lam, N, eps = _validate(lam, N, eps)
    ys = []
    for k in range(-N + 1, 2 * N):
        ys.append(Fraction(max(N - abs(k - anchor), 0)))
    ys.append(lam + 1 / lam - 2)
    return FarkasCertificate(tuple(ys))


def certify_positivity(lam, N: int, eps=None, *, enforce_eps_max: bool = True) -> PositivityVerdict:
    """Run the base LP and all ``N`` anchored LPs exactly.

    ``eps`` defaults to half of :func:`eps_max`. With ``enforce_eps_max`` a
    margin above ``eps_max`` raises :class:`EpsTooLarge`.
    """
    lam, N, _ = _validate(lam, N, 1)
    bound = eps_max(lam, N)
    if eps is None:
        if bound is None:
            raise BadEps("no default eps: the surrogate witness is not strictly convex")
        eps = bound / 2
    lam, N, eps = _validate(lam, N, eps)
    if enforce_eps_max and bound is not None and eps > bound:
        raise EpsTooLarge(f"eps={eps} exceeds eps_max={bound} (about {float(bound):.3g})")

    base = build_lp(lam, N, eps)
    result = solve_feasibility(base)
    if not isinstance(result, Feasible):
        raise EpsTooLarge(f"base LP infeasible at eps={eps}")
    witness = result.witness

    certs = []
    crosscheck = True
    for k0 in range(N):
        lp = with_anchor(base, k0)
        res = solve_feasibility(lp)
        if isinstance(res, Feasible):
            refutation = AnchorResult(k0, None, res.witness, res.pivots)
            return PositivityVerdict(
                lam, N, eps, bound, True, witness, False, tuple(certs), crosscheck, refutation
            )
        if not check_certificate(lp, res.certificate):
            raise CertificateError(f"certificate for anchor {k0} failed re-verification")
        certs.append(res.certificate)
        crosscheck = crosscheck and check_certificate(lp, tent_certificate(lam, N, eps, k0))
    if not check_witness(base, witness):
        raise CertificateError("base witness failed re-verification")
    return PositivityVerdict(lam, N, eps, bound, True, witness, True, tuple(certs), crosscheck)
