"""Canonical JSON for every report type.

Lattice and rational values are written as decimal or ``p/q`` strings so they
survive a JSON round trip exactly. Indices, counts and dimensions stay JSON
integers. Keys are sorted and no whitespace is emitted, which makes the bytes
stable across runs.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import singledispatch

from .cone import Cone, Face, Membership, Ray
from .exactlat import SaturationReport
from .goodness import FaceCertificate, GoodnessReport
from .invariant import EquivalenceWitness, LcsInvariant, MomentPolytope, SubtorusTable
from .lp import FarkasCertificate, Feasible, Infeasible
from .potential import AnchorResult, PositivityVerdict

SCHEMA_VERSION = "1.0"


def num(x) -> str:
    return str(Fraction(x)) if isinstance(x, Fraction) else str(int(x))


def vec(v):
    return [num(x) for x in v]


def mat(m):
    return [vec(row) for row in m]


@singledispatch
def to_json(obj):
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return num(obj)
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json(x) for x in obj]
    raise TypeError(f"no JSON form for {type(obj).__name__}")


@to_json.register
def _(obj: SaturationReport):
    out = {"saturated": obj.saturated, "snf_diagonal": vec(obj.snf_diagonal)}
    if obj.completion is not None:
        out["completion"] = mat(obj.completion)
    return out


@to_json.register
def _(obj: Cone):
    return {"dim": obj.dim, "normals": mat(obj.normals)}


@to_json.register
def _(obj: Ray):
    return {"direction": vec(obj.direction), "active": list(obj.active)}


@to_json.register
def _(obj: Face):
    return {
        "active": list(obj.active),
        "codim": obj.codim,
        "annihilator_basis": mat(obj.annihilator_basis),
        "rays": mat(obj.rays),
    }


@to_json.register
def _(obj: Membership):
    return {"kind": obj.kind, "active": list(obj.active)}


@to_json.register
def _(obj: FaceCertificate):
    return {
        "face": to_json(obj.face),
        "count_ok": obj.count_ok,
        "saturation": to_json(obj.saturation),
        "valid": obj.valid,
    }


@to_json.register
def _(obj: GoodnessReport):
    certs = sorted(obj.certificates, key=lambda c: (c.face.codim, c.face.active))
    return {
        "good": obj.good,
        "interior_ok": obj.interior_ok,
        "certificates": [to_json(c) for c in certs],
        "violation": None if obj.violation is None else to_json(obj.violation),
    }


@to_json.register
def _(obj: LcsInvariant):
    return {
        "cone": to_json(obj.cone),
        "period_a": num(obj.period_a),
        "scale_lambda": num(obj.scale_lambda),
    }


@to_json.register
def _(obj: MomentPolytope):
    return {
        "lee_vector_A": vec(obj.lee_vector_A),
        "vertices": mat(obj.vertices),
        "dim": len(obj.lee_vector_A) - 1,
    }


@to_json.register
def _(obj: EquivalenceWitness):
    return {"matrix_U": mat(obj.matrix_U), "facet_permutation": list(obj.facet_permutation)}


@to_json.register
def _(obj: SubtorusTable):
    rows = [
        {"face": to_json(r.face), "rank_k": r.rank_k, "lattice_basis": mat(r.lattice_basis)}
        for r in obj.rows
    ]
    orbit = None
    if obj.orbit_space is not None:
        o = obj.orbit_space
        orbit = {
            "description": o["description"],
            "polytope_dim": o["polytope_dim"],
            "polytope_vertices": mat(o["polytope_vertices"]),
            "circle_period": num(o["circle_period"]),
        }
    return {"rows": rows, "orbit_space": orbit}


@to_json.register
def _(obj: FarkasCertificate):
    return {"multipliers": vec(obj.multipliers)}


@to_json.register
def _(obj: Feasible):
    return {"status": "Feasible", "witness": vec(obj.witness)}


@to_json.register
def _(obj: Infeasible):
    return {"status": "Infeasible", "certificate": to_json(obj.certificate)}


@to_json.register
def _(obj: AnchorResult):
    return {
        "anchor": obj.anchor,
        "witness": None if obj.witness is None else vec(obj.witness),
    }


@to_json.register
def _(obj: PositivityVerdict):
    return {
        "verdict": obj.verdict,
        "lambda": num(obj.lam),
        "grid_N": obj.grid_N,
        "eps": num(obj.eps),
        "eps_max": None if obj.eps_max is None else num(obj.eps_max),
        "base_feasible": obj.base_feasible,
        "witness": vec(obj.witness),
        "anchors_infeasible": obj.anchors_infeasible,
        "certificates": [
            {"anchor": k, "multipliers": vec(c.multipliers)}
            for k, c in enumerate(obj.certificates)
        ],
        "analytic_crosscheck": obj.analytic_crosscheck,
        "refutation": None if obj.refutation is None else to_json(obj.refutation),
    }


def emit_report(report) -> bytes:
    """Canonical JSON bytes: sorted keys, no insignificant whitespace."""
    return json.dumps(
        to_json(report), sort_keys=True, separators=(",", ":"), ensure_ascii=False
    ).encode("utf-8")


def envelope(command: str, digest: str, result, warnings=(), error=None) -> dict:
    env = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input_digest": digest,
        "result": to_json(result),
        "warnings": list(warnings),
    }
    if error is not None:
        env["error"] = error
    return env
