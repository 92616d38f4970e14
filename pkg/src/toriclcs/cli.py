"""Command line front end.

Every subcommand writes one JSON envelope to stdout. Exit status is 0 for an
affirmative verdict, 1 for a negative one and 2 for usage or validation
errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import List, Optional, Tuple

from . import invariant as inv
from .cone import Cone, build_cone
from .errors import (
    BadFieldType,
    MalformedJson,
    MissingField,
    NotGood,
    SpecError,
    ToricError,
    ValidationFailed,
)
from .goodness import check_good
from .lp import Feasible, solve_feasibility
from .potential import CERTIFIED, build_lp, certify_positivity, with_anchor
from .report import emit_report, envelope

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2

GL_NOTE = "gl_equivalent is an extension: equality of invariants fixes the torus"


@dataclass(frozen=True)
class ConeSpec:
    dim: int
    normals: Tuple[Tuple[int, ...], ...]
    normalize: bool = False
    a: Optional[Fraction] = None
    lam: Optional[Fraction] = None
    lee_vector: Optional[Tuple[int, ...]] = None
    cone: Optional[Cone] = field(default=None, compare=False, repr=False)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _int_list(value, name) -> Tuple[int, ...]:
    if not isinstance(value, list) or not all(_is_int(x) for x in value):
        raise BadFieldType(f"field {name!r}: expected a list of integers")
    return tuple(value)


def parse_rational(text, name="value") -> Fraction:
    """Parse ``"p/q"``, a decimal string, or a JSON integer/decimal exactly."""
    if isinstance(text, bool):
        raise BadFieldType(f"field {name!r}: expected a rational, got a boolean")
    if isinstance(text, (int, Decimal)):
        return Fraction(text)
    if not isinstance(text, str):
        raise BadFieldType(f"field {name!r}: expected a rational string")
    try:
        if "/" in text:
            return Fraction(text.strip())
        return Fraction(Decimal(text.strip()))
    except (ValueError, ZeroDivisionError, InvalidOperation):
        raise BadFieldType(f"field {name!r}: cannot parse {text!r} as a rational") from None


def parse_cone_file(data: bytes, normalize: Optional[bool] = None) -> ConeSpec:
    try:
        obj = json.loads(data.decode("utf-8"), parse_float=Decimal)
    except UnicodeDecodeError as exc:
        raise MalformedJson(f"input is not UTF-8: {exc}") from None
    except json.JSONDecodeError as exc:
        raise MalformedJson(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise BadFieldType("top level must be a JSON object")
    for key in ("dim", "normals"):
        if key not in obj:
            raise MissingField(f"missing required field {key!r}")
    dim = obj["dim"]
    if not _is_int(dim):
        raise BadFieldType("field 'dim': expected an integer")
    if not isinstance(obj["normals"], list) or not obj["normals"]:
        raise BadFieldType("field 'normals': expected a nonempty list of integer lists")
    normals = tuple(_int_list(nu, f"normals[{i}]") for i, nu in enumerate(obj["normals"]))
    norm = obj.get("normalize", False)
    if not isinstance(norm, bool):
        raise BadFieldType("field 'normalize': expected a boolean")
    if normalize:
        norm = True
    a = lam = lee = None
    if obj.get("a") is not None:
        a = parse_rational(obj["a"], "a")
        if a <= 0:
            raise ValidationFailed(f"field 'a': BadPeriod: period must be positive, got {a}")
    if obj.get("lambda") is not None:
        if not isinstance(obj["lambda"], str):
            raise BadFieldType("field 'lambda': expected a string 'p/q'")
        lam = parse_rational(obj["lambda"], "lambda")
        if not 0 < lam < 1:
            raise ValidationFailed(f"field 'lambda': BadScale: must lie in (0, 1), got {lam}")
    if obj.get("lee_vector") is not None:
        lee = _int_list(obj["lee_vector"], "lee_vector")
        if len(lee) != dim:
            raise ValidationFailed(f"field 'lee_vector': length {len(lee)} differs from dim {dim}")
    try:
        cone = build_cone(dim, normals, normalize=norm)
    except ToricError as exc:
        raise ValidationFailed(f"field 'normals': {type(exc).__name__}: {exc}", exc) from None
    return ConeSpec(dim, normals, norm, a, lam, lee, cone)


def spec_to_json(spec: ConeSpec) -> bytes:
    obj = {"dim": spec.dim, "normals": [list(nu) for nu in spec.normals]}
    if spec.normalize:
        obj["normalize"] = True
    if spec.a is not None:
        obj["a"] = str(spec.a)
    if spec.lam is not None:
        obj["lambda"] = str(spec.lam)
    if spec.lee_vector is not None:
        obj["lee_vector"] = list(spec.lee_vector)
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("utf-8")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toriclcs", description="Good cones and toric LCS invariants")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="summary on stderr")

    spec = _Parser(add_help=False)
    spec.add_argument("spec", help="JSON cone spec file")
    spec.add_argument("--normalize", action="store_true", help="normalize instead of rejecting")

    for name in ("check-good", "faces", "rays", "slice", "orbit-summary"):
        sub.add_parser(name, parents=[common, spec])
    s = sub.add_parser("invariant", parents=[common, spec])
    s.add_argument("--lambda", dest="lam")
    s = sub.add_parser("deck-reduce", parents=[common, spec])
    s.add_argument("--point", required=True, help="comma separated rationals")
    s.add_argument("--lambda", dest="lam")
    s = sub.add_parser("equiv", parents=[common])
    s.add_argument("spec")
    s.add_argument("spec2")
    s.add_argument("--normalize", action="store_true")
    s.add_argument("--search-budget", type=int, default=inv.DEFAULT_SEARCH_BUDGET)
    s = sub.add_parser("potential-check", parents=[common])
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--grid", type=int, required=True)
    s.add_argument("--eps")
    s.add_argument("--anchor", type=int)
    return p


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _digest(command: str, files: List[bytes], options: dict) -> str:
    h = hashlib.sha256(command.encode())
    for data in files:
        h.update(b"\0")
        h.update(hashlib.sha256(data).digest())
    h.update(b"\0")
    h.update(json.dumps(options, sort_keys=True).encode())
    return h.hexdigest()


def _need(spec: ConeSpec, attr: str, field_name: str):
    value = getattr(spec, attr)
    if value is None:
        raise MissingField(f"this subcommand needs field {field_name!r}")
    return value


def _lambda(spec: ConeSpec, override: Optional[str]) -> Fraction:
    if override is not None:
        lam = parse_rational(override, "--lambda")
        if not 0 < lam < 1:
            raise ValidationFailed(f"--lambda: BadScale: must lie in (0, 1), got {lam}")
        return lam
    return _need(spec, "lam", "lambda")


def _dispatch(args, specs: List[ConeSpec]):
    """Return ``(result, exit_code, summary)``."""
    cmd = args.command
    spec = specs[0] if specs else None
    if cmd == "check-good":
        report = check_good(spec.cone)
        summary = "good" if report.good else f"not good, violating face {list(report.violation.active)}"
        return report, EXIT_OK if report.good else EXIT_NEGATIVE, summary
    if cmd == "faces":
        faces = spec.cone.faces
        return {"faces": list(faces)}, EXIT_OK, f"{len(faces)} faces"
    if cmd == "rays":
        rays = spec.cone.rays
        return {"rays": list(rays)}, EXIT_OK, f"{len(rays)} rays"
    if cmd == "slice":
        poly = inv.moment_slice(spec.cone, _need(spec, "lee_vector", "lee_vector"))
        return poly, EXIT_OK, f"{len(poly.vertices)} vertices"
    if cmd == "orbit-summary":
        table = inv.orbit_summary(spec.cone, spec.lee_vector, spec.a)
        return table, EXIT_OK, f"{len(table.rows)} subtorus rows"
    if cmd == "invariant":
        invariant = inv.make_invariant(
            spec.cone, _need(spec, "a", "a"), _lambda(spec, args.lam)
        )
        return invariant, EXIT_OK, "valid invariant pair"
    if cmd == "deck-reduce":
        try:
            point = [parse_rational(x, "--point") for x in args.point.split(",")]
        except SpecError as exc:
            raise UsageError(str(exc)) from None
        rep, m = inv.deck_reduce(
            point, _need(spec, "lee_vector", "lee_vector"), _lambda(spec, args.lam), spec.cone
        )
        return {"rep": rep, "m": m}, EXIT_OK, f"m = {m}"
    if cmd == "equiv":
        i1, i2 = (
            inv.make_invariant(s.cone, _need(s, "a", "a"), _need(s, "lam", "lambda"))
            for s in specs
        )
        equal = inv.invariants_equal(i1, i2)
        witness = inv.gl_equivalent(i1, i2, budget=args.search_budget)
        result = {"equal": equal, "gl_equivalent": witness, "note": GL_NOTE}
        ok = equal or witness is not None
        return result, EXIT_OK if ok else EXIT_NEGATIVE, f"equal={equal} gl={witness is not None}"
    if cmd == "potential-check":
        lam = parse_rational(args.lam, "--lambda")
        eps = None if args.eps is None else parse_rational(args.eps, "--eps")
        if args.anchor is None:
            verdict = certify_positivity(lam, args.grid, eps)
            ok = verdict.verdict == CERTIFIED
            return verdict, EXIT_OK if ok else EXIT_NEGATIVE, verdict.verdict
        if eps is None:
            raise UsageError("--anchor needs --eps")
        lp = with_anchor(build_lp(lam, args.grid, eps), args.anchor)
        res = solve_feasibility(lp)
        infeasible = not isinstance(res, Feasible)
        result = {"anchor": args.anchor, "description": lp.description, "outcome": res}
        return result, EXIT_OK if infeasible else EXIT_NEGATIVE, type(res).__name__
    raise UsageError(f"unknown command {cmd}")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    command = argv[0] if argv and not argv[0].startswith("-") else ""
    digest = hashlib.sha256(json.dumps(argv).encode()).hexdigest()
    warnings: List[str] = []
    verbose = "--verbose" in argv
    try:
        args = _parser().parse_args(argv)
        command = args.command
        paths = [p for p in (getattr(args, "spec", None), getattr(args, "spec2", None)) if p]
        files = [_read(p) for p in paths]
        options = {k: v for k, v in vars(args).items() if k not in ("spec", "spec2", "verbose")}
        digest = _digest(command, files, options)
        specs = [parse_cone_file(data, normalize=getattr(args, "normalize", False)) for data in files]
        for s in specs:
            warnings.extend(s.cone.warnings)
        try:
            result, code, summary = _dispatch(args, specs)
        except NotGood as exc:
            result, code, summary = {"goodness": exc.report}, EXIT_NEGATIVE, f"not good: {exc}"
        env = envelope(command, digest, result, warnings)
    except Exception as exc:
        code = EXIT_ERROR
        summary = f"error: {type(exc).__name__}: {exc}"
        kind = "UsageError" if isinstance(exc, UsageError) else type(exc).__name__
        if not isinstance(exc, (UsageError, ToricError)):
            kind = f"InternalError.{kind}"
        env = envelope(command, digest, None, warnings, {"type": kind, "message": str(exc)})
    stdout.write(emit_report(env) + b"\n")
    stdout.flush()
    if verbose:
        print(f"toriclcs {command}: {summary} (exit {code})", file=stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
