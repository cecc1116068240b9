"""Command-line interface.

Exit codes: 0 success, 1 domain outcome (torus not invariant, degenerate
field, bound violated, oracle failure), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import __version__
from .document import DocumentError, FieldDocument, parse_assignments
from .errors import ExtacticIdenticallyZero, NotInvariant, ParseError, StepTooLarge, ZeroPolynomialError
from .extactic import Basis, extactic_poly, hypersurface_multiplicity, invariant_members
from .field import clifford_decompose, degree_vector, hopf_field, torus_invariant
from .oracle import (TorusPoint, numeric_meridian_scan, numeric_parallel_scan, rk4_orbit_drift,
                     sample_residual)
from .parser import parse_poly
from .sweep import verify_bounds
from .torus import (build_exceptional_field, build_extremal_meridian_field, find_meridians,
                    find_parallels, rational_circle_points)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2
SEED_ENV = "CLIFFORD_SEED"


class UsageError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


# rendering ---------------------------------------------------------------

def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def _flatten_row(row: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in row.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten_row(v, key + "."))
        else:
            out[key] = v
    return out


def render_text(report: dict, indent: int = 0) -> str:
    """``key: value`` lines; nested dicts become indented sections and lists
    of dicts become tables."""
    pad = "  " * indent
    lines = []
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(render_text(v, indent + 1))
        elif isinstance(v, list) and v and all(isinstance(r, dict) for r in v):
            rows = [_flatten_row(r) for r in v]
            cols = list(dict.fromkeys(c for r in rows for c in r))
            cells = [[_scalar(r.get(c)) for c in cols] for r in rows]
            widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
            lines.append(f"{pad}{k}:")
            lines.append(pad + "  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
            for row in cells:
                lines.append(pad + "  " + "  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip())
        else:
            lines.append(f"{pad}{k}: {_scalar(v)}")
    return "\n".join(lines)


def emit(report: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        json.dump(report, out, indent=2, default=str)
        out.write("\n")
    else:
        out.write(render_text(report) + "\n")


# input -------------------------------------------------------------------

def load_document(args) -> FieldDocument:
    if getattr(args, "field", None):
        if args.field == "-":
            return FieldDocument.parse(sys.stdin.read())
        try:
            return FieldDocument.read(args.field)
        except OSError as exc:
            raise UsageError(f"cannot read {args.field}: {exc.strerror}") from None
    if getattr(args, "params", None):
        return FieldDocument.from_assignments(parse_assignments(args.params))
    if getattr(args, "components", None):
        return FieldDocument.from_assignments(parse_assignments(args.components))
    raise UsageError("give a field with --field, --params or --components")


def _field_echo(doc: FieldDocument) -> dict:
    echo = doc.to_dict()
    if doc.params is not None:
        echo["field"] = {f"P{i}": str(p) for i, p in enumerate(doc.field.components, 1)}
    return echo


def _parse_basis(text: str) -> Basis:
    parts = [s for s in text.split(",") if s.strip()]
    return Basis([parse_poly(s) for s in parts])


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


# commands ----------------------------------------------------------------

def cmd_build(args) -> int:
    doc = load_document(args)
    X = doc.field
    out = FieldDocument(components=X, name=args.name or doc.name, notes=doc.notes, seed=doc.seed)
    if args.json:
        emit({"command": "build", "input": doc.to_dict(), "document": out.to_dict()}, True)
    else:
        if doc.params is not None:
            sys.stdout.write("".join(f"# {line}\n" for line in doc.to_text().splitlines()))
        sys.stdout.write(out.to_text())
    return EXIT_OK


def cmd_check(args) -> int:
    doc = load_document(args)
    X = doc.field
    report = {"command": "check", "input": _field_echo(doc),
              "degrees": list(degree_vector(X))}
    try:
        kf, kg = torus_invariant(X)
    except NotInvariant as exc:
        report.update(invariant=False, failing=exc.which, reason=str(exc))
        emit(report, args.json)
        return EXIT_DOMAIN
    report.update(invariant=True, cofactor_f=str(kf.k), cofactor_g=str(kg.k))
    emit(report, args.json)
    return EXIT_OK


def cmd_decompose(args) -> int:
    doc = load_document(args)
    params = clifford_decompose(doc.field)
    out = FieldDocument(params=params, name=doc.name, seed=doc.seed, notes=doc.notes)
    if args.json:
        emit({"command": "decompose", "input": _field_echo(doc), "document": out.to_dict()}, True)
    else:
        sys.stdout.write(out.to_text())
    return EXIT_OK


def cmd_extactic(args) -> int:
    doc = load_document(args)
    W = _parse_basis(args.basis)
    e = extactic_poly(doc.field, W)
    report = {"command": "extactic", "input": _field_echo(doc),
              "basis": [str(v) for v in W], "extactic": str(e)}
    coordinate_basis = all(v.is_constant() or (len(v) == 1 and v.total_degree == 1) for v in W)
    if coordinate_basis and any(v.is_constant() for v in W) and not e.is_zero():
        report["invariant_hyperplanes"] = [
            {"var": f"x{h.var}", "root": h.root.to_dict(), "multiplicity": k}
            for h, k in invariant_members(doc.field, W)]
    emit(report, args.json)
    return EXIT_OK


def cmd_detect(args) -> int:
    doc = load_document(args)
    finder = find_meridians if args.command == "meridians" else find_parallels
    rep = finder(doc.field)
    report = {"command": args.command, "input": _field_echo(doc)}
    report.update(rep.to_dict())
    emit(report, args.json)
    return EXIT_DOMAIN if rep.degenerate else EXIT_OK


def cmd_multiplicity(args) -> int:
    doc = load_document(args)
    h = parse_poly(args.poly)
    if args.basis:
        W = _parse_basis(args.basis)
    else:
        if h.total_degree != 1 or len(h.variables()) != 1:
            raise UsageError("--basis is required unless the polynomial is x_i - a")
        W = Basis.coordinate(next(iter(h.variables())))
    k = hypersurface_multiplicity(doc.field, h, W)
    emit({"command": "multiplicity", "input": _field_echo(doc), "poly": str(h),
          "basis": [str(v) for v in W], "multiplicity": k}, args.json)
    return EXIT_OK


def cmd_verify_bounds(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    res = verify_bounds(args.trials, args.max_deg, seed, args.kind)
    report = {"command": "verify-bounds"}
    report.update(res.to_dict())
    if not args.json:
        report.pop("violation_details")
        report["verdict"] = "pass" if res.passed else "fail"
    emit(report, args.json)
    return EXIT_OK if res.passed else EXIT_DOMAIN


def cmd_oracle(args) -> int:
    doc = load_document(args)
    X = doc.field
    seed = args.seed if args.seed is not None else default_seed()
    report = {"command": "oracle", "input": _field_echo(doc), "seed": seed}
    ok = True
    if args.mode in ("residual", "all"):
        r = sample_residual(X, args.n, seed)
        report["residual"] = {"n": r.n, "max_xf": r.max_xf, "max_xg": r.max_xg,
                              "tol": r.tol, "passed": r.passed}
        ok &= r.passed
    if args.mode in ("drift", "all"):
        rng = np.random.default_rng(seed)
        starts = [TorusPoint(*rng.uniform(0, 2 * math.pi, 2)) for _ in range(args.starts)]
        try:
            d = rk4_orbit_drift(X, starts, args.T, args.h)
            report["drift"] = {"T": args.T, "h": args.h, "starts": args.starts, "max_drift": d}
        except StepTooLarge as exc:
            report["drift"] = {"T": args.T, "h": args.h, "starts": args.starts,
                               "max_drift": exc.drift, "error": str(exc)}
            ok = False
    if args.mode in ("scan", "all"):
        scan = numeric_meridian_scan if args.target == "meridians" else numeric_parallel_scan
        hits = scan(X, grid=args.grid, seed=seed)
        report["scan"] = {"target": args.target, "grid": args.grid,
                          "hits": [{"psi": h.psi, "a": h.a, "b": h.b, "residual": h.residual}
                                   for h in hits]}
    emit(report, args.json)
    return EXIT_OK if ok else EXIT_DOMAIN


def cmd_examples(args) -> int:
    k = _rational(args.k)
    if args.kind == "exceptional":
        X = build_exceptional_field(k)
        name = f"exceptional k={k}"
    elif args.kind == "hopf":
        X = hopf_field()
        name = "hopf"
    elif args.kind == "extremal":
        pts = rational_circle_points(args.count)
        X = build_extremal_meridian_field(pts, k, k)
        name = f"extremal {args.count} points"
    elif args.kind == "double":
        half = Fraction(1, 2)
        X = build_extremal_meridian_field([(half, half), (half, half)], k, k)
        name = "double meridian at (1/2, 1/2)"
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(args.kind)
    doc = FieldDocument(components=X, name=name)
    if args.json:
        emit({"command": "examples", "kind": args.kind, "document": doc.to_dict()}, True)
    else:
        sys.stdout.write(doc.to_text())
    return EXIT_OK


# parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    fieldsrc = argparse.ArgumentParser(add_help=False)
    g = fieldsrc.add_mutually_exclusive_group()
    g.add_argument("--field", metavar="FILE", help="field document ('-' for stdin)")
    g.add_argument("--params", nargs="+", metavar="X=EXPR", help="parameters A..F inline")
    g.add_argument("--components", nargs="+", metavar="Pi=EXPR", help="components P1..P4 inline")

    p = argparse.ArgumentParser(prog="cliffordfields",
                                description="Polynomial vector fields on the Clifford torus.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build", parents=[common, fieldsrc], help="assemble a field from A..F")
    s.add_argument("--name")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("check", parents=[common, fieldsrc], help="torus invariance and cofactors")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("decompose", parents=[common, fieldsrc], help="canonical A..F of a field")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("extactic", parents=[common, fieldsrc], help="extactic polynomial")
    s.add_argument("--basis", required=True, help="comma separated, e.g. '1,x3'")
    s.set_defaults(func=cmd_extactic)

    for name in ("meridians", "parallels"):
        s = sub.add_parser(name, parents=[common, fieldsrc], help=f"invariant {name}")
        s.set_defaults(func=cmd_detect)

    s = sub.add_parser("multiplicity", parents=[common, fieldsrc],
                       help="multiplicity of an invariant hypersurface")
    s.add_argument("--poly", required=True)
    s.add_argument("--basis")
    s.set_defaults(func=cmd_multiplicity)

    s = sub.add_parser("verify-bounds", parents=[common], help="randomized bound sweep")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--max-deg", type=int, default=4)
    s.add_argument("--seed", type=int)
    s.add_argument("--kind", choices=("mixed", "random", "planted", "exceptional"), default="mixed")
    s.set_defaults(func=cmd_verify_bounds)

    s = sub.add_parser("oracle", parents=[common, fieldsrc], help="floating-point cross-checks")
    s.add_argument("--mode", choices=("residual", "drift", "scan", "all"), default="all")
    s.add_argument("--n", type=int, default=100)
    s.add_argument("--seed", type=int)
    s.add_argument("--T", type=float, default=10.0)
    s.add_argument("--h", type=float, default=1e-3)
    s.add_argument("--starts", type=int, default=5)
    s.add_argument("--grid", type=int, default=720)
    s.add_argument("--target", choices=("meridians", "parallels"), default="meridians")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("examples", parents=[common], help="emit example fields")
    s.add_argument("--kind", choices=("exceptional", "extremal", "double", "hopf"),
                   default="exceptional")
    s.add_argument("--k", default="1", help="scale factor (rational)")
    s.add_argument("--count", type=int, default=2, help="points for --kind extremal")
    s.set_defaults(func=cmd_examples)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except (NotInvariant, ZeroPolynomialError, ExtacticIdenticallyZero) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (UsageError, DocumentError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
