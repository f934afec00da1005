"""Command line interface.

Exit codes: 0 success, 1 verification failure, 2 parse/format error,
3 precondition violation.
"""
from __future__ import annotations

import argparse
import json
import sys

from .complexes import ComplexError
from .lift import LiftError, curve_degree, lift_even, lift_odd
from .poly import DEFAULT_PRIME, QQ, ParseError, PolyError, PrimeField, parse_field, render
from .resolution import build
from .serialize import FormatError, complex_to_json, loads, random_curve, read_curve, read_generators
from .veronese import veronese_complex
from .verify import VerificationError, default_degree_bound, syzygy_oracle, verify_all

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from None


def _write(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _field(descriptor: str):
    try:
        return parse_field(descriptor)
    except PolyError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None


def _load_curve(path, field):
    try:
        f = read_curve(_read(path), field)
    except ParseError as exc:
        raise CliError(f"parse error: {exc}", EXIT_PARSE) from None
    try:
        d = curve_degree(f)
    except LiftError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    if d < 2:
        raise CliError(f"curve degree must be at least 2, got {d}", EXIT_PRECONDITION)
    if isinstance(field, PrimeField) and field.p <= d:
        raise CliError(f"prime {field.p} must exceed the curve degree {d}", EXIT_PRECONDITION)
    return f


def _load_complex(text: str):
    try:
        return loads(text)
    except FormatError as exc:
        raise CliError(f"format error: {exc}", EXIT_PARSE) from None


def _looks_like_json(text: str) -> bool:
    return text.lstrip().startswith("{")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_resolve(args) -> int:
    field = _field(args.field)
    if args.veronese:
        c = veronese_complex(field)
    else:
        f = _load_curve(args.input, field)
        c = build(f, assume_irreducible=True if args.assume_irreducible else None)
        for w in c.warnings:
            print(f"warning: {w}", file=sys.stderr)
    if args.format == "text":
        lines = [f"E_{i} = {E!r}" for i, E in enumerate(c.modules)]
        for i, d in enumerate(c.differentials, start=1):
            lines.append(f"d_{i}: {d.shape[0]}x{d.shape[1]}")
            lines.extend("  [" + ", ".join(render(e) for e in row) + "]" for row in d.entries)
        _write("\n".join(lines), args.out)
    else:
        _write(json.dumps(complex_to_json(c), indent=1), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    c = _load_complex(_read(args.input))
    field = _field(args.field)
    if not isinstance(field, PrimeField):
        raise CliError("verification runs over a prime field (fp:P)", EXIT_PRECONDITION)
    n_max = args.degree_bound if args.degree_bound is not None else default_degree_bound(c)
    try:
        summary = verify_all(c, n_max, field)
    except (VerificationError, ZeroDivisionError, PolyError) as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    if args.format == "json":
        _write(json.dumps(summary.to_json(), indent=1), args.out)
    else:
        lines = []
        for name, res in (
            ("check_complex", summary.complex_check),
            ("check_minimal", summary.minimal),
            ("check_homogeneity", summary.homogeneity),
            ("theta_vanishing", summary.theta),
        ):
            status = "PASS" if res.passed else "FAIL"
            extra = f" witness={[str(w) for w in res.witness]}" if res.witness else ""
            lines.append(f"{name}: {status}{extra}")
        rep = summary.exactness
        lines.append(f"graded_exactness (n <= {n_max}, {rep.field}): {'PASS' if rep.exact else 'FAIL'}")
        for cell in rep.failures():
            lines.append(f"  position {cell.position} degree {cell.degree}: {cell.verdict}")
        for chk in rep.ideal:
            if not chk.ok:
                lines.append(f"  ideal degree {chk.degree}: dim {chk.image_dim} != {chk.expected}")
        lines.append("PASS" if summary.passed else "FAIL")
        _write("\n".join(lines), args.out)
    return EXIT_OK if summary.passed else EXIT_FAIL


def cmd_betti(args) -> int:
    text = _read(args.input)
    if _looks_like_json(text):
        c = _load_complex(text)
    else:
        try:
            f = read_curve(text, QQ)
        except ParseError as exc:
            raise CliError(f"parse error: {exc}", EXIT_PARSE) from None
        try:
            if curve_degree(f) < 2:
                raise CliError("curve degree must be at least 2", EXIT_PRECONDITION)
            c = build(f, assume_irreducible=True)
        except LiftError as exc:
            raise CliError(str(exc), EXIT_PRECONDITION) from None
    table = c.betti_table()
    if args.format == "json":
        _write(json.dumps({"betti": table.to_json()}), args.out)
    else:
        _write(table.format(), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    field = _field(args.field)
    try:
        gens = read_generators(_read(args.gens), field)
    except ParseError as exc:
        raise CliError(f"parse error: {exc}", EXIT_PARSE) from None
    if any(not g.is_homogeneous() or g.is_zero() for g in gens):
        raise CliError("generators must be nonzero and homogeneous", EXIT_PRECONDITION)
    basis = syzygy_oracle(gens, args.degree, field)
    if args.format == "json":
        _write(json.dumps({"degree": args.degree, "dimension": len(basis),
                           "basis": [[render(p) for p in v] for v in basis]}, indent=1), args.out)
    else:
        lines = [f"dimension {len(basis)}"]
        lines.extend("(" + ", ".join(render(p) for p in v) + ")" for v in basis)
        _write("\n".join(lines), args.out)
    return EXIT_OK


def cmd_lift(args) -> int:
    field = _field(args.field)
    f = _load_curve(args.input, field)
    d = curve_degree(f)
    if d % 2 == 0:
        lift = lift_even(f)
        data = {"d": d, "m": lift.m, "F": render(lift.F)}
    else:
        lift = lift_odd(f)
        data = {"d": d, "m": lift.m, "h": {k: render(v) for k, v in lift.h.items()},
                "F": [render(p) for p in lift.F]}
    if args.format == "json":
        _write(json.dumps(data, indent=1), args.out)
    else:
        if "h" in data:
            lines = [f"h_{k} = {v}" for k, v in data["h"].items()]
            lines += [f"F_{n} = {p}" for n, p in enumerate(data["F"])]
        else:
            lines = [f"F = {data['F']}"]
        _write("\n".join(lines), args.out)
    return EXIT_OK


def cmd_random_curve(args) -> int:
    if args.degree < 2:
        raise CliError("curve degree must be at least 2", EXIT_PRECONDITION)
    field = _field(args.field)
    f = random_curve(args.degree, args.seed, field)
    if args.format == "json":
        _write(json.dumps({"f": render(f), "d": args.degree, "seed": args.seed}), args.out)
    else:
        _write(f"# random curve d={args.degree} seed={args.seed}\n{render(f)}", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="veronese-res",
        description="Minimal free resolutions of plane curves under the Veronese embedding.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="json"):
        p.add_argument("--format", choices=("json", "text"), default=fmt_default)
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("resolve", help="build the resolution of a curve")
    p.add_argument("--input", help="curve file (default stdin)")
    p.add_argument("--field", default="q", help="q or fp:P (default q)")
    p.add_argument("--assume-irreducible", action="store_true",
                   help="attest that f is irreducible (silences the warning)")
    p.add_argument("--veronese", action="store_true", help="emit the Veronese surface complex instead")
    common(p)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("verify", help="verify a complex JSON file")
    p.add_argument("--input", help="complex JSON (default stdin)")
    p.add_argument("--degree-bound", type=int, default=None, help="largest internal degree checked (default m+6)")
    p.add_argument("--field", default=f"fp:{DEFAULT_PRIME}")
    common(p, "text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("betti", help="print the Betti table of a complex or curve")
    p.add_argument("--input", help="complex JSON or curve file (default stdin)")
    common(p, "text")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("oracle", help="brute-force syzygies of generators in one degree")
    p.add_argument("--gens", required=True, help="file with one generator per line")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--field", default=f"fp:{DEFAULT_PRIME}")
    common(p, "text")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("lift", help="print the ambient lift of a curve")
    p.add_argument("--input", help="curve file (default stdin)")
    p.add_argument("--field", default="q")
    common(p, "text")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("random-curve", help="deterministic random test curve")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default="q")
    common(p, "text")
    p.set_defaults(func=cmd_random_curve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ComplexError, LiftError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
