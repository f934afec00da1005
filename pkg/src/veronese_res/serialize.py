"""JSON format (version 1) for complexes and curve files."""
from __future__ import annotations

import json
import random

from .complexes import ComplexError, GradedFreeModule, GradedMatrix, ResolutionComplex
from .lift import curve_degree, lift_even, lift_odd
from .poly import QQ, Field, ParseError, Polynomial, PolyError, Ring, graded_basis, parse_field, parse_poly, render

FORMAT_VERSION = 1


class FormatError(ValueError):
    """Malformed or unsupported JSON / curve input."""


def complex_to_json(c: ResolutionComplex) -> dict:
    out = {"format": FORMAT_VERSION, "field": getattr(c.field, "name", "q")}
    f = c.curve
    if f is not None:
        out["curve"] = {"f": render(f), "d": c.degree}
    out["modules"] = [list(E.twists) for E in c.modules]
    out["differentials"] = [
        {
            "rows": d.shape[0],
            "cols": d.shape[1],
            "entries": [[render(e) for e in row] for row in d.entries],
        }
        for d in c.differentials
    ]
    return out


def dumps(c: ResolutionComplex, indent: int | None = 1) -> str:
    return json.dumps(complex_to_json(c), indent=indent)


def _require(cond, message):
    if not cond:
        raise FormatError(message)


def complex_from_json(obj) -> ResolutionComplex:
    _require(isinstance(obj, dict), "top level must be an object")
    _require(obj.get("format") == FORMAT_VERSION, f"unsupported format {obj.get('format')!r}")
    try:
        field = parse_field(str(obj.get("field", "q")))
    except PolyError as exc:
        raise FormatError(str(exc)) from None

    modules_raw = obj.get("modules")
    diffs_raw = obj.get("differentials")
    _require(isinstance(modules_raw, list) and modules_raw, "modules must be a non-empty list")
    _require(isinstance(diffs_raw, list), "differentials must be a list")
    try:
        modules = [GradedFreeModule(ts) for ts in modules_raw]
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad module twists: {exc}") from None
    _require(len(diffs_raw) == len(modules) - 1, "need one differential per module after E_0")

    ds = []
    for i, raw in enumerate(diffs_raw, start=1):
        _require(isinstance(raw, dict), f"differential {i} must be an object")
        rows, cols, entries = raw.get("rows"), raw.get("cols"), raw.get("entries")
        _require(isinstance(entries, list) and len(entries) == rows, f"d_{i}: row count mismatch")
        _require(all(isinstance(r, list) and len(r) == cols for r in entries), f"d_{i}: column count mismatch")
        try:
            parsed = [[parse_poly(str(t), Ring.AMBIENT, field) for t in r] for r in entries]
        except ParseError as exc:
            raise FormatError(f"d_{i}: {exc}") from None
        try:
            ds.append(GradedMatrix(modules[i], modules[i - 1], parsed))
        except ComplexError as exc:
            raise FormatError(f"d_{i}: {exc}") from None

    provenance: dict = {"kind": "veronese"}
    curve = obj.get("curve")
    if curve is not None:
        _require(isinstance(curve, dict) and "f" in curve, "curve must be an object with key 'f'")
        try:
            f = parse_poly(str(curve["f"]), Ring.CURVE, field)
            d = curve_degree(f)
        except PolyError as exc:
            raise FormatError(f"curve: {exc}") from None
        _require(curve.get("d", d) == d, "curve degree does not match f")
        provenance = {"kind": "curve", "f": f, "d": d}
        if d >= 2 and d % 2 == 0:
            provenance.update(m=d // 2, parity="even", lift=lift_even(f))
        elif d >= 3:
            provenance.update(m=(d + 1) // 2, parity="odd", lift=lift_odd(f))
    try:
        return ResolutionComplex(modules, ds, field, provenance)
    except ComplexError as exc:
        raise FormatError(str(exc)) from None


def loads(text: str) -> ResolutionComplex:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return complex_from_json(obj)


# ---------------------------------------------------------------------------
# curve files
# ---------------------------------------------------------------------------

def strip_comments(text: str) -> str:
    lines = [line.split("#", 1)[0] for line in text.splitlines()]
    return " ".join(line.strip() for line in lines if line.strip())


def read_curve(text: str, field: Field = QQ) -> Polynomial:
    """One polynomial in x0, x1, x2; ``#`` starts a comment."""
    body = strip_comments(text)
    if not body:
        raise ParseError("empty curve file", 0)
    return parse_poly(body, Ring.CURVE, field)


def read_generators(text: str, field: Field = QQ) -> list:
    """One polynomial per line, all in the same ring (inferred)."""
    lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise ParseError("no generators given", 0)
    last_error = None
    for ring in (Ring.AMBIENT, Ring.CURVE):
        try:
            return [parse_poly(line, ring, field) for line in lines]
        except ParseError as exc:
            last_error = exc
    raise last_error


def random_curve(d: int, seed: int, field: Field = QQ, coeff_range: int = 9) -> Polynomial:
    """Dense random ``f`` of degree ``d`` with nonzero ``x0^d, x1^d, x2^d`` coefficients.

    Deterministic in ``seed``.
    """
    if d < 2:
        raise PolyError("curve degree must be at least 2")
    rng = random.Random(seed)
    pure = {(d, 0, 0), (0, d, 0), (0, 0, d)}
    terms = {}
    for mono in graded_basis(Ring.CURVE, d):
        c = 0
        while c == 0 or field(c) == 0:
            c = rng.randint(-coeff_range, coeff_range)
            if mono not in pure:
                break
        terms[mono] = c
    return Polynomial(Ring.CURVE, terms, field)
