"""Minimal free resolutions of Veronese images of plane curves.

Even degree ``d = 2m``::

    0 -> S(-m-4)^3 -> S(-4)^3 + S(-m-3)^8 -> S(-3)^8 + S(-m-2)^6
      -> S(-2)^6 + S(-m) -> S

Odd degree ``d = 2m - 1``::

    0 -> S(-m-4) -> S(-4)^3 + S(-m-2)^6 -> S(-3)^8 + S(-m-1)^8
      -> S(-2)^6 + S(-m)^3 -> S

Inside every ``E_i`` the Veronese summands come first and the curve
summands second; equal twists are never merged in storage.
"""
from __future__ import annotations

from .complexes import (
    ComplexError,
    GradedFreeModule,
    GradedMatrix,
    ResolutionComplex,
    block_matrix,
    identity_block,
    zero_block,
)
from .lift import LiftError, curve_degree, lift_even, lift_odd
from .poly import Polynomial
from .templates import generic_odd_matrices, instantiate, Y_ORDER
from .veronese import M1, M2, M3, MINOR_INDICES

IRREDUCIBILITY_WARNING = (
    "irreducibility of f is not attested: the resolution is built from the "
    "formulas but is only guaranteed exact for irreducible curves"
)


def _warnings(assume_irreducible):
    if assume_irreducible is True:
        return []
    return [IRREDUCIBILITY_WARNING]


def build_even(f: Polynomial, assume_irreducible: bool | None = None) -> ResolutionComplex:
    d = curve_degree(f)
    if d % 2:
        raise LiftError(f"build_even needs even degree, got {d}")
    m = d // 2
    if m < 1:
        raise LiftError("degree must be at least 2")
    field = f.field
    lift = lift_even(f)
    F = lift.F

    E = [
        GradedFreeModule([0]),
        GradedFreeModule([2] * 6 + [m]),
        GradedFreeModule([3] * 8 + [m + 2] * 6),
        GradedFreeModule([4] * 3 + [m + 3] * 8),
        GradedFreeModule([m + 4] * 3),
    ]
    m1, m2, m3 = [list(r) for r in M1(field)], [list(r) for r in M2(field)], [list(r) for r in M3(field)]

    d1 = block_matrix([[m1, [[F]]]])
    d2 = block_matrix([
        [m2, identity_block(6, -F)],
        [zero_block(1, 8, field), m1],
    ])
    # +F here (the H_i columns); -F would leave 2*F*M2 in d2*d3
    d3 = block_matrix([
        [m3, identity_block(8, F)],
        [zero_block(6, 3, field), m2],
    ])
    d4 = block_matrix([[identity_block(3, -F)], [m3]])

    ds = [GradedMatrix(E[i], E[i - 1], rows) for i, rows in enumerate((d1, d2, d3, d4), start=1)]
    provenance = {"kind": "curve", "f": f, "d": d, "m": m, "parity": "even", "lift": lift}
    return ResolutionComplex(E, ds, field, provenance, _warnings(assume_irreducible))


def build_odd(f: Polynomial, assume_irreducible: bool | None = None) -> ResolutionComplex:
    d = curve_degree(f)
    if d % 2 == 0:
        raise LiftError(f"build_odd needs odd degree, got {d}")
    if d < 3:
        raise LiftError("odd degree must be at least 3")
    m = (d + 1) // 2
    field = f.field
    lift = lift_odd(f)

    E = [
        GradedFreeModule([0]),
        GradedFreeModule([2] * 6 + [m] * 3),
        GradedFreeModule([3] * 8 + [m + 1] * 8),
        GradedFreeModule([4] * 3 + [m + 2] * 6),
        GradedFreeModule([m + 4]),
    ]
    generic = generic_odd_matrices()
    ds = []
    for i in range(1, 5):
        rows = instantiate(generic[i], lift.h, field)
        ds.append(GradedMatrix(E[i], E[i - 1], rows))
    provenance = {"kind": "curve", "f": f, "d": d, "m": m, "parity": "odd", "lift": lift}
    return ResolutionComplex(E, ds, field, provenance, _warnings(assume_irreducible))


def build(f: Polynomial, assume_irreducible: bool | None = None) -> ResolutionComplex:
    """Dispatch on the parity of ``deg f``."""
    d = curve_degree(f)
    if d < 2:
        raise LiftError("curve degree must be at least 2")
    if d % 2 == 0:
        return build_even(f, assume_irreducible)
    return build_odd(f, assume_irreducible)


# ---------------------------------------------------------------------------
# named vector families
# ---------------------------------------------------------------------------

EVEN_FAMILIES = {"U", "Wprime", "H", "Gprime"}
ODD_FAMILIES = {"Wprime", "Gprime", "V", "Y", "K", "L", "J", "Jprime"}


def _cols(dm: GradedMatrix, cols, rows=None):
    rows = range(dm.shape[0]) if rows is None else rows
    return [tuple(dm.entries[r][c] for r in rows) for c in cols]


def block_accessors(c: ResolutionComplex, name: str) -> list:
    """Return the named vector family as ``[(label, entries), ...]``.

    Vectors are slices of the stored differentials, never recomputed.
    """
    parity = c.provenance.get("parity")
    if parity not in ("even", "odd"):
        raise ComplexError("block accessors need a complex built from a curve")
    allowed = EVEN_FAMILIES if parity == "even" else ODD_FAMILIES
    if name not in allowed:
        raise ComplexError(f"family {name!r} does not exist for {parity} degree")

    d2, d3, d4 = c.d(2), c.d(3), c.d(4)
    if name == "Wprime":
        return [(f"W'_{k + 1}", v) for k, v in enumerate(_cols(d2, range(8)))]
    if name == "Gprime":
        return [(f"G'_{k + 1}", v) for k, v in enumerate(_cols(d3, range(3)))]
    if parity == "even":
        if name == "U":
            return [(f"U_{ij}", v) for ij, v in zip(MINOR_INDICES, _cols(d2, range(8, 14)))]
        if name == "H":
            return [(f"H_{k + 1}", v) for k, v in enumerate(_cols(d3, range(3, 11)))]
    if name == "V":
        return [(f"V_{k + 1}", v) for k, v in enumerate(_cols(d2, range(8, 16)))]
    if name == "Y":
        return [(f"Y_{lk}", v) for lk, v in zip(Y_ORDER, _cols(d2, range(8, 16), range(6, 9)))]
    if name == "K":
        return [(f"K_{k + 1}", v) for k, v in enumerate(_cols(d3, range(3, 9)))]
    if name == "L":
        return [(f"L_{k + 1}", v) for k, v in enumerate(_cols(d3, range(3, 9), range(8, 16)))]
    if name == "J":
        return [("J", _cols(d4, [0])[0])]
    return [("J'", _cols(d4, [0], range(3, 9))[0])]
