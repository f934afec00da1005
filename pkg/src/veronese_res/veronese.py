"""The Veronese ring map and the fixed resolution of the Veronese surface in P^5."""
from __future__ import annotations

from functools import lru_cache

from .poly import QQ, Field, Polynomial, PolyError, Ring, parse_poly

# minors are always indexed in this order
MINOR_INDICES = ("00", "01", "02", "11", "12", "22")

# pair (i, j) for each ambient variable, in Ring.AMBIENT order
_PAIRS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


def theta(G: Polynomial) -> Polynomial:
    """Pull back along the Veronese map: ``x_ij -> x_i * x_j``."""
    if G.ring is not Ring.AMBIENT:
        raise PolyError(f"theta expects an AMBIENT polynomial, got {G.ring.name}")
    norm = G.field.normalize
    out: dict = {}
    for mono, c in G.terms.items():
        e = [0, 0, 0]
        for (i, j), a in zip(_PAIRS, mono):
            if a:
                e[i] += a
                e[j] += a
        key = tuple(e)
        out[key] = out.get(key, 0) + c
    return Polynomial._raw(Ring.CURVE, G.field, {m: v for m, c in out.items() if (v := norm(c))})


def ambient_var(name: str, field: Field = QQ) -> Polynomial:
    if name not in Ring.AMBIENT.variables:
        raise PolyError(f"{name} is not an ambient variable")
    return Polynomial.var(name, field)


_MINOR_TEXT = {
    "00": "x11*x22 - x12^2",
    "01": "x01*x22 - x12*x02",
    "02": "x01*x12 - x02*x11",
    "11": "x00*x22 - x02^2",
    "12": "x00*x12 - x02*x01",
    "22": "x00*x11 - x01^2",
}


@lru_cache(maxsize=None)
def minors(field: Field = QQ) -> tuple:
    """The six 2x2 minors of the symmetric matrix (x_ij), in order 00, 01, 02, 11, 12, 22."""
    return tuple(parse_poly(_MINOR_TEXT[ij], Ring.AMBIENT, field) for ij in MINOR_INDICES)


def minor(ij: str, field: Field = QQ) -> Polynomial:
    return minors(field)[MINOR_INDICES.index(ij)]


# Linear syzygies of the minors, column by column (W_1..W_8), and the
# second syzygies (G_1..G_3). Entries transcribed row-major.
M2_TEXT = (
    ("x02", "0", "x01", "0", "0", "x00", "0", "0"),
    ("-x12", "x02", "-x11", "x01", "0", "0", "x00", "0"),
    ("x22", "0", "x12", "x02", "x01", "x02", "0", "x00"),
    ("0", "-x12", "0", "-x11", "0", "-x11", "-x01", "0"),
    ("0", "x22", "0", "0", "-x11", "x12", "x02", "-x01"),
    ("0", "0", "0", "x22", "x12", "0", "0", "x02"),
)

M3_TEXT = (
    ("x01", "x00", "0"),
    ("-x11", "-x01", "0"),
    ("-x02", "0", "x00"),
    ("x12", "x02", "0"),
    ("-x22", "0", "x02"),
    ("0", "-x02", "-x01"),
    ("0", "x12", "x11"),
    ("0", "-x22", "-x12"),
)


def _matrix(text_rows, field: Field) -> tuple:
    return tuple(tuple(parse_poly(t, Ring.AMBIENT, field) for t in row) for row in text_rows)


@lru_cache(maxsize=None)
def M1(field: Field = QQ) -> tuple:
    """1 x 6 row of minors."""
    return (minors(field),)


@lru_cache(maxsize=None)
def M2(field: Field = QQ) -> tuple:
    """6 x 8; column k is the syzygy W_k."""
    return _matrix(M2_TEXT, field)


@lru_cache(maxsize=None)
def M3(field: Field = QQ) -> tuple:
    """8 x 3; column k is G_k."""
    return _matrix(M3_TEXT, field)


def veronese_complex(field: Field = QQ):
    """``0 -> S(-4)^3 -> S(-3)^8 -> S(-2)^6 -> S``."""
    from .complexes import GradedFreeModule, GradedMatrix, ResolutionComplex

    E = [
        GradedFreeModule([0]),
        GradedFreeModule([2] * 6),
        GradedFreeModule([3] * 8),
        GradedFreeModule([4] * 3),
    ]
    ds = [
        GradedMatrix(E[1], E[0], M1(field)),
        GradedMatrix(E[2], E[1], M2(field)),
        GradedMatrix(E[3], E[2], M3(field)),
    ]
    return ResolutionComplex(E, ds, field=field, provenance={"kind": "veronese"})
