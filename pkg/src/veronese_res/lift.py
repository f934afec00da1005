"""Preimages under theta of plane-curve equations.

For ``f`` of even degree ``2m`` we build ``F`` of degree ``m`` with
``theta(F) = f``. For odd degree ``2m - 1`` we build ``h_I .. h_IV`` and
``F_0, F_1, F_2`` of degree ``m`` with ``theta(F_n) = x_n * f``.
Both constructions act monomial by monomial, keyed on exponent parities.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .poly import NOT_HOMOGENEOUS, ZERO_DEGREE, Polynomial, PolyError, Ring

CLASSES = ("I", "II", "III", "IV")

# ambient exponent positions
_X00, _X01, _X02, _X11, _X12, _X22 = range(6)


class Parity(enum.Enum):
    EVEN = 0
    ODD = 1


class LiftError(PolyError):
    pass


@dataclass(frozen=True)
class ParityParts:
    parts: dict  # class name -> CURVE polynomial

    def __getitem__(self, key: str) -> Polynomial:
        return self.parts[key]

    def total(self) -> Polynomial:
        it = iter(self.parts.values())
        acc = next(it)
        for p in it:
            acc = acc + p
        return acc


@dataclass(frozen=True)
class EvenLift:
    F: Polynomial
    m: int


@dataclass(frozen=True)
class OddLift:
    h: dict  # "I".."IV" -> AMBIENT polynomial
    F: tuple  # (F_0, F_1, F_2)
    m: int


def curve_degree(f: Polynomial) -> int:
    if f.ring is not Ring.CURVE:
        raise LiftError(f"expected a CURVE polynomial, got {f.ring.name}")
    deg = f.homogeneous_degree()
    if deg is NOT_HOMOGENEOUS:
        raise LiftError("curve polynomial is not homogeneous")
    if deg == ZERO_DEGREE:
        raise LiftError("curve polynomial is zero")
    return deg


def parity_class(mono, parity: Parity) -> str:
    """Which of the four classes an exponent triple falls into."""
    i, j, k = (e % 2 for e in mono)
    # "special" coordinate is the one whose parity differs from the other two
    base = 0 if parity is Parity.EVEN else 1
    flips = (i != base, j != base, k != base)
    if not any(flips):
        return "I"
    if flips == (False, True, True):
        return "II"
    if flips == (True, False, True):
        return "III"
    if flips == (True, True, False):
        return "IV"
    raise LiftError(f"monomial {mono} does not have the expected degree parity")


def parity_split(f: Polynomial, parity: Parity) -> ParityParts:
    d = curve_degree(f)
    if d % 2 != parity.value:
        raise LiftError(f"degree {d} does not have {parity.name.lower()} parity")
    buckets = {c: {} for c in CLASSES}
    for mono, c in f.terms.items():
        buckets[parity_class(mono, parity)][mono] = c
    return ParityParts({c: Polynomial._raw(Ring.CURVE, f.field, t) for c, t in buckets.items()})


def _even_image(mono) -> tuple:
    i, j, k = mono
    e = [0] * 6
    e[_X00] = i // 2
    e[_X11] = j // 2
    e[_X22] = k // 2
    if i % 2 == 0 and j % 2 and k % 2:
        e[_X12] = 1
    elif j % 2 == 0 and i % 2 and k % 2:
        e[_X02] = 1
    elif k % 2 == 0 and i % 2 and j % 2:
        e[_X01] = 1
    return tuple(e)


def lift_even(f: Polynomial) -> EvenLift:
    """Lift ``f`` of degree ``2m`` to ``F`` in S of degree ``m``.

    >>> from .poly import parse_poly
    >>> str(lift_even(parse_poly("x1*x2", Ring.CURVE)).F)
    'x12'
    """
    d = curve_degree(f)
    if d % 2:
        raise LiftError(f"lift_even needs even degree, got {d}")
    if d < 2:
        raise LiftError("degree must be at least 2")
    terms = {}
    for mono, c in f.terms.items():
        # distinct curve monomials have distinct images
        terms[_even_image(mono)] = c
    return EvenLift(Polynomial._raw(Ring.AMBIENT, f.field, terms), d // 2)


def _h_image(mono) -> tuple:
    # each odd coordinate loses one from its exponent before halving
    i, j, k = mono
    e = [0] * 6
    e[_X00] = i // 2
    e[_X11] = j // 2
    e[_X22] = k // 2
    return tuple(e)


# F_n = sum over classes of multiplier[n][class] * h_class
_MULTIPLIERS = (
    {"I": ("x00", "x12"), "II": ("x00",), "III": ("x01",), "IV": ("x02",)},
    {"I": ("x11", "x02"), "II": ("x01",), "III": ("x11",), "IV": ("x12",)},
    {"I": ("x22", "x01"), "II": ("x02",), "III": ("x12",), "IV": ("x22",)},
)


def multiplier(n: int, cls: str, field) -> Polynomial:
    names = _MULTIPLIERS[n][cls]
    e = [0] * 6
    for name in names:
        e[Ring.AMBIENT.variables.index(name)] += 1
    return Polynomial._raw(Ring.AMBIENT, field, {tuple(e): field(1)})


def lift_odd(f: Polynomial) -> OddLift:
    d = curve_degree(f)
    if d % 2 == 0:
        raise LiftError(f"lift_odd needs odd degree, got {d}")
    if d < 3:
        raise LiftError("odd degree must be at least 3")
    parts = parity_split(f, Parity.ODD)
    h = {}
    for cls in CLASSES:
        h[cls] = Polynomial._raw(
            Ring.AMBIENT, f.field, {_h_image(mono): c for mono, c in parts[cls].terms.items()}
        )
    F = []
    for n in range(3):
        acc = Polynomial.zero(Ring.AMBIENT, f.field)
        for cls in CLASSES:
            if h[cls]:
                acc = acc + multiplier(n, cls, f.field) * h[cls]
        F.append(acc)
    return OddLift(h, tuple(F), (d + 1) // 2)
