"""Curve-independent templates for the odd-degree differentials.

Entries of the odd-degree complex are linear in the four lift polynomials
``h_I .. h_IV``. A template entry is an :class:`HForm`, a map from a
product of h-symbols (a sorted tuple of class names) to an ambient
polynomial coefficient. Treating the h's as free symbols, a template
column composes to zero against the previous template exactly when it does
so for every curve, so the checks and repairs here are done once.

The candidate columns below are kept verbatim next to the repaired
versions actually used by the builder; ``tests/test_templates.py`` pins
``repair_column(candidate) == repaired``.
"""
from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache

from .linalg import solve_linear
from .poly import QQ, Field, Polynomial, PolyError, Ring, parse_poly

H_SYMBOLS = {"hI": "I", "hII": "II", "hIII": "III", "hIV": "IV"}


class HForm:
    __slots__ = ("parts",)

    def __init__(self, parts=None):
        self.parts = {k: p for k, p in (parts or {}).items() if p}

    @classmethod
    def parse(cls, text: str, field: Field = QQ) -> "HForm":
        """Parse e.g. ``"-x00*x12*hI - x00*hII"`` (at most one h per term)."""
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls()
        parts: dict = {}
        for sign, body in re.findall(r"([+-]?)([^+-]+)", text):
            factors = body.split("*")
            hs = tuple(sorted(H_SYMBOLS[f] for f in factors if f in H_SYMBOLS))
            rest = [f for f in factors if f not in H_SYMBOLS]
            poly = parse_poly(sign + ("*".join(rest) if rest else "1"), Ring.AMBIENT, field)
            parts[hs] = parts[hs] + poly if hs in parts else poly
        return cls(parts)

    @classmethod
    def pure(cls, p: Polynomial) -> "HForm":
        return cls({(): p})

    def __add__(self, other: "HForm") -> "HForm":
        out = dict(self.parts)
        for k, p in other.parts.items():
            out[k] = out[k] + p if k in out else p
        return HForm(out)

    def __neg__(self):
        return HForm({k: -p for k, p in self.parts.items()})

    def __sub__(self, other: "HForm") -> "HForm":
        return self + (-other)

    def __mul__(self, other: "HForm") -> "HForm":
        out: dict = {}
        for k1, p1 in self.parts.items():
            for k2, p2 in other.parts.items():
                k = tuple(sorted(k1 + k2))
                prod = p1 * p2
                out[k] = out[k] + prod if k in out else prod
        return HForm(out)

    def scale(self, c) -> "HForm":
        return HForm({k: p.scale(c) for k, p in self.parts.items()})

    def is_zero(self) -> bool:
        return not self.parts

    def __bool__(self):
        return bool(self.parts)

    def __eq__(self, other):
        return isinstance(other, HForm) and self.parts == other.parts

    def terms(self):
        """Yield ``(h_key, monomial, coefficient)`` in a fixed order."""
        for k in sorted(self.parts):
            for mono, c in self.parts[k].sorted_terms():
                yield k, mono, c

    def instantiate(self, h: dict, field: Field) -> Polynomial:
        acc = Polynomial.zero(Ring.AMBIENT, field)
        for k, p in self.parts.items():
            term = p.change_field(field)
            for cls in k:
                term = term * h[cls]
            acc = acc + term
        return acc

    def __str__(self):
        if not self.parts:
            return "0"
        pieces = []
        for k in sorted(self.parts):
            suffix = "".join(f"*h{c}" for c in k)
            pieces.append(f"({self.parts[k]}){suffix}")
        return " + ".join(pieces)

    __repr__ = __str__


def hmatmul(A, B):
    """Product of HForm matrices given as row lists."""
    rows = []
    for row in A:
        out_row = []
        for c in range(len(B[0])):
            acc = HForm()
            for k, a in enumerate(row):
                if a and B[k][c]:
                    acc = acc + a * B[k][c]
            out_row.append(acc)
        rows.append(out_row)
    return rows


def _column(texts, field=QQ):
    return [HForm.parse(t, field) for t in texts]


def _columns_to_matrix(cols):
    return [[col[r] for col in cols] for r in range(len(cols[0]))]


# ---------------------------------------------------------------------------
# Candidate data (as first written down; some entries are wrong)
# ---------------------------------------------------------------------------

# generic lifts F_n = sum multiplier * h
F_TEXT = (
    "x00*x12*hI + x00*hII + x01*hIII + x02*hIV",
    "x11*x02*hI + x01*hII + x11*hIII + x12*hIV",
    "x22*x01*hI + x02*hII + x12*hIII + x22*hIV",
)

# Syzygies of (F_0, F_1, F_2) coming from x_k * Koszul relations.
Y_TEXT = {
    "00": ("x01", "-x00", "0"),
    "01": ("x11", "-x01", "0"),
    "02": ("x12", "-x02", "0"),
    "10": ("x02", "0", "-x00"),
    "11": ("x12", "0", "-x01"),
    "12": ("x22", "0", "-x02"),
    "20": ("0", "x02", "-x01"),
    "21": ("0", "x12", "-x11"),
    "22": ("0", "x22", "-x12"),
}
# Y_02 = Y_11 - Y_20 is dropped
Y_ORDER = ("00", "01", "10", "11", "12", "20", "21", "22")

V_TOP_CANDIDATE = (
    ("0", "0", "-x00*hI", "0", "hIV", "hIII"),
    ("0", "0", "hIV", "0", "-x11*hI", "-hII"),
    ("0", "x00*hI", "0", "hIV", "hIII", "0"),
    ("x00*hI", "hIV", "0", "0", "-hII", "-x22*hI"),
    ("0", "-hIII", "0", "-hII", "-x22*hI", "0"),
    ("0", "hIV", "hIII", "x11*hI", "0", "-x22*hI"),
    ("hIV", "x11*hI", "-hII", "0", "0", "0"),
    ("-hIII", "-hII", "x22*hI", "0", "0", "0"),
)

L_TEXT = (
    ("x02", "0", "-x01", "0", "0", "x00", "0", "0"),
    ("x12", "x02", "-x11", "-x01", "0", "x01", "x00", "0"),
    ("x22", "0", "-x12", "x02", "-x01", "0", "0", "x00"),
    ("0", "x12", "0", "-x11", "0", "0", "x01", "0"),
    ("0", "x22", "0", "0", "-x11", "-x12", "x02", "x01"),
    ("0", "0", "0", "x22", "-x12", "-x22", "0", "x02"),
)

K_TOP_CANDIDATE = (
    ("0", "0", "0", "x00*hI", "0", "0", "-hIV", "hIII"),
    ("0", "0", "x00*hI", "0", "-hIII", "-hIV", "x11*hI", "hII"),
    ("-x00*hI", "-hIV", "0", "-hIII", "0", "hIII", "hII", "x22*hI"),
    ("0", "0", "-hIV", "-x11*hI", "hII", "x11*hI", "0", "0"),
    ("-hIV", "-x11*hI", "hIII", "hII", "-x22*hI", "0", "0", "0"),
    ("hIII", "hII", "0", "0", "0", "-x22*hI", "0", "0"),
)

J_TOP_CANDIDATE = (
    "-x00*x12*hI - x00*hII - x01*hIII - x02*hIV",
    "-x11*x02*hI + x01*hII + x11*hIII + x12*hIV",
    "-x01*x22*hI - x02*hII - x12*hIII - x22*hIV",
)

J_PRIME_TEXT = (
    "x12^2 - x11*x22",
    "-x02*x12 + x01*x22",
    "x11*x02 - x01*x12",
    "x02^2 - x00*x22",
    "-x01*x02 + x00*x12",
    "x01^2 - x00*x11",
)

# ---------------------------------------------------------------------------
# Repaired data (output of repair_column on the candidate data, frozen)
# ---------------------------------------------------------------------------

V_TOP = V_TOP_CANDIDATE

K_TOP = (
    ("0", "0", "0", "x00*hI", "0", "0", "-hIV", "-hIII"),
) + K_TOP_CANDIDATE[1:]

J_TOP = (
    J_TOP_CANDIDATE[0],
    "x11*x02*hI + x01*hII + x11*hIII + x12*hIV",
    J_TOP_CANDIDATE[2],
)


# ---------------------------------------------------------------------------
# Generic matrices
# ---------------------------------------------------------------------------

def _veronese_hmatrices(field):
    from .veronese import M2, M3, minors

    m1 = [[HForm.pure(p) for p in minors(field)]]
    m2 = [[HForm.pure(p) for p in row] for row in M2(field)]
    m3 = [[HForm.pure(p) for p in row] for row in M3(field)]
    return m1, m2, m3


@lru_cache(maxsize=None)
def generic_odd_matrices(field: Field = QQ, candidate: bool = False) -> dict:
    """The four odd-degree differentials with h_I..h_IV left symbolic."""
    m1, m2, m3 = _veronese_hmatrices(field)
    v_top = V_TOP_CANDIDATE if candidate else V_TOP
    k_top = K_TOP_CANDIDATE if candidate else K_TOP
    j_top = J_TOP_CANDIDATE if candidate else J_TOP
    zero = HForm()

    b1 = [m1[0] + _column(F_TEXT, field)]

    y_cols = [_column(Y_TEXT[k], field) for k in Y_ORDER]
    v_cols = [_column(top, field) + y for top, y in zip(v_top, y_cols)]
    v_mat = _columns_to_matrix(v_cols)
    b2 = [m2[r] + v_mat[r] for r in range(6)] + [[zero] * 8 + v_mat[r] for r in range(6, 9)]

    k_cols = [_column(top, field) + _column(l, field) for top, l in zip(k_top, L_TEXT)]
    k_mat = _columns_to_matrix(k_cols)
    b3 = [m3[r] + k_mat[r] for r in range(8)] + [[zero] * 3 + k_mat[r] for r in range(8, 16)]

    j_col = _column(j_top, field) + _column(J_PRIME_TEXT, field)
    b4 = [[e] for e in j_col]
    return {1: b1, 2: b2, 3: b3, 4: b4}


def composition_residual(prev, column) -> list:
    """``prev * column`` for an HForm matrix and a single HForm column."""
    return [r[0] for r in hmatmul(prev, [[e] for e in column])]


class RepairError(PolyError):
    pass


def repair_column(prev, column, free_rows, max_changes: int = 3):
    """Make ``prev * column == 0`` by rescaling candidate terms in ``free_rows``.

    Every term ``c * x^a * h`` of an entry in ``free_rows`` gets an unknown
    scalar ``s`` (candidate value: ``s = 1``); the other rows are fixed. Among
    the scalar vectors satisfying the composition identity we return the one
    that changes the fewest candidate scalars (ties broken by term order). The
    support pattern is therefore never enlarged.

    Returns ``(repaired_column, changes)`` with ``changes`` a list of
    ``(row, h_key, monomial, new_scalar)``.
    """
    if all(r.is_zero() for r in composition_residual(prev, column)):
        return list(column), []

    unknowns = []  # (row, h_key, mono, coeff)
    for r in free_rows:
        for k, mono, c in column[r].terms():
            unknowns.append((r, k, mono, c))
    fixed = [column[r] if r not in free_rows else HForm() for r in range(len(column))]
    base = composition_residual(prev, fixed)

    # one equation per (output row, h key, monomial)
    contributions = []
    for r, k, mono, c in unknowns:
        field = column[r].parts[k].field
        single = [HForm() for _ in column]
        single[r] = HForm({k: Polynomial._raw(Ring.AMBIENT, field, {mono: c})})
        contributions.append(composition_residual(prev, single))
    eq_index: dict = {}
    for res in contributions + [base]:
        for out_row, form in enumerate(res):
            for k, mono, _ in form.terms():
                eq_index.setdefault((out_row, k, mono), len(eq_index))

    n_eq, n_var = len(eq_index), len(unknowns)
    A = [[Fraction(0)] * n_var for _ in range(n_eq)]
    b = [Fraction(0)] * n_eq
    for j, res in enumerate(contributions):
        for out_row, form in enumerate(res):
            for k, mono, c in form.terms():
                A[eq_index[(out_row, k, mono)]][j] += Fraction(c)
    for out_row, form in enumerate(base):
        for k, mono, c in form.terms():
            b[eq_index[(out_row, k, mono)]] -= Fraction(c)

    for n_changes in range(1, max_changes + 1):
        for changed in itertools.combinations(range(n_var), n_changes):
            pinned = [j for j in range(n_var) if j not in changed]
            # substitute s_j = 1 for pinned unknowns
            rows = []
            rhs = []
            for i in range(n_eq):
                rows.append([A[i][j] for j in changed])
                rhs.append(b[i] - sum(A[i][j] for j in pinned))
            sol = solve_linear(rows, rhs, QQ)
            if sol is None:
                continue
            particular, kernel = sol
            if kernel:
                continue  # ambiguous repair; keep searching for a forced one
            if any(v == 1 for v in particular):
                continue  # not a real change
            scalars = [Fraction(1)] * n_var
            for j, v in zip(changed, particular):
                scalars[j] = v
            repaired = list(column)
            for r in free_rows:
                repaired[r] = HForm()
            changes = []
            for j, (r, k, mono, c) in enumerate(unknowns):
                s = scalars[j]
                if s == 0:
                    continue
                field = column[r].parts[k].field
                term = HForm({k: Polynomial._raw(Ring.AMBIENT, field, {mono: field.normalize(c * s)})})
                repaired[r] = repaired[r] + term
                if s != 1:
                    changes.append((r, k, mono, s))
            return repaired, changes
    raise RepairError("no repair within the candidate support pattern")


def instantiate(matrix, h: dict, field: Field) -> list:
    return [[e.instantiate(h, field) for e in row] for row in matrix]
