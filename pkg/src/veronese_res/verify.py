"""Machine checks for built complexes.

Symbolic checks (composition, minimality, theta-vanishing) run over the
complex's own field. Rank checks run degree by degree over F_p (default
p = 32003) and use only the graded monomial bases, so they are independent
of how the complex was constructed.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Sequence

import numpy as np

from .complexes import ComplexError, GradedMatrix, ResolutionComplex, matmul
from .linalg import SparseVectors, nullspace, nullspace_modp, rank as dense_rank
from .poly import (
    DEFAULT_PRIME,
    NOT_HOMOGENEOUS,
    ZERO_DEGREE,
    Field,
    Polynomial,
    PrimeField,
    Ring,
    basis_index,
    graded_basis,
    graded_dim,
)
from .veronese import theta


class VerificationError(ValueError):
    pass


@dataclass
class CheckResult:
    passed: bool
    witness: tuple | None = None
    message: str = ""

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        out = {"passed": self.passed, "message": self.message}
        if self.witness is not None:
            out["witness"] = [str(w) if isinstance(w, Polynomial) else w for w in self.witness]
        return out


# ---------------------------------------------------------------------------
# symbolic checks
# ---------------------------------------------------------------------------

def check_complex(c: ResolutionComplex) -> CheckResult:
    """``d_i * d_{i+1} == 0`` symbolically; witness ``(i, row, col, residual)``."""
    for i in range(1, c.length):
        a, b = c.d(i), c.d(i + 1)
        if b.target != a.source:
            raise ComplexError(f"d_{i + 1} does not land in the source of d_{i}")
        product = matmul(a.entries, b.entries)
        for r, row in enumerate(product):
            for col, e in enumerate(row):
                if e:
                    return CheckResult(False, (i, r, col, e), f"d_{i} * d_{i + 1} has a nonzero entry")
    return CheckResult(True, message="all compositions vanish")


def check_minimal(c: ResolutionComplex) -> CheckResult:
    """No differential entry is a nonzero constant; witness ``(i, row, col)``."""
    for i, d in enumerate(c.differentials, start=1):
        for r, row in enumerate(d.entries):
            for col, e in enumerate(row):
                if e.is_nonzero_constant():
                    return CheckResult(False, (i, r, col), f"d_{i} has the unit entry {e}")
    return CheckResult(True, message="no unit entries")


def check_homogeneity(c: ResolutionComplex) -> CheckResult:
    """Every entry is zero or of degree ``source twist - target twist``."""
    for i, d in enumerate(c.differentials, start=1):
        for r, row in enumerate(d.entries):
            for col, e in enumerate(row):
                deg = e.homogeneous_degree()
                if deg == ZERO_DEGREE:
                    continue
                want = d.source.twists[col] - d.target.twists[r]
                if deg is NOT_HOMOGENEOUS or deg != want:
                    return CheckResult(False, (i, r, col), f"entry has degree {deg}, expected {want}")
    return CheckResult(True, message="all entries have the forced degree")


def theta_vanishing_check(c: ResolutionComplex) -> CheckResult:
    """``theta(g)`` lies in ``(f)`` for every generator ``g`` in ``d_1``."""
    f = c.curve
    for col, g in enumerate(c.d(1).entries[0]):
        image = theta(g)
        if f is None:
            ok = image.is_zero()
        else:
            f_here = f.change_field(image.field) if f.field != image.field else f
            ok = image.is_zero() or image.divmod(f_here)[1].is_zero()
        if not ok:
            return CheckResult(False, (1, 0, col, image), "theta of a generator is not a multiple of f")
    return CheckResult(True, message="every generator vanishes on the curve")


# ---------------------------------------------------------------------------
# Betti / Hilbert
# ---------------------------------------------------------------------------

def betti_table(c: ResolutionComplex):
    return c.betti_table()


def hilbert_from_resolution(c: ResolutionComplex, n: int) -> int:
    """Alternating sum of the graded dimensions of the ``E_i`` in degree ``n``."""
    return sum((-1) ** i * E.dim(n) for i, E in enumerate(c.modules))


def hilbert_oracle(d: int, n: int) -> int:
    """``dim (k[x0,x1,x2]/(f))_{2n}`` for ``f`` of degree ``d``."""
    if d < 1 or n < 0:
        raise VerificationError("need d >= 1 and n >= 0")
    top = comb(2 * n + 2, 2)
    low = 2 * n - d + 2
    return top - (comb(low, 2) if 2 * n >= d else 0)


def expected_hilbert(c: ResolutionComplex, n: int) -> int:
    """Hilbert function of ``S/I`` for the complex's ideal."""
    if c.degree is None:
        return comb(2 * n + 2, 2)  # the Veronese surface itself
    return hilbert_oracle(c.degree, n)


# ---------------------------------------------------------------------------
# graded pieces
# ---------------------------------------------------------------------------

def _offsets(twists, n):
    offs = []
    o = 0
    for b in twists:
        offs.append(o)
        o += graded_dim(Ring.AMBIENT, n - b)
    return offs, o


def piece_vectors(dm: GradedMatrix, n: int, p: int) -> SparseVectors:
    """Images of the monomial basis of ``(source)_n`` in ``(target)_n``, mod ``p``.

    Vector ``(j, u)`` is ``u * column_j`` for each basis monomial ``u`` of
    degree ``n - a_j``, in summand order then descending grevlex.
    """
    src, tgt = dm.source.twists, dm.target.twists
    offs, n_cols = _offsets(tgt, n)
    sv = SparseVectors(n_cols, p)
    for j, a in enumerate(src):
        if n < a:
            continue
        col = []
        for r, row in enumerate(dm.entries):
            e = row[j]
            if e:
                idx = basis_index(Ring.AMBIENT, n - tgt[r])
                col.append((offs[r], idx, [(m, _to_int(v, p)) for m, v in e.terms.items()]))
        for u in graded_basis(Ring.AMBIENT, n - a):
            vec: dict = {}
            for off, idx, terms in col:
                for m, v in terms:
                    k = off + idx[(u[0] + m[0], u[1] + m[1], u[2] + m[2],
                                   u[3] + m[3], u[4] + m[4], u[5] + m[5])]
                    vec[k] = vec.get(k, 0) + v
            sv.append(vec)
    return sv


def _mod(v, p):
    if v.denominator % p == 0:
        raise VerificationError(f"coefficient {v} is not defined mod {p}")
    return v.numerator * pow(v.denominator, -1, p) % p


def piece_rank(dm: GradedMatrix, n: int, field: Field) -> int:
    if isinstance(field, PrimeField):
        return piece_vectors(dm, n, field.p).rank()
    # over Q: dense exact elimination on the (small) piece
    rows = _piece_rows_exact(dm, n, field)
    return dense_rank(rows, field) if rows else 0


def _piece_rows_exact(dm: GradedMatrix, n: int, field: Field) -> list:
    src, tgt = dm.source.twists, dm.target.twists
    offs, n_cols = _offsets(tgt, n)
    rows = []
    for j, a in enumerate(src):
        for u in graded_basis(Ring.AMBIENT, n - a):
            vec = [field(0)] * n_cols
            for r, row in enumerate(dm.entries):
                e = row[j]
                if not e:
                    continue
                idx = basis_index(Ring.AMBIENT, n - tgt[r])
                for m, v in e.terms.items():
                    k = offs[r] + idx[tuple(x + y for x, y in zip(u, m))]
                    vec[k] += v
            rows.append(vec)
    return rows


# ---------------------------------------------------------------------------
# exactness
# ---------------------------------------------------------------------------

@dataclass
class ExactnessCell:
    position: int
    degree: int
    dim: int
    rank: int
    kernel: int
    rank_next: int
    rank_composite: int = 0  # rank of d_i * d_{i+1}; nonzero only off a complex

    @property
    def homology(self) -> int:
        """``dim ker d_i - dim(im d_{i+1} & ker d_i)``."""
        return self.kernel - (self.rank_next - self.rank_composite)

    @property
    def verdict(self) -> str:
        return "EXACT" if self.homology == 0 else f"HOMOLOGY({self.homology})"

    def to_json(self) -> dict:
        return {
            "position": self.position,
            "degree": self.degree,
            "dim": self.dim,
            "rank": self.rank,
            "kernel": self.kernel,
            "rank_next": self.rank_next,
            "rank_composite": self.rank_composite,
            "verdict": self.verdict,
        }


@dataclass
class IdealCheck:
    degree: int
    image_dim: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.image_dim == self.expected

    def to_json(self) -> dict:
        return {"degree": self.degree, "image_dim": self.image_dim, "expected": self.expected, "ok": self.ok}


@dataclass
class ExactnessReport:
    n_max: int
    field: str
    cells: list = dc_field(default_factory=list)
    ideal: list = dc_field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(c.homology == 0 for c in self.cells) and all(i.ok for i in self.ideal)

    def failures(self) -> list:
        return [c for c in self.cells if c.homology != 0]

    def cell(self, position: int, degree: int) -> ExactnessCell:
        for c in self.cells:
            if c.position == position and c.degree == degree:
                return c
        raise KeyError((position, degree))

    def to_json(self) -> dict:
        return {
            "verdict": "EXACT" if self.exact else "NOT_EXACT",
            "field": self.field,
            "n_max": self.n_max,
            "cells": [c.to_json() for c in self.cells],
            "ideal": [i.to_json() for i in self.ideal],
        }


def graded_exactness(c: ResolutionComplex, n_max: int, field: Field | None = None) -> ExactnessReport:
    """Compare ``ker d_i`` and ``im d_{i+1}`` in every degree ``n <= n_max``.

    Also checks at position 1 that ``dim im(d_1)_n = dim S_n - H(n)`` with the
    Hilbert function ``H`` of the expected quotient.
    """
    field = PrimeField(DEFAULT_PRIME) if field is None else field
    if isinstance(field, PrimeField) and c.degree is not None and field.p <= c.degree:
        raise VerificationError(f"prime {field.p} is too small for a degree {c.degree} curve (need p > d)")
    c = c.change_field(field) if c.field != field else c
    report = ExactnessReport(n_max=n_max, field=getattr(field, "name", "q"))
    L = c.length
    composites = {}  # i -> d_i * d_{i+1} when that product is not zero
    for i in range(1, L):
        prod = matmul(c.d(i).entries, c.d(i + 1).entries)
        if any(e for row in prod for e in row):
            composites[i] = GradedMatrix(c.modules[i + 1], c.modules[i - 1], prod, check=False)
    for n in range(n_max + 1):
        ranks = [0] * (L + 2)  # ranks[i] = rank of d_i at n, d_{L+1} = 0
        for i in range(1, L + 1):
            ranks[i] = piece_rank(c.d(i), n, field)
        for i in range(1, L + 1):
            dim = c.modules[i].dim(n)
            kernel = dim - ranks[i]
            comp = piece_rank(composites[i], n, field) if i in composites else 0
            report.cells.append(ExactnessCell(i, n, dim, ranks[i], kernel, ranks[i + 1], comp))
        report.ideal.append(IdealCheck(n, ranks[1], graded_dim(Ring.AMBIENT, n) - expected_hilbert(c, n)))
    return report


# ---------------------------------------------------------------------------
# brute-force syzygies
# ---------------------------------------------------------------------------

def _gen_degree(g: Polynomial) -> int:
    deg = g.homogeneous_degree()
    if deg is NOT_HOMOGENEOUS:
        raise VerificationError(f"generator {g} is not homogeneous")
    if deg == ZERO_DEGREE:
        raise VerificationError("zero generator has no degree")
    return deg


def macaulay_matrix(gens: Sequence[Polynomial], n: int, p: int | None = None):
    """Matrix of ``(c_k) -> sum c_k g_k`` from ``+_k R_{n - deg g_k}`` to ``R_n``.

    Returns ``(rows, column_labels)`` where ``column_labels[j] = (k, monomial)``.
    """
    ring = gens[0].ring
    field = gens[0].field
    degs = [_gen_degree(g) for g in gens]
    target = basis_index(ring, n)
    labels = [(k, u) for k, dk in enumerate(degs) for u in graded_basis(ring, n - dk)]
    rows = [[0] * len(labels) for _ in range(len(target))]
    for j, (k, u) in enumerate(labels):
        for m, v in gens[k].terms.items():
            i = target[tuple(a + b for a, b in zip(u, m))]
            if p is None:
                rows[i][j] += v
            else:
                rows[i][j] = (rows[i][j] + _to_int(v, p)) % p
    if p is None:
        rows = [[field(v) for v in row] for row in rows]
    return rows, labels


def _to_int(v, p):
    return int(v) % p if isinstance(v, int) else _mod(v, p)


def syzygy_oracle(gens: Sequence[Polynomial], n: int, field: Field | None = None) -> list:
    """Basis of the degree-``n`` syzygies of ``gens`` by exact nullspace.

    Each basis element is a tuple ``(c_1, ..., c_r)`` of polynomials with
    ``deg c_k = n - deg g_k`` and ``sum c_k g_k = 0``.
    """
    if not gens:
        return []
    ring = gens[0].ring
    field = gens[0].field if field is None else field
    gens = [g.change_field(field) for g in gens]
    degs = [_gen_degree(g) for g in gens]
    if all(n < dk for dk in degs):
        return []
    if isinstance(field, PrimeField):
        rows, labels = macaulay_matrix(gens, n, field.p)
        if not rows:
            basis = np.eye(len(labels), dtype=np.int64)
        else:
            basis = nullspace_modp(np.array(rows, dtype=np.int64), field.p)
        vectors = [[int(x) for x in v] for v in basis]
    else:
        rows, labels = macaulay_matrix(gens, n)
        vectors = nullspace(rows, len(labels), field)
    out = []
    for v in vectors:
        comps = [dict() for _ in gens]
        for (k, u), x in zip(labels, v):
            if x:
                comps[k][u] = x
        out.append(tuple(Polynomial(ring, comps[k], field) for k in range(len(gens))))
    return out


def _vector_to_coords(vec: Sequence[Polynomial], twists, n: int, p: int) -> dict:
    offs, _ = _offsets(twists, n)
    out: dict = {}
    for k, poly in enumerate(vec):
        if not poly:
            continue
        idx = basis_index(Ring.AMBIENT, n - twists[k])
        for m, v in poly.terms.items():
            out[offs[k] + idx[m]] = _to_int(v, p)
    return out


@dataclass
class SpanComparison:
    degree: int
    image_rank: int
    oracle_dim: int
    stacked_rank: int

    @property
    def equal(self) -> bool:
        return self.image_rank == self.oracle_dim == self.stacked_rank

    def to_json(self) -> dict:
        return {**self.__dict__, "equal": self.equal}


def syzygy_span_agreement(c: ResolutionComplex, n: int, field: PrimeField | None = None) -> SpanComparison:
    """Compare ``im(d_2)_n`` with the brute-force syzygies of ``d_1``'s entries."""
    field = PrimeField(DEFAULT_PRIME) if field is None else field
    c = c.change_field(field) if c.field != field else c
    p = field.p
    twists = c.modules[1].twists
    image = piece_vectors(c.d(2), n, p)
    syz = syzygy_oracle(list(c.d(1).entries[0]), n, field)
    oracle = SparseVectors(image.n_cols, p)
    for vec in syz:
        oracle.append(_vector_to_coords(vec, twists, n, p))
    stacked = SparseVectors(image.n_cols, p)
    stacked.extend(oracle)
    stacked.extend(image)
    return SpanComparison(n, image.rank(), len(syz), stacked.rank())


# ---------------------------------------------------------------------------
# everything at once
# ---------------------------------------------------------------------------

def default_degree_bound(c: ResolutionComplex) -> int:
    m = c.provenance.get("m")
    return 8 if m is None else m + 6


@dataclass
class VerificationSummary:
    complex_check: CheckResult
    minimal: CheckResult
    homogeneity: CheckResult
    theta: CheckResult
    exactness: ExactnessReport

    @property
    def passed(self) -> bool:
        return all((self.complex_check.passed, self.minimal.passed, self.homogeneity.passed,
                    self.theta.passed, self.exactness.exact))

    def to_json(self) -> dict:
        return {
            "verdict": "PASS" if self.passed else "FAIL",
            "check_complex": self.complex_check.to_json(),
            "check_minimal": self.minimal.to_json(),
            "check_homogeneity": self.homogeneity.to_json(),
            "theta_vanishing": self.theta.to_json(),
            "exactness": self.exactness.to_json(),
        }


def verify_all(c: ResolutionComplex, n_max: int | None = None, field: PrimeField | None = None) -> VerificationSummary:
    n_max = default_degree_bound(c) if n_max is None else n_max
    return VerificationSummary(
        check_complex(c),
        check_minimal(c),
        check_homogeneity(c),
        theta_vanishing_check(c),
        graded_exactness(c, n_max, field),
    )
