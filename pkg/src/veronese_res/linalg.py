"""Exact linear algebra: small generic-field solves and fast ranks over F_p.

The rank oracles work on matrices of multiplication maps between graded
pieces. Those are very sparse (a column carries one polynomial entry per
nonzero matrix entry), so the main kernel is a sparse elimination with a
dense accumulator, compiled with numba. Pivoting is deterministic: vectors
are processed in the given order and each pivot is the first nonzero
column that survives reduction.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from numba import njit

from .poly import PrimeField, RationalField


# ---------------------------------------------------------------------------
# generic (Q or F_p, Python objects) -- used for small systems
# ---------------------------------------------------------------------------

def _ops(field):
    if isinstance(field, PrimeField):
        p = field.p
        return (lambda v: v % p), (lambda v: pow(v % p, -1, p))
    return (lambda v: v), (lambda v: 1 / Fraction(v))


def rref(rows, field):
    """Reduced row echelon form. Returns ``(rows, pivot_columns)``."""
    norm, inv = _ops(field)
    M = [[norm(field(v)) for v in row] for row in rows]
    if not M:
        return [], []
    n_cols = len(M[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        s = inv(M[r][c])
        M[r] = [norm(v * s) for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                t = M[i][c]
                M[i] = [norm(a - t * b) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows, field) -> int:
    if isinstance(field, PrimeField) and rows and len(rows[0]):
        A = np.array([[int(v) % field.p for v in row] for row in rows], dtype=np.int64)
        return int(_dense_rank(A, field.p))
    return len(rref(rows, field)[1])


def nullspace(rows, n_cols: int, field) -> list:
    """Basis of ``{x : rows * x = 0}``, one vector per free column."""
    if isinstance(field, PrimeField) and rows:
        A = np.array([[int(v) % field.p for v in row] for row in rows], dtype=np.int64)
        return [list(map(int, v)) for v in nullspace_modp(A, field.p)]
    R, pivots = rref(rows, field) if rows else ([], [])
    norm, _ = _ops(field)
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [field(0)] * n_cols
        v[fc] = field(1)
        for row, pc in zip(R, pivots):
            v[pc] = norm(-row[fc])
        basis.append(v)
    return basis


def solve_linear(rows, rhs, field):
    """Solve ``rows * x = rhs``; ``None`` if inconsistent.

    Returns ``(particular, kernel_basis)``; the particular solution has
    zeros at free positions.
    """
    n_vars = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, field) if aug else ([], [])
    if n_vars in pivots:
        return None
    x = [field(0)] * n_vars
    for row, pc in zip(R, pivots):
        x[pc] = row[n_vars]
    kernel = nullspace(rows, n_vars, field) if rows else [
        [field(1) if i == j else field(0) for i in range(n_vars)] for j in range(n_vars)
    ]
    return x, kernel


# ---------------------------------------------------------------------------
# F_p kernels
# ---------------------------------------------------------------------------

@njit(cache=True)
def _dense_rank(A, p):
    A = A.copy()
    m, n = A.shape
    r = 0
    for c in range(n):
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                t = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = t
        inv = _inv_mod(A[r, c], p)
        for j in range(c, n):
            A[r, j] = A[r, j] * inv % p
        for i in range(r + 1, m):
            t = A[i, c]
            if t != 0:
                for j in range(c, n):
                    A[i, j] = (A[i, j] - t * A[r, j]) % p
        r += 1
        if r == m:
            break
    return r


@njit(cache=True)
def _inv_mod(a, p):
    # extended Euclid; a in [1, p)
    t, new_t = 0, 1
    r, new_r = p, a % p
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    if t < 0:
        t += p
    return t


@njit(cache=True)
def _dense_rref(A, p):
    A = A.copy()
    m, n = A.shape
    pivots = np.full(min(m, n), -1, dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                t = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = t
        inv = _inv_mod(A[r, c], p)
        for j in range(c, n):
            A[r, j] = A[r, j] * inv % p
        for i in range(m):
            if i != r:
                t = A[i, c]
                if t != 0:
                    for j in range(c, n):
                        A[i, j] = (A[i, j] - t * A[r, j]) % p
        pivots[r] = c
        r += 1
    return A[:r], pivots[:r]


def nullspace_modp(A: np.ndarray, p: int) -> np.ndarray:
    """Rows of the result span ``ker A`` over F_p (one per free column)."""
    m, n = A.shape
    R, pivots = _dense_rref(np.ascontiguousarray(A % p, dtype=np.int64), p)
    is_pivot = np.zeros(n, dtype=bool)
    is_pivot[pivots] = True
    free = np.flatnonzero(~is_pivot)
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        basis[k, pivots] = (-R[:, fc]) % p
    return basis


@njit(cache=True)
def _sparse_rank(indptr, indices, data, n_cols, p, cap):
    """Rank of the span of sparse vectors (CSR rows) over F_p.

    Reduced pivot rows live in a pool of ``cap`` slots; returns -1 if the
    pool overflows so the caller can retry with more room. (Growing the
    pool in here triples the compile time.)
    """
    n_vec = indptr.shape[0] - 1
    acc = np.zeros(n_cols, dtype=np.int64)
    pivot_of = np.full(n_cols, -1, dtype=np.int64)
    # leading entry 1 is implicit; rows are stored from lead + 1
    pool_idx = np.empty(cap, dtype=np.int64)
    pool_val = np.empty(cap, dtype=np.int64)
    row_start = np.empty(n_cols + 1, dtype=np.int64)
    row_end = np.empty(n_cols + 1, dtype=np.int64)
    used = 0
    n_piv = 0
    for v in range(n_vec):
        lo = n_cols
        hi = -1
        for t in range(indptr[v], indptr[v + 1]):
            c = indices[t]
            acc[c] = (acc[c] + data[t]) % p
            if c < lo:
                lo = c
            if c > hi:
                hi = c
        lead = -1
        c = lo
        while c <= hi:
            a = acc[c]
            if a != 0:
                k = pivot_of[c]
                if k >= 0:
                    acc[c] = 0
                    for t in range(row_start[k], row_end[k]):
                        j = pool_idx[t]
                        acc[j] = (acc[j] - a * pool_val[t]) % p
                        if j > hi:
                            hi = j
                elif lead < 0:
                    lead = c
            c += 1
        if lead < 0:
            continue
        if used + hi - lead > cap:
            return -1
        # a^(p-2)
        inv = 1
        b = acc[lead]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * b % p
            b = b * b % p
            e >>= 1
        row_start[n_piv] = used
        for j in range(lead + 1, hi + 1):
            a = acc[j]
            if a != 0:
                pool_idx[used] = j
                pool_val[used] = a * inv % p
                used += 1
                acc[j] = 0
        acc[lead] = 0
        row_end[n_piv] = used
        pivot_of[lead] = n_piv
        n_piv += 1
    return n_piv


class SparseVectors:
    """A list of sparse F_p vectors of fixed length, stored CSR-style."""

    def __init__(self, n_cols: int, p: int):
        self.n_cols = n_cols
        self.p = p
        self.indptr = [0]
        self.indices: list = []
        self.data: list = []

    def append(self, entries: dict):
        for j, v in entries.items():
            v %= self.p
            if v:
                self.indices.append(j)
                self.data.append(v)
        self.indptr.append(len(self.indices))

    def extend(self, other: "SparseVectors"):
        off = len(self.indices)
        self.indices.extend(other.indices)
        self.data.extend(other.data)
        self.indptr.extend(off + q for q in other.indptr[1:])

    def __len__(self):
        return len(self.indptr) - 1

    def arrays(self):
        return (
            np.asarray(self.indptr, dtype=np.int64),
            np.asarray(self.indices, dtype=np.int64),
            np.asarray(self.data, dtype=np.int64),
        )

    def rank(self) -> int:
        if len(self) == 0 or self.n_cols == 0:
            return 0
        indptr, indices, data = self.arrays()
        cap = max(1024, 4 * len(indices))
        while True:
            r = int(_sparse_rank(indptr, indices, data, self.n_cols, self.p, cap))
            if r >= 0:
                return r
            cap *= 4

    def to_dense(self) -> np.ndarray:
        A = np.zeros((len(self), self.n_cols), dtype=np.int64)
        for v in range(len(self)):
            for t in range(self.indptr[v], self.indptr[v + 1]):
                A[v, self.indices[t]] = (A[v, self.indices[t]] + self.data[t]) % self.p
        return A


def is_exact_field(field) -> bool:
    return isinstance(field, (PrimeField, RationalField))
