from fractions import Fraction
import random

import numpy as np
import pytest

from veronese_res.linalg import (
    SparseVectors,
    _sparse_rank,
    nullspace,
    nullspace_modp,
    rank,
    rref,
    solve_linear,
)
from veronese_res.poly import QQ, PrimeField

P = 101
FP = PrimeField(P)


def random_low_rank(rng, rows, cols, r, p=P):
    A = [[rng.randrange(p) for _ in range(r)] for _ in range(rows)]
    B = [[rng.randrange(p) for _ in range(cols)] for _ in range(r)]
    return [[sum(a * b for a, b in zip(row, col)) % p for col in zip(*B)] for row in A]


def sparse_of(rows, p=P):
    sv = SparseVectors(len(rows[0]), p)
    for row in rows:
        sv.append({j: v for j, v in enumerate(row) if v})
    return sv


@pytest.mark.parametrize("seed", range(20))
def test_ranks_agree(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 25), rng.randint(1, 25)
    A = random_low_rank(rng, rows, cols, rng.randint(0, min(rows, cols)))
    want = len(rref(A, FP)[1])
    assert rank(A, FP) == want
    assert sparse_of(A).rank() == want


def test_pool_overflow_is_retried():
    rng = random.Random(3)
    A = [[rng.randrange(1, P) for _ in range(40)] for _ in range(40)]
    sv = sparse_of(A)
    indptr, indices, data = sv.arrays()
    assert _sparse_rank(indptr, indices, data, 40, P, 5) == -1
    assert sv.rank() == len(rref(A, FP)[1])


def test_rational_rank():
    A = [[Fraction(1, 2), 1, 0], [1, 2, 0], [0, 0, Fraction(3)]]
    assert rank(A, QQ) == 2


@pytest.mark.parametrize("field", [QQ, FP], ids=["QQ", "F101"])
def test_nullspace(field):
    A = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]]
    basis = nullspace(A, 4, field)
    assert len(basis) == 2
    for v in basis:
        for row in A:
            s = sum(field(a) * field(x) for a, x in zip(row, v))
            assert (s % P if field is FP else s) == 0


def test_nullspace_modp_shape():
    rng = random.Random(9)
    A = np.array(random_low_rank(rng, 12, 20, 7), dtype=np.int64)
    N = nullspace_modp(A, P)
    assert N.shape == (13, 20)
    assert not ((A @ N.T) % P).any()


def test_solve_linear():
    x, kernel = solve_linear([[1, 1], [1, -1]], [3, 1], QQ)
    assert x == [2, 1] and kernel == []
    assert solve_linear([[1, 1], [2, 2]], [1, 3], QQ) is None


def test_empty():
    assert SparseVectors(5, P).rank() == 0
