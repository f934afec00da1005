import pytest

from veronese_res.poly import QQ, Ring
from veronese_res.templates import (
    HForm,
    RepairError,
    composition_residual,
    generic_odd_matrices,
    hmatmul,
    repair_column,
)

from conftest import GF


def column(mat, c):
    return [row[c] for row in mat]


def is_zero_matrix(mat):
    return all(e.is_zero() for row in mat for e in row)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_generic_compositions_vanish(i):
    g = generic_odd_matrices(QQ)
    assert is_zero_matrix(hmatmul(g[i], g[i + 1]))


def test_generic_compositions_vanish_mod_p():
    g = generic_odd_matrices(GF)
    for i in (1, 2, 3):
        assert is_zero_matrix(hmatmul(g[i], g[i + 1]))


def test_candidate_data_breaks_exactly_two_columns():
    candidate = generic_odd_matrices(QQ, candidate=True)
    fixed = generic_odd_matrices(QQ)
    bad = []
    for i in (2, 3, 4):
        for c in range(len(candidate[i][0])):
            if any(not r.is_zero() for r in composition_residual(fixed[i - 1], column(candidate[i], c))):
                bad.append((i, c))
    assert bad == [(3, 3), (4, 0)]


def test_repair_reproduces_frozen_k():
    candidate = generic_odd_matrices(QQ, candidate=True)
    fixed = generic_odd_matrices(QQ)
    repaired, changes = repair_column(fixed[2], column(candidate[3], 3), range(8))
    assert repaired == column(fixed[3], 3)
    assert len(changes) == 1
    row, key, mono, scalar = changes[0]
    assert (row, key, mono, scalar) == (7, ("III",), (0,) * 6, -1)


def test_repair_reproduces_frozen_j():
    candidate = generic_odd_matrices(QQ, candidate=True)
    fixed = generic_odd_matrices(QQ)
    repaired, changes = repair_column(fixed[3], column(candidate[4], 0), range(3))
    assert repaired == column(fixed[4], 0)
    assert [(r, k, s) for r, k, _, s in changes] == [(1, ("I",), -1)]


def test_untouched_columns_pass_through():
    fixed = generic_odd_matrices(QQ)
    col = column(fixed[2], 10)
    repaired, changes = repair_column(fixed[1], col, range(6))
    assert repaired == col and changes == []


def test_unrepairable():
    fixed = generic_odd_matrices(QQ)
    col = [HForm() for _ in range(9)]
    col[0] = HForm.parse("x00*hI")
    col[1] = HForm.parse("x00*hI")
    with pytest.raises(RepairError):
        repair_column(fixed[1], col, [0])


class TestHForm:
    def test_parse_and_instantiate(self):
        form = HForm.parse("x00*x12*hI + x01*hIII")
        from veronese_res.poly import Polynomial, parse_poly
        h = {"I": parse_poly("x22", Ring.AMBIENT), "II": Polynomial.zero(Ring.AMBIENT),
             "III": parse_poly("2", Ring.AMBIENT), "IV": Polynomial.zero(Ring.AMBIENT)}
        assert form.instantiate(h, QQ) == parse_poly("x00*x12*x22 + 2*x01", Ring.AMBIENT)

    def test_arithmetic(self):
        a, b = HForm.parse("x00*hI"), HForm.parse("x11*hI - hII")
        assert (a + b) - b == a
        assert (a - a).is_zero()
        assert a.scale(2) == a + a
