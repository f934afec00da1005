import random

import pytest

from veronese_res.lift import LiftError, Parity, lift_even, lift_odd, parity_split
from veronese_res.poly import Polynomial, Ring, random_homogeneous
from veronese_res.veronese import theta

from conftest import GF, amb, curve

X = [curve("x0"), curve("x1"), curve("x2")]


class TestParitySplit:
    def test_even_example(self):
        parts = parity_split(curve("x0^2 + x0*x1 + x1*x2"), Parity.EVEN)
        assert parts["I"] == curve("x0^2")
        assert parts["IV"] == curve("x0*x1")
        assert parts["II"] == curve("x1*x2")
        assert parts["III"].is_zero()

    def test_all_odd(self):
        parts = parity_split(curve("x0*x1*x2"), Parity.ODD)
        assert parts["I"] == curve("x0*x1*x2")
        assert all(parts[k].is_zero() for k in ("II", "III", "IV"))

    def test_parity_mismatch(self):
        with pytest.raises(LiftError):
            parity_split(curve("x0^3"), Parity.EVEN)

    def test_inhomogeneous(self):
        with pytest.raises(LiftError):
            parity_split(curve("x0^2 + x1"), Parity.EVEN)

    def test_parts_partition(self):
        rng = random.Random(1)
        for d in (2, 3, 4, 5):
            f = random_homogeneous(Ring.CURVE, d, rng)
            assert parity_split(f, Parity(d % 2)).total() == f


class TestEven:
    @pytest.mark.parametrize("f, F", [
        ("x0^2", "x00"),
        ("x1*x2", "x12"),
        ("x0^4 + x1^2*x2^2 + x0*x1*x2^2", "x00^2 + x11*x22 + x01*x22"),
    ])
    def test_examples(self, f, F):
        lift = lift_even(curve(f))
        assert lift.F == amb(F)
        assert theta(lift.F) == curve(f)

    def test_rejects_odd(self):
        with pytest.raises(LiftError):
            lift_even(curve("x0^3"))

    def test_degree(self):
        assert lift_even(curve("x0^6 + x1^6")).m == 3


class TestOdd:
    def test_all_odd_exponents(self):
        lift = lift_odd(curve("x0*x1*x2"))
        assert lift.h["I"] == amb("1")
        assert all(lift.h[k].is_zero() for k in ("II", "III", "IV"))
        assert lift.F == (amb("x00*x12"), amb("x11*x02"), amb("x22*x01"))

    def test_cube_x0(self):
        lift = lift_odd(curve("x0^3"))
        assert lift.h["II"] == amb("x00")
        assert lift.F == (amb("x00^2"), amb("x00*x01"), amb("x00*x02"))

    def test_cube_x2(self):
        lift = lift_odd(curve("x2^3"))
        assert lift.h["IV"] == amb("x22")
        assert lift.F == (amb("x02*x22"), amb("x12*x22"), amb("x22^2"))

    def test_rejects_even(self):
        with pytest.raises(LiftError):
            lift_odd(curve("x0^2"))

    def test_rejects_linear(self):
        with pytest.raises(LiftError):
            lift_odd(curve("x0 + x1"))

    def test_m(self):
        assert lift_odd(curve("x0^5")).m == 3


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_even_round_trip(d, field):
    rng = random.Random(d)
    for _ in range(200):
        f = random_homogeneous(Ring.CURVE, d, rng, field, density=0.5)
        if f.is_zero():
            continue
        assert theta(lift_even(f).F) == f


@pytest.mark.parametrize("d", [3, 5, 7])
def test_odd_round_trip(d, field):
    rng = random.Random(d)
    for _ in range(200):
        f = random_homogeneous(Ring.CURVE, d, rng, field, density=0.5)
        if f.is_zero():
            continue
        lift = lift_odd(f)
        xs = [x.change_field(field) for x in X]
        for n in range(3):
            assert theta(lift.F[n]) == xs[n] * f


def test_lifts_are_homogeneous():
    lift = lift_odd(curve("x0^5 - 2*x0*x1^2*x2^2 + x1^4*x2"))
    assert all(F.homogeneous_degree() == 3 for F in lift.F)
    assert isinstance(lift.F[0], Polynomial)
    assert lift_odd(curve("x0^5", GF)).F[0].field == GF
