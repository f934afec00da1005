from fractions import Fraction
from math import comb
import random

import pytest
from hypothesis import given, settings, strategies as st

from veronese_res.poly import (
    NOT_HOMOGENEOUS,
    QQ,
    ZERO_DEGREE,
    ParseError,
    PolyError,
    Polynomial,
    PrimeField,
    Ring,
    coeff_vector,
    from_coeff_vector,
    graded_basis,
    graded_dim,
    parse_field,
    parse_poly,
    random_homogeneous,
    render,
)

from conftest import GF, amb, curve


def polys(ring, field, max_deg=3):
    arity = ring.arity
    mono = st.tuples(*[st.integers(0, max_deg)] * arity)
    return st.dictionaries(mono, st.integers(-20, 20), max_size=6).map(
        lambda t: Polynomial(ring, t, field)
    )


class TestArithmetic:
    def test_difference_of_squares(self):
        assert curve("x0 + x1") * curve("x0 - x1") == curve("x0^2 - x1^2")

    def test_zero_absorbs(self):
        p = curve("3*x0^2*x2 - x1")
        assert (p * Polynomial.zero(Ring.CURVE)).is_zero()

    def test_minor_times_variable(self):
        got = amb("x11*x22 - x12^2") * amb("x00")
        assert got == amb("x00*x11*x22 - x00*x12^2")

    def test_ring_mismatch(self):
        with pytest.raises(PolyError):
            curve("x0") + amb("x00")

    def test_prime_field_reduces(self):
        p = curve("32004*x0", GF)
        assert p == curve("x0", GF)
        assert (curve("32003*x1", GF)).is_zero()

    def test_rational_coefficients(self):
        p = curve("x0", QQ).scale(Fraction(1, 3))
        assert p.coefficient((1, 0, 0)) == Fraction(1, 3)

    def test_pow(self):
        assert curve("x0 + x1") ** 2 == curve("x0^2 + 2*x0*x1 + x1^2")


@settings(max_examples=1000, deadline=None)
@given(polys(Ring.CURVE, QQ), polys(Ring.CURVE, QQ), polys(Ring.CURVE, QQ))
def test_ring_laws_rational(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@settings(max_examples=1000, deadline=None)
@given(polys(Ring.AMBIENT, GF, 2), polys(Ring.AMBIENT, GF, 2), polys(Ring.AMBIENT, GF, 2))
def test_ring_laws_prime(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b - b == a


class TestDegree:
    def test_homogeneous(self):
        assert curve("x0^2*x1 + x2^3").homogeneous_degree() == 3

    def test_inhomogeneous(self):
        assert curve("x0 + x1^2").homogeneous_degree() is NOT_HOMOGENEOUS

    def test_zero(self):
        assert Polynomial.zero(Ring.CURVE).homogeneous_degree() == ZERO_DEGREE


class TestParse:
    def test_transcription(self):
        p = curve("x0^2*x1 + 3*x1*x2^2")
        assert p.terms == {(2, 1, 0): 1, (0, 1, 2): 3}

    def test_minor(self):
        assert amb("x00*x11 - x01^2").terms == {(1, 0, 0, 1, 0, 0): 1, (0, 2, 0, 0, 0, 0): -1}

    @pytest.mark.parametrize("text, pos", [("x0 + x00", 5), ("x0^", 3), ("x0/x1", 2), ("x0^-1", 3)])
    def test_errors_have_position(self, text, pos):
        with pytest.raises(ParseError) as info:
            curve(text)
        assert info.value.position == pos

    def test_unknown_variable_message(self):
        with pytest.raises(ParseError, match="x00"):
            curve("x0 + x00")

    def test_leading_sign(self):
        assert curve("-x0 + x1") == curve("x1 - x0")

    @settings(max_examples=300, deadline=None)
    @given(polys(Ring.AMBIENT, QQ))
    def test_round_trip_rational(self, p):
        assert parse_poly(render(p), Ring.AMBIENT, QQ) == p

    @settings(max_examples=300, deadline=None)
    @given(polys(Ring.CURVE, GF))
    def test_round_trip_prime(self, p):
        assert parse_poly(render(p), Ring.CURVE, GF) == p

    def test_render_zero(self):
        assert render(Polynomial.zero(Ring.CURVE)) == "0"

    def test_fields(self):
        assert parse_field("q") is QQ or parse_field("q") == QQ
        assert parse_field("fp:101") == PrimeField(101)
        with pytest.raises(PolyError):
            parse_field("fp:100")


class TestBasis:
    def test_curve_two(self):
        assert len(graded_basis(Ring.CURVE, 2)) == 6

    def test_ambient_one_is_variables(self):
        names = [render(Polynomial.monomial(m, Ring.AMBIENT)) for m in graded_basis(Ring.AMBIENT, 1)]
        assert sorted(names) == sorted(Ring.AMBIENT.variables)

    def test_ambient_two(self):
        assert len(graded_basis(Ring.AMBIENT, 2)) == 21

    def test_negative(self):
        assert graded_basis(Ring.CURVE, -1) == []

    @pytest.mark.parametrize("n", range(13))
    def test_counts(self, n):
        assert graded_dim(Ring.CURVE, n) == len(graded_basis(Ring.CURVE, n)) == comb(n + 2, 2)
        assert graded_dim(Ring.AMBIENT, n) == len(graded_basis(Ring.AMBIENT, n)) == comb(n + 5, 5)

    def test_grevlex_descending(self):
        basis = graded_basis(Ring.CURVE, 2)
        assert basis[0] == (2, 0, 0)
        assert basis[-1] == (0, 0, 2)
        assert len(set(basis)) == len(basis)


class TestCoeffVector:
    def test_zero(self):
        assert coeff_vector(Polynomial.zero(Ring.CURVE), 3) == [0] * 10

    def test_unit(self):
        v = coeff_vector(curve("x0^2"), 2)
        assert v[graded_basis(Ring.CURVE, 2).index((2, 0, 0))] == 1
        assert sum(v) == 1

    def test_degree_mismatch(self):
        with pytest.raises(PolyError):
            coeff_vector(curve("x0^2"), 3)

    def test_linear_and_invertible(self):
        rng = random.Random(5)
        for _ in range(50):
            a = random_homogeneous(Ring.AMBIENT, 3, rng, GF, density=0.3)
            b = random_homogeneous(Ring.AMBIENT, 3, rng, GF, density=0.3)
            va, vb, vs = coeff_vector(a, 3), coeff_vector(b, 3), coeff_vector(a + b, 3)
            assert [(x + y) % GF.p for x, y in zip(va, vb)] == [x % GF.p for x in vs]
            assert from_coeff_vector(va, Ring.AMBIENT, 3, GF) == a


def test_divmod_exact():
    f = curve("x0^3 + x1^3 + x2^3")
    q = curve("x0*x1 - 2*x2^2")
    quo, rem = (f * q).divmod(f)
    assert rem.is_zero() and quo == q
