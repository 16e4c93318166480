import random
from fractions import Fraction

import pytest
import sympy

from fewplanes.cyclotomic import (Scalar, cos2pi, cyclotomic_polynomial,
                                  euler_phi, set_order_cap, sin2pi)
from fewplanes.errors import FieldOrderError, NotRealError


def random_scalar(rng, order):
    phi = euler_phi(order)
    num = tuple(rng.randint(-20, 20) for _ in range(phi))
    return Scalar(order, num, rng.randint(1, 9))


def test_rational_addition():
    half = Scalar.from_rational(Fraction(1, 2))
    assert half + half == 1


def test_zeta4_squared_is_minus_one():
    z = Scalar.root_of_unity(4)
    assert z * z == -1


def test_cos_two_pi_sixth_reduces_to_one_half():
    # oracle: reduce (x^2 + x^-2)/2 modulo Phi_12 symbolically
    x = sympy.symbols("x")
    phi12 = sympy.Poly(sympy.cyclotomic_poly(12, x), x)
    expr = sympy.Poly(x ** 2 * (x ** 2 + x ** 10), x)  # x^-2 = x^10 mod x^12-1
    reduced = expr.rem(phi12)
    oracle = sympy.Rational(1, 2) * reduced.subs(x, sympy.exp(2 * sympy.pi * sympy.I / 12))
    assert sympy.simplify(oracle - sympy.Rational(1, 2)) == 0

    z = Scalar.root_of_unity(12, 2)
    value = (z + z ** -1) / 2
    assert value == Fraction(1, 2)
    assert cos2pi(1, 6) == Fraction(1, 2)


def test_sqrt2_over_2_in_zeta8():
    value = sin2pi(1, 8)
    assert value.order == 8
    assert [Fraction(c, value.den) for c in value.num] == \
        [0, Fraction(1, 2), 0, Fraction(-1, 2)]
    assert value * value == Fraction(1, 2)


@pytest.mark.parametrize("order", [1, 4, 5, 8, 12])
def test_field_axioms(order):
    rng = random.Random(order * 101)
    for _ in range(25):
        a = random_scalar(rng, order)
        b = random_scalar(rng, order)
        c = random_scalar(rng, order)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero():
            assert a * a.inverse() == 1
        assert a - a == 0


def test_promotion_lossless_and_invertible_on_image():
    rng = random.Random(7)
    for _ in range(20):
        a = random_scalar(rng, 4)
        up = a.promote(12)
        assert up.order == 12
        assert up == a
        assert up.canonical_key() == a.canonical_key()


def test_promotion_requires_divisible_orders():
    a = Scalar.root_of_unity(4)
    with pytest.raises(ValueError):
        a.promote(6)


def test_mixed_order_arithmetic_promotes_to_lcm():
    a = Scalar.root_of_unity(4)
    b = Scalar.root_of_unity(3)
    assert (a * b).order == 12


def test_order_cap():
    set_order_cap(16)
    try:
        with pytest.raises(FieldOrderError):
            Scalar.root_of_unity(4).promote(32)
        with pytest.raises(FieldOrderError):
            Scalar.root_of_unity(5) * Scalar.root_of_unity(8)
    finally:
        set_order_cap(256)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Scalar.one() / Scalar.zero(4)


def test_sign_and_comparisons():
    s = sin2pi(1, 8)
    assert s.sign() == 1
    assert (-s).sign() == -1
    assert (s - s).sign() == 0
    assert cos2pi(1, 12) > cos2pi(1, 6)
    assert cos2pi(1, 5) > 0
    # golden slivers: cos(2pi/7) - cos(2pi/7) + tiny rational
    tiny = cos2pi(1, 28) - cos2pi(1, 28) + Fraction(1, 10 ** 12)
    assert tiny.sign() == 1


def test_sign_rejects_non_real():
    with pytest.raises(NotRealError):
        Scalar.root_of_unity(8).sign()


def test_conjugation_and_realness():
    z = Scalar.root_of_unity(12)
    assert (z + z.conjugate()).is_real()
    assert not z.is_real()
    assert z * z.conjugate() == 1


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    x = sympy.symbols("x")
    for n in (5, 8, 9, 15, 16, 20):
        expected = tuple(reversed(sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()))
        assert cyclotomic_polynomial(n) == expected


def test_json_round_trip():
    values = [Scalar.from_rational(Fraction(-3, 7)),
              sin2pi(1, 8),
              cos2pi(2, 5) + sin2pi(1, 5)]
    for v in values:
        assert Scalar.from_json(v.to_json()) == v


def test_hash_consistent_across_orders():
    a = Scalar.from_rational(Fraction(5, 3))
    b = Scalar.one(12) * Fraction(5, 3)
    assert a == b
    assert hash(a) == hash(b)
    z8 = Scalar.root_of_unity(8)
    z8_in_24 = z8.promote(24)
    assert hash(z8) == hash(z8_in_24)
    assert z8 == z8_in_24
