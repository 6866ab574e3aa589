import random
from fractions import Fraction

import pytest

from rmatrix.errors import LeadingTermError, OrderMismatchError, SubstitutionError
from rmatrix.poly import MPoly
from rmatrix.series import HSeries, poly_substitute

from helpers import rand_series, rand_unit_series

XY = ("x", "y")


def var(name):
    return MPoly.variable(XY, name)


def S(order, *coeff_terms):
    """Series from per-order term dicts."""
    return HSeries(XY, order, [MPoly(XY, t) for t in coeff_terms])


def one(order):
    return HSeries.const(XY, order, 1)


def h_x(order):
    # 1 + h*x
    return one(order) + HSeries.from_poly(var("x"), order).shift(1)


class TestArithmetic:
    def test_difference_of_squares(self):
        a = h_x(2)
        b = one(2) - HSeries.from_poly(var("x"), 2).shift(1)
        assert a * b == S(2, {(0, 0): 1}, {}, {(2, 0): -1})

    def test_multiplicative_identity(self):
        rng = random.Random(5)
        s = rand_series(rng)
        assert one(s.order) * s == s

    def test_hand_multiplication(self):
        # (1 + h x + h^2 x^2)(1 - h x) = 1 at order 2
        a = S(2, {(0, 0): 1}, {(1, 0): 1}, {(2, 0): 1})
        b = S(2, {(0, 0): 1}, {(1, 0): -1}, {})
        assert a * b == one(2)

    def test_order_mismatch_rejected(self):
        with pytest.raises(OrderMismatchError):
            one(2) + one(3)
        with pytest.raises(OrderMismatchError):
            one(2) * one(3)

    def test_shift_truncates(self):
        s = h_x(2).shift(2)
        assert s.coefficient(2) == MPoly.const(XY, 1)
        assert s.coefficient(0).is_zero()
        # shifting (1 + h x) by 2 at order 1 drops everything
        assert h_x(1).shift(2) == HSeries.zero(XY, 1)


class TestInverse:
    def test_geometric_series(self):
        assert h_x(2).inverse() == S(2, {(0, 0): 1}, {(1, 0): -1}, {(2, 0): 1})

    def test_identity(self):
        assert one(3).inverse() == one(3)

    def test_hand_inverse(self):
        # (1 + h x + h^2 x y)^{-1} = 1 - h x + h^2 (x^2 - x y)
        a = S(2, {(0, 0): 1}, {(1, 0): 1}, {(1, 1): 1})
        expected = S(2, {(0, 0): 1}, {(1, 0): -1}, {(2, 0): 1, (1, 1): -1})
        inv = a.inverse()
        assert inv == expected
        assert a * inv == one(2)

    def test_rejects_bad_leading_term(self):
        with pytest.raises(LeadingTermError):
            (one(2) + 1).inverse()
        with pytest.raises(LeadingTermError):
            HSeries.from_poly(var("x"), 2).inverse()

    def test_random_inverse_law(self):
        rng = random.Random(11)
        for _ in range(30):
            a = rand_unit_series(rng)
            assert a * a.inverse() == one(a.order)


class TestRationalPower:
    def test_sqrt_example(self):
        # (1 + 2 h y^2)^{1/2} = 1 + h y^2 - (1/2) h^2 y^4
        a = one(2) + HSeries.from_poly(var("y") ** 2, 2).scale(2).shift(1)
        expected = S(2, {(0, 0): 1}, {(0, 2): 1}, {(0, 4): Fraction(-1, 2)})
        assert a.pow_rational(Fraction(1, 2)) == expected

    def test_exponent_one(self):
        rng = random.Random(13)
        s = rand_unit_series(rng)
        assert s.pow_rational(1) == s

    def test_power_minus_one_matches_inverse(self):
        a = h_x(3)
        assert a.pow_rational(-1) == a.inverse()

    def test_inverse_pair_law(self):
        rng = random.Random(17)
        p = Fraction(2, 3)
        for _ in range(20):
            a = rand_unit_series(rng)
            assert a.pow_rational(p) * a.pow_rational(-p) == one(a.order)

    def test_nth_root_law(self):
        rng = random.Random(19)
        for n in (2, 3):
            a = rand_unit_series(rng)
            root = a.pow_rational(Fraction(1, n))
            assert root**n == a

    def test_rejects_bad_leading_term(self):
        with pytest.raises(LeadingTermError):
            (one(2) * 2).pow_rational(Fraction(1, 2))


class TestSubstitution:
    def test_product_image(self):
        # F = x y with x -> x(1 + h y), y -> y gives x y + h x y^2
        x_img = HSeries.coordinate(XY, 2, "x") * (one(2) + HSeries.from_poly(var("y"), 2).shift(1))
        images = {"x": x_img, "y": HSeries.coordinate(XY, 2, "y")}
        got = poly_substitute(var("x") * var("y"), images)
        assert got == S(2, {(1, 1): 1}, {(1, 2): 1}, {})

    def test_constants_fixed(self):
        images = {"x": HSeries.coordinate(XY, 2, "x"), "y": HSeries.coordinate(XY, 2, "y")}
        assert poly_substitute(MPoly.const(XY, 5), images) == one(2) * 5

    def test_shift_expansion(self):
        # F = x^2 with x -> x + h gives x^2 + 2 h x + h^2
        images = {"x": HSeries.coordinate(XY, 2, "x") + HSeries.hbar(XY, 2)}
        got = poly_substitute(var("x") ** 2, images)
        assert got == S(2, {(2, 0): 1}, {(1, 0): 2}, {(0, 0): 1})

    def test_missing_image(self):
        images = {"x": HSeries.coordinate(XY, 2, "x")}
        with pytest.raises(SubstitutionError):
            poly_substitute(var("x") * var("y"), images)

    def test_homomorphism_random(self):
        rng = random.Random(23)
        from helpers import rand_poly

        images = {
            "x": HSeries.coordinate(XY, 3, "x") + rand_series(rng).shift(1),
            "y": HSeries.coordinate(XY, 3, "y") + rand_series(rng).shift(1),
        }
        for _ in range(25):
            f, g = rand_poly(rng), rand_poly(rng)
            assert poly_substitute(f * g, images) == poly_substitute(f, images) * poly_substitute(g, images)
            assert poly_substitute(f + g, images) == poly_substitute(f, images) + poly_substitute(g, images)


class TestReshaping:
    def test_truncate(self):
        s = h_x(3)
        assert s.truncate(1) == h_x(1)
        with pytest.raises(OrderMismatchError):
            s.truncate(4)

    def test_rescale_hbar(self):
        s = h_x(2)
        assert s.rescale_hbar(3) == one(2) + HSeries.from_poly(var("x"), 2).scale(3).shift(1)

    def test_ring_laws_random(self):
        rng = random.Random(29)
        for _ in range(60):
            a, b, c = (rand_series(rng) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
