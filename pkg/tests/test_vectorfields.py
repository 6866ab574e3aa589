import random
from fractions import Fraction

import pytest

from rmatrix.errors import SpaceMismatchError
from rmatrix.poly import MPoly
from rmatrix.series import HSeries
from rmatrix.spaces import Space
from rmatrix.vectorfields import PolyVectorField, vf_exp_series, vf_log

from helpers import rand_field, rand_poly

LINE = Space("line", ("x",))
PLANE = Space("plane", ("x", "y"))


def line_field(poly_terms):
    return PolyVectorField(LINE, [MPoly(("x",), poly_terms)])


def euler():
    return line_field({(1,): 1})  # x d/dx


def ddx():
    return line_field({(0,): 1})  # d/dx


class TestApply:
    def test_euler_on_monomial(self):
        x = MPoly.variable(("x",), "x")
        assert euler().apply(x**2) == 2 * x**2

    def test_kills_constants(self):
        rng = random.Random(1)
        v = rand_field(rng, PLANE)
        assert v.apply(MPoly.const(PLANE.coords, 7)).is_zero()

    def test_hand_computation_on_plane(self):
        # v = x y d/dx - x y d/dy applied to x + y vanishes
        xy = MPoly(PLANE.coords, {(1, 1): 1})
        v = PolyVectorField(PLANE, [xy, -xy])
        f = MPoly(PLANE.coords, {(1, 0): 1, (0, 1): 1})
        assert v.apply(f).is_zero()

    def test_derivation_law(self):
        rng = random.Random(2)
        for _ in range(50):
            v = rand_field(rng, PLANE)
            f, g = rand_poly(rng, PLANE.coords), rand_poly(rng, PLANE.coords)
            assert v.apply(f * g) == v.apply(f) * g + f * v.apply(g)


class TestBracket:
    def test_euler_with_translation(self):
        # [x d/dx, d/dx] = -d/dx
        assert euler().bracket(ddx()) == -ddx()

    def test_antisymmetry_diagonal(self):
        rng = random.Random(3)
        v = rand_field(rng, PLANE)
        assert v.bracket(v).is_zero()

    def test_euler_with_square(self):
        # [x d/dx, x^2 d/dx] = x^2 d/dx
        sq = line_field({(2,): 1})
        assert euler().bracket(sq) == sq

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatchError):
            euler().bracket(rand_field(random.Random(0), PLANE))

    def test_jacobi_random(self):
        rng = random.Random(4)
        for _ in range(30):
            a, b, c = (rand_field(rng, PLANE, max_degree=2, terms=2) for _ in range(3))
            total = (
                a.bracket(b.bracket(c)) + b.bracket(c.bracket(a)) + c.bracket(a.bracket(b))
            )
            assert total.is_zero()


class TestPlacement:
    def r1(self):
        square = LINE.power(2)
        xy = MPoly(square.coords, {(1, 1): 1})
        return PolyVectorField(square, [xy, -xy])

    def test_place_12(self):
        cube = LINE.power(3)
        placed = self.r1().place((1, 2))
        x1x2 = MPoly(cube.coords, {(1, 1, 0): 1})
        assert placed.component("x@1") == x1x2
        assert placed.component("x@2") == -x1x2
        assert placed.component("x@3").is_zero()

    def test_place_13(self):
        cube = LINE.power(3)
        placed = self.r1().place((1, 3))
        x1x3 = MPoly(cube.coords, {(1, 0, 1): 1})
        assert placed.component("x@1") == x1x3
        assert placed.component("x@3") == -x1x3
        assert placed.component("x@2").is_zero()

    def test_place_zero(self):
        z = PolyVectorField.zero(LINE.power(2))
        assert z.place((2, 3)).is_zero()

    def test_place_requires_product(self):
        with pytest.raises(SpaceMismatchError):
            euler().place((1, 2))

    def test_place_commutes_with_bracket(self):
        rng = random.Random(5)
        square = PLANE.power(2)
        for pair in [(1, 2), (1, 3), (2, 3)]:
            v = rand_field(rng, square, max_degree=1, terms=2)
            w = rand_field(rng, square, max_degree=1, terms=2)
            assert v.bracket(w).place(pair) == v.place(pair).bracket(w.place(pair))

    def test_swap_antisymmetrizes_r1(self):
        assert self.r1().swap() == -self.r1()

    def test_swap_fixes_symmetric_field(self):
        square = LINE.power(2)
        sym = PolyVectorField(
            square,
            [MPoly(square.coords, {(2, 0): 1}), MPoly(square.coords, {(0, 2): 1})],
        )
        assert sym.swap() == sym

    def test_swap_of_permutation_field(self):
        # (v(x), -v(y)) swaps to (-v(x), v(y))
        square = LINE.power(2)
        vx = MPoly(square.coords, {(2, 0): 1})
        vy = MPoly(square.coords, {(0, 2): 1})
        r = PolyVectorField(square, [vx, -vy])
        assert r.swap() == PolyVectorField(square, [-vx, vy])


class TestExpLog:
    def test_exp_euler(self):
        fd = euler().exp(2)
        x = MPoly.variable(("x",), "x")
        expected = HSeries(("x",), 2, [x, x, x.scale(Fraction(1, 2))])
        assert fd.image("x") == expected

    def test_exp_zero_is_identity(self):
        fd = PolyVectorField.zero(PLANE).exp(3)
        assert fd.is_identity()

    def test_exp_translation_terminates(self):
        fd = ddx().exp(3)
        x = MPoly.variable(("x",), "x")
        expected = HSeries(("x",), 3, [x, MPoly.const(("x",), 1), MPoly.zero(("x",)), MPoly.zero(("x",))])
        assert fd.image("x") == expected

    def test_exp_is_algebra_homomorphism(self):
        rng = random.Random(6)
        for _ in range(20):
            v = rand_field(rng, PLANE, max_degree=2, terms=2)
            fd = v.exp(3)
            f, g = rand_poly(rng, PLANE.coords), rand_poly(rng, PLANE.coords)
            assert fd.apply(f * g) == fd.apply(f) * fd.apply(g)

    def test_log_identity(self):
        from rmatrix.diffeo import FormalDiffeo

        fields = vf_log(FormalDiffeo.identity(PLANE, 3))
        assert all(f.is_zero() for f in fields)

    def test_log_round_trip_single_field(self):
        v = euler()
        fields = vf_log(v.exp(4))
        assert fields[0] == v
        assert all(f.is_zero() for f in fields[1:])

    def test_log_hand_example(self):
        # x -> x(1 + h x) at order 2 has generator b0 = x^2 d/dx, b1 = -x^3 d/dx
        from rmatrix.diffeo import FormalDiffeo

        x = MPoly.variable(("x",), "x")
        img = HSeries(("x",), 2, [x, x**2, MPoly.zero(("x",))])
        fd = FormalDiffeo(LINE, 2, [img])
        fields = vf_log(fd)
        assert fields[0] == line_field({(2,): 1})
        assert fields[1] == line_field({(3,): -1})

    def test_log_exp_round_trips_random(self):
        rng = random.Random(7)
        for _ in range(10):
            grades = [rand_field(rng, PLANE, max_degree=2, terms=2) for _ in range(3)]
            fd = vf_exp_series(grades, 3)
            recovered = vf_log(fd)
            assert recovered == grades
