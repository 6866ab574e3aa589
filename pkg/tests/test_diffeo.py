import random

import pytest

from rmatrix.diffeo import FormalDiffeo, check_qybe, check_unitarity_q, verify_quantum
from rmatrix.errors import LeadingTermError, OrderMismatchError, SpaceMismatchError
from rmatrix.families import line_r, permutation_R, scalar_algebra, algebra_R
from rmatrix.poly import MPoly
from rmatrix.series import HSeries
from rmatrix.spaces import Space
from rmatrix.vectorfields import PolyVectorField, vf_exp_series

from helpers import rand_field

LINE = Space("line", ("x",))
SQUARE = LINE.power(2)
XY = SQUARE.coords


def xs(order):
    return HSeries.coordinate(XY, order, "x@1")


def ys(order):
    return HSeries.coordinate(XY, order, "x@2")


def translation(order, amount=1):
    """x -> x + a h, y -> y fixed."""
    return FormalDiffeo(SQUARE, order, [xs(order) + HSeries.hbar(XY, order).scale(amount), ys(order)])


class TestConstruction:
    def test_identity_h0_part_enforced(self):
        bad = HSeries.from_poly(MPoly(XY, {(0, 1): 1}), 2)  # image of x is y
        with pytest.raises(LeadingTermError):
            FormalDiffeo(SQUARE, 2, [bad, ys(2)])

    def test_order_mismatch_rejected(self):
        with pytest.raises(OrderMismatchError):
            FormalDiffeo(SQUARE, 2, [xs(2), ys(3)])


class TestCompose:
    def test_identity_is_unit(self):
        fd = translation(2)
        ident = FormalDiffeo.identity(SQUARE, 2)
        assert fd.compose(ident) == fd
        assert ident.compose(fd) == fd

    def test_translation_flow(self):
        assert translation(2).compose(translation(2)) == translation(2, 2)

    def test_hand_composition(self):
        # (x -> x(1+h y), y -> y) after (x -> x, y -> y(1+h x)):
        #   x -> x + h x y + h^2 x^2 y,   y -> y + h x y
        phi = FormalDiffeo(SQUARE, 2, [xs(2) * (1 + ys(2).shift(1)), ys(2)])
        psi = FormalDiffeo(SQUARE, 2, [xs(2), ys(2) * (1 + xs(2).shift(1))])
        got = phi.compose(psi)
        assert got.image("x@1") == HSeries(
            XY, 2, [MPoly(XY, {(1, 0): 1}), MPoly(XY, {(1, 1): 1}), MPoly(XY, {(2, 1): 1})]
        )
        assert got.image("x@2") == HSeries(
            XY, 2, [MPoly(XY, {(0, 1): 1}), MPoly(XY, {(1, 1): 1}), MPoly.zero(XY)]
        )

    def test_associativity_random(self):
        rng = random.Random(31)
        maps = []
        for _ in range(3):
            grades = [rand_field(rng, SQUARE, max_degree=1, terms=2) for _ in range(2)]
            maps.append(vf_exp_series(grades, 3))
        a, b, c = maps
        assert a.compose(b).compose(c) == a.compose(b.compose(c))

    def test_space_mismatch(self):
        other = Space("plane", ("x", "y")).power(2)
        with pytest.raises(SpaceMismatchError):
            translation(2).compose(FormalDiffeo.identity(other, 2))


class TestInverse:
    def test_identity(self):
        ident = FormalDiffeo.identity(SQUARE, 3)
        assert ident.inverse() == ident

    def test_translation(self):
        assert translation(2).inverse() == translation(2, -1)

    def test_hand_example(self):
        # inverse of x -> x(1+h x) on the line is x -> x - h x^2 + 2 h^2 x^3
        x = MPoly.variable(("x",), "x")
        fd = FormalDiffeo(LINE, 2, [HSeries(("x",), 2, [x, x**2, MPoly.zero(("x",))])])
        inv = fd.inverse()
        assert inv.image("x") == HSeries(("x",), 2, [x, -(x**2), (x**3).scale(2)])

    def test_double_inverse_random(self):
        rng = random.Random(37)
        for _ in range(10):
            grades = [rand_field(rng, SQUARE, max_degree=1, terms=2) for _ in range(3)]
            fd = vf_exp_series(grades, 3)
            assert fd.inverse().inverse() == fd


class TestLiftSwap:
    def test_lift_identity(self):
        ident = FormalDiffeo.identity(SQUARE, 2)
        cube_ident = FormalDiffeo.identity(LINE.power(3), 2)
        for pair in [(1, 2), (1, 3), (2, 3)]:
            assert ident.lift(pair) == cube_ident

    def test_lift_23_fixes_slot_one(self):
        R = algebra_R(scalar_algebra(1), 3)
        lifted = R.lift((2, 3))
        cube = LINE.power(3)
        assert lifted.image("x@1") == HSeries.coordinate(cube.coords, 3, "x@1")

    def test_lift_13_first_image(self):
        R = algebra_R(scalar_algebra(1), 2)
        lifted = R.lift((1, 3))
        cube = LINE.power(3)
        x1 = MPoly.variable(cube.coords, "x@1")
        x3 = MPoly.variable(cube.coords, "x@3")
        assert lifted.image("x@1") == HSeries(cube.coords, 2, [x1, x1 * x3, MPoly.zero(cube.coords)])

    def test_lift_respects_composition(self):
        rng = random.Random(41)
        grades_a = [rand_field(rng, SQUARE, max_degree=1, terms=2) for _ in range(2)]
        grades_b = [rand_field(rng, SQUARE, max_degree=1, terms=2) for _ in range(2)]
        a, b = vf_exp_series(grades_a, 3), vf_exp_series(grades_b, 3)
        for pair in [(1, 2), (1, 3), (2, 3)]:
            assert a.compose(b).lift(pair) == a.lift(pair).compose(b.lift(pair))

    def test_swap_identity(self):
        ident = FormalDiffeo.identity(SQUARE, 2)
        assert ident.swap() == ident

    def test_swap_symmetric_map(self):
        sym = FormalDiffeo(
            SQUARE, 1, [xs(1) + (xs(1) * ys(1)).shift(1), ys(1) + (xs(1) * ys(1)).shift(1)]
        )
        assert sym.swap() == sym

    def test_swap_exchanges_images(self):
        R = algebra_R(scalar_algebra(1), 2)
        swapped = R.swap()
        flip = {"x@1": "x@2", "x@2": "x@1"}
        assert swapped.image("x@2") == R.image("x@1").transplant(XY, flip)
        assert swapped.image("x@1") == R.image("x@2").transplant(XY, flip)


class TestQuantumChecks:
    def test_closed_form_passes_order_four(self):
        R = algebra_R(scalar_algebra(1), 4)
        assert verify_quantum(R).passes

    def test_identity_passes(self):
        ident = FormalDiffeo.identity(SQUARE, 3)
        assert check_qybe(ident).passes
        assert check_unitarity_q(ident).passes

    def test_qybe_failure_located(self):
        # x -> x + h y^2, y -> y: residual is exactly 2 h^2 x2 x3^2 in slot 1
        R = FormalDiffeo(SQUARE, 2, [xs(2) + HSeries.from_poly(MPoly(XY, {(0, 2): 1}), 2).shift(1), ys(2)])
        residual = check_qybe(R)
        assert not residual.passes
        cube = LINE.power(3)
        entry = residual.qybe["x@1"]
        assert entry.coefficient(0).is_zero()
        assert entry.coefficient(1).is_zero()
        assert entry.coefficient(2) == MPoly(cube.coords, {(0, 1, 2): 2})
        assert residual.qybe["x@2"].is_zero()
        assert residual.qybe["x@3"].is_zero()

    def test_unitarity_failure_located(self):
        # x -> x(1 + h y), y -> y fails at h^1
        R = FormalDiffeo(SQUARE, 2, [xs(2) * (1 + ys(2).shift(1)), ys(2)])
        residual = check_unitarity_q(R)
        assert not residual.passes
        assert not residual.unitarity["x@1"].coefficient(1).is_zero()
        assert not residual.unitarity["x@2"].coefficient(1).is_zero()


class TestClassicalLimit:
    def test_closed_form_limit_is_r1(self):
        R = algebra_R(scalar_algebra(1), 3)
        assert R.classical_limit() == line_r(1)

    def test_identity_limit_is_zero(self):
        assert FormalDiffeo.identity(SQUARE, 2).classical_limit().is_zero()

    def test_permutation_limit(self):
        v = PolyVectorField(LINE, [MPoly(("x",), {(2,): 1})])
        from rmatrix.families import permutation_r

        assert permutation_R(v, 3).classical_limit() == permutation_r(v)

    def test_order_zero_rejected(self):
        with pytest.raises(OrderMismatchError):
            FormalDiffeo.identity(SQUARE, 0).classical_limit()
