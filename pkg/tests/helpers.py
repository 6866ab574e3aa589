"""Shared builders for the test suite: seeded random algebra objects."""

from __future__ import annotations

import random
from fractions import Fraction

from rmatrix.poly import MPoly
from rmatrix.series import HSeries
from rmatrix.spaces import Space
from rmatrix.vectorfields import PolyVectorField

XY = ("x", "y")


def rand_fraction(rng: random.Random, span: int = 4) -> Fraction:
    num = rng.randint(-span, span)
    den = rng.randint(1, 3)
    return Fraction(num, den)


def rand_poly(rng: random.Random, vars=XY, max_degree: int = 3, terms: int = 4) -> MPoly:
    out: dict[tuple[int, ...], Fraction] = {}
    for _ in range(rng.randint(0, terms)):
        exps = tuple(rng.randint(0, max_degree) for _ in vars)
        out[exps] = out.get(exps, Fraction(0)) + rand_fraction(rng)
    return MPoly(vars, out)


def rand_series(rng: random.Random, vars=XY, order: int = 3, **kw) -> HSeries:
    return HSeries(vars, order, [rand_poly(rng, vars, **kw) for _ in range(order + 1)])


def rand_unit_series(rng: random.Random, vars=XY, order: int = 3, **kw) -> HSeries:
    """A series with constant term 1 (admissible for inverse and rational powers)."""
    coeffs = [MPoly.const(vars, 1)] + [rand_poly(rng, vars, **kw) for _ in range(order)]
    return HSeries(vars, order, coeffs)


def rand_field(rng: random.Random, space: Space, max_degree: int = 2, terms: int = 3) -> PolyVectorField:
    comps = [rand_poly(rng, space.coords, max_degree, terms) for _ in space.coords]
    return PolyVectorField(space, comps)


def series_exp(vars, order: int, exponent: HSeries) -> HSeries:
    """exp of an O(h) series, for oracle expressions like e^{-h a}."""
    assert exponent.coefficient(0).is_zero()
    total = HSeries.const(vars, order, 1)
    term = HSeries.const(vars, order, 1)
    for k in range(1, order + 1):
        term = (term * exponent).scale(Fraction(1, k))
        total = total + term
    return total


def assert_matrix_family_structure(spec, data) -> None:
    """The extracted data of a matrix-algebra r-matrix matches the known
    picture: gplus is the right ideal c*X acting by right multiplication,
    the cocycle is the identity under the t <-> evaluation-functional
    matching, and the dual action is a * t = -t a.
    """
    from rmatrix.linalg import SparseRREF, mat_vec
    from rmatrix.vectorfields import PolyVectorField as VF

    d = spec.dim
    vars = spec.space.coords
    size = round(d**0.5)
    diag = {f"x{i}{i}" for i in range(1, size + 1)}
    unit = {v: Fraction(int(v in diag)) for v in vars}

    def right_mult_field(t):
        xs = [MPoly.variable(vars, c) for c in vars]
        ts = [MPoly.const(vars, val) for val in t]
        return VF(spec.space, spec.product(xs, ts))

    def algebra_element(field):
        return [comp.evaluate(unit) for comp in field.components]

    def c_times(point):
        cs = [MPoly.const(vars, spec.c[i]) for i in range(d)]
        pt = [MPoly.const(vars, point[v]) for v in vars]
        return [p.constant_value() for p in spec.product(cs, pt)]

    basis_points = []
    for j in range(d):
        basis_points.append({v: Fraction(int(i == j)) for i, v in enumerate(vars)})

    # gplus = the right ideal c X, elementwise and in dimension
    ideal = SparseRREF(lambda i: i)
    for point in basis_points:
        t = c_times(point)
        ideal.insert({i: x for i, x in enumerate(t) if x})
    assert data.dim == len(ideal)
    for a in data.gplus_basis:
        s = algebra_element(a)
        assert a == right_mult_field(s)
        ideal.coefficients({i: x for i, x in enumerate(s) if x}, "gplus element")

    seen = set()
    for point in basis_points:
        t = c_times(point)
        if all(x == 0 for x in t):
            continue
        if tuple(t) in seen:
            continue
        seen.add(tuple(t))
        coords = [w.evaluate(point) for w in data.v_basis]
        # pi = identity: phi of the functional of t is right multiplication by t
        coeffs = mat_vec(data.phi, coords)
        rebuilt = VF.zero(spec.space)
        for cf, a in zip(coeffs, data.gplus_basis):
            rebuilt = rebuilt + a.scale(cf)
        assert rebuilt == right_mult_field(t)
        # dual action a * t' = -t' a
        for i, a in enumerate(data.gplus_basis):
            s = algebra_element(a)
            acted = mat_vec(data.action_on_vdual[i], coords)
            pt = [point[v] for v in vars]
            ps = spec.product(
                [MPoly.const(vars, x) for x in pt], [MPoly.const(vars, x) for x in s]
            )
            moved = {v: p.constant_value() for v, p in zip(vars, ps)}
            expected = [-w.evaluate(moved) for w in data.v_basis]
            assert acted == expected
