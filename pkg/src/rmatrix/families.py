"""The worked families: permutation, associative-algebra, and line r-matrices.

Each family comes with its classical member and a closed-form quantum
R-matrix, so the generic quantization pipeline can be compared against known
answers coefficient by coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .diffeo import FormalDiffeo
from .errors import SpaceMismatchError
from .poly import MPoly
from .series import HSeries
from .spaces import Space
from .vectorfields import PolyVectorField

LINE = Space("line", ("x",))


def _frac(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class AlgebraSpec:
    """A finite dimensional associative algebra with a marked element c.

    The product is given by structure constants, e_i e_j = sum_k m[i][j][k] e_k
    (note the index order: the output index comes last).  Associativity is
    checked at construction.
    """

    __slots__ = ("dim", "mult", "c", "space")

    def __init__(self, mult, c, coords: Sequence[str] | None = None, name: str = "algebra"):
        d = len(mult)
        mult = tuple(tuple(tuple(_frac(x) for x in row) for row in plane) for plane in mult)
        c = tuple(_frac(x) for x in c)
        if any(len(plane) != d or any(len(row) != d for row in plane) for plane in mult):
            raise ValueError("structure constants must form a d x d x d array")
        if len(c) != d:
            raise ValueError(f"c must have {d} coordinates")
        if coords is None:
            coords = ("x",) if d == 1 else tuple(f"x{i + 1}" for i in range(d))
        space = Space(name, tuple(coords))
        if space.dim != d:
            raise ValueError("coordinate list does not match the dimension")
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "space", space)
        self._check_associative()

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraSpec is immutable")

    def _check_associative(self):
        d = self.dim
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    for l in range(d):
                        left = sum(self.mult[i][j][a] * self.mult[a][k][l] for a in range(d))
                        right = sum(self.mult[j][k][b] * self.mult[i][b][l] for b in range(d))
                        if left != right:
                            raise ValueError(
                                f"structure constants are not associative at ({i}, {j}, {k}, {l})"
                            )

    @classmethod
    def matrix_algebra(cls, size: int, c_matrix) -> "AlgebraSpec":
        """The n x n matrix algebra with basis e_(row, col), row-major."""
        d = size * size

        def idx(row, col):
            return row * size + col

        mult = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
        for i in range(size):
            for j in range(size):
                for k in range(size):
                    for l in range(size):
                        # e_(i,j) e_(k,l) = delta_(j,k) e_(i,l)
                        if j == k:
                            mult[idx(i, j)][idx(k, l)][idx(i, l)] = Fraction(1)
        c = [Fraction(0)] * d
        for row in range(size):
            for col in range(size):
                c[idx(row, col)] = _frac(c_matrix[row][col])
        coords = tuple(f"x{row + 1}{col + 1}" for row in range(size) for col in range(size))
        return cls(mult, c, coords=coords, name=f"mat{size}")

    def product(self, u, v):
        """Coordinate vector of u*v; entries may be polynomials or series."""
        d = self.dim
        out = []
        for k in range(d):
            acc = None
            for i in range(d):
                for j in range(d):
                    coeff = self.mult[i][j][k]
                    if coeff:
                        term = (u[i] * v[j]).scale(coeff)
                        acc = term if acc is None else acc + term
            out.append(acc if acc is not None else u[0].scale(0))
        return out

    def const_vector(self, vars, values) -> list[MPoly]:
        return [MPoly.const(vars, v) for v in values]


def permutation_r(v: PolyVectorField) -> PolyVectorField:
    """The permutation r-matrix (v(x), -v(y)) attached to a field v on X."""
    if v.space.base is not None:
        raise SpaceMismatchError("permutation input must be a field on a plain space")
    square = v.space.power(2)
    comps = {}
    for j, b in enumerate(v.space.coords):
        comps[square.slot_map(1)[b]] = v.components[j].transplant(square.coords, square.slot_map(1))
        comps[square.slot_map(2)[b]] = -v.components[j].transplant(square.coords, square.slot_map(2))
    return PolyVectorField.from_dict(square, comps)


def permutation_R(v: PolyVectorField, order: int) -> FormalDiffeo:
    """The permutation R-matrix (g(x), g^{-1}(y)) with g the flow of v."""
    if v.space.base is not None:
        raise SpaceMismatchError("permutation input must be a field on a plain space")
    square = v.space.power(2)
    g = v.exp(order)
    ginv = g.inverse()
    images = {}
    for b in v.space.coords:
        images[square.slot_map(1)[b]] = g.image(b).transplant(square.coords, square.slot_map(1))
        images[square.slot_map(2)[b]] = ginv.image(b).transplant(square.coords, square.slot_map(2))
    return FormalDiffeo.from_dict(square, order, images)


def algebra_r(spec: AlgebraSpec) -> PolyVectorField:
    """The algebra r-matrix (x c y, -y c x) in coordinates."""
    square = spec.space.power(2)
    vars = square.coords
    xs = [MPoly.variable(vars, c) for c in square.slot_coords(1)]
    ys = [MPoly.variable(vars, c) for c in square.slot_coords(2)]
    cs = spec.const_vector(vars, spec.c)
    xcy = spec.product(spec.product(xs, cs), ys)
    ycx = spec.product(spec.product(ys, cs), xs)
    comps = {}
    for j in range(spec.dim):
        comps[square.slot_coords(1)[j]] = xcy[j]
        comps[square.slot_coords(2)[j]] = -ycx[j]
    return PolyVectorField.from_dict(square, comps)


def algebra_R(spec: AlgebraSpec, order: int) -> FormalDiffeo:
    """The closed-form quantum R-matrix (x(1 + h c y), y(1 + h c x + h^2 c x c y)^{-1}).

    The inverse is expanded as a geometric series of right multiplications,
    so no unit element is required.
    """
    square = spec.space.power(2)
    vars = square.coords
    xs = [HSeries.coordinate(vars, order, c) for c in square.slot_coords(1)]
    ys = [HSeries.coordinate(vars, order, c) for c in square.slot_coords(2)]
    cs = [HSeries.const(vars, order, v) for v in spec.c]

    cy = spec.product(cs, ys)
    xcy = spec.product(xs, cy)
    first = [x + xcy[j].shift(1) for j, x in enumerate(xs)]

    cx = spec.product(cs, xs)
    cxcy = spec.product(cx, cy)
    u = [cx[j].shift(1) + cxcy[j].shift(2) for j in range(spec.dim)]
    term = list(ys)
    second = list(ys)
    for _ in range(order):
        term = [-t for t in spec.product(term, u)]
        if all(t.is_zero() for t in term):
            break
        second = [s + t for s, t in zip(second, term)]

    images = {}
    for j in range(spec.dim):
        images[square.slot_coords(1)[j]] = first[j]
        images[square.slot_coords(2)[j]] = second[j]
    return FormalDiffeo.from_dict(square, order, images)


def scalar_algebra(c=1) -> AlgebraSpec:
    """The one dimensional algebra (plain multiplication) with marked element c."""
    return AlgebraSpec(((( _frac(1),),),), (c,), coords=("x",), name="line")


def line_r(n: int, c=1) -> PolyVectorField:
    """The line-family r-matrix c (x y^n d/dx - y x^n d/dy).

    The optional rational prefactor is kept rather than scaled away, since
    normalizing it needs an n-th root that may leave the rationals.
    """
    if n < 1:
        raise ValueError("the family index n must be a positive integer")
    square = LINE.power(2)
    vars = square.coords
    x = MPoly.variable(vars, vars[0])
    y = MPoly.variable(vars, vars[1])
    return PolyVectorField(square, [(x * y**n).scale(_frac(c)), -(y * x**n).scale(_frac(c))])


def line_R(n: int, order: int) -> FormalDiffeo:
    """The closed-form quantization of line_r(n):

    (x (1 + n h y^n)^(1/n),  y (1 + n h x^n + n^2 h^2 x^n y^n)^(-1/n)).
    """
    if n < 1:
        raise ValueError("the family index n must be a positive integer")
    square = LINE.power(2)
    vars = square.coords
    x = HSeries.coordinate(vars, order, vars[0])
    y = HSeries.coordinate(vars, order, vars[1])
    xn = MPoly.variable(vars, vars[0]) ** n
    yn = MPoly.variable(vars, vars[1]) ** n
    first = x * (1 + HSeries.from_poly(yn, order).scale(n).shift(1)).pow_rational(Fraction(1, n))
    inner = (
        1
        + HSeries.from_poly(xn, order).scale(n).shift(1)
        + HSeries.from_poly(xn * yn, order).scale(n * n).shift(2)
    )
    second = y * inner.pow_rational(Fraction(-1, n))
    return FormalDiffeo(square, order, [first, second])


def check_monomial_intertwining(n: int, order: int) -> bool:
    """The substitution u -> x^n, v -> y^n intertwines the n = 1 and general families.

    Classically, applying line_r(n) after the substitution agrees with
    substituting after n * line_r(1) (the factor n absorbs the h-rescaling
    below).  Quantum mechanically, pushing the n = 1 R-matrix with h replaced
    by n h through the substitution reproduces the n-th powers of line_R(n)'s
    images.  Both identities are exact at the truncation order.
    """
    square = LINE.power(2)
    vars = square.coords

    # Classical identity, checked on a generating set plus products.
    uvars = ("u", "v")
    subst = {
        "u": MPoly.variable(vars, vars[0]) ** n,
        "v": MPoly.variable(vars, vars[1]) ** n,
    }
    r1 = PolyVectorField(
        Space("uv", uvars),
        [
            MPoly.variable(uvars, "u") * MPoly.variable(uvars, "v"),
            -(MPoly.variable(uvars, "v") * MPoly.variable(uvars, "u")),
        ],
    )
    rn = line_r(n)
    u = MPoly.variable(uvars, "u")
    v = MPoly.variable(uvars, "v")
    probes = [u, v, u * v, u + v, u**2 * v, u * v**3 + u**2]
    for poly in probes:
        lhs = rn.apply(poly.compose(subst))
        rhs = (r1.apply(poly).scale(n)).compose(subst)
        if lhs != rhs:
            return False

    # Quantum identity: images of algebra_R(1, c=1) with h -> n h, pushed
    # through the substitution, equal the n-th powers of line_R(n)'s images.
    R1 = algebra_R(scalar_algebra(1), order)
    Rn = line_R(n, order)
    series_subst = {
        vars[0]: HSeries.from_poly(MPoly.variable(vars, vars[0]) ** n, order),
        vars[1]: HSeries.from_poly(MPoly.variable(vars, vars[1]) ** n, order),
    }
    for coord in vars:
        pushed = R1.image(coord).rescale_hbar(n).substitute(series_subst)
        powered = Rn.image(coord) ** n
        if pushed != powered:
            return False
    return True
