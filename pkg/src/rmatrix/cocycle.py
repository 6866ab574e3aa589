"""Extraction of the Lie-algebra data carried by a classical r-matrix.

A classical r-matrix r on X^2 decomposes as an element of
Vect(X) (x) C[X]  (+)  C[X] (x) Vect(X).  Contracting the function side of
the first summand slices out a finite dimensional Lie algebra gplus of
vector fields on X; contracting the field side slices out a finite
dimensional space V of functions on X, which is a gplus-module under
application.  The pairing of r against the dual basis of V gives a linear
isomorphism phi: V* -> gplus whose inverse pi is a bijective 1-cocycle:

    pi([a, b]) = a * pi(b) - b * pi(a),

where the dual action is (a * f)(w) = -f(a(w)).  Everything here is exact
rational linear algebra on monomial coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classical import check_classical
from .errors import CocycleNotBijectiveError, NotClassicalError, NotClosedError, NotInSpanError
from .linalg import Matrix, SparseRREF, invert_matrix, mat_vec
from .poly import MPoly, grlex_key
from .spaces import Space
from .vectorfields import PolyVectorField


def _field_key(col) -> tuple:
    j, exps = col
    return (grlex_key(exps), -j)


def _func_key(col) -> tuple:
    return grlex_key(col)


def field_to_sparse(field: PolyVectorField) -> dict:
    out = {}
    for j, comp in enumerate(field.components):
        for exps, coeff in comp.terms.items():
            out[(j, exps)] = coeff
    return out


def sparse_to_field(space: Space, vec: dict) -> PolyVectorField:
    comps = [dict() for _ in range(space.dim)]
    for (j, exps), coeff in vec.items():
        comps[j][exps] = coeff
    return PolyVectorField(space, [MPoly(space.coords, c) for c in comps])


def poly_to_sparse(poly: MPoly) -> dict:
    return dict(poly.terms)


@dataclass(frozen=True)
class LieCocycleData:
    """Bases, structure constants, actions and the cocycle matrix for one r-matrix.

    ``structure[i][j]`` holds the coefficients of [a_i, a_j] over the gplus
    basis; ``action_on_v[i]`` is the matrix of w -> a_i(w) on the V basis
    (columns index the argument); ``action_on_vdual[i]`` is its negative
    transpose; ``cocycle`` is the matrix of pi and ``phi`` its inverse.
    """

    space: Space
    gplus_basis: tuple[PolyVectorField, ...]
    v_basis: tuple[MPoly, ...]
    structure: tuple[tuple[tuple[Fraction, ...], ...], ...]
    action_on_v: tuple[Matrix, ...]
    action_on_vdual: tuple[Matrix, ...]
    cocycle: Matrix
    phi: Matrix

    @property
    def dim(self) -> int:
        return len(self.gplus_basis)

    def bracket_coefficients(self, i: int, j: int) -> tuple[Fraction, ...]:
        return self.structure[i][j]

    def with_cocycle(self, cocycle: Matrix) -> "LieCocycleData":
        """Same data with a replaced cocycle matrix (for fault injection in tests)."""
        return LieCocycleData(
            space=self.space,
            gplus_basis=self.gplus_basis,
            v_basis=self.v_basis,
            structure=self.structure,
            action_on_v=self.action_on_v,
            action_on_vdual=self.action_on_vdual,
            cocycle=cocycle,
            phi=self.phi,
        )


class _SpanContext:
    """RREF bases for gplus and V kept around to express new elements in them."""

    def __init__(self, space: Space):
        self.space = space
        self.gplus = SparseRREF(_field_key)
        self.v = SparseRREF(_func_key)

    def field_coefficients(self, field: PolyVectorField, what: str) -> list[Fraction]:
        return self.gplus.coefficients(field_to_sparse(field), what)

    def func_coefficients(self, poly: MPoly, what: str) -> list[Fraction]:
        return self.v.coefficients(poly_to_sparse(poly), what)


def _spanning_sets(r: PolyVectorField):
    """Raw spanning vectors for gplus (from the x side) and V (from the y side)."""
    square = r.space
    base = square.require_product(2)
    n = base.dim
    ys = square.slot_coords(2)
    to_base_x = {x: b for b, x in square.slot_map(1).items()}

    gplus_rows: dict[tuple, dict] = {}
    for j in range(n):
        comp = r.components[j]
        for m2, poly in comp.collect(ys).items():
            row = gplus_rows.setdefault(m2, {})
            for exps, coeff in poly.transplant(base.coords, to_base_x).terms.items():
                new = row.get((j, exps), Fraction(0)) + coeff
                if new:
                    row[(j, exps)] = new
                else:
                    row.pop((j, exps), None)

    v_rows: list[dict] = []
    for j in range(n):
        comp = r.components[n + j]
        for m2, poly in sorted(comp.collect(ys).items(), key=lambda kv: grlex_key(kv[0]), reverse=True):
            coeff_poly = poly.transplant(base.coords, to_base_x)
            if not coeff_poly.is_zero():
                v_rows.append(poly_to_sparse(coeff_poly))

    ordered_gplus = [gplus_rows[m2] for m2 in sorted(gplus_rows, key=grlex_key, reverse=True)]
    return base, ordered_gplus, v_rows


def _pairing_matrix(r: PolyVectorField, base: Space, ctx: _SpanContext) -> Matrix:
    """Express the x side of r as sum rho[i][m] a_i (x) w_m.

    The RREF pivots of the gplus basis act as dual functionals: contracting
    the x side at pivot (j, exps) leaves exactly the V-valued partner of a_i.
    The expansion is verified globally afterwards by reconstruction.
    """
    square = r.space
    n = base.dim
    ys = square.slot_coords(2)
    to_base_x = {x: b for b, x in square.slot_map(1).items()}
    to_base_y = {y: b for b, y in square.slot_map(2).items()}

    tensor: dict[tuple, dict[tuple, Fraction]] = {}
    for j in range(n):
        for m2, poly in r.components[j].collect(ys).items():
            base_poly = poly.transplant(base.coords, to_base_x)
            for exps, coeff in base_poly.terms.items():
                cell = tensor.setdefault((j, exps), {})
                cell[m2] = cell.get(m2, Fraction(0)) + coeff

    k = len(ctx.gplus)
    rho: Matrix = []
    for pivot in ctx.gplus.pivots:
        partner = MPoly(square.slot_coords(2), tensor.get(pivot, {})).transplant(
            base.coords, to_base_y
        )
        rho.append(ctx.func_coefficients(partner, f"pairing partner of pivot {pivot}"))

    # Reconstruction check: the computed expansion must rebuild the x side of
    # r exactly (this also certifies that the x side lies in gplus (x) V).
    for j in range(n):
        rebuilt = MPoly.zero(square.coords)
        for i in range(k):
            a_comp = ctx_field_component(ctx, i, j, square)
            if a_comp.is_zero():
                continue
            for m in range(k):
                if rho[i][m]:
                    w = ctx_v_poly(ctx, m, square)
                    rebuilt = rebuilt + (a_comp * w).scale(rho[i][m])
        if rebuilt != r.components[j]:
            raise NotInSpanError(
                f"x-side component of {square.coords[j]} is not in the span of gplus tensor V"
            )
    return rho


def ctx_field_component(ctx: _SpanContext, i: int, j: int, square: Space) -> MPoly:
    """Component j of basis field a_i, transplanted into slot 1 of the square."""
    base = ctx.space
    field = sparse_to_field(base, ctx.gplus.rows[i])
    return field.components[j].transplant(square.coords, square.slot_map(1))


def ctx_v_poly(ctx: _SpanContext, m: int, square: Space) -> MPoly:
    """Basis function w_m transplanted into slot 2 of the square."""
    base = ctx.space
    poly = MPoly(base.coords, ctx.v.rows[m])
    return poly.transplant(square.coords, square.slot_map(2))


def extract(r: PolyVectorField, *, check: bool = True) -> LieCocycleData:
    """Extract the full Lie-cocycle data from a classical r-matrix.

    With ``check`` (the default) the classical Yang-Baxter and unitarity
    conditions are verified first; closure errors on inputs that fail them
    are otherwise hard to attribute.
    """
    if check:
        residual = check_classical(r)
        if not residual.passes:
            raise NotClassicalError("input fails the classical r-matrix conditions", residual)

    base, gplus_rows, v_rows = _spanning_sets(r)
    ctx = _SpanContext(base)
    for row in gplus_rows:
        ctx.gplus.insert(row)
    for row in v_rows:
        ctx.v.insert(row)

    k = len(ctx.gplus)
    if len(ctx.v) != k:
        raise CocycleNotBijectiveError(
            f"gplus has dimension {k} but V has dimension {len(ctx.v)}"
        )

    gplus_basis = tuple(sparse_to_field(base, row) for row in ctx.gplus.rows)
    v_basis = tuple(MPoly(base.coords, row) for row in ctx.v.rows)

    structure: list[list[tuple[Fraction, ...]]] = [[()] * k for _ in range(k)]
    zero = tuple([Fraction(0)] * k)
    for i in range(k):
        structure[i][i] = zero
        for j in range(i + 1, k):
            br = gplus_basis[i].bracket(gplus_basis[j])
            try:
                coeffs = ctx.field_coefficients(br, f"bracket [a_{i}, a_{j}]")
            except NotInSpanError as exc:
                raise NotClosedError(str(exc)) from exc
            structure[i][j] = tuple(coeffs)
            structure[j][i] = tuple(-c for c in coeffs)

    action_on_v: list[Matrix] = []
    action_on_vdual: list[Matrix] = []
    for i in range(k):
        mat = [[Fraction(0)] * k for _ in range(k)]
        for j in range(k):
            image = gplus_basis[i].apply(v_basis[j])
            coeffs = ctx.func_coefficients(image, f"action a_{i}(w_{j})")
            for m in range(k):
                mat[m][j] = coeffs[m]
        action_on_v.append(mat)
        action_on_vdual.append([[-mat[j][m] for j in range(k)] for m in range(k)])

    rho = _pairing_matrix(r, base, ctx)
    phi = rho
    cocycle = invert_matrix(phi) if k else []

    return LieCocycleData(
        space=base,
        gplus_basis=gplus_basis,
        v_basis=v_basis,
        structure=tuple(tuple(row) for row in structure),
        action_on_v=tuple(action_on_v),
        action_on_vdual=tuple(action_on_vdual),
        cocycle=cocycle,
        phi=phi,
    )


def reconstruct(data: LieCocycleData) -> PolyVectorField:
    """Rebuild the r-matrix from (gplus basis, V basis, phi); inverse of extraction."""
    base = data.space
    square = base.power(2)
    k = data.dim
    slot1 = square.slot_map(1)
    slot2 = square.slot_map(2)
    comps = {c: MPoly.zero(square.coords) for c in square.coords}
    for i in range(k):
        for m in range(k):
            coeff = data.phi[i][m]
            if not coeff:
                continue
            w2 = data.v_basis[m].transplant(square.coords, slot2)
            w1 = data.v_basis[m].transplant(square.coords, slot1)
            for j, b in enumerate(base.coords):
                a_j = data.gplus_basis[i].components[j]
                if a_j.is_zero():
                    continue
                a1 = a_j.transplant(square.coords, slot1)
                a2 = a_j.transplant(square.coords, slot2)
                comps[slot1[b]] = comps[slot1[b]] + (a1 * w2).scale(coeff)
                comps[slot2[b]] = comps[slot2[b]] - (a2 * w1).scale(coeff)
    return PolyVectorField.from_dict(square, comps)


def verify_lemma1(data: LieCocycleData) -> tuple[bool, dict[tuple[int, int], list[Fraction]]]:
    """Check the 1-cocycle identity pi([a,b]) = a*pi(b) - b*pi(a) on all basis pairs.

    Returns the overall verdict together with the residual vector for each
    pair (i, j) with i < j; residuals are in V* coordinates.
    """
    k = data.dim
    residuals: dict[tuple[int, int], list[Fraction]] = {}
    ok = True
    cocycle_cols = [[data.cocycle[m][i] for m in range(k)] for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            lhs = mat_vec(data.cocycle, list(data.structure[i][j]))
            rhs_a = mat_vec(data.action_on_vdual[i], cocycle_cols[j])
            rhs_b = mat_vec(data.action_on_vdual[j], cocycle_cols[i])
            residual = [l - (x - y) for l, x, y in zip(lhs, rhs_a, rhs_b)]
            residuals[(i, j)] = residual
            if any(residual):
                ok = False
    return ok, residuals
