"""Constructive quantization of classical r-matrices.

The pipeline exponentiates the extracted 1-cocycle to the formal group level:
Pi sends a group element exp(h*b) to the V*-valued series

    Pi(exp(h*b)) = sum_{m>=1} h^(m-1) (b*)^(m-1) pi(b) / m!,

the one-parameter-subgroup form of the group 1-cocycle, which satisfies
Pi(g g') = g * Pi(g') + Pi(g).  Evaluation of the V basis at a point x gives
eps(x) in V*; the circle operation

    x o y = flow of Pi^{-1}(-eps(x)) applied to y

then assembles the quantum R-matrix as the point map

    R(x, y) = (z, z o y)   where z solves  y o z = x.

All solves are order-by-order in h and exact.
"""

from __future__ import annotations

from fractions import Fraction

from .classical import check_classical
from .cocycle import LieCocycleData, extract, field_to_sparse
from .diffeo import FormalDiffeo, verify_quantum
from .errors import NotClassicalError, NotInSpanError, QuantizationError, SpaceMismatchError
from .poly import MPoly
from .series import HSeries
from .spaces import Space
from .vectorfields import PolyVectorField, vf_exp_series, vf_log

Series = HSeries


class GroupElement:
    """exp(h*b) for b in gplus[[h]], stored as the coefficient vector of b.

    Coefficients are series over an arbitrary parameter variable list (empty
    for plain rational elements, the x-slot coordinates when the element
    depends on a point).
    """

    __slots__ = ("data", "coeffs")

    def __init__(self, data: LieCocycleData, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != data.dim:
            raise ValueError(f"expected {data.dim} coefficients, got {len(coeffs)}")
        for c in coeffs[1:]:
            if c.vars != coeffs[0].vars or c.order != coeffs[0].order:
                raise ValueError("group element coefficients must share variables and order")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    @classmethod
    def identity(cls, data: LieCocycleData, vars, order: int) -> "GroupElement":
        return cls(data, [HSeries.zero(vars, order) for _ in range(data.dim)])

    @property
    def vars(self):
        return self.coeffs[0].vars if self.coeffs else ()

    @property
    def order(self) -> int:
        return self.coeffs[0].order if self.coeffs else 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.data is other.data and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"GroupElement({list(self.coeffs)})"


class DualVector:
    """An element of V*[[h]] in the dual coordinates of the extracted V basis."""

    __slots__ = ("data", "components")

    def __init__(self, data: LieCocycleData, components):
        components = tuple(components)
        if len(components) != data.dim:
            raise ValueError(f"expected {data.dim} components, got {len(components)}")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("DualVector is immutable")

    def __neg__(self) -> "DualVector":
        return DualVector(self.data, [-c for c in self.components])

    def __add__(self, other: "DualVector") -> "DualVector":
        return DualVector(self.data, [a + b for a, b in zip(self.components, other.components)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, DualVector):
            return NotImplemented
        return self.data is other.data and self.components == other.components

    def __repr__(self) -> str:
        return f"DualVector({list(self.components)})"


# -- the group cocycle Pi and its inverse -------------------------------------


def _action_matrix(g: GroupElement) -> list[list[HSeries]]:
    """The action of log(g) on V* as a series-valued matrix (b*)."""
    data, coeffs = g.data, g.coeffs
    k = data.dim
    vars, order = g.vars, g.order
    zero = HSeries.zero(vars, order)
    out = [[zero] * k for _ in range(k)]
    for i, c in enumerate(coeffs):
        if c.is_zero():
            continue
        mat = data.action_on_vdual[i]
        for a in range(k):
            for b in range(k):
                if mat[a][b]:
                    out[a][b] = out[a][b] + c.scale(mat[a][b])
    return out


def _mat_apply(mat: list[list[HSeries]], vec: list[HSeries]) -> list[HSeries]:
    out = []
    for row in mat:
        acc = None
        for entry, v in zip(row, vec):
            if entry.is_zero() or v.is_zero():
                continue
            term = entry * v
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else vec[0] - vec[0])
    return out


def pi_forward(g: GroupElement) -> DualVector:
    """The group 1-cocycle Pi on a single exponential, as a truncated series."""
    data = g.data
    k = data.dim
    if k == 0:
        return DualVector(data, ())
    order = g.order
    pib = [
        sum(
            (g.coeffs[j].scale(data.cocycle[m][j]) for j in range(k) if data.cocycle[m][j]),
            HSeries.zero(g.vars, order),
        )
        for m in range(k)
    ]
    bstar = _action_matrix(g)
    term = pib
    total = list(pib)
    factorial = 1
    for m in range(2, order + 2):
        term = [t.shift(1) for t in _mat_apply(bstar, term)]
        if all(t.is_zero() for t in term):
            break
        factorial *= m
        inv = Fraction(1, factorial)
        total = [a + t.scale(inv) for a, t in zip(total, term)]
    return DualVector(data, total)


def pi_inverse(xi: DualVector) -> GroupElement:
    """The unique b in gplus[[h]] with Pi(exp(h*b)) = xi, solved order by order."""
    data = xi.data
    k = data.dim
    if k == 0:
        return GroupElement(data, ())
    vars = xi.components[0].vars
    order = xi.components[0].order
    coeffs = [HSeries.zero(vars, order) for _ in range(k)]
    for deg in range(order + 1):
        current = pi_forward(GroupElement(data, coeffs))
        resid = [
            xi.components[m].coefficient(deg) - current.components[m].coefficient(deg)
            for m in range(k)
        ]
        if all(p.is_zero() for p in resid):
            continue
        for i in range(k):
            delta = MPoly.zero(vars)
            for j in range(k):
                if data.phi[i][j] and not resid[j].is_zero():
                    delta = delta + resid[j].scale(data.phi[i][j])
            if not delta.is_zero():
                coeffs[i] = coeffs[i] + HSeries.from_poly(delta.embed(vars), order).shift(deg)
    result = GroupElement(data, coeffs)
    assert pi_forward(result) == xi, "cocycle inversion failed to close"
    return result


def group_act_dual(g: GroupElement, xi: DualVector) -> DualVector:
    """The natural action of a group element on V*[[h]]: exp(h * (log g)*)."""
    if g.data is not xi.data:
        raise ValueError("group element and dual vector come from different extractions")
    k = g.data.dim
    if k == 0:
        return xi
    bstar = _action_matrix(g)
    term = list(xi.components)
    total = list(term)
    factorial = 1
    for m in range(1, g.order + 1):
        term = [t.shift(1) for t in _mat_apply(bstar, term)]
        if all(t.is_zero() for t in term):
            break
        factorial *= m
        inv = Fraction(1, factorial)
        total = [a + t.scale(inv) for a, t in zip(total, term)]
    return DualVector(g.data, total)


# -- flows of gplus-valued series ---------------------------------------------


def _realized_generator(
    data: LieCocycleData, coeffs, ambient: Space, rename: dict[str, str]
) -> list[PolyVectorField]:
    """h-graded generator sum_i c_i(h) a_i as fields on an ambient space.

    ``rename`` sends base coordinates into the ambient slot the fields act
    on; the coefficient series may involve any other ambient variables.
    """
    order = coeffs[0].order if coeffs else 0
    base = data.space
    fields = []
    for m in range(order + 1):
        comps = {c: MPoly.zero(ambient.coords) for c in ambient.coords}
        nonzero = False
        for i, c in enumerate(coeffs):
            weight = c.coefficient(m)
            if weight.is_zero():
                continue
            weight = weight.embed(ambient.coords)
            for j, b in enumerate(base.coords):
                a_comp = data.gplus_basis[i].components[j]
                if a_comp.is_zero():
                    continue
                target = rename[b]
                comps[target] = comps[target] + weight * a_comp.transplant(ambient.coords, rename)
                nonzero = True
        fields.append(PolyVectorField.from_dict(ambient, comps) if nonzero else PolyVectorField.zero(ambient))
    return fields


def flow_of(g: GroupElement, ambient: Space, rename: dict[str, str], order: int) -> FormalDiffeo:
    """Realize a group element as the flow it induces on the ambient space."""
    coeffs = [_extend(c, order) for c in g.coeffs]
    fields = _realized_generator(g.data, coeffs, ambient, rename)
    if not fields:
        return FormalDiffeo.identity(ambient, order)
    return vf_exp_series(fields, order)


def _extend(series: HSeries, order: int) -> HSeries:
    if order == series.order:
        return series
    if order < series.order:
        return series.truncate(order)
    pad = [MPoly.zero(series.vars)] * (order - series.order)
    return HSeries(series.vars, order, list(series.coeffs) + pad)


def group_mul(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """Product in the formal group of gplus, via flows.

    Both elements are realized as flows on the base space (the realization is
    faithful and order-reversing, so the product g1 g2 corresponds to the
    point map flow(g2) after flow(g1)); the composed flow's generator is
    recovered and re-expanded in the gplus basis.  Flows are computed one
    order deeper than the inputs so that the top coefficient of the product's
    logarithm is exact.
    """
    if g1.data is not g2.data:
        raise ValueError("group elements come from different extractions")
    if g1.vars != g2.vars or g1.order != g2.order:
        raise ValueError("group elements must share parameter variables and order")
    data = g1.data
    k = data.dim
    order = g1.order
    if k == 0:
        return g1
    params = g1.vars
    base = data.space
    overlap = set(params) & set(base.coords)
    if overlap:
        raise ValueError(f"parameter variables shadow coordinates: {sorted(overlap)}")
    ambient = Space("context", tuple(params) + base.coords) if params else base
    rename = {c: c for c in base.coords}
    deep = order + 1
    f1 = flow_of(g1, ambient, rename, deep)
    f2 = flow_of(g2, ambient, rename, deep)
    logs = vf_log(f2.compose(f1))

    from .cocycle import _field_key  # pivot order shared with extraction

    basis_sparse = [field_to_sparse(a) for a in data.gplus_basis]
    basis_pivots = [max(sparse, key=_field_key) for sparse in basis_sparse]
    coeff_polys: list[list[MPoly]] = [[] for _ in range(k)]
    param_vars = tuple(params)
    for m in range(order + 1):
        field = logs[m] if m < len(logs) else PolyVectorField.zero(ambient)
        cells: dict[tuple, MPoly] = {}
        for j, b in enumerate(base.coords):
            comp = field.component(rename[b])
            for exps, poly in comp.collect(base.coords).items():
                cells[(j, exps)] = poly.transplant(param_vars)
        for c in ambient.coords:
            if c not in base.coords and not field.component(c).is_zero():
                raise NotInSpanError("composed flow moves a parameter variable")
        for i in range(k):
            ci = cells.get(basis_pivots[i], MPoly.zero(param_vars))
            coeff_polys[i].append(ci)
        rebuilt: dict[tuple, MPoly] = {}
        for i in range(k):
            ci = coeff_polys[i][m]
            if ci.is_zero():
                continue
            for col, val in basis_sparse[i].items():
                prev = rebuilt.get(col, MPoly.zero(param_vars))
                rebuilt[col] = prev + ci.scale(val)
        keys = set(rebuilt) | set(cells)
        for col in keys:
            lhs = cells.get(col, MPoly.zero(param_vars))
            rhs = rebuilt.get(col, MPoly.zero(param_vars))
            if lhs != rhs:
                raise NotInSpanError("composed flow's generator leaves the span of gplus")
    coeffs = [HSeries(param_vars, order, coeff_polys[i]) for i in range(k)]
    return GroupElement(data, coeffs)


# -- evaluation, the circle operation, and the R-matrix ------------------------


def eval_dual(data: LieCocycleData, order: int, vars=None, rename: dict[str, str] | None = None) -> DualVector:
    """The evaluation map x -> V*: component i is the basis function w_i(x)."""
    if vars is None:
        vars = data.space.coords
    comps = [
        HSeries.from_poly(w.transplant(vars, rename), order) for w in data.v_basis
    ]
    return DualVector(data, comps)


def circ_diffeo(data: LieCocycleData, order: int) -> FormalDiffeo:
    """The circle operation as a map of X^2: slot 2 carries x o y, slot 1 is fixed."""
    square = data.space.power(2)
    eps = eval_dual(data, order, vars=square.coords, rename=square.slot_map(1))
    b = pi_inverse(-eps)
    fields = _realized_generator(data, b.coeffs, square, square.slot_map(2))
    if not fields:
        return FormalDiffeo.identity(square, order)
    return vf_exp_series(fields, order)


def circ(data: LieCocycleData, order: int) -> tuple[HSeries, ...]:
    """x o y as a coordinate series vector (one entry per coordinate of X)."""
    flow = circ_diffeo(data, order)
    square = flow.space
    return tuple(flow.image(c) for c in square.slot_coords(2))


def circ_left_inverse(data: LieCocycleData, order: int) -> tuple[HSeries, ...]:
    """Solve y o z = x for z, order by order in h.

    Here (y o) means u -> y o u; since y o u = u + O(h), the fixed-point
    update z <- z - (y o z - x) gains one exact h-order per sweep.
    """
    flow = circ_diffeo(data, order)
    square = flow.space
    xs = square.slot_coords(1)
    ys = square.slot_coords(2)
    x_series = [HSeries.coordinate(square.coords, order, c) for c in xs]
    y_series = [HSeries.coordinate(square.coords, order, c) for c in ys]
    circ_ys = [flow.image(c) for c in ys]
    z = list(x_series)
    for _ in range(order):
        sub = {x: y for x, y in zip(xs, y_series)}
        sub.update({y: zc for y, zc in zip(ys, z)})
        y_circ_z = [img.substitute(sub) for img in circ_ys]
        z = [zc - (w - xc) for zc, w, xc in zip(z, y_circ_z, x_series)]
    sub = {x: y for x, y in zip(xs, y_series)}
    sub.update({y: zc for y, zc in zip(ys, z)})
    final = [img.substitute(sub) for img in circ_ys]
    if final != x_series:
        raise QuantizationError("left inverse of the circle action failed to close")
    return tuple(z)


def quantize(r: PolyVectorField, order: int) -> FormalDiffeo:
    """Quantize a classical r-matrix to a quantum R-matrix of the given order.

    The result is verified before it is returned: its classical limit equals
    the input exactly and it passes the quantum Yang-Baxter and unitarity
    checks modulo h^(order+1).  A verification failure signals a bug, not a
    property of the input.
    """
    if order < 1:
        raise ValueError("quantization order must be at least 1")
    residual = check_classical(r)
    if not residual.passes:
        raise NotClassicalError("cannot quantize: input is not a classical r-matrix", residual)
    data = extract(r, check=False)
    square = data.space.power(2)
    if square != r.space:
        raise SpaceMismatchError("extracted base space does not match the input space")
    flow = circ_diffeo(data, order)
    xs = square.slot_coords(1)
    ys = square.slot_coords(2)
    z = circ_left_inverse(data, order)
    sub = {x: zc for x, zc in zip(xs, z)}
    sub.update({y: HSeries.coordinate(square.coords, order, y) for y in ys})
    second = [flow.image(y).substitute(sub) for y in ys]
    R = FormalDiffeo(square, order, list(z) + second)

    if R.classical_limit() != r:
        raise QuantizationError("assembled R-matrix has the wrong classical limit")
    residual_q = verify_quantum(R)
    if not residual_q.passes:
        raise QuantizationError("assembled R-matrix fails the quantum checks")
    return R
