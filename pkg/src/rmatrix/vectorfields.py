"""Polynomial vector fields (derivations of coordinate rings).

A field assigns one polynomial component to every coordinate of its space.
Alongside the Lie-algebra operations (apply, bracket) this module provides
the slot placements used by the Yang-Baxter equations, the swap conjugation,
and the exponential/logarithm pair between fields and formal diffeomorphisms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import SpaceMismatchError
from .poly import MPoly
from .series import HSeries
from .spaces import Space


class PolyVectorField:
    """A derivation of C[X] given per-coordinate by a polynomial."""

    __slots__ = ("space", "components")

    def __init__(self, space: Space, components: Sequence[MPoly]):
        components = tuple(c if c.vars == space.coords else c.embed(space.coords) for c in components)
        if len(components) != space.dim:
            raise ValueError(f"expected {space.dim} components, got {len(components)}")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("PolyVectorField is immutable")

    @classmethod
    def zero(cls, space: Space) -> "PolyVectorField":
        return cls(space, [MPoly.zero(space.coords)] * space.dim)

    @classmethod
    def from_dict(cls, space: Space, components: Mapping[str, MPoly]) -> "PolyVectorField":
        unknown = set(components) - set(space.coords)
        if unknown:
            raise SpaceMismatchError(f"components for unknown coordinates {sorted(unknown)}")
        comps = [components.get(c, MPoly.zero(space.coords)) for c in space.coords]
        return cls(space, comps)

    def component(self, coord: str) -> MPoly:
        return self.components[self.space.coords.index(coord)]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.space == other.space and self.components == other.components

    def __hash__(self):
        return hash((self.space, self.components))

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        self._same_space(other)
        return PolyVectorField(self.space, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        return self + (-other)

    def __neg__(self) -> "PolyVectorField":
        return PolyVectorField(self.space, [-c for c in self.components])

    def scale(self, value: Fraction | int) -> "PolyVectorField":
        return PolyVectorField(self.space, [c.scale(value) for c in self.components])

    def _same_space(self, other: "PolyVectorField") -> None:
        if self.space != other.space:
            raise SpaceMismatchError(f"fields live on {self.space.name} and {other.space.name}")

    # -- derivation structure ------------------------------------------------

    def apply(self, poly: MPoly) -> MPoly:
        """Apply the derivation: sum of component_j * dF/dx_j."""
        poly = poly if poly.vars == self.space.coords else poly.embed(self.space.coords)
        out = MPoly.zero(self.space.coords)
        for comp, coord in zip(self.components, self.space.coords):
            if not comp.is_zero():
                d = poly.diff(coord)
                if not d.is_zero():
                    out = out + comp * d
        return out

    def bracket(self, other: "PolyVectorField") -> "PolyVectorField":
        """Lie bracket [v, w], with [v, w]F = v(wF) - w(vF)."""
        self._same_space(other)
        comps = [self.apply(wc) - other.apply(vc) for vc, wc in zip(self.components, other.components)]
        return PolyVectorField(self.space, comps)

    # -- slot plumbing ---------------------------------------------------------

    def place(self, pair: tuple[int, int]) -> "PolyVectorField":
        """Copy a field on X^2 onto a slot pair of X^3 (zero on the third slot)."""
        base = self.space.require_product(2)
        i, j = pair
        if i == j or not {i, j} <= {1, 2, 3}:
            raise ValueError(f"invalid slot pair {pair}")
        cube = base.power(3)
        rename = {}
        for c in base.coords:
            rename[self.space.slot_map(1)[c]] = cube.slot_map(i)[c]
            rename[self.space.slot_map(2)[c]] = cube.slot_map(j)[c]
        out: dict[str, MPoly] = {}
        for comp, coord in zip(self.components, self.space.coords):
            out[rename[coord]] = comp.transplant(cube.coords, rename)
        return PolyVectorField.from_dict(cube, out)

    def swap(self) -> "PolyVectorField":
        """Conjugate a field on X^2 by the flip (x, y) -> (y, x)."""
        flip = self.space.flip_map()
        out: dict[str, MPoly] = {}
        for comp, coord in zip(self.components, self.space.coords):
            out[flip[coord]] = comp.transplant(self.space.coords, flip)
        return PolyVectorField.from_dict(self.space, out)

    # -- exponentials ------------------------------------------------------------

    def exp(self, order: int) -> "FormalDiffeo":
        """The time-h flow as a formal diffeomorphism, truncated at the order."""
        return vf_exp_series([self], order)

    def __str__(self) -> str:
        parts = [f"({comp}) d/d{coord}" for comp, coord in zip(self.components, self.space.coords) if not comp.is_zero()]
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"PolyVectorField({self})"


def _generator_apply(fields: Sequence[PolyVectorField], series: HSeries) -> HSeries:
    """Apply h * (f_0 + h f_1 + ...) to a series, as a derivation."""
    out = HSeries.zero(series.vars, series.order)
    for m, f in enumerate(fields):
        if m + 1 > series.order:
            break
        if f.is_zero():
            continue
        applied = HSeries(series.vars, series.order, [f.apply(c) for c in series.coeffs])
        if not applied.is_zero():
            out = out + applied.shift(m + 1)
    return out


def vf_exp_series(fields: Sequence[PolyVectorField], order: int) -> "FormalDiffeo":
    """Exponentiate an h-graded series of vector fields to a formal diffeomorphism.

    ``fields[m]`` is the h^m coefficient of the generator b; the result is the
    flow exp(h*b), i.e. coordinate images sum((h*b)^k / k!) applied to each
    coordinate, truncated at the order.
    """
    from .diffeo import FormalDiffeo

    if not fields:
        space = None
    else:
        space = fields[0].space
        for f in fields[1:]:
            if f.space != space:
                raise SpaceMismatchError("generator coefficients live on different spaces")
    if space is None:
        raise ValueError("need at least one field (possibly zero) to fix the space")
    images = []
    for coord in space.coords:
        term = HSeries.coordinate(space.coords, order, coord)
        total = term
        for k in range(1, order + 1):
            term = _generator_apply(fields, term).scale(Fraction(1, k))
            if term.is_zero():
                break
            total = total + term
        images.append(total)
    return FormalDiffeo(space, order, images)


def vf_log(diffeo: "FormalDiffeo") -> list[PolyVectorField]:
    """Recover the h-graded generator of a formal diffeomorphism.

    Returns fields b_0 .. b_(N-1) with vf_exp_series(b, N) equal to the
    input modulo h^(N+1).  The triangular structure (the h^(k+1) image
    coefficient is b_k(coord) plus terms in lower b's) makes the solution
    unique, solved order by order.
    """
    space = diffeo.space
    n = diffeo.order
    fields: list[PolyVectorField] = []
    for k in range(n):
        partial = vf_exp_series(fields, n) if fields else None
        comps = []
        for idx, coord in enumerate(space.coords):
            want = diffeo.images[idx].coefficient(k + 1)
            have = partial.images[idx].coefficient(k + 1) if partial else MPoly.zero(space.coords)
            comps.append(want - have)
        fields.append(PolyVectorField(space, comps))
    if fields:
        assert vf_exp_series(fields, n) == diffeo, "generator recovery failed to reproduce the map"
    return fields


def vf_apply(v: PolyVectorField, poly: MPoly) -> MPoly:
    return v.apply(poly)


def vf_bracket(v: PolyVectorField, w: PolyVectorField) -> PolyVectorField:
    return v.bracket(w)


def vf_place(v: PolyVectorField, pair: tuple[int, int]) -> PolyVectorField:
    return v.place(pair)


def vf_swap(v: PolyVectorField) -> PolyVectorField:
    return v.swap()


def vf_exp(v: PolyVectorField, order: int) -> "FormalDiffeo":
    return v.exp(order)
