"""Formal diffeomorphisms: identity-plus-O(h) coordinate maps.

A ``FormalDiffeo`` stores, for every coordinate, its image as a truncated
series whose h^0 part is the coordinate itself.  Composition realizes the
induced algebra endomorphism of C[X^k][[h]] at the point level; the two views
agree because substitution is a ring homomorphism.

This module also hosts the quantum Yang-Baxter and unitarity verifiers and
the classical limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import LeadingTermError, OrderMismatchError, SpaceMismatchError
from .poly import MPoly
from .series import HSeries, poly_substitute
from .spaces import Space
from .vectorfields import PolyVectorField


class FormalDiffeo:
    """A formal diffeomorphism of a space, as a coordinate point map."""

    __slots__ = ("space", "order", "images")

    def __init__(self, space: Space, order: int, images: Sequence[HSeries]):
        images = tuple(
            img if img.vars == space.coords else img.embed(space.coords) for img in images
        )
        if len(images) != space.dim:
            raise ValueError(f"expected {space.dim} images, got {len(images)}")
        for img, coord in zip(images, space.coords):
            if img.order != order:
                raise OrderMismatchError(f"image of {coord} has order {img.order}, expected {order}")
            if img.coefficient(0) != MPoly.variable(space.coords, coord):
                raise LeadingTermError(f"image of {coord} is not the coordinate modulo h")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("FormalDiffeo is immutable")

    @classmethod
    def identity(cls, space: Space, order: int) -> "FormalDiffeo":
        return cls(space, order, [HSeries.coordinate(space.coords, order, c) for c in space.coords])

    @classmethod
    def from_dict(cls, space: Space, order: int, images: Mapping[str, HSeries]) -> "FormalDiffeo":
        unknown = set(images) - set(space.coords)
        if unknown:
            raise SpaceMismatchError(f"images for unknown coordinates {sorted(unknown)}")
        full = [images.get(c, HSeries.coordinate(space.coords, order, c)) for c in space.coords]
        return cls(space, order, full)

    def image(self, coord: str) -> HSeries:
        return self.images[self.space.coords.index(coord)]

    def image_map(self) -> dict[str, HSeries]:
        return dict(zip(self.space.coords, self.images))

    def is_identity(self) -> bool:
        return self == FormalDiffeo.identity(self.space, self.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalDiffeo):
            return NotImplemented
        return self.space == other.space and self.order == other.order and self.images == other.images

    def __hash__(self):
        return hash((self.space, self.order, self.images))

    # -- group structure -----------------------------------------------------

    def compose(self, other: "FormalDiffeo") -> "FormalDiffeo":
        """The point map self after other."""
        if self.space != other.space:
            raise SpaceMismatchError(f"maps live on {self.space.name} and {other.space.name}")
        if self.order != other.order:
            raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")
        images = other.image_map()
        powers: dict = {}
        return FormalDiffeo(
            self.space, self.order, [img.substitute(images, _powers=powers) for img in self.images]
        )

    def inverse(self) -> "FormalDiffeo":
        """Two-sided compositional inverse, solved order by order."""
        inv = FormalDiffeo.identity(self.space, self.order)
        ident = inv
        for _ in range(self.order):
            err = self.compose(inv)
            if err == ident:
                break
            corrected = [
                z - (e - i) for z, e, i in zip(inv.images, err.images, ident.images)
            ]
            inv = FormalDiffeo(self.space, self.order, corrected)
        assert self.compose(inv) == ident, "inverse solve failed"
        return inv

    def apply(self, poly: MPoly) -> HSeries:
        """The induced algebra homomorphism C[X] -> C[X][[h]] on a polynomial."""
        poly = poly if poly.vars == self.space.coords else poly.embed(self.space.coords)
        return poly_substitute(poly, self.image_map())

    # -- slot plumbing ---------------------------------------------------------

    def lift(self, pair: tuple[int, int]) -> "FormalDiffeo":
        """Act by a two-slot map on a slot pair of X^3, identity elsewhere."""
        base = self.space.require_product(2)
        i, j = pair
        if i == j or not {i, j} <= {1, 2, 3}:
            raise ValueError(f"invalid slot pair {pair}")
        cube = base.power(3)
        rename = {}
        for c in base.coords:
            rename[self.space.slot_map(1)[c]] = cube.slot_map(i)[c]
            rename[self.space.slot_map(2)[c]] = cube.slot_map(j)[c]
        out: dict[str, HSeries] = {}
        for img, coord in zip(self.images, self.space.coords):
            out[rename[coord]] = img.transplant(cube.coords, rename)
        return FormalDiffeo.from_dict(cube, self.order, out)

    def swap(self) -> "FormalDiffeo":
        """Conjugate a two-slot map by the flip of X^2."""
        flip = self.space.flip_map()
        out: dict[str, HSeries] = {}
        for img, coord in zip(self.images, self.space.coords):
            out[flip[coord]] = img.transplant(self.space.coords, flip)
        return FormalDiffeo.from_dict(self.space, self.order, out)

    def truncate(self, order: int) -> "FormalDiffeo":
        return FormalDiffeo(self.space, order, [img.truncate(order) for img in self.images])

    def classical_limit(self) -> PolyVectorField:
        """The h^1 coefficient of the point map, as a vector field."""
        if self.order < 1:
            raise OrderMismatchError("classical limit needs truncation order at least 1")
        return PolyVectorField(self.space, [img.coefficient(1) for img in self.images])

    def __str__(self) -> str:
        rows = ", ".join(f"{c} -> {img}" for c, img in zip(self.space.coords, self.images))
        return f"FormalDiffeo[{self.space.name}; N={self.order}]({rows})"

    __repr__ = __str__


@dataclass(frozen=True)
class QuantumResidual:
    """Residuals of the quantum Yang-Baxter and unitarity conditions.

    ``qybe`` maps each X^3 coordinate to the difference of the two triple
    compositions; ``unitarity`` maps each X^2 coordinate to the composition
    with the swapped map minus the identity.  A check passes when every entry
    vanishes identically modulo h^(N+1).
    """

    qybe: dict[str, HSeries] | None = None
    unitarity: dict[str, HSeries] | None = None

    @property
    def qybe_passes(self) -> bool:
        return self.qybe is None or all(s.is_zero() for s in self.qybe.values())

    @property
    def unitarity_passes(self) -> bool:
        return self.unitarity is None or all(s.is_zero() for s in self.unitarity.values())

    @property
    def passes(self) -> bool:
        return self.qybe_passes and self.unitarity_passes

    def merge(self, other: "QuantumResidual") -> "QuantumResidual":
        return QuantumResidual(
            qybe=self.qybe if self.qybe is not None else other.qybe,
            unitarity=self.unitarity if self.unitarity is not None else other.unitarity,
        )


def check_qybe(R: FormalDiffeo) -> QuantumResidual:
    """Residual of R12 R13 R23 = R23 R13 R12 on X^3, coordinate by coordinate.

    Compositions are taken left to right as point maps; reading them in the
    opposite order swaps the two sides, so the vanishing condition is the
    same either way.
    """
    R.space.require_product(2)
    r12 = R.lift((1, 2))
    r13 = R.lift((1, 3))
    r23 = R.lift((2, 3))
    lhs = r12.compose(r13).compose(r23)
    rhs = r23.compose(r13).compose(r12)
    diff = {
        c: a - b for c, a, b in zip(lhs.space.coords, lhs.images, rhs.images)
    }
    return QuantumResidual(qybe=diff)


def check_unitarity_q(R: FormalDiffeo) -> QuantumResidual:
    """Residual of R composed with its swap minus the identity."""
    R.space.require_product(2)
    ident = FormalDiffeo.identity(R.space, R.order)
    prod = R.compose(R.swap())
    diff = {c: a - b for c, a, b in zip(R.space.coords, prod.images, ident.images)}
    return QuantumResidual(unitarity=diff)


def verify_quantum(R: FormalDiffeo) -> QuantumResidual:
    """Both quantum checks at once."""
    return check_qybe(R).merge(check_unitarity_q(R))


def classical_limit(R: FormalDiffeo) -> PolyVectorField:
    return R.classical_limit()


def fd_compose(a: FormalDiffeo, b: FormalDiffeo) -> FormalDiffeo:
    return a.compose(b)


def fd_inverse(a: FormalDiffeo) -> FormalDiffeo:
    return a.inverse()


def fd_lift(a: FormalDiffeo, pair: tuple[int, int]) -> FormalDiffeo:
    return a.lift(pair)


def fd_swap(a: FormalDiffeo) -> FormalDiffeo:
    return a.swap()
