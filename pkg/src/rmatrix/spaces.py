"""Affine spaces, their products, and slot bookkeeping.

A product space X^k carries k disjoint renamed copies of the base
coordinates, tagged "name@slot" (slots are 1-based).  Keeping the tagging in
the coordinate names makes slot placements pure renamings and rules out
variable capture.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SpaceMismatchError

SLOT_SEP = "@"


def slot_name(coord: str, slot: int) -> str:
    return f"{coord}{SLOT_SEP}{slot}"


@dataclass(frozen=True)
class Space:
    """An affine space with named coordinates, possibly a product X^k."""

    name: str = field(compare=False)
    coords: tuple[str, ...]
    base: "Space | None" = None
    slots: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if len(set(self.coords)) != len(self.coords):
            raise ValueError(f"duplicate coordinates in {self.coords}")
        if self.base is None and any(SLOT_SEP in c for c in self.coords):
            raise ValueError(f"coordinate names may not contain {SLOT_SEP!r}")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def power(self, k: int) -> "Space":
        """The k-fold product of this (non-product) space."""
        if self.base is not None:
            raise SpaceMismatchError("nested products are not supported")
        if k < 2:
            raise ValueError("product power must be at least 2")
        coords = tuple(slot_name(c, s) for s in range(1, k + 1) for c in self.coords)
        return Space(f"{self.name}^{k}", coords, base=self, slots=k)

    def require_product(self, k: int | None = None) -> "Space":
        """Assert this is a product space (of ``k`` slots if given); return the base."""
        if self.base is None:
            raise SpaceMismatchError(f"{self.name} is not a product space")
        if k is not None and self.slots != k:
            raise SpaceMismatchError(f"{self.name} has {self.slots} slots, expected {k}")
        return self.base

    def slot_coords(self, slot: int) -> tuple[str, ...]:
        base = self.require_product()
        if not 1 <= slot <= self.slots:
            raise ValueError(f"slot {slot} out of range for {self.name}")
        return tuple(slot_name(c, slot) for c in base.coords)

    def slot_map(self, slot: int) -> dict[str, str]:
        """Base coordinate -> this product's coordinate in the given slot."""
        base = self.require_product()
        return {c: slot_name(c, slot) for c in base.coords}

    def flip_map(self) -> dict[str, str]:
        """The coordinate swap of a two-slot product."""
        base = self.require_product(2)
        out = {}
        for c in base.coords:
            out[slot_name(c, 1)] = slot_name(c, 2)
            out[slot_name(c, 2)] = slot_name(c, 1)
        return out

    def __str__(self) -> str:
        return f"{self.name}({', '.join(self.coords)})"
