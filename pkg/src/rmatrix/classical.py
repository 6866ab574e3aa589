"""Deciding whether a vector field on X^2 is a geometric classical r-matrix.

The two defining conditions are the classical Yang-Baxter equation on X^3,

    [r12, r13] + [r12, r23] + [r13, r23] = 0,

and unitarity r + r21 = 0 on X^2.  Residuals are returned in full so that a
failure can be reported down to the offending monomial.
"""

from __future__ import annotations

from dataclasses import dataclass

from .vectorfields import PolyVectorField


@dataclass(frozen=True)
class ClassicalResidual:
    """Exact residuals of the two classical conditions; passing means both vanish."""

    cybe: PolyVectorField
    unitarity: PolyVectorField

    @property
    def cybe_passes(self) -> bool:
        return self.cybe.is_zero()

    @property
    def unitarity_passes(self) -> bool:
        return self.unitarity.is_zero()

    @property
    def passes(self) -> bool:
        return self.cybe_passes and self.unitarity_passes


def check_classical(r: PolyVectorField) -> ClassicalResidual:
    """Compute both residuals for a vector field on a two-slot product."""
    r.space.require_product(2)
    r12 = r.place((1, 2))
    r13 = r.place((1, 3))
    r23 = r.place((2, 3))
    cybe = r12.bracket(r13) + r12.bracket(r23) + r13.bracket(r23)
    unitarity = r + r.swap()
    return ClassicalResidual(cybe=cybe, unitarity=unitarity)


def is_geometric_classical_rmatrix(r: PolyVectorField) -> tuple[bool, ClassicalResidual]:
    residual = check_classical(r)
    return residual.passes, residual
