"""Truncated power series in the deformation parameter h.

An ``HSeries`` of order N stores N+1 polynomial coefficients, one per power
of h, and all arithmetic silently discards anything of h-degree above N.
Binary operations require matching truncation orders; there is no implicit
re-truncation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import LeadingTermError, OrderMismatchError, SubstitutionError
from .poly import MPoly


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an integer or Fraction, got {value!r}")


class HSeries:
    """A polynomial-coefficient power series in h, exact modulo h^(N+1)."""

    __slots__ = ("vars", "order", "coeffs")

    def __init__(self, vars, order: int, coeffs=None):
        vars = tuple(vars)
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        if coeffs is None:
            coeffs = [MPoly.zero(vars)] * (order + 1)
        else:
            coeffs = [c if c.vars == vars else c.embed(vars) for c in coeffs]
            if len(coeffs) != order + 1:
                raise ValueError(f"expected {order + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("HSeries is immutable")

    @classmethod
    def _raw(cls, vars, order, coeffs: tuple) -> "HSeries":
        """Trusted constructor: coefficients already share ``vars`` and length."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "vars", vars)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars, order: int) -> "HSeries":
        return cls(vars, order)

    @classmethod
    def const(cls, vars, order: int, value) -> "HSeries":
        return cls.from_poly(MPoly.const(vars, value), order)

    @classmethod
    def from_poly(cls, poly: MPoly, order: int) -> "HSeries":
        coeffs = [poly] + [MPoly.zero(poly.vars)] * order
        return cls(poly.vars, order, coeffs)

    @classmethod
    def coordinate(cls, vars, order: int, name: str) -> "HSeries":
        return cls.from_poly(MPoly.variable(vars, name), order)

    @classmethod
    def hbar(cls, vars, order: int, power: int = 1) -> "HSeries":
        """The monomial h^power as a series."""
        return cls.const(vars, order, 1).shift(power)

    # -- views ---------------------------------------------------------------

    def coefficient(self, m: int) -> MPoly:
        """Coefficient of h^m (zero beyond the truncation order)."""
        if m > self.order:
            return MPoly.zero(self.vars)
        return self.coeffs[m]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HSeries):
            return NotImplemented
        return self.vars == other.vars and self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.vars, self.order, self.coeffs))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "HSeries") -> tuple["HSeries", "HSeries"]:
        if self.order != other.order:
            raise OrderMismatchError(f"series orders differ: {self.order} vs {other.order}")
        if self.vars == other.vars:
            return self, other
        union = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.embed(union), other.embed(union)

    def _coerce(self, other) -> "HSeries | None":
        if isinstance(other, HSeries):
            return other
        if isinstance(other, MPoly):
            return HSeries.from_poly(other, self.order)
        if isinstance(other, (int, Fraction)):
            return HSeries.const(self.vars, self.order, other)
        return None

    def __add__(self, other) -> "HSeries":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._check(other)
        return HSeries._raw(a.vars, a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "HSeries":
        return HSeries._raw(self.vars, self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "HSeries":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "HSeries":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "HSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._check(other)
        n = a.order
        out = [MPoly.zero(a.vars) for _ in range(n + 1)]
        for i, ci in enumerate(a.coeffs):
            if ci.is_zero():
                continue
            for j in range(n + 1 - i):
                cj = b.coeffs[j]
                if not cj.is_zero():
                    out[i + j] = out[i + j] + ci * cj
        return HSeries._raw(a.vars, n, tuple(out))

    def __rmul__(self, other) -> "HSeries":
        if isinstance(other, (int, Fraction, MPoly)):
            return self * other
        return NotImplemented

    def scale(self, value) -> "HSeries":
        value = _as_fraction(value)
        return HSeries._raw(self.vars, self.order, tuple(c.scale(value) for c in self.coeffs))

    def shift(self, k: int) -> "HSeries":
        """Multiply by h^k, truncating at the order."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        zero = MPoly.zero(self.vars)
        coeffs = [zero] * min(k, self.order + 1) + list(self.coeffs[: self.order + 1 - k])
        return HSeries._raw(self.vars, self.order, tuple(coeffs))

    def __pow__(self, n: int) -> "HSeries":
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {n}")
        result = HSeries.const(self.vars, self.order, 1)
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> "HSeries":
        """Multiplicative inverse of a series with constant term 1.

        Only geometric-series inversion is supported: the h^0 coefficient
        must be the constant polynomial 1.
        """
        if self.coeffs[0] != MPoly.const(self.vars, 1):
            raise LeadingTermError(f"cannot invert series with leading coefficient {self.coeffs[0]}")
        n = self.order
        out = [MPoly.const(self.vars, 1)]
        for m in range(1, n + 1):
            acc = MPoly.zero(self.vars)
            for k in range(1, m + 1):
                if not self.coeffs[k].is_zero():
                    acc = acc + self.coeffs[k] * out[m - k]
            out.append(-acc)
        return HSeries(self.vars, n, out)

    def pow_rational(self, p) -> "HSeries":
        """Binomial series (1 + u)^p for rational p, where u = self - 1 is O(h)."""
        p = _as_fraction(p)
        if self.coeffs[0] != MPoly.const(self.vars, 1):
            raise LeadingTermError(f"cannot take rational power of series with leading coefficient {self.coeffs[0]}")
        u = self - 1
        result = HSeries.const(self.vars, self.order, 1)
        upow = HSeries.const(self.vars, self.order, 1)
        binom = Fraction(1)
        for k in range(1, self.order + 1):
            binom = binom * (p - (k - 1)) / k
            upow = upow * u
            if binom and not upow.is_zero():
                result = result + upow.scale(binom)
        return result

    # -- reshaping -----------------------------------------------------------

    def truncate(self, order: int) -> "HSeries":
        if order > self.order:
            raise OrderMismatchError(f"cannot extend order {self.order} series to {order}")
        return HSeries(self.vars, order, self.coeffs[: order + 1])

    def rescale_hbar(self, factor) -> "HSeries":
        """Substitute h -> factor*h: the h^m coefficient picks up factor^m."""
        factor = _as_fraction(factor)
        scale = Fraction(1)
        out = []
        for c in self.coeffs:
            out.append(c.scale(scale))
            scale *= factor
        return HSeries(self.vars, self.order, out)

    def embed(self, new_vars) -> "HSeries":
        return HSeries(new_vars, self.order, [c.embed(new_vars) for c in self.coeffs])

    def transplant(self, new_vars, mapping: Mapping[str, str] | None = None) -> "HSeries":
        return HSeries(new_vars, self.order, [c.transplant(new_vars, mapping) for c in self.coeffs])

    def substitute(self, images: Mapping[str, "HSeries"], _powers: dict | None = None) -> "HSeries":
        """Substitute series for the variables in every coefficient.

        The h-grading composes: the h^m coefficient contributes at h-degree
        m plus whatever the substituted images carry.
        """
        result = None
        for m, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            part = poly_substitute(c, images, _powers=_powers).shift(m)
            result = part if result is None else result + part
        if result is None:
            some = next(iter(images.values()))
            return HSeries.zero(some.vars, self.order)
        return result

    # -- display ---------------------------------------------------------------

    def __str__(self) -> str:
        parts = []
        for m, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            body = str(c)
            if " " in body or body.startswith("-"):
                body = f"({body})"
            if m == 0:
                parts.append(body)
            elif m == 1:
                parts.append(f"h*{body}")
            else:
                parts.append(f"h^{m}*{body}")
        inner = " + ".join(parts) if parts else "0"
        return f"{inner} + O(h^{self.order + 1})"

    def __repr__(self) -> str:
        return f"HSeries({self})"


def poly_substitute(poly: MPoly, images: Mapping[str, HSeries], _powers: dict | None = None) -> HSeries:
    """Evaluate a polynomial at series arguments.

    Every variable occurring in ``poly`` must have an image; all images must
    share a variable list and truncation order.  The result is the exact
    composed series modulo h^(N+1), and the map F -> F(images) is an algebra
    homomorphism.  ``_powers`` lets one composition share the image-power
    cache across coordinates.
    """
    target_vars = None
    order = None
    for img in images.values():
        if target_vars is None:
            target_vars, order = img.vars, img.order
        else:
            if img.vars != target_vars:
                raise SubstitutionError("substitution images use differing variable lists")
            if img.order != order:
                raise OrderMismatchError("substitution images have differing truncation orders")
    if target_vars is None:
        raise SubstitutionError("no substitution images given")
    result = HSeries.zero(target_vars, order)
    powers: dict[str, list[HSeries]] = _powers if _powers is not None else {}
    one = HSeries.const(target_vars, order, 1)
    for exps, coeff in poly.terms.items():
        term = one
        for var, e in zip(poly.vars, exps):
            if not e:
                continue
            if var not in images:
                raise SubstitutionError(f"no image for variable {var!r}")
            cache = powers.setdefault(var, [one])
            while len(cache) <= e:
                cache.append(cache[-1] * images[var])
            term = term * cache[e]
        result = result + term.scale(coeff)
    return result
