"""Sparse multivariate polynomials over exact rationals.

Terms are stored as a map from exponent vectors (one nonnegative integer per
declared variable) to nonzero ``Fraction`` coefficients, so equality is
structural and all arithmetic is exact.  The declared variable list fixes the
term order used for display and serialization: graded lexicographic, highest
first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import SubstitutionError

Exponents = tuple[int, ...]

_ZERO = Fraction(0)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an integer or Fraction, got {value!r}")


def grlex_key(exps: Exponents) -> tuple:
    """Sort key for graded lexicographic order on exponent vectors."""
    return (sum(exps), exps)


class MPoly:
    """A multivariate polynomial with ``Fraction`` coefficients.

    Instances are immutable by convention; all operations return new
    polynomials.  Binary operations align operands over the union of their
    variable lists (left operand's order first).
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[str], terms: Mapping[Exponents, Fraction] | None = None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"duplicate variable names in {vars}")
        clean: dict[Exponents, Fraction] = {}
        if terms:
            n = len(vars)
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise ValueError(f"exponent vector {exps} does not match variables {vars}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                coeff = _as_fraction(coeff)
                if coeff:
                    clean[exps] = coeff
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    @classmethod
    def _raw(cls, vars: tuple[str, ...], terms: dict[Exponents, Fraction]) -> "MPoly":
        """Trusted constructor for internally produced, already-canonical terms."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "vars", vars)
        object.__setattr__(obj, "terms", terms)
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars: Iterable[str]) -> "MPoly":
        return cls(vars)

    @classmethod
    def const(cls, vars: Iterable[str], value) -> "MPoly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): _as_fraction(value)})

    @classmethod
    def variable(cls, vars: Iterable[str], name: str) -> "MPoly":
        vars = tuple(vars)
        if name not in vars:
            raise ValueError(f"{name!r} is not among variables {vars}")
        exps = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, vars: Iterable[str], exps: Exponents, coeff=1) -> "MPoly":
        return cls(vars, {tuple(exps): _as_fraction(coeff)})

    # -- predicates and views ---------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial (the coefficient of the empty monomial)."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * len(self.vars), _ZERO)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in canonical (graded lexicographic, descending) order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exponents, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    # -- arithmetic --------------------------------------------------------

    def _aligned(self, other: "MPoly") -> tuple["MPoly", "MPoly"]:
        if self.vars == other.vars:
            return self, other
        union = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.embed(union), other.embed(union)

    def _coerce(self, other) -> "MPoly | None":
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(self.vars, other)
        return None

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._aligned(other)
        terms = dict(a.terms)
        for exps, coeff in b.terms.items():
            new = terms.get(exps, _ZERO) + coeff
            if new:
                terms[exps] = new
            else:
                terms.pop(exps, None)
        return MPoly._raw(a.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self._aligned(other)
        terms: dict[Exponents, Fraction] = {}
        get = terms.get
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                new = get(key, _ZERO) + c1 * c2
                if new:
                    terms[key] = new
                else:
                    terms.pop(key, None)
        return MPoly._raw(a.vars, terms)

    def __rmul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, value) -> "MPoly":
        value = _as_fraction(value)
        if not value:
            return MPoly(self.vars)
        return MPoly._raw(self.vars, {e: c * value for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "MPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {n}")
        result = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- calculus and substitution ----------------------------------------

    def diff(self, var: str) -> "MPoly":
        """Partial derivative with respect to ``var``."""
        i = self.vars.index(var)
        terms: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            if e:
                key = exps[:i] + (e - 1,) + exps[i + 1 :]
                terms[key] = terms.get(key, _ZERO) + coeff * e
        return MPoly._raw(self.vars, terms)

    def compose(self, images: Mapping[str, "MPoly"]) -> "MPoly":
        """Substitute polynomials for variables.

        Every variable occurring in ``self`` must have an image; all images
        must share one variable list, which becomes the result's.
        """
        target: tuple[str, ...] | None = None
        for img in images.values():
            if target is None:
                target = img.vars
            elif img.vars != target:
                raise SubstitutionError("substitution images use differing variable lists")
        if target is None:
            target = ()
        result = MPoly.zero(target)
        powers: dict[str, list[MPoly]] = {}
        for exps, coeff in self.terms.items():
            term = MPoly.const(target, coeff)
            for var, e in zip(self.vars, exps):
                if not e:
                    continue
                if var not in images:
                    raise SubstitutionError(f"no image for variable {var!r}")
                cache = powers.setdefault(var, [MPoly.const(target, 1)])
                while len(cache) <= e:
                    cache.append(cache[-1] * images[var])
                term = term * cache[e]
            result = result + term
        return result

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        """Evaluate at a rational point; every occurring variable needs a value."""
        total = _ZERO
        for exps, coeff in self.terms.items():
            value = coeff
            for var, e in zip(self.vars, exps):
                if e:
                    if var not in assignment:
                        raise SubstitutionError(f"no value for variable {var!r}")
                    value *= _as_fraction(assignment[var]) ** e
            total += value
        return total

    # -- variable management ----------------------------------------------

    def transplant(self, new_vars: Iterable[str], mapping: Mapping[str, str] | None = None) -> "MPoly":
        """Re-express over ``new_vars``, optionally renaming variables.

        ``mapping`` sends old names to new ones; unmapped names keep theirs.
        Any variable actually occurring must land inside ``new_vars``.
        """
        new_vars = tuple(new_vars)
        pos = {v: i for i, v in enumerate(new_vars)}
        width = len(new_vars)
        terms: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            acc = [0] * width
            for var, e in zip(self.vars, exps):
                if not e:
                    continue
                name = mapping.get(var, var) if mapping else var
                if name not in pos:
                    raise SubstitutionError(f"variable {var!r} maps to {name!r}, not among {new_vars}")
                acc[pos[name]] += e
            key = tuple(acc)
            new = terms.get(key, _ZERO) + coeff
            if new:
                terms[key] = new
            else:
                terms.pop(key, None)
        return MPoly._raw(new_vars, terms)

    def embed(self, new_vars: Iterable[str]) -> "MPoly":
        """Extend (or reorder) the variable list without renaming."""
        return self.transplant(new_vars)

    def collect(self, group_vars: Iterable[str]) -> dict[Exponents, "MPoly"]:
        """Group terms by their exponents in ``group_vars``.

        Returns a map from exponent vectors over ``group_vars`` to the
        coefficient polynomials in the remaining variables.
        """
        group_vars = tuple(group_vars)
        gidx = [self.vars.index(v) for v in group_vars]
        gset = set(gidx)
        ridx = [i for i in range(len(self.vars)) if i not in gset]
        rest_vars = tuple(self.vars[i] for i in ridx)
        buckets: dict[Exponents, dict[Exponents, Fraction]] = {}
        for exps, coeff in self.terms.items():
            key = tuple(exps[i] for i in gidx)
            rest = tuple(exps[i] for i in ridx)
            buckets.setdefault(key, {})[rest] = coeff
        return {key: MPoly._raw(rest_vars, inner) for key, inner in buckets.items()}

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[tuple[str, str]] = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for var, e in zip(self.vars, exps):
                if e == 1:
                    factors.append(var)
                elif e > 1:
                    factors.append(f"{var}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = mono
            else:
                body = f"{abs(coeff)}*{mono}"
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MPoly({self})"
