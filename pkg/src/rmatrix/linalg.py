"""Exact linear algebra over the rationals.

Two flavours are needed: dense k x k matrices (cocycle inversion, small
products) and sparse vectors keyed by arbitrary hashable columns (reducing
spanning sets of polynomials or vector fields to bases).  Everything is
``Fraction``-exact and deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Sequence

from .errors import CocycleNotBijectiveError, NotInSpanError

Matrix = list[list[Fraction]]
SparseVec = dict[Hashable, Fraction]


def identity_matrix(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, mid, m = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        for k in range(mid):
            aik = a[i][k]
            if aik:
                row = b[k]
                for j in range(m):
                    if row[j]:
                        out[i][j] += aik * row[j]
    return out


def mat_vec(a: Matrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def invert_matrix(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises if singular."""
    n = len(a)
    work = [list(map(Fraction, row)) + list(ident_row) for row, ident_row in zip(a, identity_matrix(n))]
    col = 0
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise CocycleNotBijectiveError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = Fraction(1) / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


class SparseRREF:
    """Reduced row echelon basis of a growing family of sparse vectors.

    Rows are normalized so each has a distinct pivot column with entry 1 and
    zeros in every other row at that column.  ``key`` orders the columns;
    the pivot of a row is its largest column under that order, which makes
    the resulting basis canonical for a fixed insertion sequence.
    """

    def __init__(self, key: Callable[[Hashable], tuple]):
        self.key = key
        self.rows: list[SparseVec] = []
        self.pivots: list[Hashable] = []

    def _reduce(self, vec: SparseVec) -> tuple[SparseVec, list[Fraction]]:
        """Subtract basis rows to eliminate their pivots; return coefficients used."""
        vec = dict(vec)
        coeffs = [Fraction(0)] * len(self.rows)
        for i, (row, piv) in enumerate(zip(self.rows, self.pivots)):
            c = vec.get(piv)
            if c:
                coeffs[i] = c
                for col, val in row.items():
                    new = vec.get(col, Fraction(0)) - c * val
                    if new:
                        vec[col] = new
                    else:
                        vec.pop(col, None)
        return vec, coeffs

    def insert(self, vec: SparseVec) -> bool:
        """Add a vector to the span; returns True if it enlarged the basis."""
        rem, _ = self._reduce(vec)
        if not rem:
            return False
        piv = max(rem, key=self.key)
        inv = Fraction(1) / rem[piv]
        rem = {col: val * inv for col, val in rem.items()}
        for row in self.rows:
            c = row.get(piv)
            if c:
                for col, val in rem.items():
                    new = row.get(col, Fraction(0)) - c * val
                    if new:
                        row[col] = new
                    else:
                        row.pop(col, None)
        self.rows.append(rem)
        self.pivots.append(piv)
        order = sorted(range(len(self.rows)), key=lambda i: self.key(self.pivots[i]), reverse=True)
        self.rows = [self.rows[i] for i in order]
        self.pivots = [self.pivots[i] for i in order]
        return True

    def coefficients(self, vec: SparseVec, what: str = "vector") -> list[Fraction]:
        """Express a vector in the basis; raises ``NotInSpanError`` if impossible."""
        rem, coeffs = self._reduce(vec)
        if rem:
            col = max(rem, key=self.key)
            raise NotInSpanError(f"{what} is not in the extracted span (stray column {col})")
        return coeffs

    def __len__(self) -> int:
        return len(self.rows)
