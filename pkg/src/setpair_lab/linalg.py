"""Exact linear algebra over the rationals.

Matrices are lists of rows of ``Fraction``. Everything here is plain
Gauss-Jordan elimination; sizes stay in the tens so there is no need for
fraction-free tricks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import PreconditionError, SingularMatrixError

Vector = tuple[Fraction, ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, strings or Fractions")
    return Fraction(x)


def as_vector(v: Iterable) -> Vector:
    return tuple(as_fraction(x) for x in v)


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        row = m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> int:
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def det(square: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(square)
    m = [list(map(as_fraction, r)) for r in square]
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def inverse(square: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(square)
    aug = [list(map(as_fraction, r)) + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(square)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red]


def solve_combination(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    """Coefficients c with sum_i c_i * basis[i] == v; raises if v is outside the span."""
    k = len(basis)
    n = len(v)
    # columns of the system are the basis vectors
    aug = [[basis[i][r] for i in range(k)] + [v[r]] for r in range(n)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        raise PreconditionError("vector is not in the span")
    c = [Fraction(0)] * k
    for row, p in zip(red, pivots):
        c[p] = row[k]
    return tuple(c)


def mat_vec(cols_or_rows: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    """Row-matrix times column vector."""
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in cols_or_rows)


def random_matrix(rows: int, cols: int, rng: random.Random, spread: int = 5) -> list[list[Fraction]]:
    return [[Fraction(rng.randint(-spread, spread)) for _ in range(cols)] for _ in range(rows)]


# -- subspaces of Q^n ---------------------------------------------------------

@dataclass(frozen=True)
class RationalSubspace:
    """A subspace of Q^n stored as its reduced row echelon basis."""

    n: int
    rows: tuple[Vector, ...]

    @classmethod
    def span(cls, n: int, vectors: Iterable[Iterable]) -> "RationalSubspace":
        vecs = [as_vector(v) for v in vectors]
        for v in vecs:
            if len(v) != n:
                raise PreconditionError(f"vector of length {len(v)} in Q^{n}")
        red, _ = rref(vecs, n) if vecs else ([], [])
        return cls(n, tuple(tuple(r) for r in red))

    @classmethod
    def coordinate(cls, n: int, elems: Iterable[int]) -> "RationalSubspace":
        """span{e_x : x in elems}, elements 1-indexed."""
        vecs = []
        for x in sorted(set(elems)):
            v = [0] * n
            v[x - 1] = 1
            vecs.append(v)
        return cls.span(n, vecs)

    @classmethod
    def whole(cls, n: int) -> "RationalSubspace":
        return cls.coordinate(n, range(1, n + 1))

    @classmethod
    def zero(cls, n: int) -> "RationalSubspace":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __contains__(self, v) -> bool:
        v = as_vector(v)
        return rank(list(self.rows) + [v], self.n) == self.dim

    def __add__(self, other: "RationalSubspace") -> "RationalSubspace":
        _check_ambient(self, other)
        return RationalSubspace.span(self.n, self.rows + other.rows)

    def intersect(self, other: "RationalSubspace") -> "RationalSubspace":
        _check_ambient(self, other)
        if not self.rows or not other.rows:
            return RationalSubspace.zero(self.n)
        # x^T A = y^T B  <=>  [A; -B]^T (x; y) = 0
        stacked = list(self.rows) + [tuple(-x for x in r) for r in other.rows]
        k = len(stacked)
        system = [[stacked[i][c] for i in range(k)] for c in range(self.n)]
        vecs = []
        for coeffs in nullspace(system, k):
            x = coeffs[:self.dim]
            vecs.append(tuple(sum((x[i] * self.rows[i][c] for i in range(self.dim)), Fraction(0))
                              for c in range(self.n)))
        return RationalSubspace.span(self.n, vecs)

    def orthogonal_complement(self) -> "RationalSubspace":
        """Complement under the standard bilinear form (a genuine complement over Q)."""
        return RationalSubspace.span(self.n, nullspace(self.rows, self.n))

    def coordinates(self, v) -> Vector:
        return solve_combination(self.rows, as_vector(v))

    def image(self, matrix_rows: Sequence[Sequence[Fraction]], target_n: int) -> "RationalSubspace":
        """Image under the linear map x -> M x with M given by rows."""
        return RationalSubspace.span(target_n, [mat_vec(matrix_rows, r) for r in self.rows])


def _check_ambient(a: RationalSubspace, b: RationalSubspace) -> None:
    if a.n != b.n:
        raise PreconditionError(f"ambient mismatch: Q^{a.n} vs Q^{b.n}")


def intersection_dim(a: RationalSubspace, b: RationalSubspace) -> int:
    _check_ambient(a, b)
    if not a.rows or not b.rows:
        return 0
    return a.dim + b.dim - rank(list(a.rows) + list(b.rows), a.n)


@dataclass(frozen=True)
class SubspaceOps:
    intersection_dim: int
    sum_dim: int
    intersection_basis: tuple[Vector, ...]


def subspace_ops(a: RationalSubspace, b: RationalSubspace) -> SubspaceOps:
    """Exact intersection and sum dimensions plus an intersection basis."""
    _check_ambient(a, b)
    sum_dim = rank(list(a.rows) + list(b.rows), a.n) if (a.rows or b.rows) else 0
    inter = a.intersect(b)
    assert inter.dim == a.dim + b.dim - sum_dim
    return SubspaceOps(inter.dim, sum_dim, inter.rows)
