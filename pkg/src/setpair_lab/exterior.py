"""Sparse exterior algebra over Q^n.

A grade-r multivector is a map from r-subsets of [n] (bitmasks) to nonzero
rational coefficients, expanded in the standard basis e_A. Subspaces of a
fixed exterior power are kept in reduced echelon form whose pivots are the
initial sets, i.e. the reverse-colex maxima of the supports. Because reverse
colex is reverse integer order on masks, the initial set of a multivector is
just its smallest key.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from . import combinatorics as cb
from .combinatorics import Hypergraph
from .errors import GradeError, PreconditionError, SingularMatrixError
from .linalg import RationalSubspace, as_fraction, as_vector, det, inverse


class Multivector:
    """An element of the r-th exterior power of Q^n. Treat as immutable."""

    __slots__ = ("n", "grade", "terms")

    def __init__(self, n: int, grade: int, terms: Optional[Mapping[int, object]] = None):
        if not 0 <= grade <= n:
            raise GradeError(f"grade {grade} outside [0, {n}]")
        top = cb.full_mask(n)
        clean = {}
        for key, coeff in (terms or {}).items():
            if key & ~top or cb.card(key) != grade:
                raise PreconditionError(f"basis set {cb.elements(key)} is not a {grade}-subset of [{n}]")
            c = as_fraction(coeff)
            if c:
                clean[key] = c
        self.n = n
        self.grade = grade
        self.terms = clean

    @classmethod
    def _raw(cls, n: int, grade: int, terms: dict) -> "Multivector":
        out = cls.__new__(cls)
        out.n, out.grade, out.terms = n, grade, terms
        return out

    @classmethod
    def zero(cls, n: int, grade: int) -> "Multivector":
        return cls(n, grade)

    @classmethod
    def monomial(cls, n: int, elems: Iterable[int], coeff=1) -> "Multivector":
        m = cb.mask(elems)
        return cls(n, cb.card(m), {m: coeff})

    @classmethod
    def vector(cls, coords: Sequence) -> "Multivector":
        """Grade-1 multivector from a coordinate vector."""
        return cls(len(coords), 1, {1 << i: c for i, c in enumerate(coords)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return (self.n, self.grade, self.terms) == (other.n, other.grade, other.terms)

    def __hash__(self):
        return hash((self.n, self.grade, frozenset(self.terms.items())))

    def _check(self, other: "Multivector") -> None:
        if self.n != other.n or self.grade != other.grade:
            raise PreconditionError("multivectors live in different exterior powers")

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Multivector._raw(self.n, self.grade, out)

    def __neg__(self) -> "Multivector":
        return Multivector._raw(self.n, self.grade, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def __mul__(self, scalar) -> "Multivector":
        s = as_fraction(scalar)
        if not s:
            return Multivector.zero(self.n, self.grade)
        return Multivector._raw(self.n, self.grade, {k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other: "Multivector") -> "Multivector":
        return wedge(self, other)

    def coefficient(self, elems: Iterable[int]) -> Fraction:
        return self.terms.get(cb.mask(elems), Fraction(0))

    def __repr__(self) -> str:
        if not self.terms:
            return f"Multivector(n={self.n}, grade={self.grade}, 0)"
        parts = []
        for k in sorted(self.terms):
            parts.append(f"{self.terms[k]}*f{list(cb.elements(k))}")
        return f"Multivector(n={self.n}, grade={self.grade}, " + " + ".join(parts) + ")"


def wedge_sign(a: int, b: int) -> int:
    """Sign of the permutation sorting (sorted A, sorted B); A and B disjoint."""
    inversions = 0
    while b:
        low = b & -b
        # elements of A above this element of B each form one inversion
        inversions += (a & ~((low << 1) - 1)).bit_count()
        b ^= low
    return -1 if inversions & 1 else 1


def wedge(u: Multivector, v: Multivector) -> Multivector:
    if u.n != v.n:
        raise PreconditionError(f"ground dimensions differ: {u.n} vs {v.n}")
    g = u.grade + v.grade
    if g > u.n:
        raise GradeError(f"grade {u.grade} + {v.grade} exceeds n = {u.n}")
    out: dict[int, Fraction] = {}
    for a, ca in u.terms.items():
        for b, cbf in v.terms.items():
            if a & b:
                continue
            key = a | b
            val = ca * cbf
            if wedge_sign(a, b) < 0:
                val = -val
            s = out.get(key, 0) + val
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return Multivector._raw(u.n, g, out)


def wedge_all(vectors: Sequence[Multivector], n: Optional[int] = None) -> Multivector:
    if not vectors:
        if n is None:
            raise PreconditionError("empty wedge needs n")
        return Multivector(n, 0, {0: 1})
    out = vectors[0]
    for v in vectors[1:]:
        out = wedge(out, v)
    return out


# -- basis matrices -----------------------------------------------------------

class BasisMatrix:
    """An invertible rational n x n matrix, addressed by its columns f_1..f_n."""

    def __init__(self, columns: Sequence[Sequence]):
        cols = tuple(as_vector(c) for c in columns)
        n = len(cols)
        if any(len(c) != n for c in cols):
            raise PreconditionError("basis matrix must be square")
        rows = [[cols[j][i] for j in range(n)] for i in range(n)]
        d = det(rows)
        if d == 0:
            raise SingularMatrixError("basis matrix has zero determinant")
        self.n = n
        self.columns = cols
        self.determinant = d
        self._inverse_rows = None

    @classmethod
    def identity(cls, n: int) -> "BasisMatrix":
        return cls([[int(i == j) for i in range(n)] for j in range(n)])

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "BasisMatrix":
        n = len(rows)
        return cls([[rows[i][j] for i in range(n)] for j in range(n)])

    @classmethod
    def random(cls, n: int, rng, spread: int = 3) -> "BasisMatrix":
        while True:
            cols = [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)]
            try:
                return cls(cols)
            except SingularMatrixError:
                continue

    def rows(self) -> list[list[Fraction]]:
        return [[self.columns[j][i] for j in range(self.n)] for i in range(self.n)]

    def inverse_rows(self) -> list[list[Fraction]]:
        if self._inverse_rows is None:
            self._inverse_rows = inverse(self.rows())
        return self._inverse_rows

    def column(self, i: int) -> Multivector:
        """f_i as a grade-1 multivector, i 1-indexed."""
        return Multivector.vector(self.columns[i - 1])

    def __eq__(self, other) -> bool:
        return isinstance(other, BasisMatrix) and self.columns == other.columns

    def __hash__(self):
        return hash(self.columns)


def basis_monomial(f: BasisMatrix, a: int) -> Multivector:
    """f_A = wedge of the columns of F indexed by A, in increasing order."""
    idx = cb.elements(a)
    if not idx:
        raise PreconditionError("basis monomial of the empty set")
    if idx[-1] > f.n:
        raise PreconditionError(f"set {idx} leaves [{f.n}]")
    return wedge_all([f.column(i) for i in idx])


def apply_linear_map(w: Multivector, rows: Sequence[Sequence[Fraction]]) -> Multivector:
    """Image of w under the map induced on the exterior power by x -> M x."""
    n = w.n
    images = [Multivector.vector([rows[i][j] for i in range(n)]) for j in range(n)]
    out = Multivector.zero(n, w.grade)
    for key, c in w.terms.items():
        out = out + wedge_all([images[i - 1] for i in cb.elements(key)], n) * c
    return out


def coordinates_in(w: Multivector, f: Optional[BasisMatrix]) -> Multivector:
    """Expansion coefficients of w in the basis {f_A}, as a multivector keyed by A."""
    if f is None:
        return w
    return apply_linear_map(w, f.inverse_rows())


def wedge_of_subspace(t: RationalSubspace) -> Multivector:
    """v_1 ^ ... ^ v_k for the echelon basis of t, scaled so the initial coefficient is 1."""
    if t.dim == 0:
        raise PreconditionError("wedge of a zero-dimensional subspace is undefined")
    w = wedge_all([Multivector.vector(r) for r in t.rows])
    lead = w.terms[min(w.terms)]
    return w * (1 / lead)


def initial_set(w: Multivector, f: Optional[BasisMatrix] = None) -> int:
    """Reverse-colex maximum of the support of w (expanded in F's basis if given)."""
    coords = coordinates_in(w, f)
    if not coords.terms:
        raise PreconditionError("the zero multivector has no initial set")
    return min(coords.terms)


# -- subspaces of an exterior power ------------------------------------------

class ExteriorSubspace:
    """Subspace of the grade-r exterior power in reduced echelon form.

    ``basis[j]`` has coefficient 1 on its pivot, pivots are increasing as
    masks (decreasing in reverse colex), and no basis vector touches another
    vector's pivot. Build instances with :func:`echelonize`.
    """

    __slots__ = ("n", "grade", "basis")

    def __init__(self, n: int, grade: int, basis: tuple):
        self.n = n
        self.grade = grade
        self.basis = basis

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(min(b.terms) for b in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExteriorSubspace):
            return NotImplemented
        return (self.n, self.grade, self.basis) == (other.n, other.grade, other.basis)

    def __hash__(self):
        return hash((self.n, self.grade, self.basis))

    def reduce(self, w: Multivector) -> Multivector:
        terms = dict(w.terms)
        _reduce_terms(terms, {min(b.terms): b.terms for b in self.basis})
        return Multivector._raw(self.n, self.grade, terms)

    def __contains__(self, w: Multivector) -> bool:
        return not self.reduce(w).terms

    def __repr__(self) -> str:
        return f"ExteriorSubspace(n={self.n}, grade={self.grade}, dim={self.dim})"


def _reduce_terms(terms: dict, rows: dict) -> None:
    for p in [k for k in terms if k in rows]:
        c = terms.get(p)
        if not c:
            continue
        for k, v in rows[p].items():
            s = terms.get(k, 0) - c * v
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)


def echelonize(vectors: Iterable[Multivector], n: Optional[int] = None,
               grade: Optional[int] = None) -> ExteriorSubspace:
    """Span of the vectors in reduced echelon form with initial-set pivots."""
    rows: dict[int, dict] = {}
    for v in vectors:
        if n is None:
            n, grade = v.n, v.grade
        elif v.n != n or v.grade != grade:
            raise PreconditionError("vectors live in different exterior powers")
        terms = dict(v.terms)
        _reduce_terms(terms, rows)
        if not terms:
            continue
        p = min(terms)
        inv = 1 / terms[p]
        new = {k: c * inv for k, c in terms.items()}
        for q, row in rows.items():
            c = row.get(p)
            if c:
                for k, val in new.items():
                    s = row.get(k, 0) - c * val
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
        rows[p] = new
    if n is None:
        raise PreconditionError("echelonize of an empty list needs n and grade")
    basis = tuple(Multivector._raw(n, grade, rows[p]) for p in sorted(rows))
    return ExteriorSubspace(n, grade, basis)


def zero_subspace(n: int, grade: int) -> ExteriorSubspace:
    return ExteriorSubspace(n, grade, ())


def full_power(n: int, c: int) -> list[Multivector]:
    """The standard monomial basis of the c-th exterior power."""
    return [Multivector._raw(n, c, {m: Fraction(1)}) for m in cb.k_subsets(n, c)]


def initial_hypergraph(w: ExteriorSubspace, f: Optional[BasisMatrix] = None) -> Hypergraph:
    """H_F(W): the initial sets of all nonzero vectors of W, i.e. the echelon pivots."""
    if f is not None:
        w = echelonize([coordinates_in(b, f) for b in w.basis], w.n, w.grade)
    return Hypergraph(w.n, w.grade, w.pivots)


def monomial_subspace(f: BasisMatrix, h: Hypergraph) -> ExteriorSubspace:
    """F(H) = span{f_A : A in H}."""
    if h.n != f.n:
        raise PreconditionError("hypergraph and basis matrix disagree on n")
    return echelonize([basis_monomial(f, a) for a in h.edges], f.n, h.r)


def is_self_annihilating(w: ExteriorSubspace) -> bool:
    if 2 * w.grade > w.n:
        return True  # products land in a zero exterior power
    b = w.basis
    for i in range(len(b)):
        for j in range(i, len(b)):
            if wedge(b[i], b[j]).terms:
                return False
    return True


def wedge_spaces(u: ExteriorSubspace, w: ExteriorSubspace) -> ExteriorSubspace:
    """U ^ W = span{u ^ w}."""
    if u.n != w.n:
        raise PreconditionError("ground dimensions differ")
    g = u.grade + w.grade
    if g > u.n:
        raise GradeError(f"grade {u.grade} + {w.grade} exceeds n = {u.n}")
    return echelonize((wedge(x, y) for x in u.basis for y in w.basis), u.n, g)


def wedge_with_full_power(w: ExteriorSubspace, c: int) -> ExteriorSubspace:
    """W ^ (c-th exterior power of V)."""
    if c < 0 or w.grade + c > w.n:
        raise GradeError(f"grade {w.grade} + {c} exceeds n = {w.n}")
    if c == 0:
        return w
    monos = full_power(w.n, c)
    return echelonize((wedge(x, y) for x in w.basis for y in monos), w.n, w.grade + c)


def dense_coefficients(w: ExteriorSubspace) -> list[list[Fraction]]:
    """Basis vectors as dense rows over the colex-ordered monomial basis."""
    keys = list(cb.k_subsets(w.n, w.grade))
    return [[b.terms.get(k, Fraction(0)) for k in keys] for b in w.basis]
