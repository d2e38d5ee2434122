"""Exact subset and hypergraph arithmetic.

Subsets of the ground set [n] are plain Python ints used as bitmasks: bit
``i - 1`` encodes element ``i``. With that encoding the reverse colex order
is the reverse of integer order (the largest element of A xor B decides both),
so canonical hypergraph storage is simply ascending integer order.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .errors import InvalidComparisonError, PreconditionError


# -- subset masks -------------------------------------------------------------

def mask(elements: Iterable[int]) -> int:
    """Bitmask of a collection of 1-indexed elements."""
    out = 0
    for x in elements:
        if x < 1:
            raise PreconditionError(f"elements are 1-indexed, got {x}")
        out |= 1 << (x - 1)
    return out


def elements(m: int) -> tuple[int, ...]:
    """Sorted 1-indexed elements of a mask."""
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def card(m: int) -> int:
    return m.bit_count()


def full_mask(n: int) -> int:
    return (1 << n) - 1


def k_subsets(n: int, k: int) -> Iterator[int]:
    """All k-subsets of [n] as masks, in colex (ascending integer) order."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield 0
        return
    # Gosper's hack walks same-popcount integers in increasing order
    x = (1 << k) - 1
    limit = 1 << n
    while x < limit:
        yield x
        c = x & -x
        r = x + c
        x = (((r ^ x) >> 2) // c) | r


def binom(n: int, k: int) -> int:
    """C(n, k) with the convention C(n, k) = 0 outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


class Order(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def revcolex_compare(a: int, b: int) -> Order:
    """Compare equal-size sets in reverse colex order.

    A > B iff the largest element of the symmetric difference lies in B.
    """
    if card(a) != card(b):
        raise InvalidComparisonError(
            f"cannot compare sets of sizes {card(a)} and {card(b)}")
    if a == b:
        return Order.EQ
    top = (a ^ b).bit_length() - 1
    return Order.GT if (b >> top) & 1 else Order.LT


# -- hypergraphs --------------------------------------------------------------

@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph on [n]; edges kept in reverse-colex descending order."""

    n: int
    r: int
    edges: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or self.r < 0:
            raise PreconditionError("n and r must be non-negative")
        top = full_mask(self.n)
        for e in self.edges:
            if e & ~top:
                raise PreconditionError(f"edge {elements(e)} leaves [{self.n}]")
            if card(e) != self.r:
                raise PreconditionError(
                    f"edge {elements(e)} does not have {self.r} elements")
        canon = tuple(sorted(set(self.edges)))
        object.__setattr__(self, "edges", canon)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]], r: Optional[int] = None) -> "Hypergraph":
        masks = [mask(s) for s in sets]
        if r is None:
            if not masks:
                raise PreconditionError("rank of an empty hypergraph must be given")
            r = card(masks[0])
        return cls(n, r, tuple(masks))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[int]:
        return iter(self.edges)

    def __contains__(self, edge: int) -> bool:
        return edge in self._edge_set

    @property
    def _edge_set(self) -> frozenset:
        # frozen dataclass: cache lazily on the instance dict
        s = self.__dict__.get("_es")
        if s is None:
            s = frozenset(self.edges)
            object.__setattr__(self, "_es", s)
        return s

    def sets(self) -> list[tuple[int, ...]]:
        return [elements(e) for e in self.edges]

    def complement(self) -> "Hypergraph":
        """The family {[n] \\ A : A in H}."""
        top = full_mask(self.n)
        return Hypergraph(self.n, self.n - self.r, tuple(top ^ e for e in self.edges))

    def issubset(self, other: "Hypergraph") -> bool:
        return self._edge_set <= other._edge_set


def upper_shadow(h: Hypergraph, b: int) -> Hypergraph:
    """All (r + b)-subsets of [n] containing some edge of h."""
    if b < 0 or h.r + b > h.n:
        raise PreconditionError(f"rank {h.r} + {b} exceeds ground size {h.n}")
    if b == 0:
        return h
    top = full_mask(h.n)
    out = set()
    for e in h.edges:
        free = elements(top ^ e)
        for extra in itertools.combinations(free, b):
            out.add(e | mask(extra))
    return Hypergraph(h.n, h.r + b, tuple(out))


def lower_shadow(h: Hypergraph, size: int) -> Hypergraph:
    """All ``size``-subsets of [n] contained in some edge of h."""
    if size < 0 or size > h.r:
        raise PreconditionError(f"shadow size {size} exceeds rank {h.r}")
    if size == h.r:
        return h
    out = set()
    for e in h.edges:
        for sub in itertools.combinations(elements(e), size):
            out.add(mask(sub))
    return Hypergraph(h.n, size, tuple(out))


def is_t_intersecting(h: Hypergraph, t: int) -> bool:
    """True iff every ordered pair of edges, A = B included, shares >= t elements."""
    if t <= 0:
        return True
    edges = h.edges
    for i, x in enumerate(edges):
        if card(x) < t:
            return False
        for y in edges[i + 1:]:
            if card(x & y) < t:
                return False
    return True


def full_star(n: int, r: int, center: int) -> Hypergraph:
    if not 1 <= center <= n:
        raise PreconditionError(f"center {center} outside [{n}]")
    if not 1 <= r <= n:
        raise PreconditionError(f"rank {r} outside [1, {n}]")
    c = 1 << (center - 1)
    rest = full_mask(n) ^ c
    out = []
    for sub in itertools.combinations(elements(rest), r - 1):
        out.append(c | mask(sub))
    return Hypergraph(n, r, tuple(out))


def is_full_star(h: Hypergraph) -> Optional[int]:
    """The center of h if h is a full 1-star, smallest center on ties, else None."""
    if h.r < 1 or len(h) != binom(h.n - 1, h.r - 1):
        return None
    common = full_mask(h.n)
    for e in h.edges:
        common &= e
    if not common:
        return None
    # distinct edges, all through one element, and exactly C(n-1, r-1) of them
    return (common & -common).bit_length()


def colex_initial_segment(m: int, k: int, n: int) -> Hypergraph:
    """The first m k-subsets of [n] in colex order."""
    total = binom(n, k)
    if m < 0 or m > total:
        raise PreconditionError(f"m = {m} exceeds C({n},{k}) = {total}")
    return Hypergraph(n, k, tuple(itertools.islice(k_subsets(n, k), m)))


def kk_min_lower_shadow(m: int, k: int, k_target: int, n: int) -> int:
    """Minimum size of the k_target-shadow over all m-edge k-uniform families on [n].

    Exact by Kruskal-Katona: a colex initial segment attains the minimum.
    """
    if k_target < 0 or k_target > k:
        raise PreconditionError(f"target rank {k_target} not in [0, {k}]")
    seg = colex_initial_segment(m, k, n)
    return len(lower_shadow(seg, k_target))


def _gen_binom(x: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= (x - i) / (i + 1)
    return out


def lovasz_kk_bound(m: int, k: int, drop: int, tol: float = 1e-12) -> float:
    """Lovasz's real form of Kruskal-Katona.

    Finds the real x >= k with C(x, k) = m and returns C(x, k - drop), a lower
    bound for the (k - drop)-shadow of any m-edge k-uniform family. Advisory
    only; ``kk_min_lower_shadow`` is the exact answer.
    """
    if m < 1:
        raise PreconditionError("m must be at least 1")
    if k < 1 or not 0 <= drop <= k:
        raise PreconditionError(f"need k >= 1 and 0 <= drop <= k, got k={k}, drop={drop}")
    lo, hi = float(k), float(k + m)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _gen_binom(mid, k) < m:
            lo = mid
        else:
            hi = mid
    return _gen_binom((lo + hi) / 2, k - drop)


@dataclass(frozen=True)
class LYMReport:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    equality: bool


def local_lym_intersecting_check(h: Hypergraph, b: int) -> LYMReport:
    """Compare |upper b-shadow| / C(n-1, a+b-1) against |h| / C(n-1, a-1)."""
    n, a = h.n, h.r
    if a < 1:
        raise PreconditionError("rank must be at least 1")
    if not is_t_intersecting(h, 1):
        raise PreconditionError("hypergraph is not intersecting")
    if 2 * a > n:
        raise PreconditionError(f"need 2a <= n, got a={a}, n={n}")
    if b < 0 or a + b > n:
        raise PreconditionError(f"need 0 <= b and a + b <= n, got b={b}")
    lhs = Fraction(len(upper_shadow(h, b)), binom(n - 1, a + b - 1))
    rhs = Fraction(len(h), binom(n - 1, a - 1))
    return LYMReport(lhs, rhs, lhs >= rhs, lhs == rhs)
