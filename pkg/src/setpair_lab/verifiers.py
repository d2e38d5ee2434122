"""Hypothesis and conclusion checks for Bollobas-type pair families.

Every verifier accepts both set instances (sides are bitmasks) and subspace
instances (sides are :class:`RationalSubspace`); intersection sizes are
cardinalities or exact dimensions accordingly, so a set instance and its
coordinate lift produce identical reports.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import combinatorics as cb
from .combinatorics import binom
from .errors import InfeasibleParameterError, PreconditionError
from .linalg import RationalSubspace, intersection_dim

SETS = "sets"
SUBSPACES = "subspaces"

Side = Union[int, RationalSubspace]


@dataclass(frozen=True)
class PairFamilyInstance:
    """Pairs (A_i, B_i) on [n] (sets) or in Q^n (subspaces), with threshold t."""

    kind: str
    n: int
    pairs: tuple[tuple[Side, Side], ...]
    t: int = 0

    def __post_init__(self):
        if self.kind not in (SETS, SUBSPACES):
            raise PreconditionError(f"unknown instance kind {self.kind!r}")
        if self.t < 0:
            raise PreconditionError("t must be non-negative")
        object.__setattr__(self, "pairs", tuple((a, b) for a, b in self.pairs))
        top = cb.full_mask(self.n)
        for i, (a, b) in enumerate(self.pairs, 1):
            for side, name in ((a, "A"), (b, "B")):
                if self.kind == SETS:
                    if not isinstance(side, int) or side & ~top:
                        raise PreconditionError(f"{name}_{i} is not a subset of [{self.n}]")
                elif not isinstance(side, RationalSubspace) or side.n != self.n:
                    raise PreconditionError(f"{name}_{i} is not a subspace of Q^{self.n}")
            if self.size(a) < 1 or self.size(b) < 1:
                raise PreconditionError(f"pair {i} has an empty side")

    @classmethod
    def from_sets(cls, n: int, pairs, t: int = 0) -> "PairFamilyInstance":
        return cls(SETS, n, tuple((cb.mask(a), cb.mask(b)) for a, b in pairs), t)

    @property
    def m(self) -> int:
        return len(self.pairs)

    def size(self, side: Side) -> int:
        return cb.card(side) if self.kind == SETS else side.dim

    def meet(self, x: Side, y: Side) -> int:
        """|X cap Y| or dim(X cap Y)."""
        if self.kind == SETS:
            return cb.card(x & y)
        return intersection_dim(x, y)

    @property
    def a_sizes(self) -> list[int]:
        return [self.size(a) for a, _ in self.pairs]

    @property
    def b_sizes(self) -> list[int]:
        return [self.size(b) for _, b in self.pairs]

    @property
    def N(self) -> Optional[int]:
        sums = {x + y for x, y in zip(self.a_sizes, self.b_sizes)}
        return sums.pop() if len(sums) == 1 else None

    def reorder(self, perm: Sequence[int]) -> "PairFamilyInstance":
        return PairFamilyInstance(self.kind, self.n, tuple(self.pairs[i] for i in perm), self.t)


@dataclass(frozen=True)
class HypothesisFlag:
    holds: bool
    witness: Optional[tuple[int, int]] = None  # 1-indexed, in input order


@dataclass
class VerifierReport:
    theorem: str
    hypotheses: dict[str, HypothesisFlag]
    weighted_sum: Optional[Fraction] = None
    bound_value: Optional[int] = None
    conclusion_holds: Optional[bool] = None
    equality: bool = False
    extremal_recognized: Optional[dict] = None
    m_bound: Optional[int] = None
    permutation: Optional[list[int]] = None
    remarks: list[str] = field(default_factory=list)

    @property
    def hypotheses_hold(self) -> bool:
        return all(f.holds for f in self.hypotheses.values())


def _scan(inst, pairs_idx, test) -> HypothesisFlag:
    for i, j in pairs_idx:
        if not test(i, j):
            return HypothesisFlag(False, (i + 1, j + 1))
    return HypothesisFlag(True)


def _uniform(values: list[int], what: str) -> int:
    if not values:
        return 0
    if len(set(values)) != 1:
        first = values[0]
        bad = next(i for i, v in enumerate(values) if v != first)
        raise PreconditionError(f"{what} not uniform: pair 1 has {first}, pair {bad + 1} has {values[bad]}")
    return values[0]


def _bollobas_structure(inst: PairFamilyInstance, a: int, b: int) -> Optional[dict]:
    if inst.kind != SETS:
        return None
    x = 0
    for p, q in inst.pairs:
        x |= p | q
    if cb.card(x) != a + b:
        return None
    if {p for p, _ in inst.pairs} != {sub for sub in _subsets_of(x, a)}:
        return None
    if any(q != x ^ p for p, q in inst.pairs):
        return None
    return {"X": list(cb.elements(x))}


def _subsets_of(x: int, k: int):
    for combo in itertools.combinations(cb.elements(x), k):
        yield cb.mask(combo)


def check_bollobas(inst: PairFamilyInstance) -> VerifierReport:
    """A_i cap B_i empty, A_i cap B_j nonempty for i != j, m <= C(a+b, a)."""
    if inst.kind != SETS:
        raise PreconditionError("the Bollobas verifier takes set instances")
    a = _uniform(inst.a_sizes, "|A_i|")
    b = _uniform(inst.b_sizes, "|B_i|")
    m = inst.m
    idx = range(m)
    flags = {
        "diagonal_disjoint": _scan(inst, ((i, i) for i in idx),
                                   lambda i, j: inst.meet(inst.pairs[i][0], inst.pairs[i][1]) == 0),
        "cross_intersecting": _scan(inst, ((i, j) for i in idx for j in idx if i != j),
                                    lambda i, j: inst.meet(inst.pairs[i][0], inst.pairs[j][1]) > 0),
    }
    rep = VerifierReport("bollobas", flags)
    if not rep.hypotheses_hold:
        return rep
    bound = binom(a + b, a) if m else 1
    rep.bound_value = bound
    rep.m_bound = bound
    rep.weighted_sum = Fraction(m, bound)
    rep.conclusion_holds = m <= bound
    rep.equality = m > 0 and m == bound
    if rep.equality:
        rep.extremal_recognized = _bollobas_structure(inst, a, b)
    return rep


def _sorted_by_a(inst: PairFamilyInstance) -> list[int]:
    return sorted(range(inst.m), key=lambda i: inst.a_sizes[i])


def check_hemibundled(inst: PairFamilyInstance) -> VerifierReport:
    """The hemi-bundled weighted inequality sum 1/C(N-2t-1, a_i-t-1) <= 1.

    Pairs are re-sorted by a_i (stably) and the permutation is recorded; the
    one-sided cross condition is checked in that order.
    """
    t = inst.t
    if inst.m == 0:
        rep = VerifierReport("hemibundled", {}, Fraction(0), 1, True, False, permutation=[])
        return rep
    a_s, b_s = inst.a_sizes, inst.b_sizes
    N = inst.N
    if N is None:
        raise PreconditionError("a_i + b_i is not constant across pairs")
    for i, (x, y) in enumerate(zip(a_s, b_s), 1):
        if x > y:
            raise PreconditionError(f"pair {i} has a_i = {x} > b_i = {y}")
        if x < t + 1:
            raise InfeasibleParameterError(
                f"pair {i} has a_i = {x} < t + 1 = {t + 1}; |A_i cap A_i| > t cannot hold")
    perm = _sorted_by_a(inst)
    P = [inst.pairs[k] for k in perm]
    m = inst.m

    def orig(flag: HypothesisFlag) -> HypothesisFlag:
        if flag.witness is None:
            return flag
        i, j = flag.witness
        return HypothesisFlag(False, (perm[i - 1] + 1, perm[j - 1] + 1))

    flags = {
        "A_intersecting": orig(_scan(inst, ((i, j) for i in range(m) for j in range(i, m)),
                                     lambda i, j: inst.meet(P[i][0], P[j][0]) > t)),
        "diagonal": orig(_scan(inst, ((i, i) for i in range(m)),
                               lambda i, j: inst.meet(P[i][0], P[i][1]) <= t)),
        "cross": orig(_scan(inst, ((i, j) for i in range(m) for j in range(i + 1, m)),
                            lambda i, j: inst.meet(P[i][0], P[j][1]) > t)),
    }
    rep = VerifierReport("hemibundled", flags, permutation=perm, bound_value=1)
    if not rep.hypotheses_hold:
        return rep
    base = N - (2 * t + 1)
    total = sum((Fraction(1, binom(base, a_s[k] - (t + 1))) for k in perm), Fraction(0))
    rep.weighted_sum = total
    rep.conclusion_holds = total <= 1
    rep.equality = total == 1
    if len(set(a_s)) == 1:
        rep.m_bound = binom(base, a_s[0] - (t + 1))
    if rep.equality:
        if all(x < y for x, y in zip(a_s, b_s)):
            if len(set(a_s)) != 1:
                rep.remarks.append("equality with non-uniform a_i contradicts the uniqueness clause")
                rep.conclusion_holds = False
            elif t == 0 and inst.kind == SETS:
                rep.extremal_recognized = recognize_extremal_t0(inst)
        else:
            rep.remarks.append("a=b extremal structures not unique")
    return rep


def check_furedi_subspaces(inst: PairFamilyInstance, two_sided: bool = False) -> VerifierReport:
    """Threshold Bollobas bound m <= C(a+b-2t, a-t).

    The cross condition dim(A_i cap B_j) >= t+1 is checked for i < j;
    ``two_sided=True`` also demands it for i > j.
    """
    t = inst.t
    a = _uniform(inst.a_sizes, "dim A_i")
    b = _uniform(inst.b_sizes, "dim B_i")
    m = inst.m
    cross = ((i, j) for i in range(m) for j in range(m) if (i != j if two_sided else i < j))
    flags = {
        "diagonal": _scan(inst, ((i, i) for i in range(m)),
                          lambda i, j: inst.meet(inst.pairs[i][0], inst.pairs[i][1]) <= t),
        "cross": _scan(inst, cross, lambda i, j: inst.meet(inst.pairs[i][0], inst.pairs[j][1]) >= t + 1),
    }
    rep = VerifierReport("furedi", flags)
    if not rep.hypotheses_hold:
        return rep
    bound = binom(a + b - 2 * t, a - t) if m else 1
    if bound == 0:
        raise InfeasibleParameterError(f"C({a + b - 2 * t}, {a - t}) = 0: hypotheses force m = 0")
    rep.bound_value = rep.m_bound = bound
    rep.weighted_sum = Fraction(m, bound)
    rep.conclusion_holds = m <= bound
    rep.equality = m > 0 and m == bound
    return rep


def check_weighted_space(inst: PairFamilyInstance) -> VerifierReport:
    """sum 1/C(a_i + b_i, a_i) <= 1 under a_i non-decreasing, b_i non-increasing."""
    a_s, b_s = inst.a_sizes, inst.b_sizes
    m = inst.m
    for i in range(1, m):
        if a_s[i] < a_s[i - 1]:
            raise PreconditionError(f"a_i decreases at pair {i + 1}")
        if b_s[i] > b_s[i - 1]:
            raise PreconditionError(f"b_i increases at pair {i + 1}")
    flags = {
        "diagonal": _scan(inst, ((i, i) for i in range(m)),
                          lambda i, j: inst.meet(inst.pairs[i][0], inst.pairs[i][1]) == 0),
        "cross": _scan(inst, ((i, j) for i in range(m) for j in range(m) if i != j),
                       lambda i, j: inst.meet(inst.pairs[i][0], inst.pairs[j][1]) > 0),
    }
    rep = VerifierReport("weighted_space", flags, bound_value=1)
    if not rep.hypotheses_hold:
        return rep
    total = sum((Fraction(1, binom(x + y, x)) for x, y in zip(a_s, b_s)), Fraction(0))
    rep.weighted_sum = total
    rep.conclusion_holds = total <= 1
    rep.equality = total == 1
    return rep


def check_conjecture41(inst: PairFamilyInstance) -> VerifierReport:
    """Hypotheses of the AK-type conjecture: |A_i cap A_j| >= t, A_i cap B_i = 0,
    A_i cap B_j != 0 for i != j. The bound itself lives in :mod:`search`."""
    t, m = inst.t, inst.m
    P = inst.pairs
    flags = {
        "A_t_intersecting": _scan(inst, ((i, j) for i in range(m) for j in range(i, m)),
                                  lambda i, j: inst.meet(P[i][0], P[j][0]) >= t),
        "diagonal": _scan(inst, ((i, i) for i in range(m)), lambda i, j: inst.meet(P[i][0], P[i][1]) == 0),
        "cross": _scan(inst, ((i, j) for i in range(m) for j in range(m) if i != j),
                       lambda i, j: inst.meet(P[i][0], P[j][1]) > 0),
    }
    return VerifierReport("conjecture41", flags)


def recognize_extremal_t0(inst: PairFamilyInstance) -> Optional[dict]:
    """Detect the star-plus-complements family.

    Returns ``{"X": [...], "center": c}`` when X = union of all sides has a+b
    elements, the A_i are exactly the a-subsets of X through c, and
    B_i = X \\ A_i; otherwise None.
    """
    if inst.kind != SETS or inst.t != 0:
        raise PreconditionError("recognizer needs a t = 0 set instance")
    if inst.m == 0:
        return None
    a = _uniform(inst.a_sizes, "|A_i|")
    b = _uniform(inst.b_sizes, "|B_i|")
    if a >= b:
        raise PreconditionError("recognizer needs a < b")
    x = 0
    for p, q in inst.pairs:
        x |= p | q
    if cb.card(x) != a + b:
        return None
    if any(q != x ^ p for p, q in inst.pairs):
        return None
    a_sets = [p for p, _ in inst.pairs]
    if len(set(a_sets)) != len(a_sets) or len(a_sets) != binom(a + b - 1, a - 1):
        return None
    common = x
    for p in a_sets:
        common &= p
    if not common:
        return None
    center = (common & -common).bit_length()
    return {"X": list(cb.elements(x)), "center": center}
