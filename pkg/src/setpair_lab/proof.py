"""Step-by-step replay of the exterior-algebra proof on concrete instances.

The pipeline is ``lift_sets`` (sets -> coordinate subspaces), then
``reduce_instance`` (threshold t and ambient n down to t = 0, n = N - 2t),
then ``build_z_chain`` which wedges the A-sides together and checks every
dimension claim exactly. ``replay`` strings the three together.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import combinatorics as cb
from .combinatorics import binom, is_full_star
from .errors import (ChainInvariantError, HypothesisViolation, PreconditionError,
                     ReductionFailure, ResampleFailure, StabilityFailure)
from .exterior import (BasisMatrix, ExteriorSubspace, Multivector, echelonize,
                       initial_hypergraph, is_self_annihilating, wedge,
                       wedge_of_subspace, wedge_with_full_power, zero_subspace)
from .linalg import (RationalSubspace, det, intersection_dim, inverse, mat_vec,
                     rank, solve_combination)
from .verifiers import (SETS, SUBSPACES, PairFamilyInstance, check_bollobas,
                        check_hemibundled)

log = logging.getLogger(__name__)

ATTEMPT_BUDGET = 64


# -- general position ---------------------------------------------------------

@dataclass(frozen=True)
class GeneralPositionConfig:
    """Assignment x -> v(x) in Q^d."""

    assignment: dict
    d: int

    def vector(self, x: int) -> tuple:
        try:
            return self.assignment[x]
        except KeyError:
            raise PreconditionError(f"element {x} has no assigned vector") from None

    def is_general_position(self, elems: Optional[Iterable[int]] = None) -> bool:
        """Every d of the vectors (restricted to ``elems``) are independent."""
        pool = sorted(self.assignment if elems is None else elems)
        k = min(self.d, len(pool))
        return all(rank([self.vector(x) for x in combo], self.d) == k
                   for combo in itertools.combinations(pool, k))


def moment_curve_config(ground: Sequence[int], d: int) -> GeneralPositionConfig:
    """v(x) = (1, x, x^2, ..., x^(d-1)); distinct parameters give Vandermonde independence."""
    if d < 1:
        raise PreconditionError("dimension must be at least 1")
    if len(set(ground)) != len(ground):
        raise PreconditionError("ground elements must be distinct")
    return GeneralPositionConfig({x: tuple(Fraction(x) ** k for k in range(d)) for x in ground}, d)


def basis_config(ground: Sequence[int], d: int) -> GeneralPositionConfig:
    """v(x) = e_x in Q^d, the basis lift."""
    out = {}
    for x in ground:
        if not 1 <= x <= d:
            raise PreconditionError(f"element {x} outside [1, {d}]")
        out[x] = tuple(Fraction(int(k == x - 1)) for k in range(d))
    return GeneralPositionConfig(out, d)


def lift_sets(inst: PairFamilyInstance, cfg: Optional[GeneralPositionConfig] = None) -> PairFamilyInstance:
    """Replace each set S by span{v(x) : x in S}; default is the basis lift in Q^n."""
    if inst.kind != SETS:
        raise PreconditionError("lift_sets takes a set instance")
    if cfg is None:
        cfg = basis_config(range(1, inst.n + 1), inst.n)

    def lift(s: int) -> RationalSubspace:
        return RationalSubspace.span(cfg.d, [cfg.vector(x) for x in cb.elements(s)])

    return PairFamilyInstance(SUBSPACES, cfg.d, tuple((lift(a), lift(b)) for a, b in inst.pairs), inst.t)


def _target_dim(u: RationalSubspace, k: int) -> int:
    return max(u.dim + k - u.n, 0)


def general_position_subspace(obstacles: Sequence[RationalSubspace], k: int, seed: int = 0, *,
                              n: Optional[int] = None, max_attempts: int = ATTEMPT_BUDGET,
                              spread: int = 5) -> tuple[RationalSubspace, int]:
    """A k-dimensional V' with dim(U cap V') = max(dim U + k - n, 0) for every obstacle.

    Random integer frames from ``random.Random(seed)``, each verified exactly.
    Returns (V', attempts used).
    """
    if n is None:
        if not obstacles:
            raise PreconditionError("ambient dimension unknown")
        n = obstacles[0].n
    if not 0 <= k <= n:
        raise PreconditionError(f"k = {k} outside [0, {n}]")
    if any(u.n != n for u in obstacles):
        raise PreconditionError("obstacles live in different ambient spaces")
    if k == n:
        return RationalSubspace.whole(n), 0
    if k == 0:
        return RationalSubspace.zero(n), 0
    rng = random.Random(seed)
    worst = None
    for attempt in range(1, max_attempts + 1):
        frame = [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(k)]
        v = RationalSubspace.span(n, frame)
        if v.dim != k:
            continue
        worst = next((i for i, u in enumerate(obstacles)
                      if intersection_dim(u, v) != _target_dim(u, k)), None)
        if worst is None:
            return v, attempt
    raise ResampleFailure(f"no general-position {k}-space found in {max_attempts} attempts"
                          + ("" if worst is None else f"; obstacle {worst} kept failing"),
                          obstacle=worst, attempts=max_attempts)


# -- reduction t > 0, n > N  ->  t = 0, n = N ---------------------------------

@dataclass
class ReductionRecord:
    v_prime: RationalSubspace            # in Q^n
    v_second: RationalSubspace           # in V'-coordinates, Q^(n-t)
    q: RationalSubspace                  # in V'-coordinates
    seed: int
    attempts: int
    permutation: list[int]

    @property
    def identity(self) -> bool:
        return self.v_prime.dim == self.v_prime.n and self.v_second.dim == 0


def _coords_subspace(s: RationalSubspace, basis: Sequence[Sequence[Fraction]]) -> RationalSubspace:
    return RationalSubspace.span(len(basis), [solve_combination(basis, r) for r in s.rows])


def _check_base_case(red: PairFamilyInstance, a_s, b_s, t) -> Optional[str]:
    m = red.m
    P = red.pairs
    for i in range(m):
        if P[i][0].dim != a_s[i] - t or P[i][1].dim != b_s[i] - t:
            return "dim(A'_i) = a_i - t, dim(B'_i) = b_i - t"
    for i in range(m):
        for j in range(i, m):
            if intersection_dim(P[i][0], P[j][0]) == 0:
                return "dim(A'_i cap A'_j) > 0"
    for i in range(m):
        if intersection_dim(P[i][0], P[i][1]) != 0:
            return "dim(A'_i cap B'_i) = 0"
    for i in range(m):
        for j in range(i + 1, m):
            if intersection_dim(P[i][0], P[j][1]) == 0:
                return "dim(A'_i cap B'_j) > 0 for i < j"
    return None


def reduce_instance(inst: PairFamilyInstance, seed: int = 0,
                    max_attempts: int = ATTEMPT_BUDGET) -> tuple[PairFamilyInstance, ReductionRecord]:
    """Reduce a hemi-bundled subspace instance to t = 0 in an (N - 2t)-dimensional space.

    Stage one cuts with a general-position V' of dimension n - t, stage two
    picks V'' of dimension (n - t) - (N - 2t) inside V' avoiding every
    A_i cap V', B_i cap V' and their sums, and projects onto the orthogonal
    complement Q of V'' in V' along V''. The four base-case conditions are
    checked exactly on the output; a failure triggers a reseeded retry.
    """
    if inst.kind != SUBSPACES:
        raise PreconditionError("reduce_instance takes a subspace instance")
    rep = check_hemibundled(inst)
    if not rep.hypotheses_hold:
        bad = next(k for k, f in rep.hypotheses.items() if not f.holds)
        raise HypothesisViolation(f"hypothesis {bad} fails at {rep.hypotheses[bad].witness}")
    perm = rep.permutation
    inst = inst.reorder(perm)
    t, n, N = inst.t, inst.n, inst.N
    if n < N:
        raise PreconditionError(f"ambient dimension {n} below N = {N}")
    a_s, b_s = inst.a_sizes, inst.b_sizes
    m = inst.m
    As = [a for a, _ in inst.pairs]
    Bs = [b for _, b in inst.pairs]
    stage1 = list(As) + list(Bs)
    stage1 += [As[i].intersect(As[j]) for i in range(m) for j in range(i + 1, m)]
    stage1 += [As[i].intersect(Bs[j]) for i in range(m) for j in range(m)]

    last_bullet = None
    for retry in range(max_attempts):
        s1 = seed + 7919 * retry
        vp, att1 = general_position_subspace(stage1, n - t, s1, n=n, max_attempts=max_attempts)
        basis_p = vp.rows
        Ac = [_coords_subspace(a.intersect(vp), basis_p) for a in As]
        Bc = [_coords_subspace(b.intersect(vp), basis_p) for b in Bs]
        n1 = n - t
        n2 = n1 - (N - 2 * t)
        stage2 = Ac + Bc + [x + y for x, y in zip(Ac, Bc)]
        vs, att2 = general_position_subspace(stage2, n2, s1 + 1, n=n1, max_attempts=max_attempts)
        q = vs.orthogonal_complement()
        # projection along V'': coordinates in the basis (V'', Q), keep the Q part
        full = list(vs.rows) + list(q.rows)
        k2 = vs.dim

        def phi(v):
            return solve_combination(full, v)[k2:]

        dq = q.dim
        red_pairs = tuple((RationalSubspace.span(dq, [phi(r) for r in a.rows]),
                           RationalSubspace.span(dq, [phi(r) for r in b.rows])) for a, b in zip(Ac, Bc))
        red = PairFamilyInstance(SUBSPACES, dq, red_pairs, 0)
        last_bullet = _check_base_case(red, a_s, b_s, t)
        if last_bullet is None:
            return red, ReductionRecord(vp, vs, q, s1, att1 + att2, perm)
        log.debug("reduction retry %d failed: %s", retry, last_bullet)
    raise ReductionFailure(f"reduction failed after {max_attempts} retries: {last_bullet}", last_bullet)


# -- the Z-chain --------------------------------------------------------------

@dataclass
class ChainStep:
    index: int                # i + 1, 1-indexed pair being added
    a: int
    y_dim: int                # dim Y_i
    z_dim: int                # dim Z_{i+1}
    lym_lhs: Optional[Fraction]   # dim(Y_i) / C(N-1, a_{i+1}-1)
    lym_rhs: Optional[Fraction]   # dim(Z_i) / C(N-1, a_i-1)
    self_annihilating: bool


@dataclass
class ProofTrace:
    lifted_pairs: list
    reduction: Optional[ReductionRecord]
    steps: list[ChainStep]
    N: int
    weighted_sum: Fraction
    chain_bound: Fraction      # dim(Z_m) / C(N-1, a_m-1)
    final_slack: Fraction      # 1 - weighted_sum
    permutation: list[int]
    seed: int = 0
    attempts: int = 0
    tight: bool = False
    flags: dict = field(default_factory=dict)

    @property
    def chain_dims(self) -> list[int]:
        return [s.z_dim for s in self.steps]


def build_z_chain(inst: PairFamilyInstance, *, check_lym: bool = True) -> ProofTrace:
    """Replay the base case t = 0, n = N.

    Z_0 = 0, Y_i = Z_i ^ (a_{i+1} - a_i)-th power of V, Z_{i+1} = span(Y_i, wedge A_{i+1}).
    Raises ChainInvariantError if dim Z_{i+1} != dim Y_i + 1 and
    HypothesisViolation if some Z_i is not self-annihilating or the wedge
    pattern of the A and B sides is wrong.
    """
    if inst.kind != SUBSPACES:
        raise PreconditionError("build_z_chain takes a subspace instance")
    if inst.t != 0:
        raise PreconditionError("build_z_chain needs t = 0; call reduce_instance first")
    if inst.m == 0:
        raise PreconditionError("empty instance")
    N = inst.N
    if N is None or N != inst.n:
        raise PreconditionError(f"need a_i + b_i = n for every pair (n = {inst.n})")
    perm = sorted(range(inst.m), key=lambda i: inst.a_sizes[i])
    inst = inst.reorder(perm)
    a_s = inst.a_sizes
    if any(2 * a > N for a in a_s):
        raise PreconditionError("need a_i <= b_i")
    At = [wedge_of_subspace(a) for a, _ in inst.pairs]
    Bt = [wedge_of_subspace(b) for _, b in inst.pairs]
    m = inst.m
    for i in range(m):
        if not wedge(At[i], Bt[i]):
            raise HypothesisViolation(f"wedge(A_{perm[i] + 1}) ^ wedge(B_{perm[i] + 1}) = 0: A_i meets B_i")
        for j in range(i + 1, m):
            if wedge(At[i], Bt[j]):
                raise HypothesisViolation(
                    f"wedge(A_{perm[i] + 1}) ^ wedge(B_{perm[j] + 1}) != 0: A_i misses B_j")

    steps = []
    z = zero_subspace(N, a_s[0])
    prev_a = a_s[0]
    for i in range(m):
        c = a_s[i] - prev_a
        y = z if c == 0 else wedge_with_full_power(z, c)
        znew = echelonize(list(y.basis) + [At[i]], N, a_s[i])
        if znew.dim != y.dim + 1:
            raise ChainInvariantError(f"step {i + 1}: dim Z = {znew.dim}, dim Y = {y.dim}")
        sa = is_self_annihilating(znew)
        if not sa:
            raise HypothesisViolation(f"Z_{i + 1} is not self-annihilating: the A-sides do not pairwise meet")
        lhs = rhs = None
        if check_lym and i > 0:
            lhs = Fraction(y.dim, binom(N - 1, a_s[i] - 1))
            rhs = Fraction(z.dim, binom(N - 1, prev_a - 1))
            if lhs < rhs:
                raise ChainInvariantError(f"step {i + 1}: local LYM ratio {lhs} < {rhs}")
        steps.append(ChainStep(perm[i] + 1, a_s[i], y.dim, znew.dim, lhs, rhs, sa))
        z, prev_a = znew, a_s[i]

    total = sum((Fraction(1, binom(N - 1, a - 1)) for a in a_s), Fraction(0))
    chain_bound = Fraction(z.dim, binom(N - 1, a_s[-1] - 1))
    if not total <= chain_bound <= 1:
        raise ChainInvariantError(f"chain inequality fails: {total} <= {chain_bound} <= 1")
    return ProofTrace([(a, b) for a, b in inst.pairs], None, steps, N, total, chain_bound,
                      1 - total, perm, tight=(total == 1))


def replay(inst: PairFamilyInstance, seed: int = 0) -> ProofTrace:
    """Full pipeline: basis lift for sets, reduction when t > 0 or n > N, then the chain."""
    if inst.kind == SETS:
        inst = lift_sets(inst)
    rep = check_hemibundled(inst)
    if not rep.hypotheses_hold:
        bad = next(k for k, f in rep.hypotheses.items() if not f.holds)
        raise HypothesisViolation(f"hypothesis {bad} fails at {rep.hypotheses[bad].witness}")
    record = None
    base = inst
    if inst.t > 0 or inst.n > inst.N:
        base, record = reduce_instance(inst, seed)
    trace = build_z_chain(base)
    if record is not None:
        # map chain indices back through the reduction's sort
        trace.permutation = [record.permutation[i] for i in trace.permutation]
        for s in trace.steps:
            s.index = record.permutation[s.index - 1] + 1
        trace.seed, trace.attempts = record.seed, record.attempts
    else:
        trace.seed = seed
    trace.reduction = record
    trace.flags = {"hypotheses": True, "eq9": True, "self_annihilating": True,
                   "lym_steps": True, "chain_inequality": True}
    return trace


# -- local LYM for self-annihilating subspaces ---------------------------------

@dataclass(frozen=True)
class SubspaceLYMReport:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    equality: bool


def local_lym_subspace_check(w: ExteriorSubspace, c: int) -> SubspaceLYMReport:
    """dim(W ^ c-th power) / C(n-1, r+c-1) >= dim(W) / C(n-1, r-1)."""
    n, r = w.n, w.grade
    if not 0 < 2 * r <= n:
        raise PreconditionError(f"need 0 < 2r <= n, got r={r}, n={n}")
    if not 0 <= c <= n - r:
        raise PreconditionError(f"need 0 <= c <= n - r, got c={c}")
    if not is_self_annihilating(w):
        raise PreconditionError("subspace is not self-annihilating")
    lhs = Fraction(wedge_with_full_power(w, c).dim, binom(n - 1, r + c - 1))
    rhs = Fraction(w.dim, binom(n - 1, r - 1))
    eq = lhs == rhs
    # at r = 1 a single vector is already a full star, so strictness needs r >= 2
    if w.dim == 1 and c > 0 and r >= 2 and 2 * r < n and eq:
        raise StabilityFailure("one-dimensional W attained equality with c > 0")
    return SubspaceLYMReport(lhs, rhs, lhs >= rhs, eq)


# -- triangular criterion and the forced center --------------------------------

def triangular_criterion(vectors: Sequence[Multivector], cofactors: Sequence[Multivector]) -> bool:
    """v_i ^ w_i != 0 and v_i ^ w_j = 0 for i < j.

    When true the v_i are linearly independent; that conclusion is
    cross-checked by elimination and a mismatch raises.
    """
    if len(vectors) != len(cofactors):
        raise PreconditionError("vector and cofactor lists differ in length")
    m = len(vectors)
    for i in range(m):
        if not wedge(vectors[i], cofactors[i]):
            return False
        for j in range(i + 1, m):
            if wedge(vectors[i], cofactors[j]):
                return False
    if m and echelonize(vectors).dim != m:
        raise ChainInvariantError("triangular criterion held but the vectors are dependent")
    return True


def forced_center_check(inst: PairFamilyInstance, cfg: Optional[GeneralPositionConfig] = None) -> int:
    """Locate the element shared by every A_i of an extremal t = 0 family.

    Lifts the sets into Q^(a+b) in general position, normalised so that
    B_1 -> e_1..e_b and A_1 -> e_(b+1)..e_(a+b), computes the initial
    hypergraph of span{wedge A_i}, and reads the center off its full 1-star.
    Also confirms the element lies in every A_i and that deleting it leaves a
    tight Bollobas family on (a - 1, b).
    """
    if inst.kind != SETS or inst.t != 0 or inst.m == 0:
        raise PreconditionError("forced_center_check needs a nonempty t = 0 set instance")
    a_s, b_s = set(inst.a_sizes), set(inst.b_sizes)
    if len(a_s) != 1 or len(b_s) != 1:
        raise PreconditionError("pair sizes must be uniform")
    a, b = a_s.pop(), b_s.pop()
    if a >= b:
        raise PreconditionError("forced center needs a < b")
    target = binom(a + b - 1, a - 1)
    if inst.m != target:
        raise PreconditionError(f"m = {inst.m} is not the extremal size {target}")
    rep = check_hemibundled(inst)
    if not rep.hypotheses_hold:
        raise PreconditionError("instance fails the hemi-bundled hypotheses")
    # Theorem setting: A_i cap B_j empty iff i = j
    for i, (p, _) in enumerate(inst.pairs):
        for j, (_, q) in enumerate(inst.pairs):
            if i != j and not p & q:
                raise PreconditionError(f"A_{i + 1} misses B_{j + 1}")

    if a == 1:
        return cb.elements(inst.pairs[0][0])[0]

    d = a + b
    ground = 0
    for p, q in inst.pairs:
        ground |= p | q
    if cfg is None:
        cfg = moment_curve_config(cb.elements(ground), d)
    a1, b1 = inst.pairs[0]
    order = list(cb.elements(b1)) + list(cb.elements(a1))
    cols = [cfg.vector(x) for x in order]
    m_rows = [[cols[j][i] for j in range(d)] for i in range(d)]
    if det(m_rows) == 0:
        raise PreconditionError("configuration is not in general position on A_1 cup B_1")
    g = inverse(m_rows)
    v = {x: mat_vec(g, cfg.vector(x)) for x in cb.elements(ground)}

    def lifted(s: int) -> RationalSubspace:
        return RationalSubspace.span(d, [v[x] for x in cb.elements(s)])

    a_wedges = [wedge_of_subspace(lifted(p)) for p, _ in inst.pairs]
    b_wedges = [wedge_of_subspace(lifted(q)) for _, q in inst.pairs]
    if not triangular_criterion(a_wedges, b_wedges):
        raise StabilityFailure("wedge pattern of the lifted family is not triangular")
    w = echelonize(a_wedges, d, a)
    h = initial_hypergraph(w)
    center = is_full_star(h)
    if center is None:
        raise StabilityFailure(f"initial hypergraph {h.sets()} is not a full 1-star")
    if center <= b:
        raise StabilityFailure(f"star center e_{center} lies outside the image of A_1")
    element = order[center - 1]
    missing = [i + 1 for i, (p, _) in enumerate(inst.pairs) if not (p >> (element - 1)) & 1]
    if missing:
        raise StabilityFailure(f"element {element} is missing from A_{missing[0]}")
    bit = 1 << (element - 1)
    deleted = PairFamilyInstance(SETS, inst.n, tuple((p & ~bit, q) for p, q in inst.pairs), 0)
    drep = check_bollobas(deleted)
    if not (drep.hypotheses_hold and drep.equality and drep.extremal_recognized):
        raise StabilityFailure("deleting the center does not leave a tight Bollobas family")
    return element
