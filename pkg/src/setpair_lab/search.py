"""Exhaustive search for maximum pair families at desk scale.

Candidate pairs (A, B) on [n] are the vertices of a compatibility graph; a
family is a clique that additionally admits an ordering satisfying the
one-sided cross condition (hemi-bundled profile). Both properties are
hereditary, so a depth-first clique search with a size bound finds the
maximum exactly. The ordering condition is tracked incrementally as the
transitive closure of the forced "must precede" arcs; a family is admissible
iff that relation stays acyclic.
"""

from __future__ import annotations

import enum
import itertools
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import combinatorics as cb
from .combinatorics import binom
from .errors import PreconditionError
from .verifiers import (SETS, PairFamilyInstance, check_bollobas, check_conjecture41,
                        check_hemibundled, recognize_extremal_t0)

log = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10 ** 8
MAX_CANDIDATE_GRID = 2_000_000


class Profile(str, enum.Enum):
    HEMIBUNDLED = "hemibundled"
    BOLLOBAS = "bollobas"
    CONJ41 = "conj41"


QUANTIFIED = "quantified"
SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class SearchSpec:
    a: int
    b: int
    t: int = 0
    n_max: Optional[int] = None
    profile: Profile = Profile.HEMIBUNDLED
    isomorphism_reduction: bool = True
    ordering: str = QUANTIFIED
    node_budget: int = DEFAULT_NODE_BUDGET

    def __post_init__(self):
        object.__setattr__(self, "profile", Profile(self.profile))
        if self.n_max is None:
            object.__setattr__(self, "n_max", self.a + self.b)
        if not 1 <= self.a <= self.b:
            raise PreconditionError(f"need 1 <= a <= b, got a={self.a}, b={self.b}")
        if self.t < 0:
            raise PreconditionError("t must be non-negative")
        if self.profile is Profile.HEMIBUNDLED and self.a < self.t + 1:
            raise PreconditionError(f"hemi-bundled search needs a >= t + 1, got a={self.a}, t={self.t}")
        if self.n_max < self.a + self.b:
            raise PreconditionError(f"n_max = {self.n_max} below a + b = {self.a + self.b}")
        if self.ordering not in (QUANTIFIED, SYMMETRIC):
            raise PreconditionError(f"unknown ordering mode {self.ordering!r}")
        if binom(self.n_max, self.a) * binom(self.n_max, self.b) > MAX_CANDIDATE_GRID:
            raise PreconditionError("candidate grid C(n_max, a) * C(n_max, b) is beyond desk scale")

    @property
    def bound(self) -> int:
        """The bound the relevant theorem (or conjecture) puts on m."""
        a, b, t = self.a, self.b, self.t
        if self.profile is Profile.HEMIBUNDLED:
            return binom(a + b - 2 * t - 1, a - t - 1)
        if self.profile is Profile.CONJ41 and t >= 1:
            return ak_bound(a + b, a, t)
        return binom(a + b, a)


@dataclass
class SearchResult:
    spec: SearchSpec
    max_m: int
    bound: int
    tight: bool
    witnesses: list[PairFamilyInstance]
    per_n: list[dict] = field(default_factory=list)
    truncated: bool = False
    nodes: int = 0
    unique_structure: Optional[bool] = None


class _Truncated(Exception):
    pass


# -- candidates and compatibility ---------------------------------------------

def _candidates(spec: SearchSpec, n: int) -> list[tuple[int, int]]:
    out = []
    for a in cb.k_subsets(n, spec.a):
        for b in cb.k_subsets(n, spec.b):
            inter = cb.card(a & b)
            if spec.profile is Profile.HEMIBUNDLED:
                if inter <= spec.t:
                    out.append((a, b))
            elif inter == 0:
                out.append((a, b))
    return out


def _relation(spec: SearchSpec, p: tuple[int, int], q: tuple[int, int]) -> tuple[bool, int]:
    """(compatible, arc): arc = 1 if p must precede q, -1 if q must precede p, else 0."""
    (ap, bp), (aq, bq) = p, q
    t = spec.t
    if spec.profile is Profile.HEMIBUNDLED:
        if cb.card(ap & aq) <= t:
            return False, 0
        x = cb.card(ap & bq) > t  # allows p before q
        y = cb.card(aq & bp) > t  # allows q before p
        if spec.ordering == SYMMETRIC:
            return x and y, 0
        if not (x or y):
            return False, 0
        return True, (0 if x and y else (1 if x else -1))
    if spec.profile is Profile.CONJ41 and cb.card(ap & aq) < t:
        return False, 0
    return bool(ap & bq) and bool(aq & bp), 0


class _Graph:
    def __init__(self, spec: SearchSpec, n: int):
        self.spec = spec
        self.n = n
        self.cands = _candidates(spec, n)
        k = len(self.cands)
        self.compat = [0] * k
        self.before = [0] * k  # before[p] has bit q when p must precede q
        self.ordered = False
        for i in range(k):
            for j in range(i + 1, k):
                ok, arc = _relation(spec, self.cands[i], self.cands[j])
                if not ok:
                    continue
                self.compat[i] |= 1 << j
                self.compat[j] |= 1 << i
                if arc == 1:
                    self.before[i] |= 1 << j
                elif arc == -1:
                    self.before[j] |= 1 << i
                if arc:
                    self.ordered = True

    def index(self, pair: tuple[int, int]) -> int:
        return self.cands.index(pair)


def _roots(spec: SearchSpec, n: int) -> list[tuple[int, int]]:
    """One representative first pair per orbit of the relabeling group."""
    a, b = spec.a, spec.b
    top_s = min(spec.t, a, b) if spec.profile is Profile.HEMIBUNDLED else 0
    out = []
    for s in range(top_s + 1):
        if b - s > n - a:
            continue
        A = cb.mask(range(1, a + 1))
        B = cb.mask(range(1, s + 1)) | cb.mask(range(a + 1, a + b - s + 1))
        out.append((A, B))
    return out


class _DFS:
    def __init__(self, g: _Graph, budget: int, prune: bool, collect: bool):
        self.g = g
        self.budget = budget
        self.prune = prune
        self.collect = collect
        self.nodes = 0
        self.best = 0
        self.found: list[tuple[int, ...]] = []

    def run(self, members: list[int], pool: int, reach: dict) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Truncated
        size = len(members)
        if size > self.best:
            self.best = size
            self.found = [tuple(members)]
        elif size == self.best and self.collect and size:
            self.found.append(tuple(members))
        g = self.g
        while pool:
            low = pool & -pool
            v = low.bit_length() - 1
            pool ^= low
            if self.prune:
                slack = size + 1 + pool.bit_count()
                if slack < self.best or (slack == self.best and not self.collect):
                    return
            new_reach = reach
            if g.ordered:
                new_reach = _extend_order(g, members, reach, v)
                if new_reach is None:
                    continue
            members.append(v)
            self.run(members, pool & g.compat[v], new_reach)
            members.pop()


def _extend_order(g: _Graph, members: list[int], reach: dict, v: int) -> Optional[dict]:
    """Closure after adding v, or None if v closes a cycle of forced precedences."""
    vbit = 1 << v
    preds = 0
    succs = []
    for u in members:
        if g.before[u] & vbit:
            preds |= 1 << u
        if g.before[v] & (1 << u):
            succs.append(u)
    after = 0
    for w in succs:
        if reach[w] & preds:
            return None
        after |= (1 << w) | reach[w]
    if after & preds:
        return None
    out = {}
    for x in members:
        r = reach[x]
        if (preds >> x) & 1 or r & preds:
            r |= vbit | after
        out[x] = r
    out[v] = after
    return out


def _search_unit(spec: SearchSpec, n: int, root: Optional[tuple[int, int]], budget: int,
                 prune: bool, collect: bool) -> tuple[int, list, int, bool]:
    g = _Graph(spec, n)
    dfs = _DFS(g, budget, prune, collect)
    truncated = False
    try:
        if root is None:
            dfs.run([], (1 << len(g.cands)) - 1, {})
        else:
            r = g.index(root)
            dfs.run([r], g.compat[r], {r: 0})
    except _Truncated:
        truncated = True
    fams = [[g.cands[i] for i in fam] for fam in dfs.found]
    return dfs.best, fams, dfs.nodes, truncated


# -- canonical forms -----------------------------------------------------------

_PERM_TABLES: dict[int, list[list[int]]] = {}


def _perm_tables(k: int) -> list[list[int]]:
    tabs = _PERM_TABLES.get(k)
    if tabs is None:
        tabs = []
        for perm in itertools.permutations(range(k)):
            tab = [0] * (1 << k)
            for m in range(1, 1 << k):
                low = m & -m
                tab[m] = tab[m ^ low] | (1 << perm[low.bit_length() - 1])
            tabs.append(tab)
        _PERM_TABLES[k] = tabs
    return tabs


def canonical_form(pairs) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Relabeling-invariant key: support compressed to [k], then the minimum image
    of the sorted pair list over all permutations of [k]."""
    support = 0
    for a, b in pairs:
        support |= a | b
    elems = cb.elements(support)
    k = len(elems)
    pos = {x: i for i, x in enumerate(elems)}

    def compress(s: int) -> int:
        return sum(1 << pos[x] for x in cb.elements(s))

    packed = [(compress(a), compress(b)) for a, b in pairs]
    best = None
    for tab in _perm_tables(k):
        img = tuple(sorted((tab[a], tab[b]) for a, b in packed))
        if best is None or img < best:
            best = img
    return k, best


def _precedence_order(spec: SearchSpec, pairs: list) -> list:
    """A valid ordering of a family under the one-sided cross condition."""
    m = len(pairs)
    must = {i: set() for i in range(m)}  # must[j]: indices that must come before j
    for i in range(m):
        for j in range(m):
            if i != j:
                ok, arc = _relation(spec, pairs[i], pairs[j])
                if arc == 1:
                    must[j].add(i)
    order, placed = [], set()
    while len(order) < m:
        nxt = min(i for i in range(m) if i not in placed and must[i] <= placed)
        order.append(nxt)
        placed.add(nxt)
    return [pairs[i] for i in order]


def _instance(spec: SearchSpec, key) -> PairFamilyInstance:
    k, pairs = key
    pairs = list(pairs)
    if spec.profile is Profile.HEMIBUNDLED:
        pairs = _precedence_order(spec, pairs)
    return PairFamilyInstance(SETS, k, tuple(pairs), spec.t)


def _verify_witness(spec: SearchSpec, inst: PairFamilyInstance) -> None:
    if spec.profile is Profile.HEMIBUNDLED:
        rep = check_hemibundled(inst)
    elif spec.profile is Profile.BOLLOBAS:
        rep = check_bollobas(inst)
    else:
        rep = check_conjecture41(inst)
    if not rep.hypotheses_hold:
        raise AssertionError(f"search produced a witness failing {rep.theorem}: {rep.hypotheses}")


# -- public operations ---------------------------------------------------------

def search_max_family(spec: SearchSpec, *, prune: bool = True, collect: bool = True,
                      jobs: int = 1) -> SearchResult:
    """Exact maximum m over ground sets [n], a + b <= n <= n_max.

    With ``collect`` every maximum family is kept (deduplicated up to
    relabeling when ``spec.isomorphism_reduction``). The node budget is
    shared across work units in sequential mode and applies per unit when
    ``jobs > 1``; hitting it marks the result truncated.
    """
    units = []
    for n in range(spec.a + spec.b, spec.n_max + 1):
        roots = _roots(spec, n) if spec.isomorphism_reduction else [None]
        units.extend((n, r) for r in roots)

    results = []
    if jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = [ex.submit(_search_unit, spec, n, r, spec.node_budget, prune, collect) for n, r in units]
            results = [f.result() for f in futs]
    else:
        remaining = spec.node_budget
        for n, r in units:
            res = _search_unit(spec, n, r, max(remaining, 0), prune, collect)
            remaining -= res[2]
            results.append(res)
            if res[3]:
                break

    per_n: dict[int, dict] = {}
    best_by_n: dict[int, list] = {}
    for (n, _), (best, fams, nodes, trunc) in zip(units, results):
        row = per_n.setdefault(n, {"n": n, "max_m": 0, "nodes": 0, "truncated": False})
        row["nodes"] += nodes
        row["truncated"] |= trunc
        if best > row["max_m"]:
            row["max_m"] = best
            best_by_n[n] = list(fams)
        elif best == row["max_m"]:
            best_by_n.setdefault(n, []).extend(fams)
    truncated = any(r["truncated"] for r in per_n.values()) or len(results) < len(units)
    max_m = max((r["max_m"] for r in per_n.values()), default=0)
    nodes = sum(r["nodes"] for r in per_n.values())

    witnesses = []
    if collect:
        seen = set()
        for n in sorted(best_by_n):
            if per_n[n]["max_m"] != max_m:
                continue
            for fam in best_by_n[n]:
                key = canonical_form(fam) if spec.isomorphism_reduction else (n, tuple(sorted(fam)))
                if key not in seen:
                    seen.add(key)
                    witnesses.append(key)
        witnesses = [_instance(spec, key) for key in sorted(witnesses)]
        for w in witnesses:
            _verify_witness(spec, w)
    if truncated:
        log.warning("search truncated after %d nodes; max_m = %d is only a lower bound", nodes, max_m)

    bound = spec.bound
    res = SearchResult(spec, max_m, bound, (not truncated) and max_m == bound, witnesses,
                       [per_n[n] for n in sorted(per_n)], truncated, nodes)
    if max_m > bound and not truncated and spec.profile is not Profile.CONJ41:
        raise AssertionError(f"search found m = {max_m} above the proven bound {bound}")
    if collect and not truncated and res.tight and spec.isomorphism_reduction:
        res.unique_structure = len(witnesses) == 1 and _is_standard_structure(spec, witnesses[0])
    return res


def _is_standard_structure(spec: SearchSpec, inst: PairFamilyInstance) -> bool:
    if spec.profile is Profile.HEMIBUNDLED and spec.t == 0 and spec.a < spec.b:
        return recognize_extremal_t0(inst) is not None
    if spec.profile is Profile.BOLLOBAS:
        return check_bollobas(inst).extremal_recognized is not None
    return False


@dataclass(frozen=True)
class UniquenessCertificate:
    unique: bool
    witness_count: int
    truncated: bool = False


def certify_uniqueness_t0(a: int, b: int, n_max: int, node_budget: int = DEFAULT_NODE_BUDGET,
                          jobs: int = 1) -> UniquenessCertificate:
    """Enumerate every extremal t = 0 hemi-bundled family up to relabeling and
    report whether the star-plus-complements class is the only one.

    Uniqueness concerns families with A_i cap B_j empty iff i = j, so the
    cross condition is imposed in both directions here. Under the one-sided
    condition alone the bound is still attained, but by several classes.
    """
    if a >= b:
        raise PreconditionError("uniqueness is only claimed for a < b")
    spec = SearchSpec(a, b, 0, n_max, Profile.HEMIBUNDLED, ordering=SYMMETRIC,
                      node_budget=node_budget)
    res = search_max_family(spec, jobs=jobs)
    target = binom(a + b - 1, a - 1)
    if res.truncated:
        return UniquenessCertificate(False, len(res.witnesses), True)
    classes = [w for w in res.witnesses if w.m == target]
    unique = len(classes) == 1 and recognize_extremal_t0(classes[0]) is not None
    return UniquenessCertificate(unique, len(classes))


# -- Ahlswede-Khachatrian bound and the conjecture harness ----------------------

def ak_bound(n: int, k: int, t: int) -> int:
    """Maximum size of a k-uniform t-intersecting family on [n].

    Closed form from the complete intersection theorem (external literature):
    the best of the Frankl families {F : |F cap [t+2r]| >= t+r}.
    """
    if not 1 <= t <= k <= n:
        raise PreconditionError(f"need 1 <= t <= k <= n, got n={n}, k={k}, t={t}")
    best = 0
    r = 0
    while t + 2 * r <= n:
        core = t + 2 * r
        size = sum(binom(core, s) * binom(n - core, k - s) for s in range(t + r, min(core, k) + 1))
        best = max(best, size)
        r += 1
    return best


def ak_bruteforce(n: int, k: int, t: int) -> int:
    """Maximum t-intersecting k-uniform family by exhaustive clique search (tiny n)."""
    sets = list(cb.k_subsets(n, k))
    adj = [0] * len(sets)
    for i, x in enumerate(sets):
        for j, y in enumerate(sets):
            if i != j and cb.card(x & y) >= t:
                adj[i] |= 1 << j
    best = 0

    def grow(size: int, pool: int) -> None:
        nonlocal best
        best = max(best, size)
        while pool:
            if size + pool.bit_count() <= best:
                return
            low = pool & -pool
            pool ^= low
            grow(size + 1, pool & adj[low.bit_length() - 1])

    grow(0, (1 << len(sets)) - 1)
    return best


@dataclass
class ConjectureProbe:
    max_m: int
    ak: int
    consistent: bool
    profile: Profile
    result: SearchResult
    counterexample: Optional[PairFamilyInstance] = None


def conjecture41_probe(a: int, b: int, t: int, n_max: int, node_budget: int = DEFAULT_NODE_BUDGET,
                       jobs: int = 1) -> ConjectureProbe:
    """Search the conjecture's hypotheses and compare the maximum with AK(a+b, a, t).

    t = 0 routes to the plain Bollobas profile with bound C(a+b, a).
    """
    if not t <= a <= b:
        raise PreconditionError(f"need t <= a <= b, got a={a}, b={b}, t={t}")
    profile = Profile.CONJ41 if t >= 1 else Profile.BOLLOBAS
    spec = SearchSpec(a, b, t, n_max, profile, node_budget=node_budget)
    res = search_max_family(spec, jobs=jobs)
    ak = ak_bound(a + b, a, t) if t >= 1 else binom(a + b, a)
    consistent = res.max_m <= ak
    probe = ConjectureProbe(res.max_m, ak, consistent, profile, res)
    if not consistent:
        probe.counterexample = res.witnesses[0] if res.witnesses else None
        log.error("COUNTEREXAMPLE: m = %d exceeds AK(%d, %d, %d) = %d", res.max_m, a + b, a, t, ak)
    return probe


def budget_from_env(default: int = DEFAULT_NODE_BUDGET) -> int:
    raw = os.environ.get("SETPAIR_LAB_BUDGET")
    return int(raw) if raw else default
