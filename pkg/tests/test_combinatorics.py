import itertools
import math
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from setpair_lab import combinatorics as cb
from setpair_lab.combinatorics import (Hypergraph, Order, colex_initial_segment, full_star,
                                       is_full_star, is_t_intersecting, kk_min_lower_shadow,
                                       local_lym_intersecting_check, lovasz_kk_bound, lower_shadow,
                                       revcolex_compare, upper_shadow)
from setpair_lab.errors import InvalidComparisonError, PreconditionError


def H(n, *edges):
    return Hypergraph.from_sets(n, edges)


@st.composite
def hypergraphs(draw, n_max=7, r_max=4, nonempty=False):
    n = draw(st.integers(2, n_max))
    r = draw(st.integers(1, min(r_max, n)))
    layer = list(itertools.combinations(range(1, n + 1), r))
    edges = draw(st.lists(st.sampled_from(layer), unique=True, min_size=1 if nonempty else 0,
                          max_size=len(layer)))
    return Hypergraph.from_sets(n, edges, r)


# -- binomials and orders -------------------------------------------------------

@pytest.mark.parametrize("n,k,expected", [(5, 2, 10), (4, 0, 1), (3, 5, 0), (3, -1, 0)])
def test_binom(n, k, expected):
    assert cb.binom(n, k) == expected


@pytest.mark.parametrize("a,b,expected", [
    ({1, 2}, {1, 3}, Order.GT),
    ({2, 3}, {1, 4}, Order.GT),
    ({1, 2}, {1, 2}, Order.EQ),
    ({1, 3}, {1, 2}, Order.LT),
])
def test_revcolex_examples(a, b, expected):
    assert revcolex_compare(cb.mask(a), cb.mask(b)) == expected


def test_revcolex_rejects_mixed_sizes():
    with pytest.raises(InvalidComparisonError):
        revcolex_compare(cb.mask({1}), cb.mask({1, 2}))


def _revcolex_by_definition(a, b):
    if a == b:
        return Order.EQ
    return Order.GT if max(set(b) ^ set(a)) in b else Order.LT


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(
    *[st.sets(st.integers(1, n), min_size=n // 2, max_size=n // 2) for _ in range(3)])))
def test_revcolex_total_order(triple):
    x, y, z = (cb.mask(s) for s in triple)
    for p, q in itertools.permutations(triple, 2):
        assert revcolex_compare(cb.mask(p), cb.mask(q)) == _revcolex_by_definition(p, q)
    if x != y:
        assert {revcolex_compare(x, y), revcolex_compare(y, x)} == {Order.GT, Order.LT}
    if revcolex_compare(x, y) == Order.GT and revcolex_compare(y, z) == Order.GT:
        assert revcolex_compare(x, z) == Order.GT


def test_k_subsets_are_colex():
    got = [cb.elements(m) for m in cb.k_subsets(5, 2)]
    expected = sorted(itertools.combinations(range(1, 6), 2), key=lambda s: sorted(s, reverse=True))
    assert got == expected


# -- hypergraph type ------------------------------------------------------------

def test_hypergraph_canonical_and_validated():
    h = H(4, (2, 3), (1, 2))
    assert h.sets() == [(1, 2), (2, 3)]
    assert h == H(4, (1, 2), (2, 3))
    with pytest.raises(PreconditionError):
        H(4, (1, 2), (1, 2, 3))
    with pytest.raises(PreconditionError):
        H(3, (1, 4))


# -- shadows --------------------------------------------------------------------

def test_upper_shadow_examples():
    assert upper_shadow(H(4, (1, 2)), 1).sets() == [(1, 2, 3), (1, 2, 4)]
    up = upper_shadow(full_star(5, 2, 1), 1)
    assert len(up) == 6 and all(1 in e for e in up.sets())
    h = H(5, (1, 2), (3, 4))
    assert upper_shadow(h, 0) == h
    with pytest.raises(PreconditionError):
        upper_shadow(h, 4)


def test_lower_shadow_examples():
    assert lower_shadow(H(3, (1, 2, 3)), 2).sets() == [(1, 2), (1, 3), (2, 3)]
    assert lower_shadow(H(3, (1, 2), (1, 3), (2, 3)), 1).sets() == [(1,), (2,), (3,)]
    h = H(5, (1, 2, 4))
    assert lower_shadow(h, 3) == h
    with pytest.raises(PreconditionError):
        lower_shadow(h, 4)


def _brute_upper(h, b):
    return {frozenset(s) for s in itertools.combinations(range(1, h.n + 1), h.r + b)
            if any(set(e) <= set(s) for e in h.sets())}


def _brute_lower(h, size):
    return {frozenset(s) for e in h.sets() for s in itertools.combinations(e, size)}


@given(hypergraphs(), st.integers(0, 3))
def test_shadows_match_enumeration(h, b):
    if h.r + b <= h.n:
        assert {frozenset(e) for e in upper_shadow(h, b).sets()} == _brute_upper(h, b)
    size = max(h.r - b, 0)
    assert {frozenset(e) for e in lower_shadow(h, size).sets()} == _brute_lower(h, size)


@given(hypergraphs(nonempty=True), st.integers(0, 3), st.data())
def test_shadows_are_monotone(h, b, data):
    keep = data.draw(st.lists(st.booleans(), min_size=len(h), max_size=len(h)))
    sub = Hypergraph(h.n, h.r, tuple(e for e, k in zip(h, keep) if k))
    if h.r + b <= h.n:
        assert upper_shadow(sub, b).issubset(upper_shadow(h, b))
    size = max(h.r - b, 0)
    assert lower_shadow(sub, size).issubset(lower_shadow(h, size))


@given(hypergraphs(), st.integers(0, 3))
def test_complement_duality(h, b):
    if h.r + b > h.n:
        return
    up = upper_shadow(h, b)
    dual = lower_shadow(h.complement(), h.n - h.r - b)
    assert up.complement() == dual


# -- intersecting families and stars ---------------------------------------------

def test_t_intersecting_examples():
    assert is_t_intersecting(full_star(5, 2, 1), 1)
    assert not is_t_intersecting(H(4, (1, 2), (3, 4)), 1)
    assert is_t_intersecting(H(4, (1, 2), (3, 4)), 0)
    assert is_t_intersecting(H(5, (1, 2, 3), (1, 2, 4)), 2)
    assert not is_t_intersecting(H(5, (1, 2, 3), (1, 4, 5)), 2)


@given(hypergraphs(), st.integers(0, 3))
def test_t_intersecting_matches_pairs(h, t):
    sets = [set(e) for e in h.sets()]
    assert is_t_intersecting(h, t) == all(len(x & y) >= t for x in sets for y in sets)


def test_full_star_examples():
    s = full_star(5, 2, 1)
    assert s.sets() == [(1, 2), (1, 3), (1, 4), (1, 5)]
    assert len(s) == math.comb(4, 1)
    assert full_star(6, 1, 4).sets() == [(4,)]
    assert full_star(4, 4, 1).sets() == [(1, 2, 3, 4)]
    with pytest.raises(PreconditionError):
        full_star(4, 2, 5)


def test_is_full_star_examples():
    assert is_full_star(full_star(5, 2, 3)) == 3
    assert is_full_star(H(3, (1, 2), (1, 3), (2, 3))) is None
    assert is_full_star(H(3, (1, 2, 3))) == 1
    assert is_full_star(H(5, (1, 2), (1, 3))) is None


@pytest.mark.parametrize("n,r", [(n, r) for n in range(1, 7) for r in range(1, n + 1)])
def test_is_full_star_round_trip(n, r):
    for c in range(1, n + 1):
        got = is_full_star(full_star(n, r, c))
        # r = n makes every element a center
        assert got == (1 if r == n else c)


# -- Kruskal-Katona ---------------------------------------------------------------

def test_colex_segments():
    assert colex_initial_segment(3, 2, 5).sets() == [(1, 2), (1, 3), (2, 3)]
    assert colex_initial_segment(4, 2, 5).sets() == [(1, 2), (1, 3), (2, 3), (1, 4)]
    assert len(colex_initial_segment(10, 2, 5)) == 10
    with pytest.raises(PreconditionError):
        colex_initial_segment(11, 2, 5)


def test_kk_examples():
    assert kk_min_lower_shadow(3, 2, 1, 5) == 3
    assert kk_min_lower_shadow(4, 2, 1, 5) == 4
    for k, kt in [(2, 1), (3, 1), (3, 2)]:
        assert kk_min_lower_shadow(1, k, kt, 6) == math.comb(k, kt)


def _triangle_oracle():
    """Fewest edges of a graph on at most v vertices with at least m triangles,
    read off the networkx atlas of all graphs with up to 7 vertices."""
    best = {}
    for g in nx.graph_atlas_g()[1:]:
        v, e = g.number_of_nodes(), g.number_of_edges()
        tri = sum(nx.triangles(g).values()) // 3
        key = (v, tri)
        best[key] = min(best.get(key, e), e)
    return best


def _brute_min_shadow(m, k, kt, n, best_tri):
    if kt == k:
        return m
    if kt == 0:
        return 1 if m else 0
    if kt == 1:
        # the shadow is the vertex set; m k-sets need C(s, k) >= m
        return next(s for s in range(k, n + 1) if math.comb(s, k) >= m)
    # k=3, kt=2: triangles against edges
    return min(e for (v, tri), e in best_tri.items() if v <= n and tri >= m)


def test_kk_matches_bruteforce_grid():
    best_tri = _triangle_oracle()
    checked = 0
    for n in range(1, 8):
        for k in range(1, 4):
            for kt in range(0, k + 1):
                for m in range(1, min(12, math.comb(n, k)) + 1):
                    assert kk_min_lower_shadow(m, k, kt, n) == _brute_min_shadow(m, k, kt, n, best_tri), \
                        (m, k, kt, n)
                    checked += 1
    assert checked > 200


@pytest.mark.parametrize("n,k,kt", [(5, 2, 1), (5, 3, 2), (6, 3, 2), (6, 3, 1)])
def test_kk_matches_direct_enumeration(n, k, kt):
    layer = list(cb.k_subsets(n, k))
    for m in range(1, 5):
        brute = min(len(lower_shadow(Hypergraph(n, k, fam), kt))
                    for fam in itertools.combinations(layer, m))
        assert kk_min_lower_shadow(m, k, kt, n) == brute


def test_lovasz_examples():
    assert lovasz_kk_bound(35, 3, 1) == pytest.approx(21, abs=1e-9)
    assert lovasz_kk_bound(1, 3, 1) == pytest.approx(3, abs=1e-9)
    x = (1 + math.sqrt(33)) / 2
    assert lovasz_kk_bound(4, 2, 1) == pytest.approx(x, abs=1e-9)
    assert lovasz_kk_bound(4, 2, 1) <= kk_min_lower_shadow(4, 2, 1, 5)


def test_lovasz_never_beats_exact():
    for n in range(1, 8):
        for k in range(1, 4):
            for drop in range(0, k):
                for m in range(1, min(12, math.comb(n, k)) + 1):
                    assert lovasz_kk_bound(m, k, drop) <= kk_min_lower_shadow(m, k, k - drop, n) + 1e-9


# -- local LYM -------------------------------------------------------------------

def test_lym_examples():
    rep = local_lym_intersecting_check(full_star(5, 2, 1), 1)
    assert (rep.lhs, rep.rhs, rep.holds, rep.equality) == (1, 1, True, True)
    rep = local_lym_intersecting_check(H(7, (1, 2, 3)), 1)
    assert rep.lhs == Fraction(4, 20) and rep.rhs == Fraction(1, 15)
    assert rep.holds and not rep.equality
    assert local_lym_intersecting_check(H(6, (1, 2), (1, 3), (2, 3)), 0).equality


def test_lym_preconditions():
    with pytest.raises(PreconditionError):
        local_lym_intersecting_check(H(5, (1, 2), (3, 4)), 1)
    with pytest.raises(PreconditionError):
        local_lym_intersecting_check(H(5, (1, 2, 3)), 1)
    with pytest.raises(PreconditionError):
        local_lym_intersecting_check(H(4, (1, 2)), 3)


def intersecting_graphs(n):
    layer = list(cb.k_subsets(n, 2))
    for bits in range(1, 1 << len(layer)):
        fam = tuple(e for i, e in enumerate(layer) if bits >> i & 1)
        h = Hypergraph(n, 2, fam)
        if is_t_intersecting(h, 1):
            yield h


def test_lym_sweep_two_uniform():
    seen_equalities = 0
    for n in range(4, 7):
        for h in intersecting_graphs(n):
            for b in range(0, n - 1):
                rep = local_lym_intersecting_check(h, b)
                assert rep.holds
                star = is_full_star(h) is not None
                if 2 * h.r < n:  # the equality clause needs 2a < n; at 2a = n triangles tie
                    assert rep.equality == (star or b == 0), (h.sets(), b)
                elif star or b == 0:
                    assert rep.equality
                seen_equalities += rep.equality
    assert seen_equalities > 0
