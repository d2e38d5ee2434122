import itertools
import random
from fractions import Fraction

import pytest

from setpair_lab import combinatorics as cb
from setpair_lab.errors import InfeasibleParameterError, PreconditionError
from setpair_lab.linalg import RationalSubspace
from setpair_lab.proof import lift_sets
from setpair_lab.search import SYMMETRIC, Profile, SearchSpec, search_max_family
from setpair_lab.verifiers import (SETS, SUBSPACES, PairFamilyInstance, check_bollobas,
                                   check_conjecture41, check_furedi_subspaces, check_hemibundled,
                                   check_weighted_space, recognize_extremal_t0)

from conftest import star_pairs


def sets_instance(n, pairs, t=0):
    return PairFamilyInstance.from_sets(n, pairs, t)


def full_layer_pairs(a, b):
    ground = set(range(1, a + b + 1))
    return [(sorted(A), sorted(ground - set(A))) for A in itertools.combinations(sorted(ground), a)]


# -- instance type --------------------------------------------------------------

def test_instance_validation():
    with pytest.raises(PreconditionError):
        sets_instance(3, [([1], [4])])
    with pytest.raises(PreconditionError):
        sets_instance(3, [([], [1])])
    with pytest.raises(PreconditionError):
        PairFamilyInstance("graphs", 3, ())
    inst = sets_instance(5, star_pairs(2, 3))
    assert inst.m == 4 and inst.N == 5 and inst.a_sizes == [2] * 4


# -- Bollobas -------------------------------------------------------------------

def test_bollobas_full_layer_is_extremal():
    rep = check_bollobas(sets_instance(4, full_layer_pairs(2, 2)))
    assert rep.hypotheses_hold and rep.equality and rep.conclusion_holds
    assert rep.bound_value == 6 and rep.weighted_sum == 1
    assert rep.extremal_recognized == {"X": [1, 2, 3, 4]}


def test_bollobas_single_pair():
    rep = check_bollobas(sets_instance(3, [([1], [2])]))
    assert rep.conclusion_holds and not rep.equality and rep.bound_value == 2


def test_bollobas_witness_from_intersection_table():
    pairs = [([1, 2], [3, 4]), ([3, 4], [1, 2]), ([1, 3], [2, 4])]
    rep = check_bollobas(sets_instance(4, pairs))
    table = {(i, j): set(pairs[i][0]) & set(pairs[j][1]) for i in range(3) for j in range(3)}
    assert all(table[i, i] == set() for i in range(3))
    assert all(table[i, j] for i in range(3) for j in range(3) if i != j)
    assert rep.hypotheses_hold
    bad = pairs + [([1, 2], [3, 4])]
    rep = check_bollobas(sets_instance(4, bad))
    assert not rep.hypotheses_hold
    first = next((i + 1, j + 1) for i in range(4) for j in range(4)
                 if i != j and not set(bad[i][0]) & set(bad[j][1]))
    assert rep.hypotheses["cross_intersecting"].witness == first


def test_bollobas_rejects_non_uniform():
    with pytest.raises(PreconditionError, match="pair 2"):
        check_bollobas(sets_instance(4, [([1], [2, 3]), ([1, 2], [3, 4])]))


def test_bollobas_exhaustive_n4():
    candidates = full_layer_pairs(2, 2)
    for k in range(1, len(candidates) + 1):
        for fam in itertools.combinations(candidates, k):
            rep = check_bollobas(sets_instance(4, fam))
            assert rep.hypotheses_hold and rep.conclusion_holds
            full = {tuple(A) for A, _ in fam} == {tuple(A) for A, _ in candidates}
            assert rep.equality == full
            assert (rep.extremal_recognized is not None) == full


# -- hemi-bundled -------------------------------------------------------------------

def test_hemibundled_star_instance(star_instance):
    rep = check_hemibundled(star_instance)
    assert rep.hypotheses_hold and rep.conclusion_holds and rep.equality
    assert rep.weighted_sum == Fraction(4, 4) and rep.m_bound == 4
    assert rep.extremal_recognized == {"X": [1, 2, 3, 4, 5], "center": 1}


def test_hemibundled_empty_and_degenerate():
    rep = check_hemibundled(PairFamilyInstance(SETS, 4, ()))
    assert rep.weighted_sum == 0 and rep.conclusion_holds
    rep = check_hemibundled(sets_instance(10, [([1, 2, 3], [1, 2, 4, 5, 6, 7, 8])], t=2))
    assert rep.weighted_sum == 1 and rep.equality and rep.m_bound == 1


def test_hemibundled_diagonal_violation():
    rep = check_hemibundled(sets_instance(5, [([1, 2], [2, 3, 4])]))
    assert not rep.hypotheses_hold
    assert rep.hypotheses["diagonal"].witness == (1, 1)
    assert rep.weighted_sum is None


def test_hemibundled_infeasible_threshold():
    with pytest.raises(InfeasibleParameterError):
        check_hemibundled(sets_instance(6, [([1], [2, 3, 4, 5])], t=1))


def test_hemibundled_sorts_and_maps_witnesses():
    # a = (3, 2): verifier must reorder; witnesses come back in input numbering
    pairs = [([1, 2, 3], [4, 5, 6, 7]), ([1, 4], [2, 3, 5, 6, 7])]
    rep = check_hemibundled(sets_instance(7, pairs))
    assert rep.permutation == [1, 0]
    assert rep.hypotheses_hold
    assert rep.weighted_sum == Fraction(1, 6) + Fraction(1, 15)
    swapped = [([1, 2, 3], [4, 5, 6, 7]), ([1, 5], [2, 3, 4, 6, 7])]
    rep = check_hemibundled(sets_instance(7, swapped))
    # sorted order puts pair 2 first; A_2 cap B_1 = {5} but A_{2} vs B_{1} is the i<j test
    assert rep.hypotheses_hold
    broken = [([1, 2, 3], [4, 5, 6, 7]), ([4, 5], [1, 2, 3, 6, 7])]
    rep = check_hemibundled(sets_instance(7, broken))
    assert rep.hypotheses["A_intersecting"].witness == (2, 1)


def test_hemibundled_equal_sizes_remark():
    pairs = [([1, 2], [3, 4]), ([1, 3], [2, 4]), ([1, 4], [2, 3])]
    rep = check_hemibundled(sets_instance(4, pairs))
    assert rep.equality and rep.extremal_recognized is None
    assert rep.remarks == ["a=b extremal structures not unique"]


def test_hemibundled_one_sided_order_matters():
    # valid in this order but A_4 cap B_1 is empty, so the two-sided structure fails
    pairs = [([1, 2], [3, 4, 5]), ([1, 3], [2, 4, 5]), ([1, 4], [2, 3, 5]), ([1, 6], [2, 3, 4])]
    rep = check_hemibundled(sets_instance(6, pairs))
    assert rep.hypotheses_hold and rep.equality
    assert rep.extremal_recognized is None
    assert not set(pairs[3][0]) & set(pairs[0][1])


# -- recognizer --------------------------------------------------------------------

def test_recognizer_examples(star_instance):
    assert recognize_extremal_t0(star_instance) == {"X": [1, 2, 3, 4, 5], "center": 1}
    moved = star_pairs(2, 3)
    moved[0] = (moved[0][0], [3, 4, 6])  # same sizes, but the ground set grows to 6
    assert recognize_extremal_t0(sets_instance(6, moved)) is None
    shrunk = [(A, B) for A, B in star_pairs(2, 3)]
    shrunk[2] = (shrunk[2][0], shrunk[2][1][:2])
    with pytest.raises(PreconditionError):
        recognize_extremal_t0(sets_instance(5, shrunk))  # b_i no longer uniform
    assert recognize_extremal_t0(sets_instance(3, [([1], [2, 3])])) == {"X": [1, 2, 3], "center": 1}


def _two_sided(inst):
    P = inst.pairs
    return all(bool(P[i][0] & P[j][1]) == (i != j) for i in range(inst.m) for j in range(inst.m))


@pytest.mark.parametrize("a,b", [(1, 2), (1, 3), (2, 3), (1, 4)])
def test_recognizer_iff_equality_on_two_sided_instances(a, b):
    res = search_max_family(SearchSpec(a, b, 0, 6, Profile.HEMIBUNDLED, ordering=SYMMETRIC))
    assert res.tight
    seen = 0
    for w in res.witnesses:
        for k in range(1, w.m + 1):
            for sub in itertools.combinations(w.pairs, k):
                inst = PairFamilyInstance(SETS, w.n, sub)
                assert _two_sided(inst)
                rep = check_hemibundled(inst)
                assert rep.hypotheses_hold
                assert (recognize_extremal_t0(inst) is not None) == rep.equality
                seen += 1
    assert seen >= res.max_m


def test_recognizer_iff_equality_random_two_sided():
    rng = random.Random(42)
    checked = 0
    for _ in range(300):
        n = rng.randint(4, 6)
        a = rng.randint(1, 2) if n >= 5 else 1
        b = rng.randint(a + 1, n - a)
        fam = []
        for _ in range(12):
            A = frozenset(rng.sample(range(1, n + 1), a))
            B = frozenset(rng.sample(sorted(set(range(1, n + 1)) - A), b))
            cand = fam + [(A, B)]
            if all(bool(x[0] & y[1]) == (i != j) for i, x in enumerate(cand) for j, y in enumerate(cand)) \
                    and all(x[0] & y[0] for x in cand for y in cand):
                fam = cand
        inst = sets_instance(n, [(sorted(A), sorted(B)) for A, B in fam])
        rep = check_hemibundled(inst)
        assert rep.hypotheses_hold
        assert (recognize_extremal_t0(inst) is not None) == rep.equality
        checked += rep.equality
    assert checked > 0


# -- subspace verifiers ---------------------------------------------------------------

def test_furedi_t0_matches_bollobas_bound():
    inst = lift_sets(sets_instance(4, full_layer_pairs(2, 2)))
    rep = check_furedi_subspaces(inst)
    assert rep.bound_value == 6 and rep.equality and rep.conclusion_holds


def test_furedi_single_pair():
    a = RationalSubspace.span(5, [[1, 1, 0, 0, 0], [0, 0, 1, 0, 0]])
    b = RationalSubspace.span(5, [[1, 1, 0, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    inst = PairFamilyInstance(SUBSPACES, 5, ((a, b),), t=1)
    rep = check_furedi_subspaces(inst)
    assert rep.hypotheses_hold and rep.bound_value == 3 and rep.conclusion_holds


def test_furedi_cross_witness():
    e = lambda *xs: RationalSubspace.coordinate(6, xs)  # noqa: E731
    pairs = ((e(1, 2), e(3, 4)), (e(3, 5), e(1, 6)))  # A_1 cap B_2 = span{e_1}: ok
    rep = check_furedi_subspaces(PairFamilyInstance(SUBSPACES, 6, pairs))
    assert rep.hypotheses_hold
    pairs = ((e(1, 2), e(3, 4)), (e(3, 5), RationalSubspace.span(6, [[0, 0, 0, 0, 0, 1], [0, 0, 0, 0, 1, 1]])))
    rep = check_furedi_subspaces(PairFamilyInstance(SUBSPACES, 6, pairs))
    assert rep.hypotheses["cross"].witness == (1, 2)


def test_furedi_two_sided_option():
    e = lambda *xs: RationalSubspace.coordinate(4, xs)  # noqa: E731
    pairs = ((e(1), e(2)), (e(3), e(1)))  # A_2 cap B_1 = 0 only matters two-sided
    one = check_furedi_subspaces(PairFamilyInstance(SUBSPACES, 4, pairs))
    two = check_furedi_subspaces(PairFamilyInstance(SUBSPACES, 4, pairs), two_sided=True)
    assert one.hypotheses_hold and not two.hypotheses_hold
    assert two.hypotheses["cross"].witness == (2, 1)


def test_weighted_space_examples():
    e = lambda *xs: RationalSubspace.coordinate(4, xs)  # noqa: E731
    rep = check_weighted_space(PairFamilyInstance(SUBSPACES, 4, ((e(1), e(2, 3)),)))
    assert rep.weighted_sum == Fraction(1, 3)
    rep = check_weighted_space(lift_sets(sets_instance(4, full_layer_pairs(2, 2))))
    assert rep.weighted_sum == 1 and rep.equality


def test_weighted_space_mixed_dims_bruteforce():
    # every valid coordinate instance with dims a = (1, 2), b = (3, 2) in Q^4
    subsets = lambda k: [set(c) for c in itertools.combinations(range(1, 5), k)]  # noqa: E731
    found = 0
    for A1, B1, A2, B2 in itertools.product(subsets(1), subsets(3), subsets(2), subsets(2)):
        if A1 & B1 or A2 & B2 or not A1 & B2 or not A2 & B1:
            continue
        inst = lift_sets(sets_instance(4, [(sorted(A1), sorted(B1)), (sorted(A2), sorted(B2))]))
        rep = check_weighted_space(inst)
        assert rep.hypotheses_hold and rep.weighted_sum == Fraction(5, 12)
        found += 1
    assert found > 0


def test_weighted_space_monotonicity():
    e = lambda *xs: RationalSubspace.coordinate(5, xs)  # noqa: E731
    with pytest.raises(PreconditionError, match="pair 2"):
        check_weighted_space(PairFamilyInstance(SUBSPACES, 5, ((e(1, 2), e(3)), (e(3), e(1, 2)))))


def test_conjecture41_flags():
    pairs = [([1, 2], [3, 4]), ([1, 3], [2, 4]), ([2, 3], [1, 4])]
    rep = check_conjecture41(sets_instance(4, pairs, t=1))
    assert rep.hypotheses_hold
    rep = check_conjecture41(sets_instance(4, pairs[:2] + [([3, 4], [1, 2])], t=1))
    assert not rep.hypotheses["cross"].holds or not rep.hypotheses["A_t_intersecting"].holds


# -- lift consistency ---------------------------------------------------------------------

def random_set_instance(rng):
    n = rng.randint(3, 7)
    a = rng.randint(1, n // 2)
    b = rng.randint(a, n - a)
    t = rng.randint(0, 1)
    pairs = []
    for _ in range(rng.randint(1, 5)):
        A = rng.sample(range(1, n + 1), a)
        B = rng.sample(range(1, n + 1), b)
        pairs.append((A, B))
    return sets_instance(n, pairs, t)


def _report_key(rep):
    return ({k: (f.holds, f.witness) for k, f in rep.hypotheses.items()}, rep.weighted_sum,
            rep.bound_value, rep.conclusion_holds, rep.equality)


def lift_consistency_cases(count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_set_instance(rng)


@pytest.mark.parametrize("verifier", [check_furedi_subspaces, check_weighted_space, check_hemibundled])
def test_lift_consistency(verifier):
    for inst in lift_consistency_cases(40, seed=5):
        lifted = lift_sets(inst)
        try:
            want = verifier(inst)
        except PreconditionError as exc:
            with pytest.raises(type(exc)):
                verifier(lifted)
            continue
        assert _report_key(verifier(lifted)) == _report_key(want)
