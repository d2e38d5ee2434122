"""Check the classic set-pair bound and its skew variant on small families.

Run: python3 demos/01_set_pair_bounds.py
"""

import itertools

from setpair_lab import PairFamilyInstance, check_bollobas, check_hemibundled

# Every 2-subset of [4] paired with its complement: the tight Bollobas family.
layer = [(list(a), sorted(set(range(1, 5)) - set(a))) for a in itertools.combinations(range(1, 5), 2)]
rep = check_bollobas(PairFamilyInstance.from_sets(4, layer))
print(f"full layer: m={len(layer)}, sum={rep.weighted_sum}, equality={rep.equality}")
print(f"  recognized structure: {rep.extremal_recognized}")

# Pairs whose A-sides all pass through element 1, with B the complement in [5].
star = [([1, x], sorted(set(range(1, 6)) - {1, x})) for x in range(2, 6)]
rep = check_hemibundled(PairFamilyInstance.from_sets(5, star))
print(f"\nstar family: m={len(star)}, bound {rep.m_bound}, sum={rep.weighted_sum}")
print(f"  equality={rep.equality}, recognized {rep.extremal_recognized}")

# Break the diagonal condition on purpose and look at the witness.
bad = PairFamilyInstance.from_sets(5, [([1, 2], [2, 3, 4]), ([1, 3], [2, 4, 5])])
rep = check_hemibundled(bad)
print("\nA_1 meets B_1, so the diagonal flag fails:")
for name, flag in rep.hypotheses.items():
    print(f"  {name:15s} holds={flag.holds} witness={flag.witness}")
