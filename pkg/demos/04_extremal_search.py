"""Exhaustive search for the largest admissible families at desk scale.

Run: python3 demos/04_extremal_search.py
"""

from setpair_lab.combinatorics import elements
from setpair_lab.search import (SYMMETRIC, Profile, SearchSpec, canonical_form, certify_uniqueness_t0,
                                search_max_family)

for a, b in [(2, 2), (2, 3), (1, 3)]:
    res = search_max_family(SearchSpec(a, b, 0, a + b + 1, Profile.HEMIBUNDLED))
    print(f"a={a} b={b}: max m={res.max_m}, bound {res.bound}, classes {len(res.witnesses)}, "
          f"nodes {res.nodes}")

cert = certify_uniqueness_t0(2, 3, 6)
print(f"\nunique extremal family for (2,3) under the two-sided condition: {cert.unique}")

# Under the one-sided condition more shapes reach the bound.
res = search_max_family(SearchSpec(2, 3, 0, 6, Profile.HEMIBUNDLED))
sym = search_max_family(SearchSpec(2, 3, 0, 6, Profile.HEMIBUNDLED, ordering=SYMMETRIC))
print(f"one-sided classes: {len(res.witnesses)}, two-sided classes: {len(sym.witnesses)}")
k, pairs = canonical_form(res.witnesses[0].pairs)
print(f"first one-sided class on [{k}]:", [(elements(x), elements(y)) for x, y in pairs])
