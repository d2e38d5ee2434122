"""Shadows, the local LYM inequality and the AK-type conjecture probe.

Run: python3 demos/05_shadows_and_conjecture.py
"""

from setpair_lab.combinatorics import (Hypergraph, full_star, kk_min_lower_shadow,
                                       local_lym_intersecting_check, lovasz_kk_bound)
from setpair_lab.search import ak_bound, conjecture41_probe

print("fewest edges spanned by m triangles (n=7):")
for m in (1, 2, 4, 7, 10):
    print(f"  m={m:2d}: exact {kk_min_lower_shadow(m, 3, 2, 7)}, Lovasz {lovasz_kk_bound(m, 3, 1):.3f}")

for h, label in [(full_star(6, 2, 1), "star"), (Hypergraph.from_sets(6, [[1, 2], [1, 3], [2, 3]], 2), "triangle")]:
    rep = local_lym_intersecting_check(h, 2)
    print(f"\nLYM with b=2 for the {label}: {rep.lhs} >= {rep.rhs}, equality={rep.equality}")

print()
for a, b, t in [(2, 2, 1), (2, 3, 1), (3, 3, 1)]:
    probe = conjecture41_probe(a, b, t, 6)
    print(f"(a,b,t)=({a},{b},{t}): search {probe.max_m}, AK value {probe.ak}, consistent={probe.consistent}")
print("AK(7,3,2) =", ak_bound(7, 3, 2))
