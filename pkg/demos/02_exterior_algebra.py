"""Wedge products, initial sets and the hypergraph attached to a subspace.

Run: python3 demos/02_exterior_algebra.py
"""

import random

from setpair_lab import combinatorics as cb
from setpair_lab.exterior import (BasisMatrix, Multivector, echelonize, initial_hypergraph,
                                  is_self_annihilating, monomial_subspace, wedge)


def e(n, *elems):
    return Multivector(n, len(elems), {cb.mask(elems): 1})


print("f13 ^ f2 =", wedge(e(3, 1, 3), e(3, 2)).terms, "(mask 7 is {1,2,3}, coefficient -1)")

# A self-annihilating subspace: everything divisible by one fixed vector v.
rng = random.Random(1)
v = Multivector.vector([2, -1, 0, 3, 1])
gens = [wedge(v, Multivector.vector([int(i == j) for i in range(5)])) for j in range(5)]
w = echelonize(gens, 5, 2)
print(f"\nW = v ^ V has dimension {w.dim}; self-annihilating: {is_self_annihilating(w)}")
h = initial_hypergraph(w)
print("initial hypergraph:", h.sets())
print("pairwise intersecting:", cb.is_t_intersecting(h, 1))

# A random basis F turns a hypergraph into a subspace and back again.
F = BasisMatrix.random(5, rng)
h = cb.full_star(5, 2, center=3)
w = monomial_subspace(F, h)
print(f"\nF(star at 3) has dimension {w.dim}; recovered hypergraph equal: {initial_hypergraph(w, F) == h}")
