"""
Finite groups as Cayley tables
==============================

Build a few small groups, look at their homomorphisms and subgroups, and
walk through the catalog of groups of order at most 12.
"""

from galfree.catalog import default_catalog
from galfree.groups import are_isomorphic, cyclic, direct_product, quotient, subgroup_generated, sylow, symmetric
from galfree.homs import enumerate_epimorphisms, enumerate_homomorphisms

# S3 acting on {0, 1, 2}; element k is the permutation act[k]
S3, act = symmetric(3)
print(S3, "element orders:", S3.element_orders)

# the rotations form a normal subgroup of order 3, with quotient C2
rot = subgroup_generated(S3, [act.index((1, 2, 0))])
Q, proj = quotient(S3, rot)
print("S3 / A3 has order", Q.order, "; kernel of the projection:", proj.kernel().elements)

# Sylow subgroups: one of order 3, three of order 2
for p in (2, 3):
    print(f"Sylow {p}-subgroups:", [P.elements for P in sylow(S3, p)])

# homomorphisms are found by backtracking over generator images
print("|Hom(C2, C3)| =", len(enumerate_homomorphisms(cyclic(2), cyclic(3))))
print("|Hom(C2, C2)| =", len(enumerate_homomorphisms(cyclic(2), cyclic(2))))
print("epimorphisms S3 -> C2:", [h.map for h in enumerate_epimorphisms(S3, cyclic(2))])

# C4 and C2 x C2 have the same order but different element orders
print("C4 ~ C2xC2 ?", are_isomorphic(cyclic(4), direct_product(cyclic(2), cyclic(2))) is not None)

# the shipped catalog: one representative per isomorphism type
cat = default_catalog()
print("groups per order 1..12:", cat.counts())
print("labels:", " ".join(G.label for G in cat))
