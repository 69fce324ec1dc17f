"""
Embedding problems for marked groups
====================================

A solution must carry each marked subgroup of G isomorphically onto its
counterpart in B. That pins gamma down on every mark, so there is at most
one candidate, and it can be glued together directly.
"""

from galfree.catalog import default_catalog
from galfree.embed import EmbeddingProblem, MarkedGroup, all_solutions, check_extension_property, solve_with_reason
from galfree.groups import Homomorphism, cyclic, dihedral, direct_product, extend_from_generators, subgroup_generated

V = direct_product(cyclic(2), cyclic(2))  # u = 2, v = 1, uv = 3
D = dihedral(4)  # r = 1, s = 2
r, s = 1, 2

# psi: D4 -> C2 x C2 kills the centre, with psi(s) = u and psi(r) = uv
f = extend_from_generators(D, [s, r], [2, 3], V)
psi = Homomorphism(D, V, [f[g] for g in range(8)])

source = MarkedGroup(V, [subgroup_generated(V, [2]), subgroup_generated(V, [1])])
marksB = [subgroup_generated(D, [s]), subgroup_generated(D, [D.mul(s, r)])]
ep = EmbeddingProblem(source, V, Homomorphism(V, V, range(4)), D, psi, marksB)

sol, reason = solve_with_reason(ep)
print("C2xC2 over D4:", reason)
print("exhaustive search agrees:", all_solutions(ep) == [])

# with D4 itself as the source the problem is solved by the identity
ep2 = EmbeddingProblem(MarkedGroup(D, marksB), V, psi, D, psi, marksB)
sol, reason = solve_with_reason(ep2)
print("D4 over D4:", reason, sol.gamma.map)

# the extension property: (C2xC2; <u>, <v>) extends every pair of maps
# into groups of order <= 4, but not into S3
for bound in (4, 6):
    rep = check_extension_property(source, default_catalog(bound))
    print(f"bound {bound}: passed={rep.passed}, failures in", sorted({f.H.label for f in rep.failures}))
