"""
Invariant forms of a twisted action
===================================

B acts on symbols x^b by right multiplication and on coefficients through
Frobenius. Summing a basis element over B0 gives forms fixed by B0, and a
Moore-type matrix recovers the symbols from them.
"""

from galfree.fields import determinant
from galfree.twisted import cyclic_setup, invariant_generators, recovery_matrix, twisted_action, verify_construction

# GF(4) over GF(2) with B = B0 = C2
setup = cyclic_setup(2, 1, 2, 2, poly=[1, 1, 1])
for t in invariant_generators(setup):
    print(t, "fixed:", twisted_action(setup, 1, t) == t)
W, Winv = recovery_matrix(setup, 0)
print("W =", W, "det =", determinant(setup.L, W), "inverse =", Winv)

# GF(64) with B = C6 and B0 the subgroup of order 3
big = cyclic_setup(2, 1, 6, 3, poly=[1, 1, 0, 0, 0, 0, 1])
rep = verify_construction(big)
print(f"{rep.count} forms for |B| = {rep.order}; coset representatives {big.R}")
for name, ok in rep.checks.items():
    print(f"  [{'ok' if ok else 'FAIL'}] {name}")
