"""
Inertia and ramification, group-theoretically
=============================================

Only the Galois group, the residue map and the residue characteristic are
kept. Inertia is the kernel of the residue map; ramification is its
p-Sylow subgroup.
"""

from galfree.errors import GalfreeError
from galfree.groups import Homomorphism, cyclic, symmetric
from galfree.valuation import (
    NumericalExtensionData,
    RamificationDatum,
    check_tower,
    defect,
    splitting_report,
)

S3, act = symmetric(3)
parity = [sum(1 for i in range(3) for j in range(i) if p[j] > p[i]) % 2 for p in act]
rho = Homomorphism(S3, cyclic(2), parity)

for p in (0, 2, 3, 5):
    try:
        datum = RamificationDatum(rho, p)
    except GalfreeError as exc:
        print(f"p = {p}: rejected ({exc})")
        continue
    rep = check_tower(datum)
    print(f"p = {p}: (|G1|, |G0|, |Gamma|) = {rep.orders}, all checks: {rep.ok}")

datum = RamificationDatum(rho, 3)
print("section of rho:", splitting_report(datum).section.map)

c4 = RamificationDatum(Homomorphism(cyclic(4), cyclic(2), [0, 1, 0, 1]), 2)
print("C4 -> C2:", splitting_report(c4).notes[0])

# the defect d in n = d e f
for n, e, f, p in [(4, 2, 2, 0), (8, 2, 2, 2), (6, 2, 2, 3)]:
    try:
        print((n, e, f, p), "->", defect(NumericalExtensionData(n, e, f, p)).classification)
    except GalfreeError as exc:
        print((n, e, f, p), "->", type(exc).__name__)
