"""
The generator table and its product identities
===============================================

Every named generator is a function of the odd prime p, and six exact
product identities connect them back to the two seed families: the
translation M0 and matrices congruent to 1 mod p^2.
"""

from sp4cert import generator, verify_identities
from sp4cert.matrices import mat4_to_lists

p = 7

# The table, parametric in p.
for name in ("M0", "M1", "M2", "M3", "M4", "L1", "L4"):
    print(name, "=", mat4_to_lists(generator(name, p)))

# Replaying the identities is pure exact arithmetic; nothing here is
# assumed or rounded.
print()
for line in verify_identities(p).lines():
    print(line)

# One convention is worth seeing explicitly: the commutator of L5 with
# M2 lands at M4 * L1^-1, so the chain closes with the +1 power of L1.
m2, m4 = generator("M2", p), generator("M4", p)
l1, l5 = generator("L1", p), generator("L5", p)
comm = l5.inv() * m2.inv() * l5 * m2
print("\ncommutator == M4 * L1^-1:", comm == m4 * l1.inv())
print("commutator * L1 == M4:   ", comm * l1 == m4)
