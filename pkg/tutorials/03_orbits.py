"""
Brute-force orbits
==================

For small fields every point can be enumerated. The oracle merges points
along generator image tables and labels each orbit by its least point index.
"""

from collections import Counter

from g2orbits import GF, orbit_partition, canonical_one
from g2orbits.canon import normalized_form
from g2orbits.invariants import single_invariants
from g2orbits.octonion import all_octonions

part = orbit_partition("single", 3)
print(part.summary())

# (tr, n, scal1) label the orbits of single octonions
F = GF(3)
classes = {}
for a in all_octonions(F):
    classes.setdefault(single_invariants(a), set()).add(part.orbit_id(a))
print("invariant classes:", len(classes), " orbits:", part.num_orbits)

# and canonical forms are constant on orbits
forms = {}
for a in all_octonions(F):
    forms.setdefault(part.orbit_id(a), set()).add(normalized_form(canonical_one(a), GF(3, 2)))
print("forms per orbit:", Counter(len(v) for v in forms.values()))

# pairs over GF(2): 65536 points
pairs = orbit_partition("pair", 2)
print("pair orbits over GF(2):", pairs.num_orbits)
print("largest orbit sizes:", sorted(pairs.sizes.tolist())[-5:])
