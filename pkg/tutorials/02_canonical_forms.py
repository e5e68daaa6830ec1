"""
Canonical forms under G2
========================

canonical_one and canonical_pair return a Reduction: an automorphism g given
as a word in the generators, the canonical representative, its type and the
free parameters. Every reduction can be replayed and checked.
"""

import random

from g2orbits import GF, Octonion, canonical_one, canonical_pair, canonical_traceless_pair
from g2orbits.octonion import random_octonion

F = GF(5)
a = Octonion.from_parts(F, 0, (1, 0, 0), (2, 0, 0), 3)
red = canonical_one(a)
print(red.type, red.params, "over", red.field_used)
print("word:", [g.kind for g in red.g.transcript])
red.verify()

# a pair; the first element is brought to type D or K1, then the second is reduced by its stabilizer
rng = random.Random(1)
x, y = random_octonion(F, rng), random_octonion(F, rng)
red = canonical_pair(x, y)
print(red.type, red.params)
print("g(x, y) == result:", red.g((x.lift(red.field_used), y.lift(red.field_used))) == red.result)

# when a step needs a square root that F lacks, the reduction moves to GF(q^2)
F2 = GF(2)
b = Octonion.from_parts(F2, 0, (1, 0, 0), (1, 0, 0), 1)
red = canonical_one(b)
print("over GF(2):", red.type, "computed in", red.field_used)

# traceless pairs have their own list of types
t = Octonion.from_parts(F, 1, (0, 1, 0), beta=4)
s = Octonion.from_parts(F, 0, (1, 0, 0), (0, 0, 1), 0)
print("traceless:", canonical_traceless_pair(t, s).type)

# reductions serialize to JSON and can be checked later
doc = red.to_json()
print(sorted(doc))
