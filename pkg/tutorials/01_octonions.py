"""
Split octonions over a finite field
===================================

Octonions are Zorn vector matrices (alpha; u; v; beta) with u, v in F^3.
"""

from g2orbits import GF, Octonion, trace, norm
from g2orbits.octonion import associator, e1, non_associative_triple

F = GF(3)
a = Octonion.from_parts(F, 1, (1, 0, 2), (0, 1, 0), 2)
b = Octonion.from_parts(F, 0, (0, 1, 0), (1, 0, 0), 1)

print("a    =", a)
print("a*b  =", a * b)
print("tr(a) =", trace(a), " n(a) =", norm(a))

# every octonion satisfies a^2 - tr(a) a + n(a) 1 = 0
one = Octonion.from_parts(F, 1, beta=1)
print("a^2 - tr(a)a + n(a) =", a * a - a.scale(trace(a)) + one.scale(norm(a)))

# the norm is multiplicative
print("n(ab) == n(a)n(b):", norm(a * b) == F.mul(norm(a), norm(b)))

# but the algebra is not associative
x, y, z = non_associative_triple(F)
print("x, y, z =", x, y, z)
print("(xy)z - x(yz) =", associator(x, y, z))

# extension fields use coefficient lists for raw elements
K = GF(2, 2)
w = K.decode([0, 1])
print("w^2 =", K.encode(K.mul(w, w)), " w^3 =", K.encode(K.power(w, 3)), " n(e1) =", norm(e1(K)))
