"""Split octonions as Zorn vector matrices.

An octonion ``(alpha, u; v, beta)`` is stored as the 8-tuple of raw field
values ``(alpha, u1, u2, u3, v1, v2, v3, beta)``. That coordinate order is used
everywhere, including the 8x8 matrices of :mod:`g2orbits.g2`.
"""

from __future__ import annotations

import itertools
import random as _random

from .field import Field, FieldMismatch

ALPHA, BETA = 0, 7
U = slice(1, 4)
V = slice(4, 7)


def dot(F: Field, u, v):
    return F.dot(u, v)


def cross(F: Field, u, v):
    m, s = F.mul, F.sub
    return (
        s(m(u[1], v[2]), m(u[2], v[1])),
        s(m(u[2], v[0]), m(u[0], v[2])),
        s(m(u[0], v[1]), m(u[1], v[0])),
    )


class Octonion:
    """Immutable Zorn matrix over an exact field."""

    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords):
        self.field = field
        self.coords = tuple(coords)
        if len(self.coords) != 8:
            raise ValueError("an octonion has 8 coordinates")

    @classmethod
    def from_parts(cls, field: Field, alpha=0, u=(0, 0, 0), v=(0, 0, 0), beta=0):
        c = field.coerce
        return cls(field, (c(alpha), *map(c, u), *map(c, v), c(beta)))

    @classmethod
    def from_coords(cls, field: Field, coords):
        return cls(field, map(field.coerce, coords))

    @classmethod
    def zero(cls, field: Field):
        return cls(field, (field.zero,) * 8)

    # parts -----------------------------------------------------------------
    @property
    def alpha(self):
        return self.coords[0]

    @property
    def u(self):
        return self.coords[1:4]

    @property
    def v(self):
        return self.coords[4:7]

    @property
    def beta(self):
        return self.coords[7]

    # comparison ------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        f = self.field.format
        u = ", ".join(map(f, self.u))
        v = ", ".join(map(f, self.v))
        return f"Octonion[{self.field!r}]({f(self.alpha)}, ({u}); ({v}), {f(self.beta)})"

    def is_zero(self):
        return not any(self.coords)

    # linear structure ------------------------------------------------------
    def _check(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._check(other)
        add = self.field.add
        return Octonion(self.field, map(add, self.coords, other.coords))

    def __sub__(self, other):
        self._check(other)
        sub = self.field.sub
        return Octonion(self.field, map(sub, self.coords, other.coords))

    def __neg__(self):
        return Octonion(self.field, map(self.field.neg, self.coords))

    def scale(self, s):
        """Multiply by the raw scalar s."""
        mul = self.field.mul
        return Octonion(self.field, (mul(s, x) for x in self.coords))

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return multiply(self, other)
        return self.scale(self.field.coerce(other))

    def __rmul__(self, other):
        return self.scale(self.field.coerce(other))

    # structure maps --------------------------------------------------------
    def conjugate(self):
        return conjugate(self)

    def trace(self):
        return trace(self)

    def norm(self):
        return norm(self)

    def transpose(self):
        return transpose_octonion(self)

    def lift(self, target: Field) -> "Octonion":
        if target == self.field:
            return self
        lift = self.field.lift
        return Octonion(target, (lift(x, target) for x in self.coords))

    def is_scalar(self):
        """True when this octonion is a multiple of the unit."""
        c = self.coords
        return c[0] == c[7] and not any(c[1:7])

    # JSON ------------------------------------------------------------------
    def to_json(self) -> dict:
        enc = self.field.encode
        return {
            "alpha": enc(self.alpha),
            "u": [enc(x) for x in self.u],
            "v": [enc(x) for x in self.v],
            "beta": enc(self.beta),
        }

    @classmethod
    def from_json(cls, field: Field, obj: dict) -> "Octonion":
        if not isinstance(obj, dict) or set(obj) != {"alpha", "u", "v", "beta"}:
            raise ValueError(f"not an octonion: {obj!r}")
        if len(obj["u"]) != 3 or len(obj["v"]) != 3:
            raise ValueError("u and v must have three entries")
        dec = field.decode
        return cls(field, (dec(obj["alpha"]), *map(dec, obj["u"]), *map(dec, obj["v"]), dec(obj["beta"])))


# -- the product ----------------------------------------------------------------

def multiply(a: Octonion, b: Octonion) -> Octonion:
    """Zorn product.

    (al, u; v, be)(al', u'; v', be') =
        (al al' + u.v',  al u' + be' u - v x v';  al' v + be v' + u x u',  be be' + v.u')
    """
    F = a.field
    if b.field != F:
        raise FieldMismatch(f"{F!r} vs {b.field!r}")
    a0, a1, a2, a3, a4, a5, a6, a7 = a.coords
    b0, b1, b2, b3, b4, b5, b6, b7 = b.coords
    if F.native:
        n = F.normalize
        return Octonion(F, (
            n(a0 * b0 + a1 * b4 + a2 * b5 + a3 * b6),
            n(a0 * b1 + b7 * a1 - (a5 * b6 - a6 * b5)),
            n(a0 * b2 + b7 * a2 - (a6 * b4 - a4 * b6)),
            n(a0 * b3 + b7 * a3 - (a4 * b5 - a5 * b4)),
            n(b0 * a4 + a7 * b4 + (a2 * b3 - a3 * b2)),
            n(b0 * a5 + a7 * b5 + (a3 * b1 - a1 * b3)),
            n(b0 * a6 + a7 * b6 + (a1 * b2 - a2 * b1)),
            n(a7 * b7 + a4 * b1 + a5 * b2 + a6 * b3),
        ))
    m, ad, sb = F.mul, F.add, F.sub
    u, v = a.coords[U], a.coords[V]
    u2, v2 = b.coords[U], b.coords[V]
    vxv = cross(F, v, v2)
    uxu = cross(F, u, u2)
    return Octonion(F, (
        ad(m(a0, b0), F.dot(u, v2)),
        *(sb(ad(m(a0, x), m(b7, y)), z) for x, y, z in zip(u2, u, vxv)),
        *(ad(ad(m(b0, x), m(a7, y)), z) for x, y, z in zip(v, v2, uxu)),
        ad(m(a7, b7), F.dot(v, u2)),
    ))


def conjugate(a: Octonion) -> Octonion:
    """(al, u; v, be) -> (be, -u; -v, al)."""
    neg = a.field.neg
    c = a.coords
    return Octonion(a.field, (c[7], *map(neg, c[1:7]), c[0]))


def trace(a: Octonion):
    return a.field.add(a.coords[0], a.coords[7])


def norm(a: Octonion):
    F = a.field
    c = a.coords
    return F.sub(F.mul(c[0], c[7]), F.dot(c[U], c[V]))


def bilinear_form(a: Octonion, b: Octonion):
    """q(a, b) = n(a + b) - n(a) - n(b)."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    F = a.field
    x, y = a.coords, b.coords
    pos = F.add(F.mul(x[0], y[7]), F.mul(y[0], x[7]))
    return F.sub(pos, F.add(F.dot(x[U], y[V]), F.dot(y[U], x[V])))


def transpose_octonion(a: Octonion) -> Octonion:
    c = a.coords
    return Octonion(a.field, (c[0], *c[V], *c[U], c[7]))


# signed permutation rules for u <> sigma; keys are cycle notation
PERMUTATIONS = ("id", "(1,2,3)", "(1,3,2)", "(1,2)", "(1,3)", "(2,3)")


def diamond_action(F: Field, u, sigma: str) -> tuple:
    """u <> sigma: coordinate permutation with the sign that keeps det = 1."""
    u1, u2, u3 = u
    neg = F.neg
    if sigma == "id":
        return (u1, u2, u3)
    if sigma == "(1,2,3)":
        # (u_sigma(1), u_sigma(2), u_sigma(3)) with sigma: 1->2->3->1
        return (u2, u3, u1)
    if sigma == "(1,3,2)":
        return (u3, u1, u2)
    if sigma == "(1,2)":
        return (u2, u1, neg(u3))
    if sigma == "(1,3)":
        return (u3, neg(u2), u1)
    if sigma == "(2,3)":
        return (neg(u1), u3, u2)
    raise ValueError(f"unknown permutation {sigma!r}")


# -- named elements ---------------------------------------------------------------

def scalar(F: Field, x) -> Octonion:
    """x * 1_O."""
    x = F.coerce(x)
    return Octonion(F, (x,) + (F.zero,) * 6 + (x,))


def unit(F: Field) -> Octonion:
    return scalar(F, 1)


def e1(F: Field) -> Octonion:
    return Octonion.from_parts(F, alpha=1)


def e2(F: Field) -> Octonion:
    return Octonion.from_parts(F, beta=1)


def J(F: Field) -> Octonion:
    """e1 - e2."""
    return Octonion.from_parts(F, alpha=1, beta=-1)


def c(i: int) -> tuple:
    """Standard basis vector c_i of F^3 (1-based), integer entries."""
    return tuple(int(j == i) for j in (1, 2, 3))


def u_basis(F: Field, i: int) -> Octonion:
    return Octonion.from_parts(F, u=c(i))


def v_basis(F: Field, i: int) -> Octonion:
    return Octonion.from_parts(F, v=c(i))


def basis(F: Field) -> list[Octonion]:
    """Coordinate basis e1, u1, u2, u3, v1, v2, v3, e2."""
    out = []
    for j in range(8):
        coords = [F.zero] * 8
        coords[j] = F.one
        out.append(Octonion(F, coords))
    return out


def all_octonions(F: Field):
    """Every octonion over a finite field, in mixed-radix index order
    (alpha varies fastest)."""
    for coords in itertools.product(F.elements(), repeat=8):
        yield Octonion(F, coords[::-1])


def random_octonion(F: Field, rng: _random.Random) -> Octonion:
    return Octonion(F, (F.random(rng) for _ in range(8)))


# -- structural identities ------------------------------------------------------

def identity_residuals(a: Octonion, b: Octonion, c: Octonion) -> dict[str, bool]:
    """Evaluate the structural identities of the split octonions on (a, b, c).

    Returns ``{name: holds}``. ``b`` plays the role of a' in the linearized
    identities; ``c`` is the third letter in (5) and (6).
    """
    F = a.field
    one = unit(F)
    sc = one.scale
    tr, nm = trace, norm
    ab, ba = a * b, b * a
    aa = a * a
    out = {}
    out["tr_commutes"] = tr(ab) == tr(ba)
    out["norm_multiplicative"] = nm(ab) == F.mul(nm(a), nm(b))
    out["quadratic"] = (aa - a.scale(tr(a)) + one.scale(nm(a))).is_zero()
    lin = (ab + ba - b.scale(tr(a)) - a.scale(tr(b))
           - sc(tr(ab)) + sc(F.mul(tr(a), tr(b))))
    out["linearized_quadratic"] = lin.is_zero()
    out["left_alternative"] = a * ab == aa * b
    out["right_alternative"] = ba * a == b * aa
    out["linearized_left_alternative"] = a * (b * c) + b * (a * c) == (ab + ba) * c
    out["linearized_right_alternative"] = (c * a) * b + (c * b) * a == c * (ab + ba)
    out["trace_associative"] = tr(ab * c) == tr(a * (b * c))
    out["norm_from_trace"] = F.add(nm(a), nm(a)) == F.add(F.neg(tr(aa)), F.mul(tr(a), tr(a)))
    out["conjugation_anti"] = (ab).conjugate() == b.conjugate() * a.conjugate()
    out["norm_is_a_abar"] = a * a.conjugate() == sc(nm(a))
    out["bilinear_polarizes_norm"] = bilinear_form(a, b) == F.sub(F.sub(nm(a + b), nm(a)), nm(b))
    return out


IDENTITY_NAMES = (
    "tr_commutes", "norm_multiplicative", "quadratic", "linearized_quadratic",
    "left_alternative", "right_alternative", "linearized_left_alternative",
    "linearized_right_alternative", "trace_associative", "norm_from_trace",
    "conjugation_anti", "norm_is_a_abar", "bilinear_polarizes_norm",
)


def associator(a: Octonion, b: Octonion, c: Octonion) -> Octonion:
    return (a * b) * c - a * (b * c)


def non_associative_triple(F: Field):
    """First basis triple (a, b, c) with (ab)c != a(bc)."""
    B = basis(F)
    for a in B:
        for b in B:
            for c in B:
                if not associator(a, b, c).is_zero():
                    return a, b, c
    return None


def identity_suite(F: Field, exhaustive: bool = False, samples: int = 1000, rng=None) -> dict:
    """Run the structural identities and report failure counts.

    With ``exhaustive`` every pair (a, b) is checked, the third letter cycling
    through the basis; ``samples`` random triples are checked in any case.
    """
    rng = rng if rng is not None else _random.Random(0)
    failures = dict.fromkeys(IDENTITY_NAMES, 0)
    checked = 0

    def run(a, b, c):
        nonlocal checked
        checked += 1
        for name, ok in identity_residuals(a, b, c).items():
            if not ok:
                failures[name] += 1

    pairs = 0
    if exhaustive:
        B = basis(F)
        elts = list(all_octonions(F))
        for i, a in enumerate(elts):
            for j, b in enumerate(elts):
                run(a, b, B[(i + j) % 8])
        pairs = len(elts) ** 2
    for _ in range(samples):
        run(random_octonion(F, rng), random_octonion(F, rng), random_octonion(F, rng))
    witness = non_associative_triple(F)
    return {
        "field": F.descriptor(),
        "pairs": pairs,
        "triples": samples,
        "checked": checked,
        "failures": {k: v for k, v in failures.items() if v},
        "ok": not any(failures.values()),
        "non_associative": None if witness is None else [x.to_json() for x in witness],
    }
