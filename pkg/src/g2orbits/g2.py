"""The automorphism group G2 of the split octonions, through its generators.

Elements are 8x8 matrices acting on coordinate columns (alpha, u, v, beta)
together with the word of generators that produced them. Transcripts are
kept in application order: ``transcript[0]`` acts first.
"""

from __future__ import annotations

import functools
import random as _random
from dataclasses import dataclass, field as dc_field

from .field import Field, FieldMismatch
from .octonion import (
    Octonion, basis, bilinear_form, conjugate, cross, multiply, norm, trace,
    unit, all_octonions, random_octonion,
)


class NotUnimodular(ValueError):
    pass


class BadIndices(ValueError):
    pass


# -- 3x3 helpers ----------------------------------------------------------------

def det3(F: Field, g) -> object:
    m, a, s = F.mul, F.add, F.sub
    (a11, a12, a13), (a21, a22, a23), (a31, a32, a33) = g
    return a(s(m(a11, s(m(a22, a33), m(a23, a32))), m(a12, s(m(a21, a33), m(a23, a31)))),
             m(a13, s(m(a21, a32), m(a22, a31))))


def cofactor3(F: Field, g):
    """Cofactor matrix; equals g^{-T} when det g = 1."""
    m, s = F.mul, F.sub

    def minor(i, j):
        rows = [r for k, r in enumerate(g) if k != i]
        (p, q), (r, t) = [[x for l, x in enumerate(row) if l != j] for row in rows]
        return s(m(p, t), m(q, r))

    return tuple(
        tuple(minor(i, j) if (i + j) % 2 == 0 else F.neg(minor(i, j)) for j in range(3))
        for i in range(3)
    )


def _row_times(F: Field, u, g):
    """Row vector u times matrix g."""
    return tuple(F.dot(u, [g[k][j] for k in range(3)]) for j in range(3))


# -- generators -----------------------------------------------------------------

@dataclass(frozen=True)
class SL3:
    """a -> (alpha, u g; v g^{-T}, beta) for det g = 1."""

    g: tuple

    kind = "sl3"

    def act(self, F: Field, c):
        ginvT = cofactor3(F, self.g)
        return (c[0], *_row_times(F, c[1:4], self.g), *_row_times(F, c[4:7], ginvT), c[7])

    def inverse(self, F: Field):
        # g^{-1} = transpose of the cofactor matrix when det g = 1
        cof = cofactor3(F, self.g)
        return SL3(tuple(tuple(cof[j][i] for j in range(3)) for i in range(3)))

    def to_json(self, F: Field):
        return {"kind": "sl3", "g": [[F.encode(x) for x in row] for row in self.g]}


@dataclass(frozen=True)
class Delta1:
    w: tuple

    kind = "d1"

    def act(self, F: Field, c):
        w = self.w
        al, u, v, be = c[0], c[1:4], c[4:7], c[7]
        s = F.dot(w, v)
        coef = F.sub(F.sub(al, be), s)
        return (
            F.sub(al, s),
            *(F.add(F.mul(coef, wi), ui) for wi, ui in zip(w, u)),
            *map(F.sub, v, cross(F, u, w)),
            F.add(be, s),
        )

    def inverse(self, F: Field):
        return Delta1(tuple(map(F.neg, self.w)))

    def to_json(self, F: Field):
        return {"kind": "d1", "u": [F.encode(x) for x in self.w]}


@dataclass(frozen=True)
class Delta2:
    w: tuple

    kind = "d2"

    def act(self, F: Field, c):
        w = self.w
        al, u, v, be = c[0], c[1:4], c[4:7], c[7]
        s = F.dot(u, w)
        coef = F.sub(F.sub(be, al), s)
        return (
            F.add(al, s),
            *map(F.add, u, cross(F, v, w)),
            *(F.add(F.mul(coef, wi), vi) for wi, vi in zip(w, v)),
            F.sub(be, s),
        )

    def inverse(self, F: Field):
        return Delta2(tuple(map(F.neg, self.w)))

    def to_json(self, F: Field):
        return {"kind": "d2", "v": [F.encode(x) for x in self.w]}


@dataclass(frozen=True)
class Hbar:
    """a -> (beta, -v; -u, alpha)."""

    kind = "hbar"

    def act(self, F: Field, c):
        neg = F.neg
        return (c[7], *map(neg, c[4:7]), *map(neg, c[1:4]), c[0])

    def inverse(self, F: Field):
        return self

    def to_json(self, F: Field):
        return {"kind": "hbar"}


Generator = SL3 | Delta1 | Delta2 | Hbar


def generator_from_json(F: Field, obj: dict) -> Generator:
    kind = obj.get("kind")
    dec = F.decode
    if kind == "sl3":
        g = obj["g"]
        if len(g) != 3 or any(len(r) != 3 for r in g):
            raise ValueError("sl3 generator needs a 3x3 matrix")
        return SL3(tuple(tuple(dec(x) for x in row) for row in g))
    if kind in ("d1", "d2"):
        key = "u" if kind == "d1" else "v"
        w = obj[key]
        if len(w) != 3:
            raise ValueError(f"{kind} generator needs a 3-vector")
        return (Delta1 if kind == "d1" else Delta2)(tuple(dec(x) for x in w))
    if kind == "hbar":
        return Hbar()
    raise ValueError(f"unknown generator {obj!r}")


@functools.lru_cache(maxsize=65536)
def generator_matrix(F: Field, gen: Generator):
    """8x8 matrix (rows) of a generator: column j is the image of basis j."""
    if isinstance(gen, SL3):
        d = det3(F, gen.g)
        if d != F.one:
            raise NotUnimodular(f"det = {F.format(d)}")
        # u -> u g and v -> v g^{-T}: row blocks g^T and g^{-1}
        z, one = F.zero, F.one
        g, cof = gen.g, cofactor3(F, gen.g)
        rows = [(one,) + (z,) * 7]
        rows += [(z, g[0][j], g[1][j], g[2][j], z, z, z, z) for j in range(3)]
        rows += [(z, z, z, z, cof[0][j], cof[1][j], cof[2][j], z) for j in range(3)]
        rows.append((z,) * 7 + (one,))
        return tuple(rows)
    cols = [gen.act(F, b.coords) for b in basis(F)]
    return tuple(tuple(cols[j][i] for j in range(8)) for i in range(8))


# -- matrices ---------------------------------------------------------------------

def _identity(F: Field):
    return tuple(tuple(F.one if i == j else F.zero for j in range(8)) for i in range(8))


def _matmul(F: Field, A, B):
    """A @ B exploiting the sparsity of generator matrices."""
    one = F.one
    out = []
    ncols = len(B[0])
    for row in A:
        nz = [(k, x) for k, x in enumerate(row) if x]
        if len(nz) == 1 and nz[0][1] == one:
            out.append(B[nz[0][0]])
            continue
        if not nz:
            out.append((F.zero,) * ncols)
            continue
        if F.native:
            n = F.normalize
            acc = [0] * ncols
            for k, x in nz:
                for j, y in enumerate(B[k]):
                    if y:
                        acc[j] += x * y
            out.append(tuple(n(v) for v in acc))
        else:
            acc = [F.zero] * ncols
            m, a = F.mul, F.add
            for k, x in nz:
                for j, y in enumerate(B[k]):
                    if y:
                        acc[j] = a(acc[j], m(x, y))
            out.append(tuple(acc))
    return tuple(out)


def _matvec(F: Field, M, x):
    return tuple(F.dot(row, x) for row in M)


def _matinv(F: Field, M):
    n = len(M)
    A = [list(row) + [F.one if i == j else F.zero for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != F.zero), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        inv = F.inv(A[col][col])
        A[col] = [F.mul(inv, x) for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != F.zero:
                f = A[r][col]
                A[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[r], A[col])]
    return tuple(tuple(row[n:]) for row in A)


# -- group elements ---------------------------------------------------------------

class G2Element:
    """An automorphism of O(F): matrix plus generator transcript."""

    __slots__ = ("field", "matrix", "transcript")

    def __init__(self, field: Field, matrix, transcript=()):
        self.field = field
        self.matrix = tuple(tuple(r) for r in matrix)
        self.transcript = tuple(transcript)

    @classmethod
    def identity(cls, F: Field) -> "G2Element":
        return cls(F, _identity(F), ())

    def __eq__(self, other):
        if not isinstance(other, G2Element):
            return NotImplemented
        return self.field == other.field and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        word = " ".join(g.kind for g in self.transcript) or "id"
        return f"G2Element[{self.field!r}]({word})"

    def _check(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def then(self, other: "G2Element") -> "G2Element":
        """Act by self, then by other."""
        return compose(other, self)

    def move(self, gen: Generator) -> "G2Element":
        """Act by self, then by one more generator."""
        return self.then(from_generator(self.field, gen))

    def apply(self, a: Octonion) -> Octonion:
        return apply(self, a)

    def __call__(self, a):
        if isinstance(a, Octonion):
            return apply(self, a)
        return apply_pair(self, a)

    def inverse(self) -> "G2Element":
        F = self.field
        word = tuple(g.inverse(F) for g in reversed(self.transcript))
        return G2Element(F, _matinv(F, self.matrix), word)

    def replay(self):
        """Matrix obtained by multiplying out the transcript."""
        F = self.field
        M = _identity(F)
        for gen in self.transcript:
            M = _matmul(F, generator_matrix(F, gen), M)
        return M

    def is_consistent(self) -> bool:
        return self.replay() == self.matrix

    def to_json(self) -> dict:
        F = self.field
        return {
            "matrix": [[F.encode(x) for x in row] for row in self.matrix],
            "transcript": [g.to_json(F) for g in self.transcript],
        }

    @classmethod
    def from_json(cls, F: Field, obj: dict) -> "G2Element":
        M = obj["matrix"]
        if len(M) != 8 or any(len(r) != 8 for r in M):
            raise ValueError("matrix must be 8x8")
        mat = tuple(tuple(F.decode(x) for x in row) for row in M)
        word = tuple(generator_from_json(F, g) for g in obj.get("transcript", ()))
        return cls(F, mat, word)


def from_generator(F: Field, gen: Generator) -> G2Element:
    return G2Element(F, generator_matrix(F, gen), (gen,))


def compose(g: G2Element, h: G2Element) -> G2Element:
    """g o h: act by h first, then g."""
    g._check(h)
    return G2Element(g.field, _matmul(g.field, g.matrix, h.matrix), h.transcript + g.transcript)


def apply(g: G2Element, a: Octonion) -> Octonion:
    if a.field != g.field:
        raise FieldMismatch(f"{g.field!r} vs {a.field!r}")
    return Octonion(g.field, _matvec(g.field, g.matrix, a.coords))


def apply_pair(g: G2Element, pair) -> tuple:
    return tuple(apply(g, x) for x in pair)


# -- named constructors -------------------------------------------------------------

def sl3(F: Field, g) -> G2Element:
    mat = tuple(tuple(F.coerce(x) for x in row) for row in g)
    return from_generator(F, SL3(mat))


def elementary_matrix(F: Field, i: int, j: int, t) -> tuple:
    """E + t E_ij as a raw 3x3 matrix (1-based indices)."""
    if not (1 <= i <= 3 and 1 <= j <= 3) or i == j:
        raise BadIndices(f"need 1 <= i, j <= 3 with i != j, got ({i}, {j})")
    return tuple(
        tuple(F.one if r == c else (t if (r, c) == (i - 1, j - 1) else F.zero) for c in range(3))
        for r in range(3)
    )


def elementary(F: Field, i: int, j: int, t) -> G2Element:
    """The SL3 element E + t E_ij: u_j += t u_i and v_i -= t v_j."""
    return from_generator(F, SL3(elementary_matrix(F, i, j, F.coerce(t))))


def delta1(F: Field, u) -> G2Element:
    return from_generator(F, Delta1(tuple(map(F.coerce, u))))


def delta2(F: Field, v) -> G2Element:
    return from_generator(F, Delta2(tuple(map(F.coerce, v))))


def hbar(F: Field) -> G2Element:
    return from_generator(F, Hbar())


# -- verification ---------------------------------------------------------------------

EXHAUSTIVE_LIMIT = 2**16


@dataclass
class AutomorphismReport:
    ok: bool = True
    checked_elements: int = 0
    checked_pairs: int = 0
    failures: dict = dc_field(default_factory=dict)

    def fail(self, what: str):
        self.ok = False
        self.failures[what] = self.failures.get(what, 0) + 1

    def __bool__(self):
        return self.ok


def verify_automorphism(g: G2Element, samples: int = 200, rng=None,
                        exhaustive: bool | None = None) -> AutomorphismReport:
    """Check that g is an algebra automorphism preserving tr, n, q and conjugation.

    The product is checked on all 64 pairs of basis vectors, which by
    bilinearity covers every pair, and additionally on sampled pairs. The
    unary properties are checked on every octonion when q^8 <= 2^16, else on
    samples.
    """
    F = g.field
    rng = rng or _random.Random(0)
    rep = AutomorphismReport()
    if apply(g, unit(F)) != unit(F):
        rep.fail("unit")

    B = basis(F)
    gB = [apply(g, b) for b in B]
    for i, x in enumerate(B):
        for j, y in enumerate(B):
            rep.checked_pairs += 1
            if apply(g, multiply(x, y)) != multiply(gB[i], gB[j]):
                rep.fail("product")
            if bilinear_form(gB[i], gB[j]) != bilinear_form(x, y):
                rep.fail("bilinear_form")

    if exhaustive is None:
        exhaustive = F.is_finite and F.order**8 <= EXHAUSTIVE_LIMIT
    elements = all_octonions(F) if exhaustive else (random_octonion(F, rng) for _ in range(samples))
    for a in elements:
        rep.checked_elements += 1
        ga = apply(g, a)
        if trace(ga) != trace(a):
            rep.fail("trace")
        if norm(ga) != norm(a):
            rep.fail("norm")
        if apply(g, conjugate(a)) != conjugate(ga):
            rep.fail("conjugation")

    for _ in range(samples):
        a, b = random_octonion(F, rng), random_octonion(F, rng)
        ga, gb = apply(g, a), apply(g, b)
        rep.checked_pairs += 1
        if apply(g, multiply(a, b)) != multiply(ga, gb):
            rep.fail("product")
        if bilinear_form(ga, gb) != bilinear_form(a, b):
            rep.fail("bilinear_form")
    return rep
