"""Canonical forms of one octonion, a pair, and a traceless pair under G2.

Each reduction returns the automorphism it used (matrix and generator word),
the canonical value and its type tag. Every step is an explicit generator
move, so the word can be replayed and audited.

Over a finite field the quadratic steps may need roots outside the field;
the whole reduction is then retried over the degree-doubling extension, at
most twice. Over the rationals a missing root raises NoRootInField.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import Field, FieldMismatch, NoRootInField, field_from_descriptor
from .g2 import G2Element, Delta1, Delta2, Hbar, SL3, cofactor3, elementary_matrix
from .octonion import Octonion, trace


class ZeroVector(ValueError):
    pass


class NotK1(ValueError):
    pass


class NotTraceless(ValueError):
    pass


class ReductionError(AssertionError):
    """A reduction step did not produce the shape it guarantees."""


class VerificationFailed(AssertionError):
    pass


MAX_EXTENSIONS = 2

# -- type predicates ----------------------------------------------------------------
#
# Single-octonion tags are built from a base shape (D, E, F, K, L, M, N, P) and
# the modifiers "0" (traceless), "1" (alpha_1 = alpha_8) and "^T" (transpose).
# Extra tags "0", "u1", "v2", "u1^F" name the special traceless octonions.

BASE_SHAPES = "DEFKLMNP"


def _base(shape: str, c, F: Field) -> bool:
    z, one = F.zero, F.one
    u, v = c[1:4], c[4:7]
    diag = not any(u) and not any(v)
    if shape == "D":
        return diag
    if shape == "E":
        return diag and c[0] == c[7]
    if shape == "F":
        return diag and c[0] != c[7]
    if shape == "K":
        return u == (one, z, z) and not any(v)
    if shape == "L":
        return u[0] != z and u[1] == z and u[2] == z and not any(v)
    if shape == "M":
        return u == (z, one, z) and not any(v)
    if shape == "N":
        return u == (one, z, z) and v[0] != z and v[1] == z and v[2] == z
    if shape == "P":
        return u == (one, z, z) and v == (z, one, z)
    raise KeyError(shape)


def _parse_single(tag: str):
    transposed = tag.endswith("^T")
    core = tag[:-2] if transposed else tag
    shape, sub = core[0], core[1:]
    if shape not in BASE_SHAPES or sub not in ("", "0", "1"):
        raise KeyError(tag)
    return shape, sub, transposed


def is_type(x: Octonion, tag: str) -> bool:
    """Does the octonion x have the single type ``tag``?"""
    F = x.field
    c = x.coords
    z = F.zero
    if tag == "0":
        return x.is_zero()
    if tag == "u1":
        return c == (z, F.one, z, z, z, z, z, z)
    if tag == "v2":
        return c == (z, z, z, z, z, F.one, z, z)
    if tag == "u1^F":
        return c[0] == z and c[7] == z and c[2] == z and c[3] == z and not any(c[4:7])
    shape, sub, transposed = _parse_single(tag)
    if sub == "0" and F.add(c[0], c[7]) != z:
        return False
    if sub == "1" and c[0] != c[7]:
        return False
    if transposed:
        c = (c[0], *c[4:7], *c[1:4], c[7])
    return _base(shape, c, F)


SINGLE_TAGS = tuple(
    s + sub + t
    for s in BASE_SHAPES
    for sub in ("", "0", "1")
    for t in ("", "^T")
) + ("0", "u1", "v2", "u1^F")

# canonical_one reports one of these
ONE_TAGS = ("D", "K1")

# pair tags, in the published order (also the precedence order)
PAIR_TAGS = {
    "DD": ("D", "D"),
    "FK": ("F", "K"),
    "FN": ("F", "N"),
    "FP": ("F", "P"),
    "EK1": ("E", "K1"),
    "K1E": ("K1", "E"),
    "K1F": ("K1", "F"),
    "K1L1": ("K1", "L1"),
    "K1L^T": ("K1", "L^T"),
    "K1M": ("K1", "M"),
    "K1M1^T": ("K1", "M1^T"),
}

TRACELESS_TAGS = {
    "D0D0": ("D0", "D0"),
    "F0K0": ("F0", "K0"),
    "F0N0": ("F0", "N0"),
    "F0P0": ("F0", "P0"),
    "u1L0^T": ("u1", "L0^T"),
    "u1M0": ("u1", "M0"),
    "u1F0": ("u1", "F0"),
    "u1u1^F": ("u1", "u1^F"),
    "u1v2": ("u1", "v2"),
    "0u1": ("0", "u1"),
}

TRACELESS_TAGS_CHAR2 = {
    "EE": ("E", "E"),
    "EK1": ("E", "K1"),
    "K1E": ("K1", "E"),
    "K1L1": ("K1", "L1"),
    "K1L1^T": ("K1", "L1^T"),
    "K1M1": ("K1", "M1"),
    "K1M1^T": ("K1", "M1^T"),
}

_ALL_PAIR_TAGS = {**PAIR_TAGS, **TRACELESS_TAGS, **TRACELESS_TAGS_CHAR2}


def is_pair_type(pair, tag: str) -> bool:
    left, right = _ALL_PAIR_TAGS[tag]
    a, b = pair
    return is_type(a, left) and is_type(b, right)


# the single-octonion types that carry their own names
CLASSIFY_TAGS = ("D", "E", "F", "K", "K1", "L", "L1", "L^T", "L1^T",
                 "M", "M1", "M^T", "M1^T", "N", "P")


def classify_type(x) -> set[str]:
    """Every named type whose predicate holds on an octonion or a pair."""
    if isinstance(x, Octonion):
        return {t for t in CLASSIFY_TAGS if is_type(x, t)}
    return {t for t in _ALL_PAIR_TAGS if is_pair_type(x, t)}


def _k1_case(pair, case: int) -> bool:
    a, b = pair
    F = b.field
    z, one = F.zero, F.one
    u, v = b.u, b.v
    if not is_type(a, "K1"):
        return False
    if case == 1:
        return u[1:] == (z, z) and v[1:] == (z, z)
    if case == 2:
        return u[1:] == (z, z) and v == (z, one, z)
    if case == 3:
        return u == (z, one, z) and v[0] == z
    if case == 4:
        return u == (z, one, z) and v[0] != z and v[2] == z
    raise KeyError(case)


def holds(x, tag: str) -> bool:
    if isinstance(x, Octonion):
        return is_type(x, tag)
    if tag.startswith("K1:case"):
        return _k1_case(x, int(tag[len("K1:case"):]))
    return is_pair_type(x, tag)


def _single_param_names(tag: str) -> tuple[int, ...]:
    """1-based coordinate indices that are free parameters of a single tag."""
    if tag in ("0", "u1", "v2"):
        return ()
    if tag == "u1^F":
        return (2,)
    shape, sub, transposed = _parse_single(tag)
    if shape == "E":
        return (1,)
    extra = {"L": (5,) if transposed else (2,), "N": (2,) if transposed else (5,)}.get(shape, ())
    ends = (1,) if sub in ("0", "1") else (1, 8)
    return tuple(sorted(ends + extra))


def type_params(x, tag: str) -> dict:
    """Free constants of a tag, e.g. {"alpha1": ..., "beta5": ...} (raw values)."""
    if isinstance(x, Octonion):
        return {f"alpha{i}": x.coords[i - 1] for i in _single_param_names(tag)}
    left, right = _ALL_PAIR_TAGS[tag]
    out = {f"alpha{i}": x[0].coords[i - 1] for i in _single_param_names(left)}
    out.update({f"beta{i}": x[1].coords[i - 1] for i in _single_param_names(right)})
    return out


def _select(x, table) -> str:
    for tag in table:
        if holds(x, tag):
            return tag
    raise ReductionError(f"result {x!r} matches none of {list(table)}")


# -- reductions ---------------------------------------------------------------------

@dataclass
class Reduction:
    """g applied to the (lifted) input gives result, of the given type."""

    input: object
    g: G2Element
    result: object
    type: str
    params: dict
    field_used: Field
    case: int | None = None

    @property
    def is_pair(self) -> bool:
        return not isinstance(self.result, Octonion)

    def lifted_input(self):
        if isinstance(self.input, Octonion):
            return self.input.lift(self.field_used)
        return tuple(x.lift(self.field_used) for x in self.input)

    def problems(self) -> list[str]:
        out = []
        if self.g.field != self.field_used:
            out.append("g is not over field_used")
            return out
        if not self.g.is_consistent():
            out.append("transcript does not replay to the matrix")
        if self.g(self.lifted_input()) != self.result:
            out.append("g(input) != result")
        try:
            if not holds(self.result, self.type):
                out.append(f"result is not of type {self.type}")
        except KeyError:
            out.append(f"unknown type {self.type!r}")
        return out

    def verify(self) -> bool:
        probs = self.problems()
        if probs:
            raise VerificationFailed("; ".join(probs))
        return True

    def to_json(self) -> dict:
        F = self.field_used
        src = self.input.field if isinstance(self.input, Octonion) else self.input[0].field

        def enc(x):
            return x.to_json() if isinstance(x, Octonion) else [y.to_json() for y in x]

        out = {
            "field": src.descriptor(),
            "input": enc(self.input),
            "g": self.g.to_json(),
            "result": enc(self.result),
            "type": self.type,
            "params": {k: F.encode(v) for k, v in sorted(self.params.items())},
            "field_used": F.descriptor(),
        }
        if self.case is not None:
            out["case"] = self.case
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Reduction":
        src = field_from_descriptor(obj["field"])
        F = field_from_descriptor(obj["field_used"])

        def dec(K, x):
            if isinstance(x, dict):
                return Octonion.from_json(K, x)
            return tuple(Octonion.from_json(K, y) for y in x)

        return cls(
            input=dec(src, obj["input"]),
            g=G2Element.from_json(F, obj["g"]),
            result=dec(F, obj["result"]),
            type=obj["type"],
            params={k: F.decode(v) for k, v in obj.get("params", {}).items()},
            field_used=F,
            case=obj.get("case"),
        )


class _State:
    """Current values together with the accumulated automorphism."""

    def __init__(self, F: Field, xs):
        self.F = F
        self.x = list(xs)
        self.word = []

    @property
    def g(self) -> G2Element:
        e = G2Element(self.F, (), self.word)
        e.matrix = e.replay()
        return e

    def move(self, gen):
        F = self.F
        if isinstance(gen, Hbar) and self.word and isinstance(self.word[-1], Hbar):
            self.word.pop()  # hbar is an involution
        else:
            self.word.append(gen)
        self.x = [Octonion(F, gen.act(F, a.coords)) for a in self.x]

    def sl3(self, mat, side="u"):
        """SL3 move acting on the `side` vectors by right multiplication with mat."""
        if side == "v":
            mat = cofactor3(self.F, mat)
        self.move(SL3(mat))

    def elem(self, i, j, t, side="u"):
        """Primary vector: p_j += t p_i; secondary: s_i -= t s_j."""
        if t != self.F.zero:
            self.sl3(elementary_matrix(self.F, i, j, t), side)

    def diag23(self, d, side="u"):
        """Primary vector scaled (p1, d p2, p3 / d); secondary (s1, s2 / d, d s3)."""
        F = self.F
        if d != F.one:
            z, one = F.zero, F.one
            self.sl3(((one, z, z), (z, d, z), (z, z, F.inv(d))), side)

    def delta1(self, w):
        if any(w):
            self.move(Delta1(tuple(w)))

    def delta2(self, w):
        if any(w):
            self.move(Delta2(tuple(w)))

    def hbar(self):
        self.move(Hbar())

    def parts(self, k, side):
        a = self.x[k]
        return (a.u, a.v) if side == "u" else (a.v, a.u)


def _root(F: Field, b, c):
    """Root of x^2 + b x + c used by the reductions: 0 if it is one, else the
    order-minimal root."""
    if c == F.zero:
        return F.zero
    return F.quadratic_roots(b, c)[0]


def _primary_to_c1(st: _State, k: int, side: str):
    """Make the `side` vector of x[k] equal to (1, 0, 0) by elementary SL3 moves."""
    F = st.F
    p, _ = st.parts(k, side)
    if not any(p):
        raise ZeroVector(f"{side}-part is zero")
    if p[0] == F.zero:
        m = next(i for i in (1, 2) if p[i] != F.zero)
        st.elem(m + 1, 1, F.one, side)
        p, _ = st.parts(k, side)
    if p[0] != F.one:
        # p2 -> 1, then p1 -> 1
        st.elem(1, 2, F.div(F.sub(F.one, p[1]), p[0]), side)
        p, _ = st.parts(k, side)
        st.elem(2, 1, F.sub(F.one, p[0]), side)
        p, _ = st.parts(k, side)
    st.elem(1, 2, F.neg(p[1]), side)
    p, _ = st.parts(k, side)
    st.elem(1, 3, F.neg(p[2]), side)


def _secondary_to_shape(st: _State, k: int, side: str):
    """With primary = (1,0,0): make secondary (s1,0,0) if s1 != 0, else (0,1,0).

    Uses only moves whose matrices have first row (1,0,0), so the primary vector
    (and any other vector of the form (*,0,0)) is untouched.
    """
    F = st.F
    _, s = st.parts(k, side)
    if s[0] != F.zero:
        st.elem(2, 1, F.div(s[1], s[0]), side)
        _, s = st.parts(k, side)
        st.elem(3, 1, F.div(s[2], s[0]), side)
        return
    _secondary_23_to_c2(st, k, side)


def _secondary_23_to_c2(st: _State, k: int, side: str):
    F = st.F
    _, s = st.parts(k, side)
    if s[1] == F.zero and s[2] == F.zero:
        return
    if s[1] == F.zero:
        # s2 -= t s3 with t = -1/s3
        st.elem(2, 3, F.neg(F.inv(s[2])), side)
        _, s = st.parts(k, side)
    st.diag23(s[1], side)
    _, s = st.parts(k, side)
    st.elem(3, 2, s[2], side)


def _reduce_vector(st: _State, k: int, side: str):
    _primary_to_c1(st, k, side)
    _secondary_to_shape(st, k, side)


def _is_diag(a: Octonion) -> bool:
    return not any(a.coords[1:7])


def _canonical_one(st: _State, k: int = 0):
    """Reduce x[k] to type D (ordered alpha1 <= alpha8) or K1."""
    F = st.F
    a = st.x[k]
    if not _is_diag(a):
        if not any(a.u):
            st.hbar()
        _reduce_vector(st, k, "u")
        a = st.x[k]
        z = F.zero
        if a.v == (z, F.one, z):
            st.delta1((z, z, F.neg(F.one)))
            _primary_to_c1(st, k, "u")
            a = st.x[k]
        a1, a5, a8 = a.coords[0], a.coords[4], a.coords[7]
        if a5 != z:
            r = _root(F, F.sub(a1, a8), F.neg(a5))
            st.delta2((r, z, z))
            a = st.x[k]
            a1, a8 = a.coords[0], a.coords[7]
        if a1 != a8:
            st.delta1((F.inv(F.sub(a8, a1)), z, z))
    a = st.x[k]
    if _is_diag(a) and a.coords[0] > a.coords[7]:
        st.hbar()


def _prereduce(st: _State, k: int) -> str:
    """SL3 and hbar only: bring x[k] to type D, K, N or P."""
    a = st.x[k]
    if _is_diag(a):
        return "D"
    if not any(a.u):
        st.hbar()
    _reduce_vector(st, k, "u")
    a = st.x[k]
    for tag in ("K", "N", "P"):
        if is_type(a, tag):
            return tag
    raise ReductionError(f"prereduction left {a!r}")


def _reduce_under_k1(st: _State) -> int:
    """x[0] of type K1; SL3 moves fixing x[0] bring x[1] to one of four shapes."""
    F = st.F
    z = F.zero
    b = st.x[1]
    u, v = b.u, b.v
    if u[1] == z and u[2] == z:
        if v[1] == z and v[2] == z:
            return 1
        if v[0] != z:
            _secondary_to_shape(st, 1, "u")
            return 1
        _secondary_23_to_c2(st, 1, "u")
        return 2
    # (u2, u3) -> (1, 0) inside the {2,3} block, then clear u1
    if u[1] == z:
        st.elem(3, 2, F.one)
        u = st.x[1].u
    st.diag23(F.inv(u[1]))
    u = st.x[1].u
    st.elem(2, 3, F.neg(u[2]))
    u = st.x[1].u
    st.elem(2, 1, F.neg(u[0]))
    v = st.x[1].v
    if v[0] == z:
        return 3
    st.elem(3, 1, F.div(v[2], v[0]))
    return 4


def _finish_k1_pair(st: _State) -> int:
    """x[0] of type K1: finish the pair with moves fixing x[0]."""
    F = st.F
    z, one = F.zero, F.one
    case = _reduce_under_k1(st)
    first_case = case
    if case == 4:
        b5 = st.x[1].coords[4]
        st.delta2((z, z, F.inv(b5)))
        case = _reduce_under_k1(st)
        if case != 1:
            raise ReductionError(f"case 4 did not reduce to case 1 (got {case})")
    b = st.x[1].coords
    b1, b2, b5, b6, b7, b8 = b[0], b[1], b[4], b[5], b[6], b[7]
    if case == 1:
        if b5 != z:
            # b5 u^2 + (b8 - b1) u - b2 = 0, made monic
            r = _root(F, F.div(F.sub(b8, b1), b5), F.neg(F.div(b2, b5)))
            st.delta1((r, z, z))
        elif b1 != b8 and b2 != z:
            st.delta1((F.div(b2, F.sub(b8, b1)), z, z))
    elif case == 2:
        if b1 != b8:
            d = F.sub(b1, b8)
            st.delta2((z, F.inv(d), F.neg(b2)))
            b7 = st.x[1].coords[6]
            st.delta2((z, z, F.div(b7, d)))
        else:
            st.delta2((z, z, F.neg(b2)))
    elif case == 3:
        if b6 != z:
            r = _root(F, F.sub(b1, b8), F.neg(b6))
            st.delta2((z, r, F.div(F.mul(r, b7), b6)))
        else:
            st.delta1((F.neg(b7), z, z))
            st.elem(2, 1, F.neg(st.x[1].u[0]))
    return first_case


# -- field-extension driver ---------------------------------------------------------------

def _field_of(xs) -> Field:
    F = xs[0].field
    for x in xs[1:]:
        if x.field != F:
            raise FieldMismatch(f"{F!r} vs {x.field!r}")
    return F


def _with_extensions(run, xs):
    F = _field_of(xs)
    for attempt in range(MAX_EXTENSIONS + 1):
        try:
            return run(F, [x.lift(F) for x in xs])
        except NoRootInField:
            if not F.is_finite or attempt == MAX_EXTENSIONS:
                raise
            F = F.extend()
    raise AssertionError("unreachable")  # pragma: no cover


def _check_k1(a: Octonion):
    if not is_type(a, "K1"):
        raise NotK1(f"{a!r} is not of type K1")


# -- public operations ----------------------------------------------------------------------

def reduce_vector(a: Octonion, side: str = "u") -> Reduction:
    """SL3 only: the `side` vector becomes (1,0,0) and the other one (*,0,0) or (0,1,0)."""
    if side not in ("u", "v"):
        raise ValueError("side must be 'u' or 'v'")
    st = _State(a.field, [a])
    _reduce_vector(st, 0, side)
    x = st.x[0]
    tags = ("K", "N", "P") if side == "u" else ("K^T", "N^T", "P^T")
    tag = _select(x, tags)
    return Reduction(a, st.g, x, tag, type_params(x, tag), a.field)


def canonical_one(a: Octonion) -> Reduction:
    """Reduce one octonion to type D or K1.

    Type D results are ordered so that alpha1 <= alpha8 in the field's total
    order (the swap is the automorphism hbar).
    """
    def run(F, xs):
        st = _State(F, xs)
        _canonical_one(st, 0)
        x = st.x[0]
        tag = _select(x, ONE_TAGS)
        return Reduction(a, st.g, x, tag, type_params(x, tag), F)

    return _with_extensions(run, [a])


def prereduce_b(b: Octonion) -> Reduction:
    st = _State(b.field, [b])
    tag = _prereduce(st, 0)
    x = st.x[0]
    return Reduction(b, st.g, x, tag, type_params(x, tag), b.field)


def reduce_second_given_K1(a: Octonion, b: Octonion) -> Reduction:
    """SL3 moves fixing a (type K1) bring b to one of four shapes, reported as `case`."""
    _check_k1(a)
    F = _field_of([a, b])
    st = _State(F, [a, b])
    case = _reduce_under_k1(st)
    if st.x[0] != a:
        raise ReductionError("stabilizer move changed a")
    return Reduction((a, b), st.g, tuple(st.x), f"K1:case{case}", {}, F, case=case)


def _canonical_pair_state(F, xs) -> _State:
    st = _State(F, xs)
    _canonical_one(st, 0)
    a = st.x[0]
    st.case = None
    if _is_diag(a):
        if a.coords[0] == a.coords[7]:
            _canonical_one(st, 1)
        else:
            _prereduce(st, 1)
    else:
        st.case = _finish_k1_pair(st)
    return st


# Types whose second component admits a stabilizer of the first swapping beta_1
# and beta_8; the canonical output puts them in increasing order.
SWAPPABLE = ("K1L^T", "K1M")


def _order_second_diagonal(st: _State, tag: str):
    F = st.F
    b = st.x[1]
    b1, b8 = b.coords[0], b.coords[7]
    if not b1 > b8:
        return
    if tag == "K1L^T":
        # delta1(t c1) fixes (alpha, c1; 0, alpha) and swaps the diagonal of (b1, 0; b5 c1, b8)
        st.delta1((F.div(F.sub(b1, b8), b.coords[4]), F.zero, F.zero))
    elif tag == "K1M":
        # delta2(t c2) fixes (alpha, c1; 0, alpha) and swaps the diagonal of (b1, c2; 0, b8)
        st.delta2((F.zero, F.sub(b8, b1), F.zero))


def canonical_pair(a: Octonion, b: Octonion) -> Reduction:
    """Reduce a pair to one of the eleven pair types."""
    def run(F, xs):
        st = _canonical_pair_state(F, xs)
        tag = _select(tuple(st.x), PAIR_TAGS)
        if tag in SWAPPABLE:
            _order_second_diagonal(st, tag)
            if not is_pair_type(tuple(st.x), tag):
                raise ReductionError(f"diagonal swap left type {tag}")
        x = tuple(st.x)
        return Reduction((a, b), st.g, x, tag, type_params(x, tag), F, case=st.case)

    return _with_extensions(run, [a, b])


def canonical_traceless_pair(a: Octonion, b: Octonion) -> Reduction:
    """Reduce a pair of traceless octonions; the tag list depends on char F."""
    F = _field_of([a, b])
    if trace(a) != F.zero or trace(b) != F.zero:
        raise NotTraceless("both octonions must have trace 0")
    red = canonical_pair(a, b)
    table = TRACELESS_TAGS_CHAR2 if F.characteristic == 2 else TRACELESS_TAGS
    tag = _select(red.result, table)
    return Reduction(red.input, red.g, red.result, tag, type_params(red.result, tag),
                     red.field_used, case=red.case)


# -- comparison --------------------------------------------------------------------------

def normalized_form(red: Reduction, target: Field | None = None):
    """(type, coordinates) of a reduction's result, lifted to `target` and with
    type-D results re-ordered in the target's total order.

    Results computed over different extensions become comparable this way.
    """
    target = target or red.field_used
    res = red.result
    if isinstance(res, Octonion):
        x = res.lift(target)
        c = x.coords
        if red.type == "D" and c[0] > c[7]:
            c = (c[7],) + c[1:7] + (c[0],)
        return red.type, c
    xs = [y.lift(target) for y in res]
    cs = [y.coords for y in xs]
    if red.type in ("DD", "D0D0", "EE") and cs[0][0] > cs[0][7]:
        # hbar on a pair of diagonal octonions swaps both diagonals
        cs = [(c[7],) + c[1:7] + (c[0],) for c in cs]
    elif red.type in SWAPPABLE + ("u1L0^T", "u1M0") and cs[1][0] > cs[1][7]:
        c = cs[1]
        cs[1] = (c[7],) + c[1:7] + (c[0],)
    return red.type, tuple(cs)
