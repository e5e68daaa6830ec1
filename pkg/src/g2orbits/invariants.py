"""Concomitants and G2-invariants, by evaluation.

A word is an explicitly parenthesized expression in the generic octonions
Z1, Z2, ..., the unit, and invariant scalars ``f * 1_O``. Invariants are the
trace and norm of a word (polynomial invariants) and the indicator functions
``zeta`` and ``scal`` (abstract invariants, valued in {0, 1}).

Text syntax::

    Z1   1   (Z1*Z2)   (Z1+Z2)   (Z1-Z2)   tr(...)   n(...)   zeta(...)   scal(2)

Binary operations must be wrapped in parentheses.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .field import FieldMismatch
from .octonion import Octonion, multiply, norm, trace, unit


class IndexOutOfRange(IndexError):
    pass


class ParseError(ValueError):
    pass


# -- expression trees -----------------------------------------------------------

@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return f"Z{self.index}"


@dataclass(frozen=True)
class Unit:
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class ScalarOf:
    """The concomitant f * 1_O for an invariant f."""

    invariant: "AbstractInvariant"

    def __str__(self):
        return str(self.invariant)


@dataclass(frozen=True)
class Product:
    left: "WordExpr"
    right: "WordExpr"

    def __str__(self):
        return f"({self.left}*{self.right})"


@dataclass(frozen=True)
class Sum:
    left: "WordExpr"
    right: "WordExpr"
    negate_right: bool = False

    def __str__(self):
        return f"({self.left}{'-' if self.negate_right else '+'}{self.right})"


WordExpr = Var | Unit | ScalarOf | Product | Sum


@dataclass(frozen=True)
class TraceOf:
    word: WordExpr

    def __str__(self):
        return f"tr({self.word})"


@dataclass(frozen=True)
class NormOf:
    word: WordExpr

    def __str__(self):
        return f"n({self.word})"


@dataclass(frozen=True)
class Zeta:
    word: WordExpr

    def __str__(self):
        return f"zeta({self.word})"


@dataclass(frozen=True)
class Scal:
    index: int

    def __str__(self):
        return f"scal({self.index})"


AbstractInvariant = TraceOf | NormOf | Zeta | Scal


def product(*factors: WordExpr) -> WordExpr:
    """Left-nested product ((f1*f2)*f3)...; the empty product is the unit."""
    if not factors:
        return Unit()
    out = factors[0]
    for f in factors[1:]:
        out = Product(out, f)
    return out


# -- evaluation -------------------------------------------------------------------

def _field_of(point):
    if not point:
        raise IndexOutOfRange("empty point")
    F = point[0].field
    for x in point[1:]:
        if x.field != F:
            raise FieldMismatch(f"{F!r} vs {x.field!r}")
    return F


def eval_word(w: WordExpr, point) -> Octonion:
    """Evaluate a word at a tuple of octonions, respecting its parenthesization."""
    point = tuple(point)
    F = _field_of(point)
    return _eval(w, point, F)


def _eval(w, point, F):
    if isinstance(w, Var):
        if not 1 <= w.index <= len(point):
            raise IndexOutOfRange(f"Z{w.index} at a point with {len(point)} octonions")
        return point[w.index - 1]
    if isinstance(w, Unit):
        return unit(F)
    if isinstance(w, ScalarOf):
        return unit(F).scale(_eval_inv(w.invariant, point, F))
    if isinstance(w, Product):
        return multiply(_eval(w.left, point, F), _eval(w.right, point, F))
    if isinstance(w, Sum):
        left, right = _eval(w.left, point, F), _eval(w.right, point, F)
        return left - right if w.negate_right else left + right
    raise TypeError(f"not a word: {w!r}")


def eval_invariant(f: AbstractInvariant, point):
    """Trace/norm invariants give raw field values; zeta/scal give 0 or 1."""
    point = tuple(point)
    F = _field_of(point)
    return _eval_inv(f, point, F)


def _eval_inv(f, point, F):
    if isinstance(f, TraceOf):
        return trace(_eval(f.word, point, F))
    if isinstance(f, NormOf):
        return norm(_eval(f.word, point, F))
    if isinstance(f, Zeta):
        return 0 if _eval(f.word, point, F).is_zero() else 1
    if isinstance(f, Scal):
        if not 1 <= f.index <= len(point):
            raise IndexOutOfRange(f"scal({f.index}) at a point with {len(point)} octonions")
        return 1 if point[f.index - 1].is_scalar() else 0
    raise TypeError(f"not an invariant: {f!r}")


def single_invariants(a: Octonion) -> tuple:
    """(tr, n, scal_1) of one octonion."""
    return (trace(a), norm(a), 1 if a.is_scalar() else 0)


def separates_single(a: Octonion, b: Octonion) -> bool:
    """True iff tr, n and scal_1 agree on a and b.

    Over an algebraically closed field these three invariants separate
    G2-orbits on O, so equality here means a and b are G2-conjugate there.
    """
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    return single_invariants(a) == single_invariants(b)


# -- enumeration helpers ------------------------------------------------------------

def words(max_length: int, letters: int):
    """Every parenthesized product of 1..max_length generic octonions."""
    by_len = {1: [Var(i) for i in range(1, letters + 1)]}
    for n in range(2, max_length + 1):
        out = []
        for k in range(1, n):
            for left, right in itertools.product(by_len[k], by_len[n - k]):
                out.append(Product(left, right))
        by_len[n] = out
    for n in range(1, max_length + 1):
        yield from by_len[n]


def basic_invariants(max_length: int = 3, letters: int = 2):
    """tr, n and zeta of every word up to max_length, plus every scal_i."""
    for w in words(max_length, letters):
        yield TraceOf(w)
        yield NormOf(w)
        yield Zeta(w)
    for i in range(1, letters + 1):
        yield Scal(i)


# -- parsing ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(Z\d+)|(zeta|scal|tr|n)\s*\(|(\d+)|([()*+-]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at {pos}: {text[pos:pos + 10]!r}")
        var, func, num, sym = m.groups()
        if var:
            out.append(("var", int(var[1:])))
        elif func:
            out.append(("func", func))
        elif num:
            out.append(("num", int(num)))
        else:
            out.append(("sym", sym))
        pos = m.end()
    return out


def parse(text: str):
    """Parse a word or an invariant from its text form."""
    toks = _tokenize(text)
    node, pos = _parse(toks, 0)
    if pos != len(toks):
        raise ParseError(f"trailing input in {text!r}")
    return node


def _as_word(node):
    if isinstance(node, (TraceOf, NormOf, Zeta, Scal)):
        return ScalarOf(node)
    return node


def _expect(toks, pos, sym):
    if pos >= len(toks) or toks[pos] != ("sym", sym):
        raise ParseError(f"expected {sym!r} at token {pos}")
    return pos + 1


def _parse(toks, pos):
    if pos >= len(toks):
        raise ParseError("unexpected end of expression")
    kind, val = toks[pos]
    if kind == "var":
        if val < 1:
            raise ParseError("variables are numbered from Z1")
        return Var(val), pos + 1
    if kind == "num":
        if val != 1:
            raise ParseError("the only numeric literal is the unit 1")
        return Unit(), pos + 1
    if kind == "func":
        if val == "scal":
            if pos + 1 >= len(toks) or toks[pos + 1][0] != "num":
                raise ParseError("scal(i) needs an index")
            idx = toks[pos + 1][1]
            return Scal(idx), _expect(toks, pos + 2, ")")
        inner, pos = _parse(toks, pos + 1)
        pos = _expect(toks, pos, ")")
        inner = _as_word(inner)
        return {"tr": TraceOf, "n": NormOf, "zeta": Zeta}[val](inner), pos
    if (kind, val) == ("sym", "("):
        left, pos = _parse(toks, pos + 1)
        if pos >= len(toks) or toks[pos][0] != "sym" or toks[pos][1] not in "*+-":
            raise ParseError("binary operations must be fully parenthesized: (A*B)")
        op = toks[pos][1]
        right, pos = _parse(toks, pos + 1)
        if pos < len(toks) and toks[pos][0] == "sym" and toks[pos][1] in "*+-":
            raise ParseError("binary operations must be fully parenthesized: ((A*B)*C)")
        pos = _expect(toks, pos, ")")
        left, right = _as_word(left), _as_word(right)
        if op == "*":
            return Product(left, right), pos
        return Sum(left, right, negate_right=(op == "-")), pos
    raise ParseError(f"unexpected token {val!r}")
