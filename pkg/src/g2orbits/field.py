"""Exact fields: GF(p), GF(p^k) and the rationals.

Elements are stored *raw* inside containers (octonions, matrices) and are
always interpreted relative to a :class:`Field` object:

* prime fields use ints in ``range(p)``;
* extension fields use ints in ``range(p**k)`` encoding the coefficient
  vector ``c_0 + c_1 x + ... + c_{k-1} x^{k-1}`` as ``sum(c_i * p**i)``;
* the rationals use :class:`fractions.Fraction`.

With this encoding the Python order of raw values is the strict total order
used for deterministic tie-breaking. It carries no algebraic meaning.

:class:`FieldElement` wraps a raw value with its field for standalone scalar
arithmetic.
"""

from __future__ import annotations

import functools
import itertools
import math
import operator
from fractions import Fraction


class FieldMismatch(ValueError):
    """Operands live in different fields."""


class NoRootInField(ArithmeticError):
    """A quadratic has no root in the current field."""


class CannotExtendRationals(ArithmeticError):
    pass


class InfiniteField(ValueError):
    pass


QUADRATIC_SEARCH_LIMIT = 1024


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


# -- polynomials over GF(p), coefficient lists lowest degree first -----------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _poly_trim(a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        a = _poly_trim(a)
    return a


def _monic_polys(p, degree):
    for low in itertools.product(range(p), repeat=degree):
        yield list(low) + [1]


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    m = _poly_trim(modulus)
    deg = len(m) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(m, f, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k, in the order of its encoding.

    Candidates are scanned by increasing ``sum(c_i p^i)`` over the low
    coefficients, so for p=2, k=4 this yields x^4 + x + 1.
    """
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# -- fields -------------------------------------------------------------------

class Field:
    """Base class; concrete fields are interned, compare by descriptor."""

    kind: str
    p: int
    k: int = 1
    modulus: tuple[int, ...] | None = None
    zero = 0
    one = 1
    # True when raw values support native +,-,* with a final normalize().
    native = False

    # descriptor ------------------------------------------------------------
    def _key(self):
        return (self.kind, self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __reduce__(self):
        return (field_from_descriptor, (self.descriptor(),))

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.kind != "rational"

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise InfiniteField("the rationals are infinite")
        return self.p**self.k

    def descriptor(self) -> dict:
        raise NotImplementedError

    # elements --------------------------------------------------------------
    def __call__(self, x) -> "FieldElement":
        return FieldElement(self, self.coerce(x))

    def coerce(self, x):
        raise NotImplementedError

    def elements(self):
        """All elements in increasing order, starting with 0."""
        if not self.is_finite:
            raise InfiniteField("cannot enumerate the rationals")
        return range(self.order)

    def random(self, rng):
        return rng.randrange(self.order)

    def from_int(self, n: int):
        """Image of the integer n under Z -> F."""
        raise NotImplementedError

    # arithmetic on raw values ----------------------------------------------
    def normalize(self, x):
        return x

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def dot(self, xs, ys):
        total = self.zero
        for x, y in zip(xs, ys):
            if x and y:
                total = self.add(total, self.mul(x, y))
        return total

    # roots and extensions --------------------------------------------------
    def quadratic_roots(self, b, c) -> tuple:
        """Distinct roots of x^2 + b x + c, sorted; NoRootInField if none."""
        raise NotImplementedError

    def extend(self) -> "Field":
        raise NotImplementedError

    def lift(self, x, target: "Field"):
        """Image of raw x under the fixed embedding self -> target."""
        if target == self:
            return x
        return _embedding(self, target)(x)

    # JSON ------------------------------------------------------------------
    def encode(self, x):
        raise NotImplementedError

    def decode(self, obj):
        raise NotImplementedError

    def format(self, x) -> str:
        return str(self.encode(x))


class PrimeField(Field):
    kind = "prime"
    native = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self._roots_cache: dict = {}

    def __repr__(self):
        return f"GF({self.p})"

    def descriptor(self):
        return {"kind": "prime", "p": self.p}

    def coerce(self, x):
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x.field!r} element used in {self!r}")
            return x.value
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def from_int(self, n):
        return n % self.p

    def normalize(self, x):
        return x % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def dot(self, xs, ys):
        return sum(map(operator.mul, xs, ys)) % self.p

    def quadratic_roots(self, b, c):
        return _search_roots(self, b, c)

    def extend(self):
        return GF(self.p, 2)

    def encode(self, x):
        return x

    def decode(self, obj):
        if not isinstance(obj, int) or isinstance(obj, bool) or not 0 <= obj < self.p:
            raise ValueError(f"bad element {obj!r} for {self!r}")
        return obj


class ExtensionField(Field):
    kind = "ext"

    def __init__(self, p: int, k: int, modulus):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k, lowest degree first")
        if not is_irreducible(modulus, p):
            raise ValueError(f"{list(modulus)} is reducible over GF({p})")
        self.p, self.k, self.modulus = p, k, modulus
        q = p**k
        self._q = q
        self._roots_cache: dict = {}
        self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def descriptor(self):
        return {"kind": "ext", "p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def _digits(self, x):
        p = self.p
        return [(x // p**i) % p for i in range(self.k)]

    def _code(self, digits):
        return sum(d * self.p**i for i, d in enumerate(digits))

    def _slow_mul(self, a, b):
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        r = _poly_mod(prod, self.modulus, self.p)
        return self._code(r + [0] * (self.k - len(r)))

    def _build_tables(self):
        q, p = self._q, self.p
        digits = [self._digits(x) for x in range(q)]
        if p == 2:
            self._add = None
        else:
            codes = [[(a + b) % p for a, b in zip(da, db)] for da in digits for db in digits]
            flat = [self._code(c) for c in codes]
            self._add = [flat[i * q:(i + 1) * q] for i in range(q)]
        self._neg = [self._code([-d % p for d in digits[x]]) for x in range(q)]
        # discrete log tables from the smallest primitive element
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._slow_mul(x, g)
            if len(exp) == q - 1:
                break
        else:  # q == 2 cannot happen for k >= 2
            raise AssertionError("no primitive element")  # pragma: no cover
        self._exp = exp + exp
        self._log = [0] * q
        for i, x in enumerate(exp):
            self._log[x] = i

    def coerce(self, x):
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x.field!r} element used in {self!r}")
            return x.value
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        if isinstance(x, (list, tuple)):
            if len(x) != self.k:
                raise ValueError(f"expected {self.k} coefficients, got {len(x)}")
            return self._code([int(c) % self.p for c in x])
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        if self._add is None:
            return a ^ b
        return self._add[a][b]

    def sub(self, a, b):
        if self._add is None:
            return a ^ b
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self._q - 1 - self._log[a]) % (self._q - 1)]

    def quadratic_roots(self, b, c):
        return _search_roots(self, b, c)

    def extend(self):
        return GF(self.p, 2 * self.k)

    def encode(self, x):
        return self._digits(x)

    def decode(self, obj):
        if not isinstance(obj, list) or len(obj) != self.k:
            raise ValueError(f"bad element {obj!r} for {self!r}")
        if not all(isinstance(c, int) and 0 <= c < self.p for c in obj):
            raise ValueError(f"bad element {obj!r} for {self!r}")
        return self._code(obj)

    def format(self, x):
        terms = []
        for i, d in enumerate(self._digits(x)):
            if d:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                coef = "" if (d == 1 and i) else str(d)
                terms.append(f"{coef}{mono}")
        return "+".join(reversed(terms)) or "0"


class RationalField(Field):
    kind = "rational"
    p = 0
    native = True
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def descriptor(self):
        return {"kind": "rational"}

    def coerce(self, x):
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x.field!r} element used in {self!r}")
            return x.value
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def from_int(self, n):
        return Fraction(n)

    def normalize(self, x):
        return Fraction(x)

    def random(self, rng, bound: int = 9):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def dot(self, xs, ys):
        return sum(map(operator.mul, xs, ys), Fraction(0))

    def quadratic_roots(self, b, c):
        disc = b * b - 4 * c
        if disc < 0:
            raise NoRootInField(f"x^2 + ({b})x + ({c}) has no rational root")
        rn, rd = math.isqrt(disc.numerator), math.isqrt(disc.denominator)
        if rn * rn != disc.numerator or rd * rd != disc.denominator:
            raise NoRootInField(f"x^2 + ({b})x + ({c}) has no rational root")
        s = Fraction(rn, rd)
        return tuple(sorted({(-b - s) / 2, (-b + s) / 2}))

    def extend(self):
        raise CannotExtendRationals("rationals are never extended automatically")

    def encode(self, x):
        return f"{x.numerator}/{x.denominator}"

    def decode(self, obj):
        if isinstance(obj, int) and not isinstance(obj, bool):
            return Fraction(obj)
        if not isinstance(obj, str):
            raise ValueError(f"bad rational {obj!r}")
        return Fraction(obj)

    def format(self, x):
        return f"{x.numerator}/{x.denominator}"


def _search_roots(F: Field, b, c):
    key = (b, c)
    hit = F._roots_cache.get(key)
    if hit is not None:
        if not hit:
            raise NoRootInField(f"x^2 + {F.format(b)}x + {F.format(c)} is irreducible over {F!r}")
        return hit
    if F.order > QUADRATIC_SEARCH_LIMIT:
        raise NotImplementedError("quadratic solving needs q <= 1024")
    roots = tuple(
        x for x in range(F.order)
        if F.add(F.mul(F.add(x, b), x), c) == 0
    )
    F._roots_cache[key] = roots
    if not roots:
        raise NoRootInField(f"x^2 + {F.format(b)}x + {F.format(c)} is irreducible over {F!r}")
    return roots


@functools.lru_cache(maxsize=None)
def GF(p: int, k: int = 1, modulus: tuple[int, ...] | None = None) -> Field:
    """The finite field with p**k elements (interned)."""
    if k == 1 and modulus is None:
        return PrimeField(p)
    if modulus is None:
        modulus = smallest_irreducible(p, k)
    return ExtensionField(p, k, tuple(modulus))


QQ = RationalField()


def field_from_descriptor(desc: dict) -> Field:
    kind = desc.get("kind")
    if kind == "prime":
        return GF(int(desc["p"]))
    if kind in ("ext", "extension"):
        return GF(int(desc["p"]), int(desc["k"]), tuple(int(c) for c in desc["modulus"]))
    if kind == "rational":
        return QQ
    raise ValueError(f"unknown field descriptor {desc!r}")


@functools.lru_cache(maxsize=None)
def _embedding(source: Field, target: Field):
    if source.kind == "rational" or target.kind == "rational":
        raise FieldMismatch(f"no embedding {source!r} -> {target!r}")
    if source.p != target.p or target.k % source.k:
        raise FieldMismatch(f"no embedding {source!r} -> {target!r}")
    if source.k == 1:
        # prime subfield sits in the constant coefficient
        return lambda x: x
    # image of the generator: order-minimal root of source.modulus in target
    for r in target.elements():
        acc = target.zero
        for c in reversed(source.modulus):
            acc = target.add(target.mul(acc, r), c)
        if acc == target.zero:
            break
    else:  # pragma: no cover
        raise AssertionError("modulus has no root in the target field")
    powers = [target.power(r, i) for i in range(source.k)]
    table = []
    for x in source.elements():
        acc = target.zero
        for d, rp in zip(source._digits(x), powers):
            if d:
                acc = target.add(acc, target.mul(d, rp))
        table.append(acc)
    return table.__getitem__


def lift(x: "FieldElement", target: Field) -> "FieldElement":
    """Map x into ``target`` along the fixed embedding."""
    return FieldElement(target, x.field.lift(x.value, target))


def extend(field: Field) -> Field:
    """Degree-doubling extension with the smallest irreducible modulus."""
    return field.extend()


def enumerate_field(field: Field):
    """Every element of a finite field as a FieldElement, in order."""
    return (FieldElement(field, x) for x in field.elements())


def solve_monic_quadratic(b: "FieldElement", c: "FieldElement") -> tuple["FieldElement", ...]:
    """Distinct roots of x^2 + b x + c in the field of b and c, sorted.

    Raises NoRootInField when the polynomial is irreducible there.
    """
    if b.field != c.field:
        raise FieldMismatch("coefficients from different fields")
    F = b.field
    return tuple(FieldElement(F, r) for r in F.quadratic_roots(b.value, c.value))


@functools.total_ordering
class FieldElement:
    """A raw value paired with its field, with the usual operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.power(self.value, n))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self.value < self._other(other)

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != self.field.zero

    def __repr__(self):
        return f"{self.field!r}({self.field.format(self.value)})"
