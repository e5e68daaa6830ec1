"""Brute-force orbit partitions of O(F_q), O(F_q)^2 and pairs of traceless
octonions under the subgroup of G2(F_q) generated by a fixed generator list.

Points are numbered in mixed radix q: the least significant digit is alpha
of the first octonion, followed by u, v, beta, and then the second octonion.
Traceless octonions drop beta (it equals -alpha), so a traceless pair has 14
digits. "Order-minimal" always means minimal point index.

The partition is built with numpy image tables and scipy's connected
components; ``orbit_bfs`` is an independent pure-Python walk over the same
generators.
"""

from __future__ import annotations

import functools
import json
from collections import Counter, deque
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .field import Field, GF, InfiniteField
from .g2 import SL3, Delta1, Delta2, G2Element, Hbar, elementary_matrix, from_generator
from .octonion import Octonion

MAX_POINTS = 5_000_000
SPACES = ("single", "pair", "traceless-pair")


class FieldTooLarge(ValueError):
    pass


def _as_field(q) -> Field:
    if isinstance(q, Field):
        return q
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r, k = r // p, k + 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return GF(p, k)


def generator_set(F: Field) -> list[G2Element]:
    """Elementary SL3 matrices, delta1(t c_i), delta2(t c_i) for t != 0, and hbar."""
    if not F.is_finite:
        raise InfiniteField("generator sets are built over finite fields")
    # raw field values throughout: the coercing constructors read ints as n * 1
    ts = [t for t in F.elements() if t != F.zero]
    z = F.zero
    gens = [from_generator(F, SL3(elementary_matrix(F, i, j, t)))
            for i in (1, 2, 3) for j in (1, 2, 3) if i != j for t in ts]
    for kind in (Delta1, Delta2):
        for i in range(3):
            for t in ts:
                w = [z, z, z]
                w[i] = t
                gens.append(from_generator(F, kind(tuple(w))))
    gens.append(from_generator(F, Hbar()))
    return gens


# -- point indexing ---------------------------------------------------------------

def _digits_per_octonion(space: str) -> int:
    return 7 if space == "traceless-pair" else 8


def _num_octonions(space: str) -> int:
    if space not in SPACES:
        raise ValueError(f"unknown space {space!r}; expected one of {SPACES}")
    return 1 if space == "single" else 2


def space_size(space: str, q: int) -> int:
    return q ** (_digits_per_octonion(space) * _num_octonions(space))


def _check_size(space: str, F: Field):
    if not F.is_finite:
        raise InfiniteField("orbits are enumerated over finite fields only")
    n = space_size(space, F.order)
    if n > MAX_POINTS:
        raise FieldTooLarge(f"{space} over {F!r} has {n} points (limit {MAX_POINTS})")


def point_index(point, space: str | None = None) -> int:
    """Mixed-radix index of an octonion or a pair."""
    xs = (point,) if isinstance(point, Octonion) else tuple(point)
    space = space or ("single" if len(xs) == 1 else "pair")
    q = xs[0].field.order
    width = _digits_per_octonion(space)
    idx, mult = 0, 1
    for x in xs:
        for d in x.coords[:width]:
            idx += d * mult
            mult *= q
    return idx


def index_point(F: Field, space: str, idx: int):
    """Inverse of point_index."""
    q, width = F.order, _digits_per_octonion(space)
    out = []
    for _ in range(_num_octonions(space)):
        ds = []
        for _ in range(width):
            idx, d = divmod(idx, q)
            ds.append(d)
        if width == 7:
            ds.append(F.neg(ds[0]))
        out.append(Octonion(F, tuple(ds)))
    return out[0] if space == "single" else tuple(out)


# -- vectorized action --------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _tables(F: Field):
    q = F.order
    add = np.array([[F.add(a, b) for b in range(q)] for a in range(q)], dtype=np.uint8)
    mul = np.array([[F.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.uint8)
    neg = np.array([F.neg(a) for a in range(q)], dtype=np.uint8)
    return add, mul, neg


def _digits(F: Field, space: str, idx: np.ndarray) -> np.ndarray:
    q = F.order
    ndig = _digits_per_octonion(space) * _num_octonions(space)
    out = np.empty((len(idx), ndig), dtype=np.uint8)
    rest = idx.copy()
    for k in range(ndig):
        out[:, k] = rest % q
        rest //= q
    return out


def _encode(F: Field, digits: np.ndarray) -> np.ndarray:
    q = F.order
    idx = np.zeros(len(digits), dtype=np.int64)
    for k in range(digits.shape[1] - 1, -1, -1):
        idx = idx * q + digits[:, k]
    return idx


def _apply_matrix(F: Field, M, coords: np.ndarray) -> np.ndarray:
    """Apply an 8x8 raw matrix to rows of 8 coordinates."""
    add, mul, _ = _tables(F)
    out = np.zeros_like(coords)
    for i, row in enumerate(M):
        acc = np.zeros(len(coords), dtype=np.uint8)
        for j, m in enumerate(row):
            if m:
                acc = add[acc, mul[m, coords[:, j]]]
        out[:, i] = acc
    return out


def image_table(F: Field, space: str, g: G2Element, idx: np.ndarray | None = None) -> np.ndarray:
    """Index of g(x) for every point index x (all points when idx is None)."""
    if idx is None:
        idx = np.arange(space_size(space, F.order), dtype=np.int64)
    d = _digits(F, space, idx)
    _, _, neg = _tables(F)
    width = _digits_per_octonion(space)
    parts = []
    for k in range(_num_octonions(space)):
        c = d[:, k * width:(k + 1) * width]
        if width == 7:
            c = np.concatenate([c, neg[c[:, :1]]], axis=1)
        parts.append(_apply_matrix(F, g.matrix, c)[:, :width])
    return _encode(F, np.concatenate(parts, axis=1))


# -- partitions ------------------------------------------------------------------------

@dataclass
class OrbitPartition:
    space: str
    field: Field
    labels: np.ndarray  # orbit id per point index
    representatives: np.ndarray  # order-minimal point index per orbit id

    @property
    def num_points(self) -> int:
        return len(self.labels)

    @property
    def num_orbits(self) -> int:
        return len(self.representatives)

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.num_orbits)

    def orbit_id(self, point) -> int:
        return int(self.labels[point_index(point, self.space)])

    def same_orbit(self, x, y) -> bool:
        return self.orbit_id(x) == self.orbit_id(y)

    def representative(self, orbit: int):
        return index_point(self.field, self.space, int(self.representatives[orbit]))

    def members(self, orbit: int) -> np.ndarray:
        return np.flatnonzero(self.labels == orbit)

    def blocks(self):
        """Point indices grouped by orbit, in orbit-id order."""
        order = np.argsort(self.labels, kind="stable")
        bounds = np.cumsum(self.sizes)[:-1]
        return np.split(order, bounds)

    def size_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.sizes.tolist()).items()))

    def summary(self) -> dict:
        return {
            "space": self.space,
            "field": self.field.descriptor(),
            "points": self.num_points,
            "orbits": self.num_orbits,
            "size_histogram": {str(k): v for k, v in self.size_histogram().items()},
        }

    def dump(self, path):
        """Write the map point index -> orbit id: .npy is binary, anything else JSON."""
        path = str(path)
        if path.endswith(".npy"):
            np.save(path, self.labels)
            return
        with open(path, "w") as fh:
            json.dump({**self.summary(), "labels": self.labels.tolist()}, fh)


def _partition(F: Field, space: str) -> OrbitPartition:
    _check_size(space, F)
    n_points = space_size(space, F.order)
    lab = np.arange(n_points, dtype=np.int64)
    n = n_points
    # Merge components one generator at a time to keep the edge list small.
    for g in generator_set(F):
        img = image_table(F, space, g)
        graph = coo_matrix((np.ones(n_points, dtype=np.int8), (lab, lab[img])), shape=(n, n))
        n, sub = connected_components(graph, directed=False)
        lab = sub[lab]
    # relabel by first (= minimal) member
    _, first = np.unique(lab, return_index=True)
    first = np.sort(first)
    relabel = np.empty(n, dtype=np.int64)
    relabel[lab[first]] = np.arange(n)
    labels = relabel[lab].astype(np.int32)
    return OrbitPartition(space, F, labels, first.astype(np.int64))


@functools.lru_cache(maxsize=8)
def _cached_partition(F: Field, space: str) -> OrbitPartition:
    return _partition(F, space)


def orbit_partition(space: str, q) -> OrbitPartition:
    """Full orbit partition of `space` over F_q (q an int or a finite Field)."""
    _num_octonions(space)
    return _cached_partition(_as_field(q), space)


def same_orbit(x, y, q=None) -> bool:
    """Whether x and y (octonions or pairs) lie in one orbit."""
    F = _as_field(q) if q is not None else (x.field if isinstance(x, Octonion) else x[0].field)
    space = "single" if isinstance(x, Octonion) else "pair"
    if not isinstance(y, Octonion) == (space == "single"):
        return False
    part = orbit_partition(space, F)
    return part.same_orbit(x, y)


def orbit_bfs(start, gens=None) -> frozenset:
    """The orbit of an octonion or a pair, by breadth-first search."""
    F = start.field if isinstance(start, Octonion) else start[0].field
    _check_size("single" if isinstance(start, Octonion) else "pair", F)
    gens = gens if gens is not None else generator_set(F)
    seen = {start}
    todo = deque([start])
    while todo:
        x = todo.popleft()
        for g in gens:
            y = g(x)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def representative(orbit) -> object:
    """Order-minimal member of an orbit returned by orbit_bfs."""
    return min(orbit, key=point_index)
