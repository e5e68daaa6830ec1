import random
from collections import Counter

import pytest

from g2orbits.canon import (
    ONE_TAGS, PAIR_TAGS, TRACELESS_TAGS, TRACELESS_TAGS_CHAR2, NotK1, NotTraceless,
    Reduction, VerificationFailed, ZeroVector, canonical_one, canonical_pair,
    canonical_traceless_pair, classify_type, is_type, normalized_form, prereduce_b,
    reduce_second_given_K1, reduce_vector,
)
from g2orbits.field import GF, QQ, NoRootInField
from g2orbits.g2 import SL3, Hbar
from g2orbits.octonion import (
    Octonion, all_octonions, e1, norm, random_octonion, trace, transpose_octonion,
    u_basis, unit, v_basis,
)

import sweeps

O = Octonion.from_parts


def kinds(red):
    return [g.kind for g in red.g.transcript]


# -- types -------------------------------------------------------------------------

def test_classify_examples():
    F = GF(3)
    assert classify_type(O(F, 2, beta=2)) == {"D", "E"}
    assert classify_type(O(F, 0, beta=1)) == {"D", "F"}
    assert classify_type(O(F, 1, (1, 0, 0), beta=1)) == {"K", "K1", "L", "L1"}


def test_transpose_of_L_is_L_transpose():
    F = GF(5)
    a = O(F, 1, (3, 0, 0), beta=2)
    assert is_type(a, "L") and is_type(transpose_octonion(a), "L^T")


def test_char2_traceless_types_coincide_with_subscript_one():
    F = GF(2)
    for a in all_octonions(F):
        for shape in "DEKLM":
            assert is_type(a, shape + "0") == is_type(a, shape + "1")


# -- reduce_vector / prereduce / K1 cases------------------------------------------------

def test_reduce_vector_examples():
    F = GF(3)
    r = reduce_vector(u_basis(F, 2), "u")
    assert r.result.u == (1, 0, 0) and set(kinds(r)) <= {"sl3"}
    a = O(F, 0, (1, 0, 0), (1, 0, 0), 0)
    assert reduce_vector(a, "u").result == a
    r = reduce_vector(O(F, 0, (1, 0, 0), (0, 1, 1), 0), "u")
    assert r.result.v == (0, 1, 0) and r.type == "P"
    with pytest.raises(ZeroVector):
        reduce_vector(e1(F), "u")


@pytest.mark.parametrize("F", [GF(2), GF(3)])
def test_reduce_vector_exhaustive(F):
    for a in all_octonions(F):
        for side in "uv":
            if not any(a.u if side == "u" else a.v):
                continue
            r = reduce_vector(a, side)
            r.verify()
            assert set(kinds(r)) <= {"sl3"}


def test_prereduce_examples():
    F = GF(3)
    r = prereduce_b(O(F, 1, beta=2))
    assert r.type == "D" and r.g.transcript == ()
    r = prereduce_b(v_basis(F, 3))
    assert r.type == "K" and r.result == u_basis(F, 1)
    assert prereduce_b(O(F, 0, (1, 0, 0), (0, 1, 0), 0)).type == "P"
    for b in all_octonions(F):
        r = prereduce_b(b)
        r.verify()
        assert r.type in ("D", "K", "N", "P")
        assert set(kinds(r)) <= {"sl3", "hbar"}


def test_k1_cases_fix_the_first_octonion():
    F = GF(3)
    a = O(F, 1, (1, 0, 0), beta=1)
    assert reduce_second_given_K1(a, O(F, 1, beta=1)).case == 1
    assert reduce_second_given_K1(a, v_basis(F, 2)).case == 2
    r = reduce_second_given_K1(a, u_basis(F, 2))
    assert r.case == 3 and r.result[1].u == (0, 1, 0)
    rng = random.Random(3)
    for _ in range(300):
        r = reduce_second_given_K1(a, random_octonion(F, rng))
        r.verify()
        assert r.g(a) == a and set(kinds(r)) <= {"sl3"}
    with pytest.raises(NotK1):
        reduce_second_given_K1(e1(F), e1(F))


# -- canonical_one ------------------------------------------------------------------------

def test_canonical_one_examples():
    F3 = GF(3)
    r = canonical_one(e1(F3))
    assert r.type == "D" and r.params == {"alpha1": 0, "alpha8": 1}
    r = canonical_one(O(F3, 0, (1, 0, 0), beta=1))
    assert r.type == "D" and r.result == O(F3, 0, beta=1)
    assert r.g.transcript[0].kind == "d1" and tuple(r.g.transcript[0].w) == (1, 0, 0)
    F5 = GF(5)
    a = O(F5, 2, (1, 0, 0), beta=2)
    r = canonical_one(a)
    assert r.type == "K1" and r.params == {"alpha1": 2} and r.g.transcript == ()


@pytest.mark.parametrize("q", [2, 3])
def test_canonical_one_exhaustive(q):
    _, out = sweeps.singles(q)
    assert len(out) == q**8
    assert all(o.problems == () for o in out.values())
    assert {o.type for o in out.values()} <= set(ONE_TAGS)


def test_canonical_one_gf4_and_gf5_sampled():
    for F in (GF(2, 2), GF(5), GF(7)):
        rng = random.Random(5)
        for _ in range(400):
            a = random_octonion(F, rng)
            r = canonical_one(a)
            r.verify()
            assert trace(r.result) == F.lift(trace(a), r.field_used)


def test_canonical_one_rationals():
    r = canonical_one(O(QQ, 0, (1, 0, 0), (1, 0, 0), 0))
    r.verify()
    assert r.type == "D" and (r.params["alpha1"], r.params["alpha8"]) == (-1, 1)
    with pytest.raises(NoRootInField):
        canonical_one(O(QQ, 0, (1, 0, 0), (2, 0, 0), 0))


# -- canonical_pair ---------------------------------------------------------------------------

def test_canonical_pair_examples():
    F2 = GF(2)
    r = canonical_pair(e1(F2), u_basis(F2, 1))
    assert r.type == "FK" and r.params == {"alpha1": 1, "alpha8": 0, "beta1": 0, "beta8": 0}
    assert r.g.transcript == ()
    F3 = GF(3)
    r = canonical_pair(Octonion.zero(F3), u_basis(F3, 2))
    assert r.type == "EK1" and r.params["beta1"] == 0
    assert all(isinstance(g, SL3) for g in r.g.transcript)
    a = O(F3, 2, (1, 0, 0), beta=2)
    r = canonical_pair(a, O(F3, 0, beta=1))
    assert r.type == "K1F" and r.g.transcript == ()


def test_pair_sweep_gf2_sound():
    _, out = sweeps.gf2_pairs()
    assert len(out) == 2**16
    assert all(o.problems == () for o in out.values())
    assert {o.type for o in out.values()} <= set(PAIR_TAGS)


@pytest.mark.slow
def test_random_pairs_gf3():
    F = GF(3)
    rng = random.Random(2024)
    tags = Counter()
    for _ in range(10**5):
        a, b = random_octonion(F, rng), random_octonion(F, rng)
        r = canonical_pair(a, b)
        assert r.g((a.lift(r.field_used), b.lift(r.field_used))) == r.result
        tags[r.type] += 1
    assert set(tags) <= set(PAIR_TAGS)


@pytest.mark.parametrize("F", [GF(2, 2), GF(5)])
def test_pairs_sampled_with_conservation(F):
    rng = random.Random(8)
    for _ in range(300):
        a, b = random_octonion(F, rng), random_octonion(F, rng)
        r = canonical_pair(a, b)
        r.verify()
        K = r.field_used
        for x, y in zip((a, b), r.result):
            assert F.lift(trace(x), K) == trace(y) and F.lift(norm(x), K) == norm(y)


def test_pair_rationals():
    a = O(QQ, 1, (1, 0, 0), beta=1)
    b = O(QQ, 2, (0, 0, 0), (0, 0, 1), 3)
    r = canonical_pair(a, b)
    r.verify()
    assert r.type in PAIR_TAGS


def test_swappable_second_diagonal_is_ordered():
    F = GF(5)
    a = O(F, 1, (1, 0, 0), beta=1)
    r = canonical_pair(a, O(F, 3, (0, 1, 0), beta=1))
    assert r.type == "K1M" and r.params["beta1"] <= r.params["beta8"]
    r.verify()
    r = canonical_pair(a, O(F, 4, (0, 0, 0), (2, 0, 0), 1))
    assert r.type == "K1L^T" and r.params["beta1"] <= r.params["beta8"]
    r.verify()


# -- traceless pairs ----------------------------------------------------------------------------

def test_traceless_examples():
    F3, F5, F2 = GF(3), GF(5), GF(2)
    assert canonical_traceless_pair(Octonion.zero(F3), u_basis(F3, 1)).type == "0u1"
    assert canonical_traceless_pair(u_basis(F5, 1), v_basis(F5, 2)).type == "u1v2"
    r = canonical_traceless_pair(unit(F2) + u_basis(F2, 1), unit(F2))
    assert r.type == "K1E" and r.params == {"alpha1": 1, "beta1": 1}
    with pytest.raises(NotTraceless):
        canonical_traceless_pair(e1(F3), u_basis(F3, 1))


def test_traceless_gf5_sampled():
    F = GF(5)
    rng = random.Random(6)

    def traceless():
        a = random_octonion(F, rng)
        return a - unit(F).scale(F.div(trace(a), 2))

    for _ in range(500):
        r = canonical_traceless_pair(traceless(), traceless())
        r.verify()
        assert r.type in TRACELESS_TAGS


def test_traceless_char2_tags_only():
    F = GF(2, 2)
    rng = random.Random(7)
    for _ in range(300):
        a, b = random_octonion(F, rng), random_octonion(F, rng)
        a = O(F, a.alpha, a.u, a.v, a.alpha)
        b = O(F, b.alpha, b.u, b.v, b.alpha)
        r = canonical_traceless_pair(a, b)
        r.verify()
        assert r.type in TRACELESS_TAGS_CHAR2


# -- serialization and verification ---------------------------------------------------------------

def test_reduction_json_round_trip():
    rng = random.Random(1)
    for F in (GF(2), GF(3), GF(2, 2), QQ):
        for _ in range(30):
            a, b = random_octonion(F, rng), random_octonion(F, rng)
            try:
                reds = [canonical_one(a), canonical_pair(a, b)]
            except NoRootInField:
                continue
            for red in reds:
                back = Reduction.from_json(red.to_json())
                assert back.to_json() == red.to_json()
                back.verify()


def test_verify_catches_tampering():
    F = GF(3)
    red = canonical_one(O(F, 0, (1, 0, 0), beta=1))
    obj = red.to_json()
    obj["result"]["beta"] = 2
    with pytest.raises(VerificationFailed):
        Reduction.from_json(obj).verify()
    obj = red.to_json()
    obj["g"]["transcript"].append({"kind": "hbar"})
    with pytest.raises(VerificationFailed):
        Reduction.from_json(obj).verify()


def test_normalized_form_orders_diagonal():
    F = GF(3)
    red = canonical_one(O(F, 2, beta=1))
    kind, coords = normalized_form(red)
    assert kind == "D" and coords[0] <= coords[7]
