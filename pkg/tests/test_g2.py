import random

import pytest
import sympy

from g2orbits.field import GF, QQ, FieldMismatch
from g2orbits.g2 import (
    BadIndices, Delta1, Delta2, G2Element, Hbar, NotUnimodular, SL3, apply, apply_pair,
    compose, delta1, delta2, det3, elementary, elementary_matrix, from_generator,
    generator_matrix, hbar, sl3, verify_automorphism,
)
from g2orbits.octonion import (
    Octonion, all_octonions, bilinear_form, conjugate, e1, e2, norm, random_octonion,
    trace, u_basis, unit, v_basis,
)

from test_octonion import generic, sym_mul, sym_parts


def sym_delta1(w, a):
    al, u, v, be = sym_parts(a)
    w = sympy.Matrix(w)
    s = w.dot(v)
    return (al - s, *((al - be - s) * w + u), *(v - u.cross(w)), be + s)


def sym_delta2(w, a):
    al, u, v, be = sym_parts(a)
    w = sympy.Matrix(w)
    s = u.dot(w)
    return (al + s, *(u + v.cross(w)), *((-al + be - s) * w + v), be - s)


def sym_hbar(a):
    return (a[7], *(-x for x in a[4:7]), *(-x for x in a[1:4]), a[0])


@pytest.mark.parametrize("move", [sym_delta1, sym_delta2, None])
def test_generators_are_automorphisms_symbolically(move):
    w = sympy.symbols("w1:4")
    act = (lambda a: sym_hbar(a)) if move is None else (lambda a: move(w, a))
    a, b = generic("a"), generic("b")
    lhs = act(sym_mul(a, b))
    rhs = sym_mul(act(a), act(b))
    assert all(sympy.expand(x - y) == 0 for x, y in zip(lhs, rhs))


def test_matrices_match_symbolic_formulas():
    F = QQ
    rng = random.Random(0)
    for _ in range(20):
        w = tuple(F.random(rng) for _ in range(3))
        a = random_octonion(F, rng)
        for gen, sym in ((Delta1(w), sym_delta1), (Delta2(w), sym_delta2)):
            expect = tuple(sympy.Rational(str(x)) for x in
                           sym([sympy.Rational(str(t)) for t in w],
                               [sympy.Rational(str(t)) for t in a.coords]))
            got = apply(from_generator(F, gen), a)
            assert tuple(sympy.Rational(str(x)) for x in got.coords) == expect


def test_spec_examples():
    F = GF(5)
    ident = from_generator(F, SL3(((1, 0, 0), (0, 1, 0), (0, 0, 1))))
    assert ident == G2Element.identity(F)
    got = delta1(F, (1, 0, 0))(v_basis(F, 1))
    assert got == Octonion.from_parts(F, -1, (-1, 0, 0), (1, 0, 0), 1)
    assert hbar(F)(e1(F)) == e2(F)
    F2 = GF(2)
    assert elementary(F2, 1, 2, 1)(u_basis(F2, 1)) == Octonion.from_parts(F2, 0, (1, 1, 0))
    for t in range(5):
        g = elementary(F, 1, 2, t)
        assert g(e1(F)) == e1(F) and g(e2(F)) == e2(F)
    F3 = GF(3)
    assert compose(elementary(F3, 1, 2, 1), elementary(F3, 1, 2, -1)) == G2Element.identity(F3)
    assert compose(hbar(F3), hbar(F3)) == G2Element.identity(F3)


def test_elementary_contragredient_action():
    F = GF(5)
    g = elementary(F, 2, 3, 2)
    # u'_3 = u_3 + 2 u_2 and v'_2 = v_2 - 2 v_3
    a = Octonion.from_parts(F, 0, (1, 1, 1), (1, 1, 1), 0)
    assert g(a) == Octonion.from_parts(F, 0, (1, 1, 3), (1, 4, 1), 0)


def test_errors():
    F = GF(3)
    with pytest.raises(NotUnimodular):
        sl3(F, ((2, 0, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(BadIndices):
        elementary(F, 1, 1, 1)
    with pytest.raises(FieldMismatch):
        compose(hbar(F), hbar(GF(2)))
    with pytest.raises(FieldMismatch):
        apply(hbar(F), e1(GF(2)))


def random_word(F, rng, length=6):
    """Random product of generators with raw (uncoerced) random parameters."""
    g = G2Element.identity(F)
    for _ in range(length):
        kind = rng.randrange(4)
        w = tuple(F.random(rng) for _ in range(3))
        if kind == 0:
            i, j = rng.sample((1, 2, 3), 2)
            gen = SL3(elementary_matrix(F, i, j, w[0]))
        elif kind == 1:
            gen = Delta1(w)
        elif kind == 2:
            gen = Delta2(w)
        else:
            gen = Hbar()
        g = g.move(gen)
    return g


@pytest.mark.parametrize("F", [GF(2), GF(3), GF(2, 2), GF(5), QQ])
def test_random_words_are_automorphisms(F):
    rng = random.Random(9)
    for _ in range(10):
        g = random_word(F, rng)
        assert g.is_consistent()
        rep = verify_automorphism(g, samples=50, rng=rng, exhaustive=False)
        assert rep.ok, rep.failures
        a = random_octonion(F, rng)
        assert g.inverse()(g(a)) == a
        assert g.inverse().is_consistent()


def test_action_properties_sampled():
    F = GF(3)
    rng = random.Random(1)
    for _ in range(20):
        g = random_word(F, rng)
        a, b = random_octonion(F, rng), random_octonion(F, rng)
        ga, gb = g(a), g(b)
        assert trace(ga) == trace(a) and norm(ga) == norm(a)
        assert bilinear_form(ga, gb) == bilinear_form(a, b)
        assert g(conjugate(a)) == conjugate(ga)
        assert g(a * b) == ga * gb
        assert g(unit(F)) == unit(F)
        assert apply_pair(g, (a, b))[0] == ga


def test_delta_composition_matches_matrices():
    F = GF(5)
    rng = random.Random(2)
    for _ in range(20):
        w1 = [F.random(rng) for _ in range(3)]
        w2 = [F.random(rng) for _ in range(3)]
        g = delta1(F, w1).then(delta1(F, w2))
        a = random_octonion(F, rng)
        assert g(a) == delta1(F, w2)(delta1(F, w1)(a))
        assert g.matrix == g.replay()


def test_verify_detects_corruption():
    F = GF(5)
    g = delta2(F, (0, 1, 0))
    assert verify_automorphism(g, samples=500).ok
    rows = [list(r) for r in g.matrix]
    rows[3][2] = F.add(rows[3][2], 1)
    bad = G2Element(F, rows, g.transcript)
    assert not verify_automorphism(bad, samples=50).ok
    assert not bad.is_consistent()


def test_verify_identity_exhaustive():
    rep = verify_automorphism(G2Element.identity(GF(2)))
    assert rep.ok and rep.checked_elements == 256


def sl3_order(q):
    return q**3 * (q**2 - 1) * (q**3 - 1)


@pytest.mark.parametrize("F", [GF(2), GF(3)])
def test_elementary_matrices_generate_sl3(F):
    """Closure of the elementary matrices has the order of SL3(F_q)."""
    gens = [elementary_matrix(F, i, j, t) for i in (1, 2, 3) for j in (1, 2, 3) if i != j
            for t in F.elements() if t]

    def mul(A, B):
        return tuple(tuple(F.dot(A[r], [B[k][c] for k in range(3)]) for c in range(3)) for r in range(3))

    start = elementary_matrix(F, 1, 2, F.zero)
    seen, todo = {start}, [start]
    while todo:
        A = todo.pop()
        for G in gens:
            B = mul(A, G)
            if B not in seen:
                seen.add(B)
                todo.append(B)
    assert len(seen) == sl3_order(F.order)
    assert all(det3(F, A) == F.one for A in seen)


def test_json_round_trip():
    for F in (GF(3), GF(2, 2), QQ):
        rng = random.Random(4)
        for _ in range(20):
            g = random_word(F, rng)
            h = G2Element.from_json(F, g.to_json())
            assert h == g and h.transcript == g.transcript


def test_generator_matrix_columns_are_images():
    F = GF(3)
    rng = random.Random(5)
    for gen in (Hbar(), Delta1((1, 2, 0)), Delta2((0, 1, 1)), SL3(((1, 1, 0), (0, 1, 0), (0, 2, 1)))):
        M = generator_matrix(F, gen)
        a = random_octonion(F, rng)
        assert apply(G2Element(F, M), a).coords == gen.act(F, a.coords)


def test_exhaustive_generator_check_gf2():
    F = GF(2)
    for g in (hbar(F), delta1(F, (1, 0, 0)), delta2(F, (0, 0, 1)), elementary(F, 3, 1, 1)):
        for a in all_octonions(F):
            assert trace(g(a)) == trace(a) and norm(g(a)) == norm(a)
