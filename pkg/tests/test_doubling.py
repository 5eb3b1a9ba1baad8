import json
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cayley_doubling.doubling import (AlgebraError, DoubledElem, algebra_from_descriptor, gf_algebra,
                                      load_algebra, make_algebra, quat_algebra, subalgebra_embed)
from cayley_doubling.gf_tower import FqElem, make_tower
from cayley_doubling.quaternions import HAMILTON, InnerAut
from cayley_doubling.rings import GFRing


def test_dimension_and_basis(gf9):
    A = gf_algebra(gf9, "1+1*w", [1, 0, 0, 0])
    assert A.dim == 4
    w = gf9.w
    assert A.basis_raw() == [(1, 0), (w, 0), (0, 1), (0, w)]
    B = gf_algebra(make_tower(3, 2, 2), 2, [0, 0, 0, 0])
    assert B.basis_raw() == [(1, 0), (0, 1)]
    Q = quat_algebra(HAMILTON, "1+i", ["1"] * 4)
    assert Q.dim == 8
    assert [str(u) + "|" + str(v) for u, v in Q.basis_raw()][4] == "0+0i+0j+0k|1+0i+0j+0k"


def test_c_zero_rejected(gf9):
    R = GFRing(gf9)
    with pytest.raises(AlgebraError):
        make_algebra(R, 0, *[gf9.aut(0)] * 4)
    with pytest.raises(AlgebraError):
        gf_algebra(gf9, 1, [0, 0, 0])


def test_worked_product(gf9):
    A = gf_algebra(gf9, "1+1*w", [1, 0, 0, 0])
    w = gf9.w
    assert A.mul_raw((w, 1), (1, w)) == (gf9.parse("2+2*w"), 0)
    x, y = A.elem(w, 1), A.elem(1, w)
    assert (x * y).pair == (gf9.parse("2+2*w"), 0)


def test_unit_two_sided(gf9_algebras):
    for A in gf9_algebras[::5]:
        for a in A.basis_raw():
            assert A.mul_raw((1, 0), a) == a and A.mul_raw(a, (1, 0)) == a
    Q = quat_algebra(HAMILTON, "1+i", ["i", "j", "1+k", "1"])
    for a in Q.basis_raw():
        assert Q.mul_raw(Q.one().pair, a) == a and Q.mul_raw(a, Q.one().pair) == a


def _knuth_mul(t, c, alpha, beta, sig):
    """Independent (ux + c alpha(v) beta(y), sigma(u) y + v x) on polynomial-basis elements."""
    def f(a, b):
        (u, v), (x, y) = a, b
        E = lambda z: FqElem.from_int(t, z)
        fr = lambda z, j: E(z) ** (t.p ** (t.s * j))
        first = E(u) * E(x) + E(c) * fr(v, alpha) * fr(y, beta)
        second = fr(u, sig) * E(y) + E(v) * E(x)
        return first.value, second.value
    return f


@pytest.mark.parametrize("tower", [(3, 1, 2), (5, 1, 2)])
def test_sigma4_identity_is_knuth_form(tower):
    t = make_tower(*tower)
    for c in (1, t.w, t.add(t.w, 1)):
        for al, be, sg in product(range(t.degree), repeat=3):
            A = gf_algebra(t, c, [al, be, sg, 0])
            ref = _knuth_mul(t, c, al, be, sg)
            for a in [(1, 2), (t.w, 1), (0, t.w), (3, t.q - 1)]:
                for b in [(2, t.w), (1, 1), (t.q - 1, 0), (t.w, t.w)]:
                    assert A.mul_raw(a, b) == ref(a, b)


def test_all_identity_is_quadratic_extension(gf9):
    """Cay(K, c, id, id, id, id) is K[t]/(t^2 - c): (u + vt)(x + yt) against FqElem arithmetic."""
    for c in range(1, 9):
        A = gf_algebra(gf9, c, [0, 0, 0, 0])
        E = lambda z: FqElem.from_int(gf9, z)
        for u, v, x, y in product(range(9), repeat=4):
            uv = A.mul_raw((u, v), (x, y))
            assert uv == ((E(u) * E(x) + E(c) * E(v) * E(y)).value, (E(u) * E(y) + E(v) * E(x)).value)
        T = A.table
        assert (T == T.T).all()


def test_encoded_table_matches_scalar_product(gf9_algebras):
    for A in gf9_algebras[::7]:
        T = A.table
        for a in range(A.size):
            for b in range(0, A.size, 7):
                assert T[a, b] == A.encode(A.mul_raw(A.decode(a), A.decode(b)))
        a = np.arange(A.size)
        assert (A.mul_encoded(a, a[::-1]) == T[a, a[::-1]]).all()


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 127), st.lists(st.integers(0, 2), min_size=12, max_size=12))
def test_bilinear(idx, coef):
    t = make_tower(3, 1, 2)
    A = gf_algebra(t, 1 + idx // 16, [int(b) for b in format(idx % 16, "04b")])
    F = A.ring.scalars
    a, b, x = coef[:4], coef[4:8], coef[8:12]
    lam = 2
    comb = [F.add(ai, F.mul(lam, bi)) for ai, bi in zip(a, b)]
    lhs = A.coords(A.mul_raw(A.from_coords(comb), A.from_coords(x)))
    pa = A.coords(A.mul_raw(A.from_coords(a), A.from_coords(x)))
    pb = A.coords(A.mul_raw(A.from_coords(b), A.from_coords(x)))
    assert lhs == tuple(F.add(p, F.mul(lam, q)) for p, q in zip(pa, pb))


def test_quaternion_product_order():
    A = quat_algebra(HAMILTON, "1+j", ["i", "1", "j", "1"])
    i, j = HAMILTON(0, 1), HAMILTON(0, 0, 1)
    c = HAMILTON(1, 0, 1)
    s1, s3 = InnerAut(i), InnerAut(j)
    u, v, x, y = i, j, HAMILTON(0, 0, 0, 1), i + j
    got = A.mul_raw((u, v), (x, y))
    assert got == (u * x + c * s1(v) * y, s3(u) * y + v * x)
    assert got != (x * u + c * s1(v) * y, s3(u) * y + v * x)


def test_cross_algebra_rejected(gf9):
    A = gf_algebra(gf9, 1, [0, 0, 0, 0])
    B = gf_algebra(gf9, 2, [0, 0, 0, 0])
    with pytest.raises(AlgebraError):
        A.elem(1, 0) * B.elem(1, 0)


def test_descriptor_roundtrip(gf9, tmp_path):
    A = gf_algebra(gf9, "1+1*w", [1, 0, 0, 1])
    d = A.descriptor()
    assert d == {"base": "gf", "p": 3, "s": 1, "r": 2, "modulus": [1, 0, 1], "c": "1+1*w",
                 "sigma": [1, 0, 0, 1]}
    assert algebra_from_descriptor(d) == A
    Q = quat_algebra(HAMILTON, "1+i", ["i", "1", "1", "1"])
    p = tmp_path / "q.json"
    p.write_text(json.dumps(Q.descriptor()))
    assert load_algebra(p) == Q
    with pytest.raises(AlgebraError):
        algebra_from_descriptor({"base": "gf", "p": 3})


def test_subalgebra_examples(gf9):
    sub = subalgebra_embed(gf_algebra(gf9, 2, [1, 1, 1, 1]), 1)
    assert sub.verified and sub.sub.ring.tower.q == 3 and sub.sub.c == 2
    assert all(s.is_identity for s in sub.sub.sigma)
    with pytest.raises(AlgebraError, match="c does not lie"):
        subalgebra_embed(gf_algebra(gf9, "1+1*w", [0, 0, 0, 0]), 1)
    t81 = make_tower(3, 1, 4)
    c = next(x for x in range(2, 81) if t81.pow(x, 9) == x and x >= 3)
    emb = subalgebra_embed(gf_algebra(t81, c, [1, 0, 0, 0]), 2)
    assert emb.verified and emb.sub.sigma[0].j == 1 and emb.sub.ring.tower.q == 9
