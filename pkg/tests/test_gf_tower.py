from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from cayley_doubling.gf_tower import (AutMap, FqElem, TowerError, aut_group, field_arith,
                                      fixed_field, frobenius_power, is_irreducible, is_square,
                                      make_tower, poly_mul, relative_norm, smallest_irreducible)

TOWERS = [(3, 1, 1), (3, 1, 2), (5, 1, 2), (3, 1, 3), (7, 1, 2), (3, 1, 4), (3, 2, 4), (5, 1, 3)]


def _irreducible_by_products(f, p):
    """Oracle: f is reducible iff it is a product of two monic polys of lower degree."""
    r = len(f) - 1
    for d in range(1, r // 2 + 1):
        for a in product(range(p), repeat=d):
            for b in product(range(p), repeat=r - d):
                if poly_mul(list(a) + [1], list(b) + [1], p) == list(f):
                    return False
    return True


def test_gf9_modulus_is_x2_plus_1(gf9):
    assert list(gf9.modulus) == [1, 0, 1]
    # exhaustive scan of monic quadratics over GF(3), ordered as (c1, c0)
    irr = [(c1, c0) for c1 in range(3) for c0 in range(3) if _irreducible_by_products([c0, c1, 1], 3)]
    assert irr[0] == (0, 1)


@pytest.mark.parametrize("p,r", [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)])
def test_smallest_irreducible_against_product_oracle(p, r):
    f = smallest_irreducible(p, r)
    assert _irreducible_by_products(f, p)
    for coeffs in product(range(p), repeat=r):
        cand = list(reversed(coeffs)) + [1]
        if tuple(reversed(cand[:-1])) >= tuple(reversed(f[:-1])):
            break
        assert not _irreducible_by_products(cand, p)


def test_ben_or_rejects_degree5_product_of_2_and_3():
    f = poly_mul([1, 0, 1], [1, 2, 0, 1], 3)  # (x^2+1)(x^3+2x+1) over GF(3)
    assert not is_irreducible(f, 3)


def test_gf81_modulus(gf9):
    t = make_tower(3, 1, 4)
    assert list(t.modulus) == [2, 1, 0, 0, 1]
    assert t.q == 81


def test_trivial_tower():
    t = make_tower(3, 1, 1)
    assert t.q == 3 and aut_group(t) == [AutMap(0, 1)]


@pytest.mark.parametrize("args,msg", [((2, 1, 3), "characteristic two unsupported"),
                                      ((9, 1, 2), "prime"), ((3, 2, 3), "dividing")])
def test_tower_errors(args, msg):
    with pytest.raises(TowerError, match=msg):
        make_tower(*args)


def test_reducible_modulus_rejected():
    with pytest.raises(TowerError):
        make_tower(3, 1, 2, [2, 0, 1])  # x^2 + 2 = (x+1)(x+2)


def test_arith_examples(gf9):
    w = gf9.w
    assert gf9.mul(w, w) == 2
    assert gf9.mul(gf9.add(w, 1), gf9.add(w, 2)) == 1
    assert gf9.inv(w) == gf9.mul(2, w)
    e = FqElem.from_int(gf9, w)
    assert field_arith(e, None, "inv").value == 2 * 3
    assert field_arith(e, -1, "pow").value == 6
    with pytest.raises(ZeroDivisionError):
        field_arith(FqElem.from_int(gf9, 0), None, "inv")
    with pytest.raises(ValueError):
        FqElem.from_int(gf9, 1) + FqElem.from_int(make_tower(5, 1, 2), 1)


@pytest.mark.parametrize("tower", TOWERS)
def test_fast_path_matches_polynomial_reference_exhaustively(tower):
    t = make_tower(*tower)
    if t.q > 125:
        pytest.skip("exhaustive only for small towers")
    for a in range(t.q):
        ea = FqElem.from_int(t, a)
        for b in range(t.q):
            eb = FqElem.from_int(t, b)
            assert t.add(a, b) == (ea + eb).value
            assert t.mul(a, b) == (ea * eb).value
        if a:
            assert t.inv(a) == ea.inverse().value


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(3, 1, 4), (3, 2, 4), (7, 1, 3), (5, 1, 4)]), st.data())
def test_fast_path_matches_reference_sampled(tower, data):
    t = make_tower(*tower)
    a = data.draw(st.integers(0, t.q - 1))
    b = data.draw(st.integers(0, t.q - 1))
    e = data.draw(st.integers(-5, 20))
    ea, eb = FqElem.from_int(t, a), FqElem.from_int(t, b)
    assert t.mul(a, b) == (ea * eb).value
    assert t.sub(a, b) == (ea - eb).value
    if a:
        assert t.pow(a, e) == (ea ** e).value


def test_frobenius_examples(gf9):
    w = gf9.w
    assert frobenius_power(gf9, w, 1) == gf9.mul(2, w)
    assert frobenius_power(gf9, w, 2) == w
    assert frobenius_power(gf9, 1, 1) == 1


def test_norm_examples(gf9):
    w = gf9.w
    assert relative_norm(gf9, gf9.add(w, 1)) == 2
    assert relative_norm(gf9, 1) == 1
    assert relative_norm(gf9, w) == 1
    assert relative_norm(gf9, 0) == 0


def test_square_examples(gf9):
    w = gf9.w
    squares = {gf9.mul(y, y) for y in range(1, 9)}
    assert is_square(gf9, 1) and is_square(gf9, w) and not is_square(gf9, gf9.add(w, 1))
    assert {x for x in range(1, 9) if is_square(gf9, x)} == squares
    assert gf9.pow(gf9.add(w, 1), 6) == w


def test_aut_group_and_fixed_fields(gf9):
    assert [a.j for a in aut_group(gf9)] == [0, 1]
    assert [a.j for a in aut_group(make_tower(3, 1, 3))] == [0, 1, 2]
    assert [a.j for a in aut_group(make_tower(3, 2, 2))] == [0]
    assert fixed_field(gf9, gf9.aut(1)) == [0, 1, 2]
    assert len(fixed_field(gf9, gf9.aut(0))) == 9
    t81 = make_tower(3, 1, 4)
    fix = fixed_field(t81, t81.aut(2))
    assert len(fix) == 9 and fix == [x for x in range(81) if t81.pow(x, 9) == x]


@pytest.mark.parametrize("tower", TOWERS)
def test_automorphism_and_norm_properties_exhaustive(tower):
    t = make_tower(*tower)
    F = set(t.base_elements)
    squares_F = {t.mul(f, f) for f in F if f}
    for a in aut_group(t):
        perm = t.aut_perm(a)
        assert all(perm[f] == f for f in F)
        assert t.aut_perm(a.power(t.degree)).tolist() == list(range(t.q))
        for x in range(t.q):
            assert relative_norm(t, int(perm[x])) == relative_norm(t, x)
            for y in range(0, t.q, max(1, t.q // 13)):
                assert perm[t.mul(x, y)] == t.mul(int(perm[x]), int(perm[y]))
                assert perm[t.add(x, y)] == t.add(int(perm[x]), int(perm[y]))
    for x in range(1, t.q):
        n = relative_norm(t, x)
        assert n in F
        assert is_square(t, x) == (n in squares_F)


@pytest.mark.parametrize("tower", [(3, 1, 2), (5, 1, 2), (3, 1, 3)])
def test_norm_multiplicative_exhaustive(tower):
    t = make_tower(*tower)
    for x in range(t.q):
        for y in range(t.q):
            assert relative_norm(t, t.mul(x, y)) == t.mul(relative_norm(t, x), relative_norm(t, y))


def test_format_parse_roundtrip(gf9):
    t = make_tower(3, 1, 4)
    for x in range(t.q):
        assert t.parse(t.format(x)) == x
    assert gf9.format(gf9.add(gf9.w, 1)) == "1+1*w"
    assert gf9.parse("w+1") == gf9.add(gf9.w, 1)


def test_autmap_group_law():
    a, b = AutMap(1, 3), AutMap(2, 3)
    assert a.compose(b).is_identity
    assert a.inverse() == b
    assert AutMap(4, 3) == AutMap(1, 3)
