import pytest

from cayley_doubling.doubling import gf_algebra, quat_algebra
from cayley_doubling.morphisms import (OBSTRUCTED, POSSIBLE, MorphismError, aut_bruteforce,
                                       aut_theorem_enumerate, build_isomorphism, iso_bruteforce,
                                       norm_obstruction, normalize_sigma4, restricted_iso_search,
                                       tables_as_set)
from cayley_doubling.quaternions import HAMILTON, InnerAut
from cayley_doubling.structure import nucleus_oracle, probe


@pytest.fixture
def A1(gf9):
    return gf_algebra(gf9, "1+1*w", [1, 0, 0, 0])


def test_build_identity_and_b_w(gf9):
    R = gf_algebra(gf9, 1, [0, 0, 0, 0]).ring
    A = gf_algebra(gf9, "1+1*w", [1, 0, 0, 1])
    G = build_isomorphism(A, A, R.identity_aut(), R.identity_aut(), 1)
    assert G.verified and G.to_table().images == tuple(A.coords(e) for e in A.basis_raw())
    B = gf_algebra(gf9, "1+1*w", [1, 0, 0, 0])
    # target c' = (w+1) phi(w) w = w+1 since phi(w) w = w^4 = 1
    G = build_isomorphism(B, B, R.identity_aut(), R.identity_aut(), gf9.w)
    assert G.verified and G.b == gf9.inv(gf9.w)
    assert G.apply_raw((0, 1)) == (0, gf9.inv(gf9.w))


def test_build_rejects_wrong_target(gf9, A1):
    R = A1.ring
    B = gf_algebra(gf9, gf9.w, [1, 0, 0, 0])
    with pytest.raises(MorphismError, match="target c"):
        build_isomorphism(A1, B, R.identity_aut(), R.identity_aut(), 1)
    with pytest.raises(MorphismError, match="phi_1"):
        build_isomorphism(A1, gf_algebra(gf9, "1+1*w", [0, 0, 0, 0]), R.identity_aut(),
                          R.identity_aut(), 1)


def test_normalize_examples(gf9):
    B, G = normalize_sigma4(gf_algebra(gf9, "1+1*w", [0, 0, 0, 1]))
    assert B == gf_algebra(gf9, "1+1*w", [1, 1, 1, 0]) and G.verified
    A = gf_algebra(gf9, "1+1*w", [1, 0, 0, 0])
    B, G = normalize_sigma4(A)
    assert B == A and all(G.apply_raw(e) == e for e in A.basis_raw())
    B, _ = normalize_sigma4(gf_algebra(gf9, "1+1*w", [1, 1, 1, 1]))
    assert B == gf_algebra(gf9, "1+1*w", [0, 0, 0, 0])
    Q = quat_algebra(HAMILTON, "1+i", ["i", "j", "k", "1+j"])
    QB, QG = normalize_sigma4(Q)
    assert QG.verified and QB.sigma[3].is_identity


def test_restricted_search_examples(gf9, A1):
    found = restricted_iso_search(A1, A1)
    assert len(found) == 4
    assert sorted(G.b for G in found) == sorted([1, 2, gf9.w, gf9.mul(2, gf9.w)])
    assert all(G.g == G.h for G in found)  # s2 = phi2 = id forces g = h
    B = gf_algebra(gf9, gf9.w, [1, 0, 0, 0])
    assert restricted_iso_search(A1, B) == []


def test_norm_obstruction_examples(gf9, A1):
    c = gf9.parse("1+1*w")
    B = gf_algebra(gf9, gf9.pow(c, 3), [1, 0, 0, 0])
    assert norm_obstruction(A1, B) == POSSIBLE
    assert norm_obstruction(A1, gf_algebra(gf9, gf9.w, [1, 0, 0, 0])) == OBSTRUCTED
    assert norm_obstruction(A1, A1) == POSSIBLE


def test_theorem_enumerate_anchor(gf9, A1):
    auts = aut_theorem_enumerate(A1)
    assert len(auts) == 4 and all(G.g.j == 0 for G in auts)
    assert {G.b for G in auts} == {b for b in range(1, 9) if gf9.pow(b, 4) == 1}
    # cyclic of order 4: composition multiplies the b's
    tabs = {G.b: G.to_table() for G in auts}
    for b1, T1 in tabs.items():
        for b2, T2 in tabs.items():
            assert T1.compose(T2).key == tabs[gf9.mul(b1, b2)].key


def test_bruteforce_anchor_and_identity(gf9, A1):
    bf = aut_bruteforce(A1)
    assert tables_as_set(bf) == tables_as_set(aut_theorem_enumerate(A1))
    ident = tuple(A1.coords(e) for e in A1.basis_raw())
    assert ident in tables_as_set(bf)
    for c in range(1, 9):
        from cayley_doubling.gf_tower import is_square
        if not is_square(gf9, c):
            assert len(aut_bruteforce(gf_algebra(gf9, c, [0, 0, 0, 0]))) == 4


def test_iso_bruteforce_examples(gf9, A1):
    assert tables_as_set(aut_bruteforce(A1)) <= tables_as_set(iso_bruteforce(A1, A1))
    assert iso_bruteforce(A1, gf_algebra(gf9, gf9.w, [1, 0, 0, 0])) == []
    A = gf_algebra(gf9, "1+1*w", [1, 0, 1, 1])
    B, G = normalize_sigma4(A)
    found = iso_bruteforce(A, B)
    assert found and G.to_table().key in tables_as_set(found)


def test_group_closure_and_nucleus_transport(gf9_algebras):
    for A in gf9_algebras[::9]:
        auts = aut_bruteforce(A)
        keys = tables_as_set(auts)
        for T in auts:
            assert T.inverse().key in keys
            for U in auts:
                assert T.compose(U).key in keys
            for side in ("left", "middle", "right"):
                N = nucleus_oracle(A, side)
                assert T.image(N) == N


def test_constructed_isomorphisms_transport_nuclei(gf9_algebras):
    for A in gf9_algebras[::11]:
        B, G = normalize_sigma4(A)
        T = G.to_table()
        for side in ("left", "middle", "right"):
            assert T.image(nucleus_oracle(A, side)) == nucleus_oracle(B, side)


def test_quaternion_theorem_form_automorphism():
    A = quat_algebra(HAMILTON, "1+i", ["1"] * 4)
    R = A.ring
    for q in ("i", "2+3i", "1-i"):
        g = InnerAut(HAMILTON.parse(q))
        for b in (1, -1):
            G = build_isomorphism(A, A, g, g, R.embed_scalar(b))
            assert G.verified
