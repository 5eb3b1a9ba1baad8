"""Isomorphisms and automorphisms between doubled algebras.

Every map of theorem shape is stored as G(u, v) = (g(u), h(v) b).  The
construction theorem writes its maps as (g(u), h(v) b^-1); build_isomorphism
takes the b in that convention and stores b^-1.

The brute-force oracles find all isomorphisms by enumerating the images of
two generators, (w, 0) and (0, 1), where w generates K over F.  The F-basis
(w^k, 0) = (w, 0)^k (left-nested) and (w^k, 0)(0, 1) is built from fixed
words in those generators, and any isomorphism must respect every word, so
the enumeration is complete.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .doubling import AlgebraError, DoublingParams
from .linalg import Subspace, mat_vec, rank, solve_inverse


class MorphismError(ValueError):
    """A side condition of a morphism construction failed."""


ISO_LIMIT = 10_000  # doubled elements


@dataclass(frozen=True)
class LinearMapTable:
    """An F-linear map given by the target coordinates of each source basis image."""
    source: DoublingParams
    target: DoublingParams
    images: tuple  # images[j] = coords in target of G(e_j)
    invertible: bool

    @property
    def key(self):
        return self.images

    def apply_coords(self, vec) -> tuple:
        F = self.target.ring.scalars
        n = len(self.images)
        cols = [[self.images[j][i] for j in range(n)] for i in range(n)]
        return mat_vec(cols, vec, F)

    def apply(self, a):
        return self.target.from_coords(self.apply_coords(self.source.coords(a)))

    def matrix(self) -> list[list]:
        n = len(self.images)
        return [[self.images[j][i] for j in range(n)] for i in range(n)]

    def compose(self, other: "LinearMapTable") -> "LinearMapTable":
        """self o other."""
        imgs = tuple(self.apply_coords(v) for v in other.images)
        return LinearMapTable(other.source, self.target, imgs, self.invertible and other.invertible)

    def inverse(self) -> "LinearMapTable":
        F = self.target.ring.scalars
        inv = solve_inverse(self.matrix(), F)
        n = len(inv)
        imgs = tuple(tuple(inv[i][j] for i in range(n)) for j in range(n))
        return LinearMapTable(self.target, self.source, imgs, True)

    def image(self, S: Subspace) -> Subspace:
        return Subspace(S.field, S.n, [self.apply_coords(v) for v in S.rows])

    def preserves_first_slot(self) -> bool:
        d = self.source.ring.dim
        F = self.target.ring.scalars
        return all(all(x == F.zero for x in self.images[j][d:]) for j in range(d))

    def to_json(self):
        from .linalg import _scalar_json
        return [[_scalar_json(a) for a in row] for row in self.matrix()]


def verify_linear_map(source: DoublingParams, target: DoublingParams, fn) -> LinearMapTable | None:
    """Tabulate fn on the source basis; return it if bijective and multiplicative.

    fn must be F-linear; multiplicativity on basis pairs then suffices.
    """
    B = source.basis_raw()
    img = [fn(e) for e in B]
    for i, a in enumerate(B):
        for j, b in enumerate(B):
            lhs = fn(source.mul_raw(a, b))
            rhs = target.mul_raw(img[i], img[j])
            if not target.is_zero_raw(target.sub_raw(lhs, rhs)):
                return None
    coords = tuple(target.coords(x) for x in img)
    F = target.ring.scalars
    invertible = rank(list(coords), F, target.dim) == target.dim
    if not invertible:
        return None
    return LinearMapTable(source, target, coords, True)


@dataclass
class MorphismCandidate:
    """G(u, v) = (g(u), h(v) b) from source to target."""
    source: DoublingParams
    target: DoublingParams
    g: Any
    h: Any
    b: Any
    verified: bool = False
    table: LinearMapTable | None = field(default=None, repr=False)

    def apply_raw(self, a):
        R = self.target.ring
        return (R.apply(self.g, a[0]), R.mul(R.apply(self.h, a[1]), self.b))

    def verify(self) -> bool:
        self.table = verify_linear_map(self.source, self.target, self.apply_raw)
        self.verified = self.table is not None
        return self.verified

    def to_table(self) -> LinearMapTable:
        if self.table is None:
            B = self.source.basis_raw()
            coords = tuple(self.target.coords(self.apply_raw(e)) for e in B)
            self.table = LinearMapTable(self.source, self.target, coords, True)
        return self.table

    def to_json(self) -> dict:
        R = self.target.ring
        return {"g": R.aut_to_json(self.g), "h": R.aut_to_json(self.h),
                "b": R.format(self.b), "verified": self.verified}


# ---------------------------------------------------------------------------
# theorem-shaped constructions

def _check_ring(A, B):
    if A.ring != B.ring:
        raise MorphismError("source and target must share the coefficient ring")


def build_isomorphism(A: DoublingParams, B: DoublingParams, g, h, b) -> MorphismCandidate:
    """The map (u, v) -> (g(u), h(v) b^-1), after checking its side conditions.

    Field case: B.c = g(A.c) phi1(b) phi2(b).  Quaternion case: b in F^x and
    B.c = g(A.c) b^2.  In both: phi_i = g s_i h^-1 (i = 1, 2) and
    phi_i = h s_i g^-1 (i = 3, 4).
    """
    _check_ring(A, B)
    R = A.ring
    if R.is_zero(b):
        raise MorphismError("b must be nonzero")
    if not R.finite:
        b = R.embed_scalar(b) if not hasattr(b, "alg") else b
        if not b.is_scalar():
            raise MorphismError("b must lie in the centre F")
    s, phi = A.sigma, B.sigma
    gi, hi = R.aut_inverse(g), R.aut_inverse(h)
    for i in (0, 1):
        if not R.aut_eq(phi[i], R.compose(R.compose(g, s[i]), hi)):
            raise MorphismError(f"phi_{i + 1} != g o sigma_{i + 1} o h^-1")
    for i in (2, 3):
        if not R.aut_eq(phi[i], R.compose(R.compose(h, s[i]), gi)):
            raise MorphismError(f"phi_{i + 1} != h o sigma_{i + 1} o g^-1")
    gc = R.apply(g, A.c)
    if R.finite:
        expect = R.mul(R.mul(gc, R.apply(phi[0], b)), R.apply(phi[1], b))
    else:
        expect = R.mul(gc, R.mul(b, b))
    if R.is_zero(R.sub(expect, B.c)):
        G = MorphismCandidate(A, B, g, h, R.inv(b))
    else:
        raise MorphismError("target c differs from g(c) phi1(b) phi2(b)" if R.finite
                            else "target c differs from g(c) b^2")
    if not G.verify():
        raise MorphismError("constructed map failed the basis-pair multiplicativity check")
    return G


def normalize_sigma4(A: DoublingParams):
    """Isomorphic copy with s4 = id, via (u, v) -> (u, s4^-1(v))."""
    R = A.ring
    s1, s2, s3, s4 = A.sigma
    s4i = R.aut_inverse(s4)
    B = DoublingParams(R, A.c, (R.compose(s1, s4), R.compose(s2, s4),
                                R.compose(s4i, s3), R.identity_aut()))
    G = build_isomorphism(A, B, R.identity_aut(), s4i, R.one)
    return B, G


def restricted_iso_search(A: DoublingParams, B: DoublingParams) -> list[MorphismCandidate]:
    """All isomorphisms A -> B whose restriction to K (+) 0 is an automorphism of K."""
    A._require_finite()
    _check_ring(A, B)
    R = A.ring
    t = R.tower
    s, phi = A.sigma, B.sigma
    bs = np.arange(1, t.q)
    out = []
    for g in R.all_auts():
        h = R.compose(R.compose(phi[2], g), R.aut_inverse(s[2]))
        if not all(R.aut_eq(R.compose(phi[i], h), R.compose(g, s[i])) for i in (0, 1)):
            continue
        if not all(R.aut_eq(R.compose(phi[i], g), R.compose(h, s[i])) for i in (2, 3)):
            continue
        gc = R.apply(g, A.c)
        vals = t.vmul(B.c, t.vmul(R.perm(phi[0])[bs], R.perm(phi[1])[bs]))
        for b in bs[vals == gc]:
            G = MorphismCandidate(A, B, g, h, int(b))
            if G.verify():
                out.append(G)
    return out


def restricted_iso_exists(A: DoublingParams, B: DoublingParams) -> MorphismCandidate | None:
    for G in _restricted_iter(A, B):
        return G
    return None


def _restricted_iter(A, B):
    _check_ring(A, B)
    R = A.ring
    t = R.tower
    s, phi = A.sigma, B.sigma
    bs = np.arange(1, t.q)
    for g in R.all_auts():
        h = R.compose(R.compose(phi[2], g), R.aut_inverse(s[2]))
        if not all(R.aut_eq(R.compose(phi[i], h), R.compose(g, s[i])) for i in (0, 1)):
            continue
        if not all(R.aut_eq(R.compose(phi[i], g), R.compose(h, s[i])) for i in (2, 3)):
            continue
        gc = R.apply(g, A.c)
        vals = t.vmul(B.c, t.vmul(R.perm(phi[0])[bs], R.perm(phi[1])[bs]))
        for b in bs[vals == gc]:
            G = MorphismCandidate(A, B, g, h, int(b))
            if G.verify():
                yield G


OBSTRUCTED, POSSIBLE = "obstructed", "possible"


def norm_obstruction(A: DoublingParams, B: DoublingParams) -> str:
    """obstructed when N(c c'^-1) is not a norm of a square, i.e. not in (F^x)^2."""
    R = A.ring
    ratio = R.mul(A.c, R.inv(B.c))
    return POSSIBLE if R.norm_square_test(R.norm(ratio)) else OBSTRUCTED


def aut_theorem_enumerate(A: DoublingParams) -> list[MorphismCandidate]:
    """Field case: (u, v) -> (s^i(u), s^i(v) b) with s^i(c) = c s1(b) s2(b).

    s = phi^s generates Aut_F(K); s1(b) s2(b) stands in for the corollary's
    undefined sigma^alpha2(b) sigma^beta2(b).
    """
    A._require_finite()
    R = A.ring
    t = R.tower
    s1, s2 = A.sigma[0], A.sigma[1]
    bs = np.arange(1, t.q)
    vals = t.vmul(A.c, t.vmul(R.perm(s1)[bs], R.perm(s2)[bs]))
    out = []
    for g in R.all_auts():
        for b in bs[vals == R.apply(g, A.c)]:
            G = MorphismCandidate(A, A, g, g, int(b))
            if not G.verify():
                raise MorphismError(f"theorem-form map {G.to_json()} is not multiplicative")
            out.append(G)
    return out


# ---------------------------------------------------------------------------
# brute-force oracles

def _word_basis(A: DoublingParams):
    """Words in (w, 0) and (0, 1) giving an F-basis; returns (uses_w, words)."""
    R = A.ring
    d = R.dim
    one = (R.one, R.zero)
    gen = (R.basis[1], R.zero) if d > 1 else None
    powers = [one]
    for _ in range(1, d):
        powers.append(A.mul_raw(powers[-1], gen))
    words = powers + [A.mul_raw(p, (R.zero, R.one)) for p in powers]
    return gen is not None, words


def iso_bruteforce(A: DoublingParams, B: DoublingParams, limit: int = ISO_LIMIT,
                   first_only: bool = False) -> list[LinearMapTable]:
    """All isomorphisms A -> B, by generator-image enumeration."""
    A._require_finite()
    B._require_finite()
    if A.ring != B.ring:
        raise AlgebraError("brute-force isomorphism search needs a common tower")
    if A.size > limit:
        raise AlgebraError(f"brute-force isomorphism search needs q^2 <= {limit}, got {A.size}")
    R = A.ring
    t = R.tower
    F = R.scalars
    q, n, d = t.q, A.dim, R.dim
    uses_w, words = _word_basis(A)
    wmat = [A.coords(x) for x in words]
    try:
        M = solve_inverse(wmat, F)  # e_j = sum_i M[j][i] word_i
    except ValueError:
        raise AlgebraError("generator words do not span the algebra") from None
    T = A.structure_constants

    def scale(f, arr):
        if f == 0:
            return np.zeros_like(arr)
        if f == 1:
            return arr
        return t.vmul(f, arr % q) + q * t.vmul(f, arr // q)

    def add(a, b):
        return t.vadd(a % q, b % q) + q * t.vadd(a // q, b // q)

    def combine(coeffs, vecs):
        acc = None
        for f, v in zip(coeffs, vecs):
            if f != 0:
                term = scale(f, v)
                acc = term if acc is None else add(acc, term)
        return acc if acc is not None else np.zeros_like(vecs[0])

    nb = B.size
    betas = np.arange(nb)
    alphas = np.arange(nb) if uses_w else np.array([-1])
    chunk = max(1, 200_000 // nb)
    found = []
    for start in range(0, len(alphas), chunk):
        al = np.repeat(alphas[start:start + chunk], nb)
        be = np.tile(betas, min(chunk, len(alphas) - start))
        imgs = [np.ones_like(be)]
        for _ in range(1, d):
            imgs.append(B.mul_encoded(imgs[-1], al))
        imgs += [B.mul_encoded(p, be) for p in imgs[:d]]
        Ge = [combine(M[j], imgs) for j in range(n)]
        ok = np.ones(len(be), dtype=bool)
        for i in range(n):
            for j in range(n):
                lhs = combine(T[i][j], Ge)
                ok &= B.mul_encoded(Ge[i], Ge[j]) == lhs
                if not ok.any():
                    break
            if not ok.any():
                break
        for idx in np.flatnonzero(ok):
            coords = tuple(B.coords(B.decode(int(Ge[j][idx]))) for j in range(n))
            if rank(list(coords), F, n) == n:
                found.append(LinearMapTable(A, B, coords, True))
                if first_only:
                    return found
    return found


def aut_bruteforce(A: DoublingParams, limit: int = ISO_LIMIT) -> list[LinearMapTable]:
    return iso_bruteforce(A, A, limit)


def tables_as_set(maps) -> set:
    return {(m.to_table() if isinstance(m, MorphismCandidate) else m).key for m in maps}
