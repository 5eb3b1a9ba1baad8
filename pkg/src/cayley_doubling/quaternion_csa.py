"""Doublings of a rational quaternion algebra D = (a, b)_Q.

Everything here is exact: conditions that are Q-linear in an unknown become
rational matrices built by evaluating the condition on the quaternion basis,
and solutions are their kernels.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

from .doubling import DoublingParams
from .linalg import QQ, Subspace, nullspace, rank
from .morphisms import MorphismCandidate, MorphismError
from .quaternions import InnerAut, Quaternion
from .rings import QuatRing

YES, UNKNOWN = "yes", "unknown"

KINDS = ("nuc_left_condition", "commutant", "scalar_lemma")


def _require_quat(A: DoublingParams) -> QuatRing:
    if not isinstance(A.ring, QuatRing):
        raise TypeError("expected a doubling of a quaternion algebra")
    return A.ring


def division_sufficient(A: DoublingParams) -> str:
    """yes when N(c) lies outside N(D^x)^2; raises NormGroupUnknown without a plugin."""
    R = _require_quat(A)
    return UNKNOWN if R.norm_square_test(R.norm(A.c)) else YES


def _left_mult_matrix(A: DoublingParams, a) -> list[list[Fraction]]:
    """Rows are the coordinates of a * e_j for the doubled basis e_j."""
    return [A.coords(A.mul_raw(a, e)) for e in A.basis_raw()]


def small_elements(A: DoublingParams, weight: int = 2):
    """Doubled elements with at most `weight` nonzero coordinates, each +-1."""
    n = A.dim
    for k in range(1, weight + 1):
        for idx in combinations(range(n), k):
            for signs in product((1, -1), repeat=k):
                vec = [Fraction(0)] * n
                for i, s in zip(idx, signs):
                    vec[i] = Fraction(s)
                yield A.from_coords(vec)


def find_zero_divisor(A: DoublingParams, weight: int = 2):
    """Search x among small elements for a nonzero y with x y = 0.

    Left multiplication by x is a rational 8x8 matrix; a nontrivial left
    kernel of its row form gives y.  Returns (x, y) or None.
    """
    _require_quat(A)
    n = A.dim
    for x in small_elements(A, weight):
        rows = _left_mult_matrix(A, x)
        if rank(rows, QQ, n) == n:
            continue
        # x * (sum_j y_j e_j) = sum_j y_j rows[j]; solve rows^T y = 0
        cols = [[rows[j][i] for j in range(n)] for i in range(n)]
        y = A.from_coords(nullspace(cols, n, QQ)[0])
        if not A.is_zero_raw(A.mul_raw(x, y)):
            raise ArithmeticError("zero-divisor witness failed to verify")
        return x, y
    return None


def _linear_condition(dim: int, basis, fn) -> list[list[Fraction]]:
    """Matrix rows for the Q-linear fn: unknown -> list of Q-vectors; kernel = solutions."""
    images = [fn(e) for e in basis]  # images[j] = list of output vectors
    rows = []
    for out in range(len(images[0])):
        for comp in range(len(images[0][out])):
            rows.append([images[j][out][comp] for j in range(dim)])
    return rows


def _quat_kernel(R: QuatRing, fn) -> Subspace:
    rows = _linear_condition(4, R.basis, lambda x: [fn(x).coords])
    return Subspace(QQ, 4, nullspace(rows, 4, QQ))


def centralizer_type_solve(A: DoublingParams, kind: str, g: InnerAut | None = None):
    """Solve one of the Q-linear conditions appearing in the quaternion case.

    nuc_left_condition -> Subspace of D: s1 s3(x) = c^-1 x c.
    commutant          -> Subspace of A: (u, v) commuting with every basis element,
                          written out componentwise from the multiplication.
    scalar_lemma       -> (a-space, b-space) in D for the given g:
                          a g s4^-1(y) = g s3^-1(y) a and
                          b s4 g s4^-1(y) = s3 g s3^-1(y) b for all y.
    """
    R = _require_quat(A)
    s1, s2, s3, s4 = A.sigma
    c, ci = A.c, A.c.inverse()
    if kind == "nuc_left_condition":
        s13 = s1.compose(s3)
        return _quat_kernel(R, lambda x: s13(x) - ci * x * c)
    if kind == "commutant":
        def conds(uv):
            u, v = uv
            eqs = []
            for x in R.basis:
                eqs.append((u * x - x * u).coords)
                eqs.append((v * s4(x) - s3(x) * v).coords)
            for y in R.basis:
                eqs.append((c * s1(v) * s2(y) - c * s1(y) * s2(v)).coords)
                eqs.append((s3(u) * y - y * s4(u)).coords)
            return eqs

        rows = _linear_condition(8, A.basis_raw(), conds)
        return Subspace(QQ, 8, nullspace(rows, 8, QQ))
    if kind == "scalar_lemma":
        if g is None:
            raise ValueError("scalar_lemma needs the restriction g")
        s3i, s4i = s3.inverse(), s4.inverse()

        def a_cond(a):
            return [(a * g(s4i(y)) - g(s3i(y)) * a).coords for y in R.basis]

        def b_cond(b):
            return [(b * s4(g(s4i(y))) - s3(g(s3i(y))) * b).coords for y in R.basis]

        spaces = []
        for cond in (a_cond, b_cond):
            rows = _linear_condition(4, R.basis, cond)
            spaces.append(Subspace(QQ, 4, nullspace(rows, 4, QQ)))
        return tuple(spaces)
    raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")


def nucleus_left_lift(A: DoublingParams) -> Subspace:
    """The left-nucleus formula as a subspace of A: {(x, 0) : s1 s3(x) = c^-1 x c}."""
    S = centralizer_type_solve(A, "nuc_left_condition")
    zero = (Fraction(0),) * 4
    return Subspace(QQ, 8, [tuple(v) + zero for v in S.rows])


class CSAAutomorphismError(MorphismError):
    """A side condition of the quaternion automorphism construction failed."""


SCALAR_SPACE = Subspace(QQ, 4, [(Fraction(1), Fraction(0), Fraction(0), Fraction(0))])


def verify_csa_automorphism(A: DoublingParams, g: InnerAut, h: InnerAut, b) -> MorphismCandidate:
    """Check the side conditions for (u, v) -> (g(u), h(v) b), then verify on 64 pairs."""
    R = _require_quat(A)
    b = Fraction(b.t) if isinstance(b, Quaternion) and b.is_scalar() else b
    if isinstance(b, Quaternion):
        raise CSAAutomorphismError("b must be a rational scalar")
    b = Fraction(b)
    if b == 0:
        raise CSAAutomorphismError("b must be nonzero")
    s1, s2, s3, s4 = A.sigma
    for name, f in (("sigma_1", s1), ("sigma_2", s2), ("sigma_3^-1", s3.inverse()),
                    ("sigma_4^-1", s4.inverse())):
        if not g.compose(f).same_map(f.compose(h)):
            raise CSAAutomorphismError(f"g o {name} != {name} o h")
    if not R.is_zero(g(A.c) - A.c * (b * b)):
        raise CSAAutomorphismError(f"g(c) = {g(A.c)} differs from b^2 c = {A.c * (b * b)}")
    if s3.same_map(s4):
        a_space, b_space = centralizer_type_solve(A, "scalar_lemma", g)
        if a_space != SCALAR_SPACE or b_space != SCALAR_SPACE:
            raise CSAAutomorphismError("scalar lemma spaces are not Q when sigma_3 = sigma_4")
    G = MorphismCandidate(A, A, g, h, R.embed_scalar(b))
    if not G.verify():
        raise CSAAutomorphismError("side conditions hold but the 64-pair check failed")
    return G


def centralizer_of(R: QuatRing, c: Quaternion) -> Subspace:
    return _quat_kernel(R, lambda x: x * c - c * x)


def random_quaternion(alg, rng: random.Random, span: int = 5) -> Quaternion:
    return alg(*(Fraction(rng.randint(-span, span), rng.randint(1, 3)) for _ in range(4)))


def random_nonzero_product_sanity(A: DoublingParams, n: int = 10_000, seed: int = 0) -> int:
    """Count zero products among n random pairs of nonzero elements."""
    R = _require_quat(A)
    rng = random.Random(seed)
    zeros = 0
    done = 0
    alg = R.alg
    while done < n:
        x = (random_quaternion(alg, rng), random_quaternion(alg, rng))
        y = (random_quaternion(alg, rng), random_quaternion(alg, rng))
        if A.is_zero_raw(x) or A.is_zero_raw(y):
            continue
        done += 1
        if A.is_zero_raw(A.mul_raw(x, y)):
            zeros += 1
    return zeros
