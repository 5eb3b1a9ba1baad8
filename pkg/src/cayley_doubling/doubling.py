"""The doubled algebra Cay(R, c, s1, s2, s3, s4) on R + R with

    (u, v)(x, y) = (u x + c s1(v) s2(y),  s3(u) y + v s4(x)).

Products inside each slot are evaluated in exactly this order, which is
what matters when R is a (noncommutative) quaternion algebra.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Any

import numpy as np

from .gf_tower import FieldTower, make_tower
from .quaternions import QuatAlgebra
from .rings import GFRing, QuatRing

TABLE_LIMIT = 49  # build the q^2 x q^2 product table only up to q = 49


class AlgebraError(ValueError):
    pass


class DoublingParams:
    """Validated parameters of one doubled algebra; immutable."""

    def __init__(self, ring, c, sigma):
        sigma = tuple(sigma)
        if len(sigma) != 4:
            raise AlgebraError("need exactly four automorphisms")
        if ring.is_zero(c):
            raise AlgebraError("c must be nonzero (c in R^x)")
        for s in sigma:
            if not ring.aut_valid(s):
                raise AlgebraError(f"{s!r} is not an automorphism of the coefficient ring")
        self.ring = ring
        self.c = c
        self.sigma = sigma

    # -- basic data ----------------------------------------------------------
    @property
    def dim(self) -> int:
        """Dimension over F: twice that of the coefficient ring."""
        return 2 * self.ring.dim

    @property
    def finite(self) -> bool:
        return self.ring.finite

    def key(self):
        ring = self.ring
        return (ring.descriptor()["base"], _freeze(ring.descriptor()),
                ring.format(self.c), tuple(str(ring.aut_to_json(s)) for s in self.sigma))

    def __eq__(self, other):
        if not isinstance(other, DoublingParams) or other.ring != self.ring:
            return False
        r = self.ring
        return (r.sub(self.c, other.c) == r.zero if r.finite else (self.c - other.c).is_zero()) \
            and all(r.aut_eq(a, b) for a, b in zip(self.sigma, other.sigma))

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        r = self.ring
        sig = ", ".join(str(r.aut_to_json(s)) for s in self.sigma)
        return f"Cay({r.descriptor()['base']}, c={r.format(self.c)}, sigma=[{sig}])"

    # -- multiplication ------------------------------------------------------
    def mul_raw(self, a, b):
        u, v = a
        x, y = b
        R = self.ring
        s1, s2, s3, s4 = self.sigma
        first = R.add(R.mul(u, x), R.mul(R.mul(self.c, R.apply(s1, v)), R.apply(s2, y)))
        second = R.add(R.mul(R.apply(s3, u), y), R.mul(v, R.apply(s4, x)))
        return (first, second)

    def add_raw(self, a, b):
        R = self.ring
        return (R.add(a[0], b[0]), R.add(a[1], b[1]))

    def sub_raw(self, a, b):
        R = self.ring
        return (R.sub(a[0], b[0]), R.sub(a[1], b[1]))

    def is_zero_raw(self, a) -> bool:
        return self.ring.is_zero(a[0]) and self.ring.is_zero(a[1])

    def elem(self, u, v) -> "DoubledElem":
        return DoubledElem(self, u, v)

    def one(self) -> "DoubledElem":
        return DoubledElem(self, self.ring.one, self.ring.zero)

    def zero(self) -> "DoubledElem":
        return DoubledElem(self, self.ring.zero, self.ring.zero)

    def mul(self, a: "DoubledElem", b: "DoubledElem") -> "DoubledElem":
        return a * b

    # -- F-linear structure --------------------------------------------------
    def basis_raw(self) -> list[tuple]:
        R = self.ring
        return [(e, R.zero) for e in R.basis] + [(R.zero, e) for e in R.basis]

    def basis(self) -> list["DoubledElem"]:
        return [DoubledElem(self, u, v) for u, v in self.basis_raw()]

    def coords(self, a) -> tuple:
        R = self.ring
        return tuple(R.coords(a[0])) + tuple(R.coords(a[1]))

    def from_coords(self, vec):
        d = self.ring.dim
        return (self.ring.from_coords(vec[:d]), self.ring.from_coords(vec[d:]))

    @cached_property
    def structure_constants(self) -> list[list[tuple]]:
        """T[i][j] = coordinates of e_i e_j over F."""
        B = self.basis_raw()
        return [[self.coords(self.mul_raw(a, b)) for b in B] for a in B]

    # -- finite-ring fast paths ----------------------------------------------
    def _require_finite(self):
        if not self.ring.finite:
            raise AlgebraError("operation needs a finite coefficient field")

    @property
    def size(self) -> int:
        """Number of elements of the doubled algebra (q^2)."""
        self._require_finite()
        return self.ring.size ** 2

    def encode(self, a) -> int:
        return a[0] + self.ring.size * a[1]

    def decode(self, n: int) -> tuple[int, int]:
        q = self.ring.size
        return (n % q, n // q)

    @cached_property
    def _perms(self):
        return [self.ring.perm(s) for s in self.sigma]

    def mul_arrays(self, u, v, x, y):
        """Vectorised product on numpy arrays of K-encoded ints (broadcasting)."""
        self._require_finite()
        t = self.ring.tower
        p1, p2, p3, p4 = self._perms
        first = t.vadd(t.vmul(u, x), t.vmul(self.c, t.vmul(p1[v], p2[y])))
        second = t.vadd(t.vmul(p3[u], y), t.vmul(v, p4[x]))
        return first, second

    def mul_encoded(self, a, b):
        q = self.ring.size
        a, b = np.asarray(a), np.asarray(b)
        f, s = self.mul_arrays(a % q, a // q, b % q, b // q)
        return f + q * s

    @cached_property
    def table(self) -> np.ndarray:
        """Product table on encoded doubled elements (u + q v)."""
        self._require_finite()
        q = self.ring.size
        if q > TABLE_LIMIT:
            raise AlgebraError(f"product table limited to q <= {TABLE_LIMIT}")
        n = np.arange(q * q)
        out = self.mul_encoded(n[:, None], n[None, :])
        out.flags.writeable = False
        return out

    # -- serialisation ---------------------------------------------------------
    def descriptor(self) -> dict:
        R = self.ring
        d = R.descriptor()
        d["c"] = R.format(self.c)
        d["sigma"] = [R.aut_to_json(s) for s in self.sigma]
        return d


def _freeze(d: dict):
    return tuple(sorted((k, tuple(v) if isinstance(v, list) else v) for k, v in d.items()))


@dataclass(frozen=True, eq=False)
class DoubledElem:
    """(u, v) in a specific doubled algebra."""
    algebra: DoublingParams
    u: Any
    v: Any

    @property
    def pair(self):
        return (self.u, self.v)

    def _check(self, other):
        if not isinstance(other, DoubledElem):
            raise TypeError("expected a DoubledElem")
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraError("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        return DoubledElem(self.algebra, *self.algebra.add_raw(self.pair, other.pair))

    def __sub__(self, other):
        self._check(other)
        return DoubledElem(self.algebra, *self.algebra.sub_raw(self.pair, other.pair))

    def __mul__(self, other):
        self._check(other)
        return DoubledElem(self.algebra, *self.algebra.mul_raw(self.pair, other.pair))

    def scale(self, f) -> "DoubledElem":
        R = self.algebra.ring
        return DoubledElem(self.algebra, R.scale(f, self.u), R.scale(f, self.v))

    def is_zero(self) -> bool:
        return self.algebra.is_zero_raw(self.pair)

    def __eq__(self, other):
        if not isinstance(other, DoubledElem):
            return NotImplemented
        self._check(other)
        return self.algebra.is_zero_raw(self.algebra.sub_raw(self.pair, other.pair))

    def __hash__(self):
        return hash(self.algebra.coords(self.pair))

    def __repr__(self):
        R = self.algebra.ring
        return f"({R.format(self.u)}, {R.format(self.v)})"


def make_algebra(ring, c, s1, s2, s3, s4) -> DoublingParams:
    return DoublingParams(ring, c, (s1, s2, s3, s4))


def gf_algebra(tower: FieldTower, c, sigma) -> DoublingParams:
    """Shorthand: c as int or literal, sigma as Frobenius exponents."""
    ring = GFRing(tower)
    c = tower.parse(c) if isinstance(c, str) else c
    return DoublingParams(ring, c, [tower.aut(j) if isinstance(j, int) else j for j in sigma])


def quat_algebra(alg: QuatAlgebra, c, sigma, norm_plugin=None) -> DoublingParams:
    """Shorthand: c and the inner-automorphism witnesses as literals or Quaternions."""
    from .quaternions import InnerAut
    ring = QuatRing(alg, norm_plugin)
    c = alg.parse(c) if not hasattr(c, "alg") else c
    auts = []
    for s in sigma:
        if isinstance(s, InnerAut):
            auts.append(s)
        else:
            auts.append(InnerAut(alg.parse(s) if not hasattr(s, "alg") else s))
    return DoublingParams(ring, c, auts)


def algebra_from_descriptor(d: dict) -> DoublingParams:
    """Build an algebra from its JSON descriptor."""
    try:
        base = d["base"]
        if base == "gf":
            tower = make_tower(int(d["p"]), int(d["s"]), int(d["r"]), d.get("modulus"))
            ring = GFRing(tower)
            c = ring.parse(d["c"])
            sigma = [ring.aut_from_json(j) for j in d["sigma"]]
        elif base == "quat":
            ring = QuatRing(QuatAlgebra(int(d["a"]), int(d["b"])))
            c = ring.parse(d["c"])
            sigma = [ring.aut_from_json(w) for w in d["sigma"]]
        else:
            raise AlgebraError(f"unknown base {base!r}; expected 'gf' or 'quat'")
    except KeyError as exc:
        raise AlgebraError(f"algebra descriptor missing field {exc.args[0]!r}") from None
    return DoublingParams(ring, c, sigma)


def load_algebra(path) -> DoublingParams:
    with open(path, encoding="utf-8") as fh:
        return algebra_from_descriptor(json.load(fh))


@dataclass(frozen=True)
class SubalgebraEmbedding:
    sub: DoublingParams
    inclusion: dict  # K_E-int -> K-int
    verified: bool

    def include(self, a):
        return (self.inclusion[a[0]], self.inclusion[a[1]])


def subalgebra_embed(A: DoublingParams, degree: int) -> SubalgebraEmbedding:
    """Cay(E, c, s1|E, ..., s4|E) for the intermediate field E = GF(p^degree).

    Requires F <= E <= K, c in E, and every s_i mapping E into E.
    """
    A._require_finite()
    t = A.ring.tower
    if degree % t.s or t.r % degree:
        raise AlgebraError(f"GF({t.p}^{degree}) is not an intermediate field of {t}")
    sub_t = make_tower(t.p, t.s, degree)
    # image of the generator of E: the smallest root of E's modulus in K
    root = None
    for x in range(t.q):
        acc = 0
        for coef in reversed(sub_t.modulus):
            acc = t.add(t.mul(acc, x), coef)
        if acc == 0:
            root = x
            break
    inc = {}
    for e in range(sub_t.q):
        acc = 0
        for coef in reversed(sub_t.to_coeffs(e)):
            acc = t.add(t.mul(acc, root), coef)
        inc[e] = acc
    back = {v: k for k, v in inc.items()}
    if A.c not in back:
        raise AlgebraError("c does not lie in the subfield E")
    restricted = []
    for s in A.sigma:
        if any(A.ring.apply(s, inc[e]) not in back for e in range(sub_t.q)):
            raise AlgebraError(f"{s!r} does not map E into E")
        restricted.append(sub_t.aut(s.j))
    sub = DoublingParams(GFRing(sub_t), back[A.c], restricted)
    # restriction of phi^(s j) to E is phi^(s j) of E; confirm pointwise
    for s, rs in zip(A.sigma, restricted):
        for e in range(sub_t.q):
            if inc[sub_t.apply(rs, e)] != A.ring.apply(s, inc[e]):
                raise AlgebraError("restricted automorphism mismatch")
    emb = SubalgebraEmbedding(sub, inc, False)
    verified = all(emb.include(sub.mul_raw(a, b)) == A.mul_raw(emb.include(a), emb.include(b))
                   for a in sub.basis_raw() for b in sub.basis_raw())
    return SubalgebraEmbedding(sub, inc, verified)
