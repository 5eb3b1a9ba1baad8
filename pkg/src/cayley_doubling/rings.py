"""Coefficient systems for the doubling: a finite field K/F or a quaternion
algebra D/Q, with the automorphisms and norm map the construction needs.

Both classes expose the same surface:

  zero, one, add, sub, neg, mul, inv, is_zero
  finite                   -- True when elements can be enumerated
  scalars                  -- linear-algebra adapter for the base field F
  dim, basis, coords, from_coords, embed_scalar
  identity_aut, compose, aut_inverse, aut_eq, apply, auts_valid
  norm, norm_square_test   -- N: ring -> F and "n in N(ring^x)^2"
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Protocol

from .gf_tower import AutMap, FieldTower, is_base_square, relative_norm
from .linalg import QQ, PrimeField, SubfieldOps
from .quaternions import InnerAut, QuatAlgebra, Quaternion


class NormGroupUnknown(LookupError):
    """No way to decide membership in N(D^x)^2 for this ring."""


class CoefficientSystem(Protocol):
    finite: bool
    dim: int

    def add(self, a, b): ...
    def mul(self, a, b): ...
    def apply(self, aut, x): ...
    def norm(self, x): ...


class GFRing:
    """K = GF(p^r) over F = GF(p^s); elements are encoded ints."""

    finite = True

    def __init__(self, tower: FieldTower):
        self.tower = tower
        self.zero, self.one = 0, 1
        self.dim = tower.degree
        self.scalars = PrimeField(tower.p) if tower.s == 1 else SubfieldOps(tower)
        self.add, self.sub, self.neg = tower.add, tower.sub, tower.neg
        self.mul, self.inv = tower.mul, tower.inv

    @property
    def size(self) -> int:
        return self.tower.q

    def elements(self):
        return range(self.tower.q)

    def is_zero(self, a) -> bool:
        return a == 0

    @cached_property
    def basis(self) -> tuple[int, ...]:
        t = self.tower
        return tuple(t.pow(t.w, k) for k in range(self.dim))

    @cached_property
    def _coord_table(self) -> dict[int, tuple]:
        t, table = self.tower, {}
        for combo in product(t.base_elements, repeat=self.dim):
            x = 0
            for f, e in zip(combo, self.basis):
                x = t.add(x, t.mul(f, e))
            table[x] = combo
        if len(table) != t.q:
            raise RuntimeError("power basis does not span K over F")
        return table

    def coords(self, x) -> tuple:
        return self._coord_table[x]

    def from_coords(self, vec) -> int:
        t, x = self.tower, 0
        for f, e in zip(vec, self.basis):
            x = t.add(x, t.mul(f, e))
        return x

    def embed_scalar(self, f) -> int:
        return f

    def scale(self, f, x):
        return self.tower.mul(f, x)

    # -- automorphisms -------------------------------------------------------
    def identity_aut(self) -> AutMap:
        return AutMap(0, self.tower.degree)

    def all_auts(self) -> list[AutMap]:
        return [AutMap(j, self.tower.degree) for j in range(self.tower.degree)]

    def compose(self, a: AutMap, b: AutMap) -> AutMap:
        return a.compose(b)

    def aut_inverse(self, a: AutMap) -> AutMap:
        return a.inverse()

    def aut_eq(self, a: AutMap, b: AutMap) -> bool:
        return a == b

    def aut_valid(self, a) -> bool:
        return isinstance(a, AutMap) and a.order == self.tower.degree

    def apply(self, a: AutMap, x: int) -> int:
        return self.tower.apply(a, x)

    def perm(self, a: AutMap):
        return self.tower.aut_perm(a)

    # -- norm ------------------------------------------------------------------
    def norm(self, x: int) -> int:
        return relative_norm(self.tower, x)

    def norm_square_test(self, n: int) -> bool:
        """n in N(K^x)^2; the norm is onto F^x for finite fields."""
        return n != 0 and is_base_square(self.tower, n)

    # -- text ----------------------------------------------------------------
    def format(self, x) -> str:
        return self.tower.format(x)

    def parse(self, text) -> int:
        return self.tower.parse(text)

    def aut_to_json(self, a: AutMap):
        return a.j

    def aut_from_json(self, obj) -> AutMap:
        return AutMap(int(obj), self.tower.degree)

    def descriptor(self) -> dict:
        return {"base": "gf", **self.tower.descriptor()}

    def __eq__(self, other):
        return isinstance(other, GFRing) and other.tower == self.tower

    def __hash__(self):
        return hash(("gf", self.tower))


class DefiniteNormPlugin:
    """Definite (a, b)_Q: reduced norms of units are exactly the positive rationals."""

    @staticmethod
    def in_norm_squares(n: Fraction) -> bool:
        return n > 0 and is_rational_square(n)


def is_rational_square(n: Fraction) -> bool:
    from math import isqrt
    n = Fraction(n)
    if n < 0:
        return False
    a, b = n.numerator, n.denominator
    return isqrt(a) ** 2 == a and isqrt(b) ** 2 == b


class QuatRing:
    """D = (a, b)_Q over its centre Q; automorphisms are inner."""

    finite = False

    def __init__(self, alg: QuatAlgebra, norm_plugin=None):
        self.alg = alg
        self.zero, self.one = alg.zero, alg.one
        self.dim = 4
        self.scalars = QQ
        if norm_plugin is None and alg.is_definite:
            norm_plugin = DefiniteNormPlugin()
        self.norm_plugin = norm_plugin

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        return a.inverse()

    @staticmethod
    def is_zero(a) -> bool:
        return a.is_zero()

    @cached_property
    def basis(self) -> tuple[Quaternion, ...]:
        return self.alg.basis

    def coords(self, x: Quaternion) -> tuple:
        return x.coords

    def from_coords(self, vec) -> Quaternion:
        return self.alg(*vec)

    def embed_scalar(self, f) -> Quaternion:
        return self.alg(f)

    def scale(self, f, x: Quaternion) -> Quaternion:
        return self.alg(f) * x

    def identity_aut(self) -> InnerAut:
        return InnerAut.identity(self.alg)

    def compose(self, a: InnerAut, b: InnerAut) -> InnerAut:
        return a.compose(b)

    def aut_inverse(self, a: InnerAut) -> InnerAut:
        return a.inverse()

    def aut_eq(self, a: InnerAut, b: InnerAut) -> bool:
        return a.same_map(b)

    def aut_valid(self, a) -> bool:
        return isinstance(a, InnerAut) and a.witness.alg == self.alg

    def apply(self, a: InnerAut, x: Quaternion) -> Quaternion:
        return a(x)

    def norm(self, x: Quaternion) -> Fraction:
        return x.norm()

    def norm_square_test(self, n) -> bool:
        if self.norm_plugin is None:
            raise NormGroupUnknown(
                f"norm group of ({self.alg.a}, {self.alg.b})_Q unknown; supply a norm plugin")
        return self.norm_plugin.in_norm_squares(Fraction(n))

    def format(self, x) -> str:
        return str(x)

    def parse(self, text) -> Quaternion:
        return self.alg.parse(text)

    def aut_to_json(self, a: InnerAut):
        return str(a.witness)

    def aut_from_json(self, obj) -> InnerAut:
        return InnerAut(self.alg.parse(obj))

    def descriptor(self) -> dict:
        return {"base": "quat", "a": self.alg.a, "b": self.alg.b}

    def __eq__(self, other):
        return isinstance(other, QuatRing) and other.alg == self.alg

    def __hash__(self):
        return hash(("quat", self.alg))
