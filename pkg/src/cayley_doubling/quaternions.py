"""Exact quaternion algebras (a, b)_Q with i^2 = a, j^2 = b, ij = k = -ji."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class ZeroNormError(ZeroDivisionError):
    """Inversion of a quaternion of reduced norm zero (a zero divisor)."""


@dataclass(frozen=True)
class QuatAlgebra:
    a: int
    b: int

    def __post_init__(self):
        if self.a == 0 or self.b == 0:
            raise ValueError("quaternion algebra parameters must be nonzero")

    @property
    def is_definite(self) -> bool:
        return self.a < 0 and self.b < 0

    def __call__(self, t=0, x=0, y=0, z=0) -> "Quaternion":
        return Quaternion(self, Fraction(t), Fraction(x), Fraction(y), Fraction(z))

    @property
    def one(self):
        return self(1)

    @property
    def zero(self):
        return self(0)

    @property
    def basis(self):
        return (self(1), self(0, 1), self(0, 0, 1), self(0, 0, 0, 1))

    def parse(self, text) -> "Quaternion":
        return parse_quaternion(self, text)


HAMILTON = QuatAlgebra(-1, -1)


@dataclass(frozen=True)
class Quaternion:
    alg: QuatAlgebra
    t: Fraction
    x: Fraction
    y: Fraction
    z: Fraction

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.t, self.x, self.y, self.z)

    def _coerce(self, other) -> "Quaternion":
        if isinstance(other, Quaternion):
            if other.alg != self.alg:
                raise ValueError("quaternions from different algebras")
            return other
        return self.alg(other)

    def __add__(self, other):
        o = self._coerce(other)
        return Quaternion(self.alg, self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(self.alg, -self.t, -self.x, -self.y, -self.z)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        a, b = self.alg.a, self.alg.b
        t1, x1, y1, z1 = self.coords
        t2, x2, y2, z2 = o.coords
        return Quaternion(
            self.alg,
            t1 * t2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2,
            t1 * x2 + x1 * t2 - b * y1 * z2 + b * z1 * y2,
            t1 * y2 + y1 * t2 + a * x1 * z2 - a * z1 * x2,
            t1 * z2 + z1 * t2 + x1 * y2 - y1 * x2,
        )

    def __rmul__(self, other):
        return self._coerce(other) * self

    def conj(self) -> "Quaternion":
        return Quaternion(self.alg, self.t, -self.x, -self.y, -self.z)

    def norm(self) -> Fraction:
        a, b = self.alg.a, self.alg.b
        return self.t ** 2 - a * self.x ** 2 - b * self.y ** 2 + a * b * self.z ** 2

    def inverse(self) -> "Quaternion":
        n = self.norm()
        if n == 0:
            raise ZeroNormError(f"{self} has reduced norm 0 and is not invertible")
        c = self.conj()
        return Quaternion(self.alg, c.t / n, c.x / n, c.y / n, c.z / n)

    def __truediv__(self, other):
        if isinstance(other, Quaternion):
            return self * other.inverse()
        f = Fraction(other)
        return Quaternion(self.alg, self.t / f, self.x / f, self.y / f, self.z / f)

    def is_zero(self) -> bool:
        return not (self.t or self.x or self.y or self.z)

    def is_scalar(self) -> bool:
        return not (self.x or self.y or self.z)

    def __str__(self):
        return format_quaternion(self)


def quat_arith(x: Quaternion, y, op: str):
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "conj":
        return x.conj()
    if op == "inv":
        return x.inverse()
    if op == "norm":
        return x.norm()
    raise ValueError(f"unknown quaternion operation {op!r}")


@dataclass(frozen=True)
class InnerAut:
    """x -> q x q^-1; witnesses differing by a nonzero rational give the same map."""
    witness: Quaternion

    def __post_init__(self):
        if self.witness.norm() == 0:
            raise ZeroNormError("inner automorphism witness must be invertible")

    @classmethod
    def identity(cls, alg: QuatAlgebra) -> "InnerAut":
        return cls(alg.one)

    def __call__(self, x: Quaternion) -> Quaternion:
        q = self.witness
        return (q * x * q.conj()) / q.norm()

    def compose(self, other: "InnerAut") -> "InnerAut":
        """self o other."""
        return InnerAut(self.witness * other.witness)

    def inverse(self) -> "InnerAut":
        return InnerAut(self.witness.conj())

    def same_map(self, other: "InnerAut") -> bool:
        return (self.witness * other.witness.inverse()).is_scalar()

    @property
    def is_identity(self) -> bool:
        return self.witness.is_scalar()


def apply_inner(s: InnerAut, x: Quaternion) -> Quaternion:
    return s(x)


_RAT = r"\d+(?:/\d+)?"


def parse_quaternion(alg: QuatAlgebra, text) -> Quaternion:
    """Parse literals like '1+1i+0j+0k', '1/2-3/4i+k', 'i-j'."""
    if isinstance(text, (int, Fraction)):
        return alg(text)
    s = str(text).replace(" ", "")
    if not s:
        raise ValueError("empty quaternion literal")
    if s[0] not in "+-":
        s = "+" + s
    coords = [Fraction(0)] * 4
    pos = 0
    pat = re.compile(rf"([+-])({_RAT})?([ijk])?")
    while pos < len(s):
        m = pat.match(s, pos)
        if m is None or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"malformed quaternion literal {text!r}")
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            coef = -coef
        slot = " ijk".index(m.group(3)) if m.group(3) else 0
        coords[slot] += coef
        pos = m.end()
    return alg(*coords)


def _fmt_rat(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_quaternion(q: Quaternion) -> str:
    out = _fmt_rat(q.t)
    for val, sym in ((q.x, "i"), (q.y, "j"), (q.z, "k")):
        s = _fmt_rat(val)
        out += (s if s.startswith("-") else "+" + s) + sym
    return out
