"""Finite-field towers GF(p^s) <= GF(p^r) with Frobenius automorphisms.

Elements of K = GF(p^r) are handled internally as integers 0 <= x < p^r
whose base-p digits (lowest first) are the coordinates in the power basis
1, w, ..., w^(r-1), where w is the class of x modulo the tower modulus.
With this encoding the prime field is exactly {0, ..., p-1} and its
arithmetic is ordinary arithmetic mod p.

F = GF(p^s) is not a separate object: it is carried as the exponent s and
realised as the fixed field of phi^s inside K.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

LOG_TABLE_LIMIT = 1 << 16
FULL_TABLE_LIMIT = 1024


class TowerError(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense polynomials over GF(p), coefficient lists lowest degree first

def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_sub(f, g, p):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p
                  for i in range(n)])


def poly_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def poly_divmod(f, g, p):
    f, g = _trim(f), _trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = pow(g[-1], -1, p)
    quot = [0] * max(len(f) - len(g) + 1, 0)
    rem = list(f)
    while len(rem) >= len(g):
        shift = len(rem) - len(g)
        coef = rem[-1] * lead_inv % p
        quot[shift] = coef
        for i, b in enumerate(g):
            rem[shift + i] = (rem[shift + i] - coef * b) % p
        rem = _trim(rem)
    return _trim(quot), rem


def poly_mod(f, g, p):
    return poly_divmod(f, g, p)[1]


def poly_gcd(f, g, p):
    f, g = _trim(f), _trim(g)
    while g:
        f, g = g, poly_mod(f, g, p)
    if f:
        inv = pow(f[-1], -1, p)
        f = [a * inv % p for a in f]
    return f


def poly_powmod(f, e, mod, p):
    result = [1]
    base = poly_mod(f, mod, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        base = poly_mod(poly_mul(base, base, p), mod, p)
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: f has no factor in common with x^(p^d) - x for d <= deg/2."""
    f = _trim([a % p for a in f])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(n // 2):
        xp = poly_powmod(xp, p, f, p)
        if len(poly_gcd(f, poly_sub(xp, x, p), p)) > 1:
            return False
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def smallest_irreducible(p: int, r: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree r over GF(p).

    Candidates are ordered by the coefficient tuple (c_{r-1}, ..., c_0).
    """
    for n in range(p ** r):
        coeffs = [(n // p ** i) % p for i in range(r)] + [1]
        if is_irreducible(coeffs, p):
            return coeffs
    raise TowerError(f"no irreducible polynomial of degree {r} over GF({p})")


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AutMap:
    """The automorphism phi^(s*j) of K over F, with j taken mod order = r/s."""
    j: int
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("automorphism group order must be positive")
        object.__setattr__(self, "j", self.j % self.order)

    def compose(self, other: "AutMap") -> "AutMap":
        """self o other."""
        self._check(other)
        return AutMap(self.j + other.j, self.order)

    def inverse(self) -> "AutMap":
        return AutMap(-self.j, self.order)

    def power(self, n: int) -> "AutMap":
        return AutMap(self.j * n, self.order)

    @property
    def is_identity(self) -> bool:
        return self.j == 0

    def _check(self, other):
        if not isinstance(other, AutMap) or other.order != self.order:
            raise ValueError("automorphisms of different towers")

    def __repr__(self):
        return f"AutMap({self.j} mod {self.order})"


class FieldTower:
    """The tower F = GF(p^s) <= K = GF(p^r) with a fixed modulus for K."""

    def __init__(self, p: int, s: int, r: int, modulus: Sequence[int] | None = None):
        if p == 2:
            raise TowerError("characteristic two unsupported")
        if not is_prime(p):
            raise TowerError(f"p = {p} is not prime")
        if s < 1 or r < 1 or r % s:
            raise TowerError(f"need s >= 1 dividing r, got s={s}, r={r}")
        if modulus is None:
            modulus = smallest_irreducible(p, r)
        else:
            modulus = [int(a) % p for a in modulus]
            if len(_trim(modulus)) != r + 1 or modulus[r] != 1:
                raise TowerError(f"modulus must be monic of degree {r}")
            if not is_irreducible(modulus, p):
                raise TowerError("supplied modulus is reducible")
        self.p, self.s, self.r = p, s, r
        self.modulus = tuple(modulus[: r + 1])
        self.q = p ** r
        self.q_base = p ** s
        self.degree = r // s
        self._pows = [p ** i for i in range(r)]
        self.w = p if r > 1 else (-self.modulus[0]) % p
        if self.q <= LOG_TABLE_LIMIT:
            self._build_log_tables()
        else:
            self.exp = self.log = None

    # -- encoding ----------------------------------------------------------
    def to_coeffs(self, x: int) -> tuple[int, ...]:
        return tuple((x // self._pows[i]) % self.p for i in range(self.r))

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.r:
            coeffs = poly_mod(list(coeffs), list(self.modulus), self.p)
        return sum((int(c) % self.p) * self._pows[i] for i, c in enumerate(coeffs))

    def _poly_mul_int(self, a: int, b: int) -> int:
        prod = poly_mul(_trim(self.to_coeffs(a)), _trim(self.to_coeffs(b)), self.p)
        return self.from_coeffs(poly_mod(prod, list(self.modulus), self.p))

    def _poly_pow_int(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self._poly_mul_int(out, a)
            a = self._poly_mul_int(a, a)
            e >>= 1
        return out

    def _build_log_tables(self):
        q = self.q
        factors = _prime_factors(q - 1)
        for g in range(1, q):
            if all(self._poly_pow_int(g, (q - 1) // ell) != 1 for ell in factors):
                break
        self.primitive = g
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._poly_mul_int(x, g)
        exp[q - 1:] = exp[: q - 1]
        self.exp, self.log = exp, log
        self._exp_list = exp.tolist()
        self._log_list = log.tolist()

    @cached_property
    def digits(self) -> np.ndarray:
        idx = np.arange(self.q)
        return np.stack([(idx // pw) % self.p for pw in self._pows], axis=1)

    @cached_property
    def add_table(self) -> np.ndarray:
        if self.q > FULL_TABLE_LIMIT:
            raise TowerError("full addition table only built for q <= 1024")
        d = self.digits
        s = (d[:, None, :] + d[None, :, :]) % self.p
        return (s @ np.array(self._pows)).astype(np.int64)

    @cached_property
    def mul_table(self) -> np.ndarray:
        if self.q > FULL_TABLE_LIMIT:
            raise TowerError("full multiplication table only built for q <= 1024")
        la = self.log
        t = self.exp[(la[:, None] + la[None, :]) % (self.q - 1)]
        t[0, :] = 0
        t[:, 0] = 0
        return t

    @cached_property
    def neg_array(self) -> np.ndarray:
        d = self.digits
        return (((-d) % self.p) @ np.array(self._pows)).astype(np.int64)

    @cached_property
    def inv_array(self) -> np.ndarray:
        out = np.zeros(self.q, dtype=np.int64)
        out[1:] = self.exp[(-(self.log[1:])) % (self.q - 1)]
        return out

    @cached_property
    def _tables(self):
        return self.add_table.tolist(), self.mul_table.tolist()

    # -- scalar arithmetic on encoded ints --------------------------------
    def add(self, a: int, b: int) -> int:
        if self.q <= FULL_TABLE_LIMIT:
            return self._tables[0][a][b]
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        return self.from_coeffs([x + y for x, y in zip(ca, cb)])

    def neg(self, a: int) -> int:
        return self.from_coeffs([-x for x in self.to_coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.q <= FULL_TABLE_LIMIT:
            return self._tables[1][a][b]
        if a == 0 or b == 0:
            return 0
        if self.exp is None:
            return self._poly_mul_int(a, b)
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        if self.exp is None:
            return self._poly_pow_int(a, self.q - 2)
        return self._exp_list[(-self._log_list[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        if self.exp is None:
            return self._poly_pow_int(a if e >= 0 else self.inv(a), abs(e))
        return self._exp_list[(self._log_list[a] * e) % (self.q - 1)]

    # -- vectorised arithmetic --------------------------------------------
    def vadd(self, a, b):
        if self.q <= FULL_TABLE_LIMIT:
            return self.add_table[a, b]
        pw = np.array(self._pows)
        return (((self.digits[a] + self.digits[b]) % self.p) @ pw)

    def vmul(self, a, b):
        if self.q <= FULL_TABLE_LIMIT:
            return self.mul_table[a, b]
        a, b = np.asarray(a), np.asarray(b)
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    # -- Galois structure ---------------------------------------------------
    def aut(self, j: int) -> AutMap:
        return AutMap(j, self.degree)

    def frobenius_int(self, x: int, j: int) -> int:
        e = self.p ** ((self.s * j) % self.r)
        return self.pow(x, e)

    def aut_perm(self, a: AutMap | int) -> np.ndarray:
        j = a.j if isinstance(a, AutMap) else a % self.degree
        cache = self.__dict__.setdefault("_perm_cache", {})
        if j not in cache:
            if self.exp is None:
                raise TowerError("permutation tables need q <= 2^16")
            e = self.p ** (self.s * j)
            perm = np.zeros(self.q, dtype=np.int64)
            perm[1:] = self.exp[(self.log[1:] * e) % (self.q - 1)]
            perm.flags.writeable = False
            cache[j] = perm
        return cache[j]

    def apply(self, a: AutMap, x: int) -> int:
        if self.exp is None:
            return self.frobenius_int(x, a.j)
        return int(self.aut_perm(a)[x])

    @cached_property
    def base_elements(self) -> tuple[int, ...]:
        """Elements of F = Fix(phi^s), in increasing encoding order."""
        return tuple(x for x in range(self.q) if self.frobenius_int(x, 1) == x)

    @cached_property
    def norm_exponent(self) -> int:
        return (self.q - 1) // (self.q_base - 1)

    def descriptor(self) -> dict:
        return {"p": self.p, "s": self.s, "r": self.r, "modulus": list(self.modulus)}

    def __eq__(self, other):
        return (isinstance(other, FieldTower) and
                (self.p, self.s, self.r, self.modulus) ==
                (other.p, other.s, other.r, other.modulus))

    def __hash__(self):
        return hash((self.p, self.s, self.r, self.modulus))

    def __repr__(self):
        return f"FieldTower(GF({self.p}^{self.r}) / GF({self.p}^{self.s}), modulus={list(self.modulus)})"

    # -- parsing / formatting ------------------------------------------------
    def format(self, x: int) -> str:
        c = self.to_coeffs(x)
        parts = [str(c[0])]
        for i in range(1, self.r):
            parts.append(f"{c[i]}*w" if i == 1 else f"{c[i]}*w^{i}")
        return "+".join(parts)

    def parse(self, text: str | int) -> int:
        if isinstance(text, int):
            return text % self.p
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty element literal")
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"[+-][^+-]+", s)
        if "".join(terms) != s:
            raise ValueError(f"malformed element literal {text!r}")
        coeffs = [0] * max(self.r, 1)
        for term in terms:
            sign = -1 if term[0] == "-" else 1
            m = re.fullmatch(r"(\d+)?(?:\*?w(?:\^(\d+))?)?", term[1:])
            if m is None or term[1:] == "":
                raise ValueError(f"malformed term {term!r} in {text!r}")
            coef = int(m.group(1)) if m.group(1) else 1
            if "w" in term:
                k = int(m.group(2)) if m.group(2) else 1
            else:
                k = 0
            while k >= len(coeffs):
                coeffs.append(0)
            coeffs[k] += sign * coef
        return self.from_coeffs(coeffs)


def make_tower(p: int, s: int, r: int, modulus: Sequence[int] | None = None) -> FieldTower:
    return FieldTower(p, s, r, modulus)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FqElem:
    """An element of K given by its power-basis coefficient vector.

    Arithmetic here goes through dense polynomial reduction and is the
    reference against which the log-table fast path is checked.
    """
    tower: FieldTower
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(a) % self.tower.p for a in self.coeffs)
        if len(c) != self.tower.r:
            raise ValueError(f"need {self.tower.r} coefficients, got {len(c)}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_int(cls, tower: FieldTower, x: int) -> "FqElem":
        return cls(tower, tower.to_coeffs(x))

    @property
    def value(self) -> int:
        return self.tower.from_coeffs(self.coeffs)

    def _check(self, other):
        if not isinstance(other, FqElem):
            return FqElem(self.tower, (other,) + (0,) * (self.tower.r - 1))
        if other.tower != self.tower:
            raise ValueError("operands belong to different towers")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FqElem(self.tower, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.tower, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        t = self.tower
        prod = poly_mul(_trim(self.coeffs), _trim(other.coeffs), t.p)
        rem = poly_mod(prod, list(t.modulus), t.p)
        return FqElem(t, tuple(rem) + (0,) * (t.r - len(rem)))

    __rmul__ = __mul__

    def inverse(self) -> "FqElem":
        """Extended Euclid against the modulus."""
        t, p = self.tower, self.tower.p
        a = _trim(self.coeffs)
        if not a:
            raise ZeroDivisionError("inverse of zero")
        r0, r1 = list(t.modulus), a
        s0, s1 = [], [1]
        while r1:
            quo, rem = poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, poly_sub(s0, poly_mul(quo, s1, p), p)
        inv_lead = pow(r0[0], -1, p)
        s0 = [x * inv_lead % p for x in s0]
        s0 = poly_mod(s0, list(t.modulus), p)
        return FqElem(t, tuple(s0) + (0,) * (t.r - len(s0)))

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __pow__(self, e: int):
        base = self if e >= 0 else self.inverse()
        out = FqElem(self.tower, (1,) + (0,) * (self.tower.r - 1))
        e = abs(e)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        return self.tower.format(self.value)


def field_arith(x: FqElem, y, op: str) -> FqElem:
    """Apply op in {add, sub, mul, inv, pow}; y is the exponent for pow."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    if op == "pow":
        return x ** int(y)
    raise ValueError(f"unknown field operation {op!r}")


def frobenius_power(t: FieldTower, x: int, j: int) -> int:
    """x^(p^(s*j)); j is reduced mod r/s."""
    return t.frobenius_int(x, j % t.degree)


def relative_norm(t: FieldTower, x: int) -> int:
    return t.pow(x, t.norm_exponent)


def is_square(t: FieldTower, x: int) -> bool:
    return x == 0 or t.pow(x, (t.q - 1) // 2) == 1


def is_base_square(t: FieldTower, x: int) -> bool:
    """Whether x (an element of F) is a square of some element of F."""
    return x == 0 or t.pow(x, (t.q_base - 1) // 2) == 1


def aut_group(t: FieldTower) -> list[AutMap]:
    return [AutMap(j, t.degree) for j in range(t.degree)]


def fixed_field(t: FieldTower, a: AutMap) -> list[int]:
    perm = t.aut_perm(a)
    return [x for x in range(t.q) if perm[x] == x]
