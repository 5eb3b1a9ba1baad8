"""Exact linear algebra over small fields: row reduction, kernels, subspaces.

Vectors are tuples of field elements; the field is passed in as an adapter
object exposing zero, one, add, sub, neg, mul, inv.  No floating point.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class PrimeField:
    """GF(p) on the integers 0..p-1."""

    def __init__(self, p: int):
        self.p = p
        self.zero, self.one = 0, 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class SubfieldOps:
    """F = GF(p^s) realised inside a tower K, elements as K-encoded ints."""

    def __init__(self, tower):
        self.tower = tower
        self.zero, self.one = 0, 1
        self.add, self.sub, self.neg = tower.add, tower.sub, tower.neg
        self.mul, self.inv = tower.mul, tower.inv

    def __eq__(self, other):
        return isinstance(other, SubfieldOps) and other.tower == self.tower

    def __hash__(self):
        return hash(("sub", self.tower))


class RationalField:
    zero, one = Fraction(0), Fraction(1)

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
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


QQ = RationalField()


def rref(rows: Iterable[Sequence], field, ncols: int | None = None):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    zero, mul, sub, inv = field.zero, field.mul, field.sub, field.inv
    pivots = []
    prow = 0
    for col in range(ncols):
        if prow == len(m):
            break
        sel = next((i for i in range(prow, len(m)) if m[i][col] != zero), None)
        if sel is None:
            continue
        m[prow], m[sel] = m[sel], m[prow]
        piv = m[prow]
        if piv[col] != field.one:
            f = inv(piv[col])
            piv = [mul(f, a) for a in piv]
            m[prow] = piv
        for i in range(len(m)):
            if i != prow:
                row = m[i]
                f = row[col]
                if f != zero:
                    m[i] = [sub(a, mul(f, b)) for a, b in zip(row, piv)]
        pivots.append(col)
        prow += 1
    return [tuple(r) for r in m[:prow]], pivots


def rank(rows, field, ncols=None) -> int:
    return len(rref(rows, field, ncols)[0])


def nullspace(rows: Sequence[Sequence], ncols: int, field) -> list[tuple]:
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    red, pivots = rref(rows, field, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for row, pc in zip(red, pivots):
            v[pc] = field.neg(row[fc])
        basis.append(tuple(v))
    return basis


def solve_inverse(matrix: Sequence[Sequence], field) -> list[list]:
    """Inverse of a square matrix (rows); raises ValueError when singular."""
    n = len(matrix)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)]
           for i, row in enumerate(matrix)]
    red, pivots = rref(aug, field, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [list(r[n:]) for r in red[:n]]


def mat_vec(matrix, vec, field):
    out = []
    for row in matrix:
        acc = field.zero
        for a, b in zip(row, vec):
            if a != field.zero and b != field.zero:
                acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return tuple(out)


class Subspace:
    """A subspace of field^n stored by its canonical RREF basis."""

    __slots__ = ("field", "n", "rows")

    def __init__(self, field, n: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.n = n
        self.rows = tuple(rref(list(vectors), field, n)[0])

    @classmethod
    def full(cls, field, n):
        return cls(field, n, [tuple(field.one if i == j else field.zero for j in range(n))
                              for i in range(n)])

    @classmethod
    def kernel(cls, field, n, rows):
        return cls(field, n, nullspace(list(rows), n, field))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def annihilator_rows(self) -> list[tuple]:
        return nullspace(self.rows, self.n, self.field) if self.rows else [
            tuple(self.field.one if i == j else self.field.zero for j in range(self.n))
            for i in range(self.n)]

    def contains(self, vec) -> bool:
        return rank(list(self.rows) + [tuple(vec)], self.field, self.n) == self.dim

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        eqs = self.annihilator_rows() + other.annihilator_rows()
        return Subspace.kernel(self.field, self.n, eqs)

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def is_closed_under(self, mul) -> bool:
        """mul(a, b) -> vector; closure checked on basis pairs (bilinearity)."""
        return all(self.contains(mul(a, b)) for a in self.rows for b in self.rows)

    def _check(self, other):
        if self.n != other.n or self.field != other.field:
            raise ValueError("subspaces of different ambient spaces")

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def to_json(self):
        return [[_scalar_json(a) for a in row] for row in self.rows]

    def __repr__(self):
        return f"Subspace(dim={self.dim}/{self.n}, rows={list(self.rows)})"


def _scalar_json(a):
    if isinstance(a, Fraction):
        return str(a) if a.denominator != 1 else int(a)
    return int(a)
