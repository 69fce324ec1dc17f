"""Exact arithmetic in GF(p^k) and dense linear algebra over it.

An element is an integer whose base-p digits are its coefficients in the
power basis ``1, x, ..., x^(k-1)`` modulo the defining polynomial.
Polynomials are coefficient lists in ascending degree.
"""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from .errors import SingularMatrix
from .groups import is_prime


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo b over GF(p); b must have an invertible leading coefficient."""
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * lead_inv % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    f = _trim([x % p for x in poly])
    k = len(f) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not poly_mod(f, list(low) + [1], p):
                return False
    return True


def first_irreducible(p: int, k: int) -> list[int]:
    """Lexicographically first monic irreducible polynomial of degree k."""
    for low in itertools.product(range(p), repeat=k):
        f = list(reversed(low)) + [1]
        if is_irreducible(f, p):
            return f
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")  # pragma: no cover


class FiniteField:
    """GF(p^k) defined by a monic irreducible polynomial."""

    def __init__(self, p: int, poly: Sequence[int] | None = None, k: int | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if poly is None:
            if k is None:
                raise ValueError("give either a defining polynomial or a degree")
            poly = first_irreducible(p, k)
        poly = [int(c) % p for c in poly]
        _trim(poly)
        if len(poly) < 2 or poly[-1] != 1:
            raise ValueError("defining polynomial must be monic of degree >= 1")
        if not is_irreducible(poly, p):
            raise ValueError(f"{poly} is reducible over GF({p})")
        self.p = p
        self.k = len(poly) - 1
        self.poly = tuple(poly)
        self.order = p**self.k
        self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"

    def vector(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_vector(self, v: Sequence[int]) -> int:
        if len(v) > self.k:
            raise ValueError(f"vector longer than field degree {self.k}")
        a = 0
        for c in reversed(v):
            a = a * self.p + int(c) % self.p
        return a

    def _polymul(self, a: int, b: int) -> int:
        va, vb = self.vector(a), self.vector(b)
        prod = [0] * (2 * self.k)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    prod[i + j] += x * y
        return self.from_vector(poly_mod(prod, self.poly, self.p))

    def _build_tables(self):
        n = self.order - 1
        if n == 1:
            self.gen = 1
        else:
            factors = [q for q in range(2, n + 1) if n % q == 0 and is_prime(q)]
            for g in range(2, self.order):
                if all(self._slow_pow(g, n // q) != 1 for q in factors):
                    self.gen = g
                    break
        self.exp = [1] * (2 * n)
        for i in range(1, 2 * n):
            self.exp[i] = self._polymul(self.exp[i - 1], self.gen)
        self.log = [0] * self.order
        for i in range(n):
            self.log[self.exp[i]] = i

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._polymul(r, a)
            a = self._polymul(a, a)
            e >>= 1
        return r

    @property
    def primitive_element(self) -> int:
        """The smallest generator of the multiplicative group."""
        return self.gen

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.from_vector([(x + y) % self.p for x, y in zip(self.vector(a), self.vector(b))])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.from_vector([(-x) % self.p for x in self.vector(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.exp[(self.order - 1 - self.log[a]) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 1 if e == 0 else 0
        n = self.order - 1
        return self.exp[(self.log[a] * e) % n]

    def frobenius(self, a: int, j: int = 1) -> int:
        """``a^(p^j)``."""
        return self.pow(a, self.p ** (j % self.k))

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    def check_axioms(self, sample: int = 64, seed: int = 0) -> bool:
        """Field axioms on all elements (small fields) or a seeded sample."""
        elems = list(range(self.order))
        if self.order > sample:
            elems = random.Random(seed).sample(elems, sample)
        for a in elems:
            if self.add(a, self.neg(a)) != 0 or (a and self.mul(a, self.inv(a)) != 1):
                return False
            for b in elems:
                if self.add(a, b) != self.add(b, a) or self.mul(a, b) != self.mul(b, a):
                    return False
                if self.mul(a, b) != self._polymul(a, b):
                    return False
        for a, b, c in itertools.islice(itertools.product(elems, repeat=3), 4 * sample * sample):
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)):
                return False
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                return False
        return True


# -- matrices ------------------------------------------------------------------

Matrix = list[list[int]]


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(F: FiniteField, A: Matrix, B: Matrix) -> Matrix:
    return [[F.sum(F.mul(A[i][k], B[k][j]) for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def _eliminate(F: FiniteField, A: Matrix):
    """Gauss-Jordan on [A | I]; returns (det, inverse or None)."""
    n = len(A)
    M = [list(row) + identity_matrix(n)[i] for i, row in enumerate(A)]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col]), None)
        if pivot is None:
            return 0, None
        if pivot != col:
            M[col], M[pivot] = M[pivot], M[col]
            det = F.neg(det)
        pv = M[col][col]
        det = F.mul(det, pv)
        pinv = F.inv(pv)
        M[col] = [F.mul(pinv, x) for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                c = M[r][col]
                M[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(M[r], M[col])]
    return det, [row[n:] for row in M]


def determinant(F: FiniteField, A: Matrix) -> int:
    return _eliminate(F, A)[0]


def inverse(F: FiniteField, A: Matrix) -> Matrix:
    det, inv = _eliminate(F, A)
    if inv is None:
        raise SingularMatrix("matrix is singular")
    return inv
