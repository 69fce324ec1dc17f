"""Invariant coordinates for a twisted group action over finite fields.

Let ``L = GF(q^M)`` over ``K = GF(q)`` and let ``psi: B -> Z/M`` record, for
each element of a finite group B, the power of the q-Frobenius it acts by.
B acts on formal L-linear combinations of symbols ``x^b`` (b in B) by

    (a * x^b)^c = Frob^psi(c)(a) * x^(b c).

For a subgroup B0 mapped isomorphically onto Gal(L/L0), with m = |B0| and
a basis w_1..w_m of L over L0, the forms

    t[rho, j] = sum over b in B0 of Frob^psi(b)(w_j) * x^(rho b)

(rho running over left coset representatives of B0) are B0-invariant, and
the x's are recovered from them through the m x m matrices (Frob^psi(b)(w_j)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import InvalidSetup, SingularMatrix
from .fields import FiniteField, determinant, identity_matrix, inverse, matmul
from .groups import FiniteGroup, Subgroup, cyclic, subgroup_generated


class TwistedForm:
    """A finite L-linear combination of the symbols ``x^b``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {int(b): int(a) for b, a in (coeffs or {}).items() if a}

    def __eq__(self, other) -> bool:
        return isinstance(other, TwistedForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self) -> str:
        terms = " + ".join(f"{a}*x^{b}" for b, a in sorted(self.coeffs.items()))
        return f"TwistedForm({terms or '0'})"

    def coefficient(self, b: int) -> int:
        return self.coeffs.get(b, 0)


def symbol(b: int) -> TwistedForm:
    return TwistedForm({b: 1})


def combine(F: FiniteField, pairs) -> TwistedForm:
    """``sum c_k * f_k`` for pairs ``(c_k, f_k)``."""
    acc: dict[int, int] = {}
    for c, form in pairs:
        for b, a in form.coeffs.items():
            acc[b] = F.add(acc.get(b, 0), F.mul(c, a))
    return TwistedForm(acc)


@dataclass
class TwistedSetup:
    L: FiniteField
    qdeg: int
    M: int
    B: FiniteGroup
    psi: tuple[int, ...]
    B0: Subgroup
    basis: tuple[int, ...] = ()
    R: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        self.psi = tuple(int(x) % self.M for x in self.psi)
        if self.L.k != self.qdeg * self.M:
            raise InvalidSetup(f"L has degree {self.L.k} over GF(p), expected qdeg*M = {self.qdeg * self.M}")
        B, M = self.B, self.M
        if len(self.psi) != B.order:
            raise InvalidSetup("psi needs one exponent per element of B")
        for a in range(B.order):
            for b in range(B.order):
                if self.psi[B.mul(a, b)] != (self.psi[a] + self.psi[b]) % M:
                    raise InvalidSetup(f"psi is not a homomorphism at ({a}, {b})")
        if set(self.psi) != set(range(M)):
            raise InvalidSetup("psi is not onto Z/M")
        if self.B0.parent != B:
            raise InvalidSetup("B0 is not a subgroup of B")
        m = self.m
        img = {self.psi[b] for b in self.B0}
        if len(img) != m:
            raise InvalidSetup("psi is not injective on B0")
        if M % m or img != set(range(0, M, M // m)):
            raise InvalidSetup("psi(B0) is not the subgroup of Z/M of order |B0|")
        seen: set[int] = set()
        reps = []
        for b in range(B.order):
            if b not in seen:
                reps.append(b)
                seen.update(B.mul(b, x) for x in self.B0)
        self.R = tuple(reps)
        if not self.basis:
            w = self.L.primitive_element
            self.basis = tuple(self.L.pow(w, j) for j in range(m))
        self.basis = tuple(int(x) for x in self.basis)
        if len(self.basis) != m:
            raise InvalidSetup(f"basis must have m = {m} elements")

    @property
    def m(self) -> int:
        return self.B0.order

    @property
    def q(self) -> int:
        return self.L.p**self.qdeg

    def act_on_scalar(self, a: int, b: int) -> int:
        """``a^b``: the q-Frobenius applied psi(b) times."""
        return self.L.pow(a, self.q ** self.psi[b])

    def fixed_field(self) -> list[int]:
        """Elements of L0, the fixed field of Frob^(M/m)."""
        e = self.q ** (self.M // self.m)
        return [a for a in range(self.L.order) if self.L.pow(a, e) == a]


def twisted_action(setup: TwistedSetup, b: int, form: TwistedForm) -> TwistedForm:
    """Right action of ``b`` on a form."""
    B = setup.B
    return TwistedForm({B.mul(x, b): setup.act_on_scalar(a, b) for x, a in form.coeffs.items()})


def invariant_generators(setup: TwistedSetup) -> list[TwistedForm]:
    """The forms ``t[rho, j]``, ordered by rho in R then j."""
    B = setup.B
    out = []
    for rho in setup.R:
        for w in setup.basis:
            out.append(TwistedForm({B.mul(rho, b): setup.act_on_scalar(w, b) for b in setup.B0}))
    return out


def recovery_matrix(setup: TwistedSetup, rho: int) -> tuple[list[list[int]], list[list[int]]]:
    """Matrix ``W[j][k] = w_j^(b_k)`` over B0's elements and its exact inverse.

    Row j of W expresses ``t[rho, j]`` in the symbols ``x^(rho b_k)``, so
    ``x^(rho b_k) = sum_j Winv[k][j] t[rho, j]``. The matrix depends on rho
    only through which symbols its columns name. Raises SingularMatrix when
    the basis is not linearly independent over L0.
    """
    if rho not in setup.R:
        raise ValueError(f"{rho} is not a coset representative")
    W = [[setup.act_on_scalar(w, b) for b in setup.B0] for w in setup.basis]
    if determinant(setup.L, W) == 0:
        raise SingularMatrix("det(w_j^b) = 0: the given elements are not a basis of L over L0")
    return W, inverse(setup.L, W)


@dataclass
class ConstructionReport:
    checks: dict[str, bool]
    count: int
    order: int
    determinants: dict[int, int]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def verify_construction(setup: TwistedSetup) -> ConstructionReport:
    L, B = setup.L, setup.B
    ts = invariant_generators(setup)
    m = setup.m
    invariant = all(twisted_action(setup, b, t) == t for t in ts for b in setup.B0)
    dets, invertible, recovered = {}, True, set()
    exact = True
    for r, rho in enumerate(setup.R):
        W, Winv = recovery_matrix(setup, rho)
        dets[rho] = determinant(L, W)
        invertible &= matmul(L, W, Winv) == identity_matrix(m) == matmul(L, Winv, W)
        block = ts[r * m : (r + 1) * m]
        for k, b in enumerate(setup.B0):
            x = combine(L, zip(Winv[k], block))
            target = B.mul(rho, b)
            exact &= x == symbol(target)
            recovered.add(target)
    checks = {
        "t forms are B0-invariant": invariant,
        "recovery matrices invertible": invertible,
        "count |R|*m = |B|": len(ts) == len(setup.R) * m == B.order,
        "x recovered exactly from t": exact and recovered == set(range(B.order)),
    }
    return ConstructionReport(checks, len(ts), B.order, dets)


def cyclic_setup(p: int, qdeg: int, M: int, m: int, poly: Sequence[int] | None = None, basis=()) -> TwistedSetup:
    """B = C_M acting through psi = id, with B0 the subgroup of order m."""
    L = FiniteField(p, poly, k=qdeg * M)
    B = cyclic(M)
    B0 = subgroup_generated(B, [M // m])
    return TwistedSetup(L, qdeg, M, B, tuple(range(M)), B0, tuple(basis))
