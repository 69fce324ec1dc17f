"""Finite groups as dense Cayley tables, with subgroups and homomorphisms.

Elements are the integers ``0 .. order-1``. Products are looked up in a
table; every structural check is exhaustive. Conjugation is on the right:
``g^a = a^-1 g a``, so that ``(g^a)^b = g^(ab)``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, deque
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DomainMismatch,
    NotABijection,
    NotAGroup,
    NotAHomomorphism,
    NotNormal,
    OrderLimitExceeded,
)

DEFAULT_ORDER_CAP = 20160


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def is_prime_power(n: int, p: int) -> bool:
    """True if ``n`` is ``p**k`` for some ``k >= 0``."""
    while n % p == 0:
        n //= p
    return n == 1


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Use :func:`build_from_table` or :func:`build_from_permutations` to
    construct validated instances; the constructor trusts its input.
    """

    def __init__(self, table, identity: int, inv: Sequence[int], label: str | None = None):
        arr = np.array(table, dtype=np.int64)
        arr.setflags(write=False)
        self.table = arr
        self.order = int(arr.shape[0])
        self.identity = int(identity)
        self.inv = tuple(int(x) for x in inv)
        self.label = label
        self._rows = tuple(tuple(int(x) for x in row) for row in arr)

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def product(self, elements: Iterable[int]) -> int:
        acc = self.identity
        for g in elements:
            acc = self._rows[acc][g]
        return acc

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        acc = self.identity
        for _ in range(k):
            acc = self._rows[acc][g]
        return acc

    def conj(self, g: int, a: int) -> int:
        """Right conjugate ``a^-1 g a``."""
        return self._rows[self._rows[self.inv[a]][g]][a]

    def commutes(self, a: int, b: int) -> bool:
        return self._rows[a][b] == self._rows[b][a]

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for g in range(self.order):
            k, x = 1, g
            while x != self.identity:
                x = self._rows[x][g]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def order_profile(self) -> tuple[int, ...]:
        """Sorted multiset of element orders (an isomorphism invariant)."""
        return tuple(sorted(self.element_orders))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        return minimal_generating_set(self)

    def elements(self) -> range:
        return range(self.order)

    def whole(self) -> Subgroup:
        return Subgroup(self, range(self.order))

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, [self.identity])

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.order == other.order and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        name = self.label or "group"
        return f"<FiniteGroup {name} of order {self.order}>"


def _check_associative(table: np.ndarray) -> tuple[int, int, int] | None:
    n = table.shape[0]
    for a in range(n):
        left = table[table[a]]  # [b, c] -> (a*b)*c
        right = table[a][table]  # [b, c] -> a*(b*c)
        bad = np.argwhere(left != right)
        if bad.size:
            b, c = bad[0]
            return (a, int(b), int(c))
    return None


def build_from_table(table, label: str | None = None) -> FiniteGroup:
    """Validate a Cayley table and return the group it defines.

    Raises NotAGroup naming the failed axiom and a witness.
    """
    try:
        arr = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise NotAGroup(f"table is not a rectangular integer array: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise NotAGroup(f"table must be square with side >= 1, got shape {arr.shape}")
    n = arr.shape[0]
    bad = np.argwhere((arr < 0) | (arr >= n))
    if bad.size:
        a, b = (int(x) for x in bad[0])
        raise NotAGroup("entry out of range", (a, b))
    triple = _check_associative(arr)
    if triple is not None:
        raise NotAGroup("associativity fails", triple)
    ident = np.arange(n)
    candidates = [e for e in range(n) if np.array_equal(arr[e], ident) and np.array_equal(arr[:, e], ident)]
    if not candidates:
        raise NotAGroup("no two-sided identity")
    e = candidates[0]
    inv = []
    for g in range(n):
        hits = np.flatnonzero(arr[g] == e)
        h = next((int(h) for h in hits if arr[h, g] == e), None)
        if h is None:
            raise NotAGroup("element has no inverse", (g,))
        inv.append(h)
    return FiniteGroup(arr, e, inv, label)


def compose_perms(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Product ``p*q`` under right actions: apply p first, then q."""
    return tuple(q[i] for i in p)


def build_from_permutations(
    degree: int,
    generators: Sequence[Sequence[int]],
    label: str | None = None,
    cap: int = DEFAULT_ORDER_CAP,
) -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    """Enumerate the permutation group generated by ``generators``.

    Returns the group and its faithful action: ``action[g]`` is the image
    array of element ``g``. Element 0 is the identity.
    """
    gens = []
    for gen in generators:
        gen = tuple(int(x) for x in gen)
        if len(gen) != degree or sorted(gen) != list(range(degree)):
            raise NotABijection(f"{list(gen)} is not a bijection of {degree} points")
        gens.append(gen)
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose_perms(x, g)
            if y not in index:
                if len(elements) >= cap:
                    raise OrderLimitExceeded(f"group order exceeds cap {cap}")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    table = [[index[compose_perms(x, y)] for y in elements] for x in elements]
    inv = []
    for x in elements:
        xi = [0] * degree
        for i, xi_img in enumerate(x):
            xi[xi_img] = i
        inv.append(index[tuple(xi)])
    return FiniteGroup(table, 0, inv, label), elements


def closure(G: FiniteGroup, seed: Iterable[int]) -> frozenset[int]:
    seed = [int(s) for s in seed]
    elems = {G.identity}
    frontier = [G.identity]
    gens = list(dict.fromkeys(seed))
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


class Subgroup:
    """A subgroup of ``parent`` stored as a sorted tuple of element indices."""

    def __init__(self, parent: FiniteGroup, elements: Iterable[int], check: bool = True):
        self.parent = parent
        self.elements = tuple(sorted(set(int(x) for x in elements)))
        self._set = frozenset(self.elements)
        if check:
            self._validate()

    def _validate(self):
        G = self.parent
        if G.identity not in self._set:
            raise NotAGroup("subgroup lacks the identity")
        for a in self.elements:
            if G.inv[a] not in self._set:
                raise NotAGroup("subgroup not closed under inverses", (a,))
            for b in self.elements:
                if G.mul(a, b) not in self._set:
                    raise NotAGroup("subgroup not closed under products", (a, b))
        assert G.order % len(self.elements) == 0

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.elements == other.elements and self.parent == other.parent

    def __hash__(self) -> int:
        return hash(self.elements)

    def __le__(self, other: Subgroup) -> bool:
        return self._set <= other._set

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, elements={list(self.elements)})"

    def index(self) -> int:
        return self.parent.order // self.order

    def is_normal(self) -> bool:
        return self.normality_witness() is None

    def normality_witness(self) -> int | None:
        """An element ``a`` with ``S^a != S``, or None when S is normal."""
        G = self.parent
        for a in range(G.order):
            for s in self.elements:
                if G.conj(s, a) not in self._set:
                    return a
        return None

    def conjugate(self, a: int) -> Subgroup:
        G = self.parent
        return Subgroup(G, (G.conj(s, a) for s in self.elements), check=False)

    def intersection(self, other: Subgroup) -> Subgroup:
        return Subgroup(self.parent, self._set & other._set, check=False)

    def normalizer(self) -> Subgroup:
        G = self.parent
        return Subgroup(
            G,
            (a for a in range(G.order) if all(G.conj(s, a) in self._set for s in self.elements)),
            check=False,
        )

    def is_p_group(self, p: int) -> bool:
        return is_prime_power(self.order, p)

    def as_group(self) -> tuple[FiniteGroup, Homomorphism]:
        """The subgroup as a standalone group, with its inclusion map."""
        G = self.parent
        pos = {g: k for k, g in enumerate(self.elements)}
        table = [[pos[G.mul(a, b)] for b in self.elements] for a in self.elements]
        inv = [pos[G.inv[a]] for a in self.elements]
        H = FiniteGroup(table, pos[G.identity], inv, None)
        return H, Homomorphism(H, G, self.elements, check=False)


def subgroup_generated(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup of G containing ``seed``."""
    return Subgroup(G, closure(G, seed), check=False)


class Homomorphism:
    """A structure-preserving total map ``domain -> codomain``."""

    def __init__(self, domain: FiniteGroup, codomain: FiniteGroup, mapping: Sequence[int], check: bool = True):
        self.domain = domain
        self.codomain = codomain
        self.map = tuple(int(x) for x in mapping)
        if check:
            self._validate()

    def _validate(self):
        G, H = self.domain, self.codomain
        if len(self.map) != G.order:
            raise NotAHomomorphism(f"map has length {len(self.map)}, domain has order {G.order}")
        if any(not 0 <= x < H.order for x in self.map):
            raise NotAHomomorphism("map value out of range")
        if self.map[G.identity] != H.identity:
            raise NotAHomomorphism("identity not preserved", (G.identity,))
        m = np.array(self.map)
        bad = np.argwhere(m[G.table] != H.table[m[:, None], m[None, :]])
        if bad.size:
            raise NotAHomomorphism("product not preserved", tuple(int(x) for x in bad[0]))

    def __call__(self, g: int) -> int:
        return self.map[g]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return self.map == other.map and self.domain == other.domain and self.codomain == other.codomain

    def __hash__(self) -> int:
        return hash(self.map)

    def __repr__(self) -> str:
        return f"Homomorphism({list(self.map)})"

    def kernel(self) -> Subgroup:
        e = self.codomain.identity
        return Subgroup(self.domain, (g for g, x in enumerate(self.map) if x == e), check=False)

    def image(self) -> Subgroup:
        return Subgroup(self.codomain, set(self.map), check=False)

    def image_of(self, S: Iterable[int]) -> Subgroup:
        return Subgroup(self.codomain, {self.map[g] for g in S}, check=False)

    @property
    def is_epi(self) -> bool:
        return len(set(self.map)) == self.codomain.order

    @property
    def is_mono(self) -> bool:
        return len(set(self.map)) == self.domain.order

    def then(self, other: Homomorphism) -> Homomorphism:
        """``other ∘ self``."""
        return compose(self, other)


def identity_map(G: FiniteGroup) -> Homomorphism:
    return Homomorphism(G, G, range(G.order), check=False)


def trivial_map(G: FiniteGroup, H: FiniteGroup) -> Homomorphism:
    return Homomorphism(G, H, [H.identity] * G.order, check=False)


def compose(h1: Homomorphism, h2: Homomorphism) -> Homomorphism:
    """``h2 ∘ h1``: apply h1 first. Requires codomain(h1) == domain(h2)."""
    if h1.codomain != h2.domain:
        raise DomainMismatch("codomain of the first map differs from domain of the second")
    return Homomorphism(h1.domain, h2.codomain, [h2.map[x] for x in h1.map], check=False)


def restrict(h: Homomorphism, S: Subgroup) -> Homomorphism:
    """Restriction of h to S, with S viewed as a standalone group."""
    if S.parent != h.domain:
        raise DomainMismatch("subgroup does not live in the domain")
    H, _ = S.as_group()
    return Homomorphism(H, h.codomain, [h.map[g] for g in S.elements], check=False)


def conjugation_map(G: FiniteGroup, a: int) -> Homomorphism:
    """Inner automorphism ``g -> a^-1 g a``."""
    return Homomorphism(G, G, [G.conj(g, a) for g in range(G.order)], check=False)


def hom_algebra(h: Homomorphism) -> dict:
    return {"kernel": h.kernel(), "image": h.image(), "is_epi": h.is_epi, "is_mono": h.is_mono}


def quotient(G: FiniteGroup, N: Subgroup, label: str | None = None) -> tuple[FiniteGroup, Homomorphism]:
    """G/N with the canonical projection.

    Cosets are numbered by their smallest element, so the coset of the
    identity is not necessarily 0 unless the identity is G's element 0.
    """
    if N.parent != G:
        raise DomainMismatch("N is not a subgroup of G")
    witness = N.normality_witness()
    if witness is not None:
        raise NotNormal("subgroup is not normal", witness)
    coset_of = [-1] * G.order
    reps = []
    for g in range(G.order):
        if coset_of[g] < 0:
            k = len(reps)
            reps.append(g)
            for n in N.elements:
                coset_of[G.mul(g, n)] = k
    table = [[coset_of[G.mul(a, b)] for b in reps] for a in reps]
    inv = [coset_of[G.inv[a]] for a in reps]
    Q = FiniteGroup(table, coset_of[G.identity], inv, label)
    return Q, Homomorphism(G, Q, coset_of, check=False)


def subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All subgroups of G, sorted by (order, elements)."""
    cyclic = {closure(G, [g]) for g in range(G.order)}
    found = set(cyclic)
    frontier = list(cyclic)
    cyc = sorted(cyclic, key=len)
    while frontier:
        nxt = []
        for S in frontier:
            for C in cyc:
                if C <= S:
                    continue
                J = closure(G, S | C)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted((Subgroup(G, S, check=False) for S in found), key=lambda s: (s.order, s.elements))


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    return [S for S in subgroups(G) if S.is_normal()]


def normal_closure(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    seed = set(seed)
    conjugates = {G.conj(s, a) for s in seed for a in range(G.order)}
    return subgroup_generated(G, conjugates)


def sylow(G: FiniteGroup, p: int) -> list[Subgroup]:
    """All Sylow p-subgroups of G, sorted by element tuple."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target = 1
    n = G.order
    while n % p == 0:
        n //= p
        target *= p
    P = G.trivial_subgroup()
    p_elements = [g for g in range(G.order) if is_prime_power(G.element_orders[g], p)]
    while P.order < target:
        Nm = P.normalizer()
        for g in p_elements:
            if g in Nm and g not in P:
                P = subgroup_generated(G, P.elements + (g,))
                break
        else:  # pragma: no cover - Sylow's theorem guarantees progress
            raise AssertionError("no p-element extends the p-subgroup")
    found = {P.conjugate(a) for a in range(G.order)}
    return sorted(found, key=lambda s: s.elements)


def _maximal_cyclic_generators(G: FiniteGroup) -> list[int]:
    """One generator of each maximal cyclic subgroup, highest order first."""
    cyc = {}
    for g in range(G.order):
        c = closure(G, [g])
        cyc.setdefault(c, g)
    maximal = [c for c in cyc if not any(c < d for d in cyc)]
    return sorted((cyc[c] for c in maximal), key=lambda g: (-G.element_orders[g], g))


def minimal_generating_set(G: FiniteGroup) -> tuple[int, ...]:
    """A smallest generating set, chosen canonically.

    Exact search over maximal cyclic subgroups for small groups; greedy
    beyond order 256.
    """
    if G.order == 1:
        return ()
    cands = _maximal_cyclic_generators(G)
    if G.order <= 256:
        for r in range(1, len(cands) + 1):
            for combo in itertools.combinations(cands, r):
                if len(closure(G, combo)) == G.order:
                    return combo
    gens: list[int] = []
    current = closure(G, gens)
    while len(current) < G.order:
        best = max(cands, key=lambda g: len(closure(G, current | {g})))
        gens.append(best)
        current = closure(G, current | {best})
    return tuple(gens)


def extend_from_generators(
    G: FiniteGroup,
    gens: Sequence[int],
    images: Sequence[int],
    H: FiniteGroup,
) -> dict[int, int] | None:
    """Extend ``gens[k] -> images[k]`` to a homomorphism on ``<gens>``.

    Returns the map as a dict on ``<gens>``, or None when the assignment
    is inconsistent (no homomorphism agrees with it).
    """
    f = {G.identity: H.identity}
    pairs = list(zip(gens, images))
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        fx = f[x]
        for g, hg in pairs:
            y = G.mul(x, g)
            fy = H.mul(fx, hg)
            old = f.get(y)
            if old is None:
                f[y] = fy
                queue.append(y)
            elif old != fy:
                return None
    return f


def are_isomorphic(G: FiniteGroup, H: FiniteGroup) -> Homomorphism | None:
    """An isomorphism G -> H, or None if the groups are not isomorphic."""
    if G.order != H.order or G.order_profile != H.order_profile or G.is_abelian != H.is_abelian:
        return None
    gens = G.generators
    by_order: dict[int, list[int]] = {}
    for h in range(H.order):
        by_order.setdefault(H.element_orders[h], []).append(h)
    cands = [by_order.get(G.element_orders[g], []) for g in gens]
    images: list[int] = []

    def search(k: int):
        if k == len(gens):
            f = extend_from_generators(G, gens, images, H)
            if f is not None and len(f) == G.order and len(set(f.values())) == G.order:
                return f
            return None
        for h in cands[k]:
            images.append(h)
            sub = extend_from_generators(G, gens[: k + 1], images, H)
            if sub is not None and len(set(sub.values())) == len(sub):
                found = search(k + 1)
                if found is not None:
                    return found
            images.pop()
        return None

    f = search(0)
    if f is None:
        return None
    return Homomorphism(G, H, [f[g] for g in range(G.order)], check=False)


def canonical_table(G: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """An isomorphism-invariant relabelled table.

    Minimum, over all generating tuples of minimal length, of the table
    relabelled in breadth-first order of right multiplication by the tuple.
    """
    r = len(G.generators)
    best = None
    for combo in itertools.product(range(G.order), repeat=r):
        if len(closure(G, combo)) != G.order:
            continue
        order = [G.identity]
        pos = {G.identity: 0}
        i = 0
        while i < len(order):
            x = order[i]
            for g in combo:
                y = G.mul(x, g)
                if y not in pos:
                    pos[y] = len(order)
                    order.append(y)
            i += 1
        table = tuple(tuple(pos[G.mul(a, b)] for b in order) for a in order)
        if best is None or table < best:
            best = table
    if best is None:
        best = ((0,),)
    return best


def sort_key(G: FiniteGroup):
    return (G.order, G.order_profile, canonical_table(G))


def order_profile_counts(G: FiniteGroup) -> Counter:
    return Counter(G.element_orders)


# -- standard small groups ---------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], 0, [(-a) % n for a in range(n)], f"C{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup, label: str | None = None) -> FiniteGroup:
    """G x H with element ``(g, h)`` at index ``g * |H| + h``."""
    m = H.order
    n = G.order * m
    table = [
        [G.mul(a // m, b // m) * m + H.mul(a % m, b % m) for b in range(n)]
        for a in range(n)
    ]
    inv = [G.inv[a // m] * m + H.inv[a % m] for a in range(n)]
    name = label or (f"{G.label}x{H.label}" if G.label and H.label else None)
    return FiniteGroup(table, G.identity * m + H.identity, inv, name)


def symmetric(k: int) -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    if k < 2:
        return build_from_permutations(max(k, 1), [], f"S{k}")
    gens = [tuple([1, 0] + list(range(2, k))), tuple(list(range(1, k)) + [0])]
    return build_from_permutations(k, gens, f"S{k}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n as permutations of an n-gon (n >= 3)."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return build_from_permutations(n, [rot, ref], f"D{n}")[0]
