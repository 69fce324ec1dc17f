"""Homomorphism enumeration, automorphisms, sections and complements."""

from __future__ import annotations

from functools import lru_cache

from .errors import DomainMismatch, NotEpi, NotNormal, SearchBudgetExceeded
from .groups import (
    FiniteGroup,
    Homomorphism,
    Subgroup,
    extend_from_generators,
    subgroups,
)

DEFAULT_BUDGET = 10**7


class Budget:
    """Counts search nodes and aborts once ``limit`` is passed."""

    def __init__(self, limit: int | None = DEFAULT_BUDGET):
        self.limit = limit
        self.nodes = 0

    def tick(self, k: int = 1) -> None:
        self.nodes += k
        if self.limit is not None and self.nodes > self.limit:
            raise SearchBudgetExceeded(self.nodes, self.limit)


def _budget(budget: Budget | None) -> Budget:
    return budget if budget is not None else Budget()


def iter_homomorphisms(G: FiniteGroup, H: FiniteGroup, budget: Budget | None = None):
    """Yield every homomorphism G -> H (in generator-image order).

    Backtracks over images of G's minimal generating set. An image must
    have order dividing the generator's order, and each prefix must extend
    consistently to the subgroup it generates.
    """
    budget = _budget(budget)
    gens = G.generators
    cands = [
        [h for h in range(H.order) if G.element_orders[g] % H.element_orders[h] == 0]
        for g in gens
    ]
    images: list[int] = []

    def search(k: int):
        if k == len(gens):
            f = extend_from_generators(G, gens, images, H)
            yield Homomorphism(G, H, [f[g] for g in range(G.order)], check=False)
            return
        for h in cands[k]:
            budget.tick()
            images.append(h)
            if extend_from_generators(G, gens[: k + 1], images, H) is not None:
                yield from search(k + 1)
            images.pop()

    yield from search(0)


def enumerate_homomorphisms(G: FiniteGroup, H: FiniteGroup, budget: Budget | None = None) -> list[Homomorphism]:
    """All homomorphisms G -> H, sorted lexicographically by map array."""
    return sorted(iter_homomorphisms(G, H, budget), key=lambda h: h.map)


def enumerate_epimorphisms(G: FiniteGroup, H: FiniteGroup, budget: Budget | None = None) -> list[Homomorphism]:
    if H.order > G.order or G.order % H.order:
        return []
    return [h for h in enumerate_homomorphisms(G, H, budget) if h.is_epi]


@lru_cache(maxsize=256)
def automorphisms(H: FiniteGroup) -> tuple[Homomorphism, ...]:
    """Aut(H), sorted by map array (identity first)."""
    return tuple(h for h in enumerate_homomorphisms(H, H, Budget(None)) if h.is_mono)


def find_section(pi: Homomorphism, budget: Budget | None = None) -> Homomorphism | None:
    """A homomorphism s with ``pi ∘ s = id``, or None if none exists.

    Searches all of Hom(codomain, domain), so None is an exhaustive answer.
    """
    if not pi.is_epi:
        raise NotEpi("map is not surjective")
    A, G = pi.codomain, pi.domain
    for s in enumerate_homomorphisms(A, G, budget):
        if all(pi.map[s.map[a]] == a for a in range(A.order)):
            return s
    return None


def is_complement(G: FiniteGroup, N: Subgroup, C: Subgroup) -> bool:
    """Check ``C ∩ N = {e}`` and ``C·N = G`` pointwise."""
    if any(c in N and c != G.identity for c in C):
        return False
    return len({G.mul(c, n) for c in C for n in N}) == G.order


def find_complement(G: FiniteGroup, N: Subgroup) -> Subgroup | None:
    """A complement to the normal subgroup N, or None if none exists."""
    if N.parent != G:
        raise DomainMismatch("N is not a subgroup of G")
    w = N.normality_witness()
    if w is not None:
        raise NotNormal("subgroup is not normal", w)
    if N.order == 1:
        return G.whole()
    target = G.order // N.order
    for C in subgroups(G):
        if C.order == target and is_complement(G, N, C):
            return C
    return None
