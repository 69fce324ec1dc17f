"""Free products of finite groups, seen through words and finite quotients.

The free product itself is never materialised. Elements are reduced words;
quotients are tuples of homomorphisms ``eta_i: G_i -> H`` whose images
generate H, taken up to isomorphism of H commuting with every ``eta_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .catalog import Catalog
from .embed import MarkedGroup, tuple_orbit_representatives
from .errors import EqualWords, MarksNotPGroups, NoConjugatorFound
from .groups import (
    FiniteGroup,
    Homomorphism,
    Subgroup,
    closure,
    extend_from_generators,
    is_prime_power,
    quotient,
    subgroup_generated,
    sylow,
)
from .homs import Budget, automorphisms, enumerate_homomorphisms


@dataclass(frozen=True)
class FreeProductContext:
    factors: tuple[FiniteGroup, ...]

    def __init__(self, factors: Iterable[FiniteGroup]):
        object.__setattr__(self, "factors", tuple(factors))
        if not self.factors:
            raise ValueError("a free product needs at least one factor")

    @property
    def n(self) -> int:
        return len(self.factors)


@dataclass(frozen=True, order=True)
class ReducedWord:
    """Alternating syllables ``(factor, element)`` with no identity entries."""

    syllables: tuple[tuple[int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self):
        return iter(self.syllables)


def reduce_word(ctx: FreeProductContext, syllables: Iterable[Sequence[int]]) -> ReducedWord:
    """Normal form of an arbitrary syllable sequence."""
    stack: list[tuple[int, int]] = []
    for i, g in syllables:
        i, g = int(i), int(g)
        G = ctx.factors[i]
        if not 0 <= g < G.order:
            raise ValueError(f"element {g} not in factor {i}")
        if stack and stack[-1][0] == i:
            g = G.mul(stack.pop()[1], g)
        if g != G.identity:
            stack.append((i, g))
    return ReducedWord(tuple(stack))


def is_reduced(ctx: FreeProductContext, w: ReducedWord) -> bool:
    for k, (i, g) in enumerate(w.syllables):
        if g == ctx.factors[i].identity:
            return False
        if k and w.syllables[k - 1][0] == i:
            return False
    return True


def word(ctx: FreeProductContext, *syllables: Sequence[int]) -> ReducedWord:
    return reduce_word(ctx, syllables)


def word_multiply(ctx: FreeProductContext, w1: ReducedWord, w2: ReducedWord) -> ReducedWord:
    """Concatenate and cancel at the seam, cascading as needed."""
    left = list(w1.syllables)
    right = list(w2.syllables)
    while left and right and left[-1][0] == right[0][0]:
        i = left[-1][0]
        G = ctx.factors[i]
        g = G.mul(left.pop()[1], right.pop(0)[1])
        if g != G.identity:
            left.append((i, g))
            break
    return ReducedWord(tuple(left + right))


def word_inverse(ctx: FreeProductContext, w: ReducedWord) -> ReducedWord:
    return ReducedWord(tuple((i, ctx.factors[i].inv[g]) for i, g in reversed(w.syllables)))


def evaluate(ctx: FreeProductContext, w: ReducedWord, etas: Sequence[Homomorphism]) -> int:
    """Image of ``w`` under the homomorphism induced by ``etas``."""
    H = etas[0].codomain
    acc = H.identity
    for i, g in w.syllables:
        acc = H.mul(acc, etas[i].map[g])
    return acc


def format_word(w: ReducedWord, names: Sequence[Sequence[str]] | None = None) -> str:
    if not w.syllables:
        return "e"
    if names is None:
        return "·".join(f"{i + 1}:{g}" for i, g in w.syllables)
    return "".join(names[i][g] for i, g in w.syllables)


@dataclass
class MarkedQuotient:
    """A finite group Q with maps ``eta_i: G_i -> Q`` whose images generate Q."""

    Q: FiniteGroup
    etas: tuple[Homomorphism, ...]
    marks: tuple[Subgroup, ...] = field(default=())

    def __post_init__(self):
        self.etas = tuple(self.etas)
        if not self.marks:
            self.marks = tuple(e.image() for e in self.etas)
        self.marks = tuple(self.marks)
        if len(closure(self.Q, (g for S in self.marks for g in S))) != self.Q.order:
            raise ValueError("factor images do not generate Q")

    def marked_group(self) -> MarkedGroup:
        return MarkedGroup(self.Q, self.marks)


def marked_equivalence(a: MarkedQuotient, b: MarkedQuotient) -> Homomorphism | None:
    """The isomorphism ``iso: a.Q -> b.Q`` with ``b.eta_i = iso ∘ a.eta_i``, if any."""
    if a.Q.order != b.Q.order or len(a.etas) != len(b.etas):
        return None
    assign: dict[int, int] = {}
    for ea, eb in zip(a.etas, b.etas):
        for x in range(ea.domain.order):
            if assign.setdefault(ea.map[x], eb.map[x]) != eb.map[x]:
                return None
    gens = sorted(assign)
    f = extend_from_generators(a.Q, gens, [assign[g] for g in gens], b.Q)
    if f is None or len(set(f.values())) != a.Q.order:
        return None
    return Homomorphism(a.Q, b.Q, [f[g] for g in range(a.Q.order)], check=False)


def joint_image(ctx: FreeProductContext, etas: Sequence[Homomorphism]) -> MarkedQuotient:
    """The subgroup of H generated by all ``eta_i(G_i)``, with restricted maps."""
    H = etas[0].codomain
    S = subgroup_generated(H, (x for e in etas for x in e.map))
    Q, _ = S.as_group()
    pos = {h: k for k, h in enumerate(S.elements)}
    new = tuple(Homomorphism(e.domain, Q, [pos[x] for x in e.map], check=False) for e in etas)
    return MarkedQuotient(Q, new)


def _surjective_tuples(ctx: FreeProductContext, H: FiniteGroup, budget: Budget):
    homsets = [enumerate_homomorphisms(G, H, budget) for G in ctx.factors]
    for etas in tuple_orbit_representatives(homsets, automorphisms(H)):
        budget.tick()
        if len(closure(H, (x for e in etas for x in e.map))) == H.order:
            yield etas


def enumerate_quotients(ctx: FreeProductContext, cat: Catalog, budget: Budget | None = None) -> list[MarkedQuotient]:
    """One marked quotient per equivalence class, for every H in ``cat``.

    Catalog groups are pairwise non-isomorphic, so classes correspond to
    surjective tuples into a catalog group up to Aut(H).
    """
    budget = budget if budget is not None else Budget()
    out = []
    for H in cat:
        for etas in _surjective_tuples(ctx, H, budget):
            out.append(MarkedQuotient(H, etas))
    return out


@dataclass
class SeparationWitness:
    H: FiniteGroup
    etas: tuple[Homomorphism, ...]
    values: tuple[int, int]


def separate(
    ctx: FreeProductContext,
    w1: ReducedWord,
    w2: ReducedWord,
    cat: Catalog,
    budget: Budget | None = None,
) -> SeparationWitness | None:
    """First catalog group H (in catalog order) with a tuple telling w1 from w2.

    None means no witness exists up to ``cat.bound``; larger quotients are
    not examined.
    """
    if w1 == w2:
        raise EqualWords("the two words are equal")
    budget = budget if budget is not None else Budget()
    for H in cat:
        homsets = [enumerate_homomorphisms(G, H, budget) for G in ctx.factors]
        for etas in tuple_orbit_representatives(homsets, automorphisms(H)):
            budget.tick()
            a, b = evaluate(ctx, w1, etas), evaluate(ctx, w2, etas)
            if a != b:
                return SeparationWitness(H, tuple(etas), (a, b))
    return None


def _product_group(elements: list[tuple[int, ...]], coords: list[FiniteGroup]) -> FiniteGroup:
    index = {x: k for k, x in enumerate(elements)}
    table = [
        [index[tuple(H.mul(p, q) for H, p, q in zip(coords, x, y))] for y in elements]
        for x in elements
    ]
    inv = [index[tuple(H.inv[p] for H, p in zip(coords, x))] for x in elements]
    ident = index[tuple(H.identity for H in coords)]
    return FiniteGroup(table, ident, inv)


def level_quotient(ctx: FreeProductContext, cat: Catalog, budget: Budget | None = None) -> MarkedQuotient:
    """The quotient through which every tuple into every catalog group factors.

    Built as the image of the free product in the product of all quotient
    classes, after discarding coordinates whose removal keeps the joint map
    injective on that image.
    """
    budget = budget if budget is not None else Budget()
    classes = enumerate_quotients(ctx, cat, budget)
    classes = [mq for mq in classes if mq.Q.order > 1]
    coords = [mq.Q for mq in classes]
    gens = [
        [tuple(mq.etas[i].map[g] for mq in classes) for g in range(G.order)]
        for i, G in enumerate(ctx.factors)
    ]
    ident = tuple(H.identity for H in coords)
    elems = [ident]
    seen = {ident}
    k = 0
    flat = [x for per in gens for x in per]
    while k < len(elems):
        x = elems[k]
        k += 1
        for g in flat:
            budget.tick()
            y = tuple(H.mul(p, q) for H, p, q in zip(coords, x, g))
            if y not in seen:
                seen.add(y)
                elems.append(y)
    keep = list(range(len(coords)))
    for c in range(len(coords)):
        trial = [d for d in keep if d != c]
        if len({tuple(x[d] for d in trial) for x in elems}) == len(elems):
            keep = trial
    proj = sorted({tuple(x[d] for d in keep) for x in elems})
    kept = [coords[d] for d in keep]
    Q = _product_group(proj, kept)
    index = {x: n for n, x in enumerate(proj)}
    etas = tuple(
        Homomorphism(G, Q, [index[tuple(gens[i][g][d] for d in keep)] for g in range(G.order)], check=False)
        for i, G in enumerate(ctx.factors)
    )
    return MarkedQuotient(Q, etas)


# -- pro-p shadow ------------------------------------------------------------------


def p_residual(Q: FiniteGroup, p: int) -> Subgroup:
    """Smallest normal subgroup with p-group quotient: generated by p'-elements."""
    return subgroup_generated(Q, (g for g in range(Q.order) if Q.element_orders[g] % p))


def max_p_quotient(Q: FiniteGroup, p: int) -> tuple[FiniteGroup, Homomorphism]:
    """Largest p-group quotient of Q with its projection."""
    N = p_residual(Q, p)
    return quotient(Q, N)


@dataclass
class Retraction:
    P: Subgroup
    conjugators: tuple[int, ...]
    R: FiniteGroup
    alpha: Homomorphism
    checks: dict[str, bool]
    section: Homomorphism | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def sylow_retraction(mq: MarkedQuotient, p: int) -> Retraction:
    """Sylow subgroup and conjugators carrying each marked p-subgroup into it.

    Each conjugator lies in the kernel of the projection onto the maximal
    p-quotient, so conjugating a marked element does not change its image
    there. ``section`` is the induced map ``R -> P`` when it is well defined.
    """
    Q = mq.Q
    for k, S in enumerate(mq.marks, start=1):
        if not is_prime_power(S.order, p):
            raise MarksNotPGroups(f"mark {k} has order {S.order}, not a power of {p}")
    R, alpha = max_p_quotient(Q, p)
    sylows = sylow(Q, p)
    P = next((S for S in sylows if mq.marks[0] <= S), sylows[0])
    kernel = alpha.kernel().elements
    conjugators = []
    for k, S in enumerate(mq.marks, start=1):
        c = next((c for c in kernel if all(Q.conj(g, c) in P for g in S)), None)
        if c is None:
            raise NoConjugatorFound(f"no element of ker(alpha) conjugates mark {k} into P")
        conjugators.append(c)
    e = R.identity
    checks = {
        "P is a p-Sylow subgroup": P.order == max(S.order for S in sylows) and is_prime_power(P.order, p),
        "alpha(P) = R": len({alpha.map[g] for g in P}) == R.order,
        "marks conjugated into P": all(Q.conj(g, c) in P for S, c in zip(mq.marks, conjugators) for g in S),
        "alpha(c_i) = identity": all(alpha.map[c] == e for c in conjugators),
        "alpha fixes conjugated marks": all(
            alpha.map[Q.conj(g, c)] == alpha.map[g] for S, c in zip(mq.marks, conjugators) for g in S
        ),
    }
    assign: dict[int, int] = {}
    consistent = True
    for S, c in zip(mq.marks, conjugators):
        for g in S:
            if assign.setdefault(alpha.map[g], Q.conj(g, c)) != Q.conj(g, c):
                consistent = False
    section = None
    if consistent:
        gens = sorted(assign)
        f = extend_from_generators(R, gens, [assign[x] for x in gens], Q)
        if f is not None and len(f) == R.order:
            section = Homomorphism(R, Q, [f[x] for x in range(R.order)], check=False)
    return Retraction(P, tuple(conjugators), R, alpha, checks, section)
