"""Embedding problems for marked finite groups.

A problem ``(phi: G -> A, psi: B -> A, B_1..B_n)`` over a marked group
``(G; G_1..G_n)`` asks for an epimorphism ``gamma: G -> B`` with
``psi ∘ gamma = phi`` and ``gamma(G_i) = B_i``. Any solution is forced on
each ``G_i`` to be ``(psi|B_i)^-1 ∘ phi|G_i``; since the ``G_i`` generate
G, the solver only has to check that the forced pieces glue.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product, repeat

from .catalog import Catalog
from .errors import InvalidProblem
from .groups import (
    FiniteGroup,
    Homomorphism,
    Subgroup,
    closure,
    extend_from_generators,
)
from .homs import Budget, automorphisms, enumerate_homomorphisms


@dataclass(frozen=True)
class MarkedGroup:
    """A finite group with an ordered tuple of subgroups generating it."""

    G: FiniteGroup
    marks: tuple[Subgroup, ...]

    def __init__(self, G: FiniteGroup, marks):
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "marks", tuple(marks))
        if not self.marks:
            raise ValueError("a marked group needs at least one mark")
        for S in self.marks:
            if S.parent != G:
                raise ValueError("mark is not a subgroup of G")
        gen = closure(G, (g for S in self.marks for g in S))
        if len(gen) != G.order:
            missing = min(set(range(G.order)) - gen)
            raise ValueError(f"marks do not generate G (element {missing} is missing)")

    @property
    def n(self) -> int:
        return len(self.marks)

    @cached_property
    def mark_groups(self) -> tuple[FiniteGroup, ...]:
        """Each mark as a standalone group; element k is ``marks[i].elements[k]``."""
        return tuple(S.as_group()[0] for S in self.marks)

    def __hash__(self):
        return hash((self.G, tuple(S.elements for S in self.marks)))


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    witness: tuple = ()

    def __str__(self) -> str:
        return f"{self.code}: {self.message}" + (f" (witness {self.witness})" if self.witness else "")


@dataclass(frozen=True)
class EmbeddingProblem:
    source: MarkedGroup
    A: FiniteGroup
    phi: Homomorphism
    B: FiniteGroup
    psi: Homomorphism
    marksB: tuple[Subgroup, ...]

    def __init__(self, source, A, phi, B, psi, marksB):
        for name, val in zip(("source", "A", "phi", "B", "psi"), (source, A, phi, B, psi)):
            object.__setattr__(self, name, val)
        object.__setattr__(self, "marksB", tuple(marksB))

    @property
    def G(self) -> FiniteGroup:
        return self.source.G


@dataclass(frozen=True)
class Solution:
    gamma: Homomorphism

    def violations(self, ep: EmbeddingProblem) -> list[str]:
        """Pointwise check of the three defining equations."""
        g = self.gamma
        out = []
        if not g.is_epi:
            out.append("gamma is not surjective")
        bad = [x for x in range(ep.G.order) if ep.psi.map[g.map[x]] != ep.phi.map[x]]
        if bad:
            out.append(f"psi∘gamma != phi at {bad[0]}")
        for i, (Gi, Bi) in enumerate(zip(ep.source.marks, ep.marksB)):
            if {g.map[x] for x in Gi} != set(Bi.elements):
                out.append(f"gamma(G_{i + 1}) != B_{i + 1}")
        return out


def validate_problem(ep: EmbeddingProblem) -> list[Violation]:
    """Every violated invariant of ``ep``, each with a witness."""
    out: list[Violation] = []
    G, A, B = ep.G, ep.A, ep.B
    if ep.phi.domain != G or ep.phi.codomain != A:
        out.append(Violation("phi-shape", "phi must map G to A"))
    if ep.psi.domain != B or ep.psi.codomain != A:
        out.append(Violation("psi-shape", "psi must map B to A"))
    if out:
        return out
    missing = set(range(A.order)) - set(ep.phi.map)
    if missing:
        out.append(Violation("phi-not-epi", "phi is not an epimorphism", (min(missing),)))
    missing = set(range(A.order)) - set(ep.psi.map)
    if missing:
        out.append(Violation("psi-not-epi", "psi is not an epimorphism", (min(missing),)))
    if len(ep.marksB) != ep.source.n:
        out.append(Violation("mark-count", f"{len(ep.marksB)} marks in B but {ep.source.n} in G"))
        return out
    if any(S.parent != B for S in ep.marksB):
        out.append(Violation("mark-parent", "marks of B must be subgroups of B"))
        return out
    gen = closure(B, (b for S in ep.marksB for b in S))
    if len(gen) != B.order:
        out.append(Violation("marks-generate", "B_1..B_n do not generate B", (min(set(range(B.order)) - gen),)))
    for i, (Gi, Bi) in enumerate(zip(ep.source.marks, ep.marksB), start=1):
        target = {ep.phi.map[g] for g in Gi}
        img = {ep.psi.map[b] for b in Bi}
        if len(Bi) != len(target):
            out.append(
                Violation(
                    "not-isomorphic-onto",
                    f"|B_{i}| = {len(Bi)} but |phi(G_{i})| = {len(target)}: "
                    f"psi cannot map B_{i} isomorphically onto phi(G_{i})",
                )
            )
        elif len(img) != len(Bi):
            e = B.identity
            w = next(b for b in Bi if b != e and ep.psi.map[b] == A.identity)
            out.append(Violation("not-isomorphic-onto", f"psi is not injective on B_{i}", (w,)))
        elif img != target:
            out.append(Violation("not-isomorphic-onto", f"psi(B_{i}) != phi(G_{i})", (min(img ^ target),)))
    return out


def forced_gamma(ep: EmbeddingProblem) -> tuple[Homomorphism | None, str]:
    """Glue ``(psi|B_i)^-1 ∘ phi|G_i`` into a homomorphism G -> B.

    Returns the homomorphism (not necessarily surjective) or None with the
    reason the pieces fail to glue.
    """
    G, B = ep.G, ep.B
    assign: dict[int, int] = {}
    for i, (Gi, Bi) in enumerate(zip(ep.source.marks, ep.marksB), start=1):
        back = {ep.psi.map[b]: b for b in Bi}
        for g in Gi:
            b = back[ep.phi.map[g]]
            if assign.setdefault(g, b) != b:
                return None, f"forced values disagree on element {g} shared by several marks"
    gens = sorted(assign)
    f = extend_from_generators(G, gens, [assign[g] for g in gens], B)
    if f is None:
        return None, "forced restrictions do not extend to a homomorphism on G"
    return Homomorphism(G, B, [f[g] for g in range(G.order)], check=False), ""


def solve_with_reason(ep: EmbeddingProblem) -> tuple[Solution | None, str]:
    violations = validate_problem(ep)
    if violations:
        raise InvalidProblem(violations)
    G, B = ep.G, ep.B
    if G.order < B.order:
        return None, f"no epimorphism exists (order obstruction {G.order} < {B.order})"
    if G.order % B.order:
        return None, f"no epimorphism exists (order obstruction: {B.order} does not divide {G.order})"
    gamma, reason = forced_gamma(ep)
    if gamma is None:
        return None, reason
    # gamma(G) contains every B_i, and the B_i generate B: gamma is onto.
    return Solution(gamma), "solved"


def solve(ep: EmbeddingProblem) -> Solution | None:
    """The solution of ``ep`` if one exists (it is then unique)."""
    return solve_with_reason(ep)[0]


def all_solutions(ep: EmbeddingProblem, budget: Budget | None = None) -> list[Solution]:
    """Every solution, by exhaustive enumeration of Hom(G, B)."""
    out = []
    for g in enumerate_homomorphisms(ep.G, ep.B, budget):
        sol = Solution(g)
        if not sol.violations(ep):
            out.append(sol)
    return out


# -- extension property --------------------------------------------------------


def extend_homomorphisms(M: MarkedGroup, etas) -> Homomorphism | None:
    """A homomorphism ``G -> H`` restricting to ``etas[i]`` on each mark.

    ``etas[i]`` has domain ``M.mark_groups[i]``. Because the marks generate
    G, an extension is unique when it exists; None is therefore exhaustive.
    """
    if len(etas) != M.n:
        raise ValueError("need one homomorphism per mark")
    H = etas[0].codomain
    if any(e.codomain != H for e in etas):
        raise ValueError("all homomorphisms must share a codomain")
    assign: dict[int, int] = {}
    for S, eta in zip(M.marks, etas):
        for k, g in enumerate(S.elements):
            if assign.setdefault(g, eta.map[k]) != eta.map[k]:
                return None
    gens = sorted(assign)
    f = extend_from_generators(M.G, gens, [assign[g] for g in gens], H)
    if f is None:
        return None
    return Homomorphism(M.G, H, [f[g] for g in range(M.G.order)], check=False)


def tuple_orbit_representatives(homsets, auts):
    """Tuples from ``product(*homsets)``, one per Aut(H)-orbit under post-composition.

    The representative is the lexicographically smallest tuple of map arrays.
    """
    for etas in product(*homsets):
        key = tuple(e.map for e in etas)
        if all(tuple(tuple(a.map[x] for x in m) for m in key) >= key for a in auts):
            yield etas


@dataclass
class ExtensionFailure:
    H: FiniteGroup
    etas: tuple[Homomorphism, ...]


@dataclass
class ExtensionReport:
    bound: int
    failures: list[ExtensionFailure] = field(default_factory=list)
    tuples_checked: int = 0
    nodes: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures


def _check_one(M: MarkedGroup, H: FiniteGroup, limit):
    budget = Budget(limit)
    homsets = [enumerate_homomorphisms(Gi, H, budget) for Gi in M.mark_groups]
    failures, checked = [], 0
    for etas in tuple_orbit_representatives(homsets, automorphisms(H)):
        budget.tick()
        checked += 1
        if extend_homomorphisms(M, etas) is None:
            failures.append(ExtensionFailure(H, etas))
    return failures, checked, budget.nodes


def _remaining(budget: Budget):
    return None if budget.limit is None else budget.limit - budget.nodes


def check_extension_property(M: MarkedGroup, cat: Catalog, budget: Budget | None = None, jobs: int = 1) -> ExtensionReport:
    """Test every tuple ``(eta_i: G_i -> H)``, H in ``cat``, for an extension to G.

    Tuples are taken up to simultaneous post-composition with Aut(H).
    Failures are listed in catalog order, then by tuple.
    """
    budget = budget if budget is not None else Budget()
    report = ExtensionReport(cat.bound)
    groups = list(cat)
    if jobs > 1 and len(groups) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_one, repeat(M), groups, repeat(_remaining(budget))))
    else:
        results = (_check_one(M, H, _remaining(budget)) for H in groups)
    for failures, checked, nodes in results:
        budget.tick(nodes)
        report.failures.extend(failures)
        report.tuples_checked += checked
        report.nodes += nodes
    return report
