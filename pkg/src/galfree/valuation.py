"""Group-theoretic content of Galois groups of valued fields.

A :class:`RamificationDatum` keeps only the part of a Henselian Galois
extension that the group theory sees: the Galois group ``Gamma``, the
residue map ``rho: Gamma -> Delta`` onto the residue-field Galois group,
and the residue characteristic ``p`` (0 or a prime). Inertia is
``ker(rho)``; ramification is the unique p-Sylow subgroup of inertia.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IllegalDefect, InvalidDatum, NonUniqueSylow, NotIntegral
from .groups import (
    FiniteGroup,
    Homomorphism,
    Subgroup,
    are_isomorphic,
    is_prime,
    is_prime_power,
    quotient,
    sylow,
)
from .homs import Budget, find_complement, find_section


@dataclass(frozen=True)
class RamificationDatum:
    rho: Homomorphism
    p: int

    def __post_init__(self):
        if self.p != 0 and not is_prime(self.p):
            raise InvalidDatum(f"residue characteristic must be 0 or prime, got {self.p}")
        if not self.rho.is_epi:
            raise InvalidDatum("rho is not an epimorphism")
        if self.p:
            K, _ = self.rho.kernel().as_group()
            found = sylow(K, self.p)
            if len(found) != 1:
                raise NonUniqueSylow(f"ker(rho) has {len(found)} Sylow {self.p}-subgroups")

    @property
    def Gamma(self) -> FiniteGroup:
        return self.rho.domain

    @property
    def Delta(self) -> FiniteGroup:
        return self.rho.codomain


def inertia(datum: RamificationDatum) -> Subgroup:
    """G_0 = ker(rho)."""
    return datum.rho.kernel()


def ramification(datum: RamificationDatum) -> Subgroup:
    """G_1: trivial in residue characteristic 0, else the p-Sylow of G_0."""
    G0 = inertia(datum)
    if datum.p == 0:
        return datum.Gamma.trivial_subgroup()
    K, incl = G0.as_group()
    found = sylow(K, datum.p)
    if len(found) != 1:
        raise NonUniqueSylow(f"inertia has {len(found)} Sylow {datum.p}-subgroups")
    return Subgroup(datum.Gamma, (incl.map[x] for x in found[0]), check=False)


@dataclass
class TowerReport:
    orders: tuple[int, int, int]  # (|G_1|, |G_0|, |Gamma|)
    checks: dict[str, bool]
    residue_iso: Homomorphism | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def residue_isomorphism(datum: RamificationDatum) -> Homomorphism | None:
    """The isomorphism ``Gamma/G_0 -> Delta`` induced by rho."""
    Q, proj = quotient(datum.Gamma, inertia(datum))
    induced = [0] * Q.order
    for g in range(datum.Gamma.order):
        induced[proj.map[g]] = datum.rho.map[g]
    h = Homomorphism(Q, datum.Delta, induced)
    return h if h.is_epi and h.is_mono else None


def check_tower(datum: RamificationDatum) -> TowerReport:
    G = datum.Gamma
    G0, G1 = inertia(datum), ramification(datum)
    iso = residue_isomorphism(datum)
    p = datum.p
    index = G0.order // G1.order
    checks = {
        "G1 normal in Gamma": G1.is_normal(),
        "G0 normal in Gamma": G0.is_normal(),
        "G1 contained in G0": G1 <= G0,
        "Gamma/G0 isomorphic to Delta": iso is not None,
        "G1 is a p-group": G1.order == 1 if p == 0 else is_prime_power(G1.order, p),
        "p does not divide [G0:G1]": True if p == 0 else index % p != 0,
    }
    if iso is not None:
        Q, _ = quotient(G, G0)
        assert are_isomorphic(Q, datum.Delta) is not None
    return TowerReport((G1.order, G0.order, G.order), checks, iso)


@dataclass(frozen=True)
class NumericalExtensionData:
    """Degree n, ramification index e, residue degree f, residue characteristic p."""

    n: int
    e: int
    f: int
    p: int


@dataclass(frozen=True)
class DefectResult:
    d: int
    defectless: bool

    @property
    def classification(self) -> str:
        return "defectless" if self.defectless else f"defect {self.d}"


def defect(data: NumericalExtensionData) -> DefectResult:
    """d = n/(e f); must be 1 in residue characteristic 0 and a power of p otherwise."""
    n, e, f, p = data.n, data.e, data.f, data.p
    if n < 1 or e < 1 or f < 1:
        raise ValueError("n, e, f must be positive")
    if p != 0 and not is_prime(p):
        raise ValueError(f"residue characteristic must be 0 or prime, got {p}")
    if n % (e * f):
        raise NotIntegral(f"e*f = {e * f} does not divide n = {n}")
    d = n // (e * f)
    if p == 0 and d != 1:
        raise IllegalDefect(f"defect {d} in residue characteristic 0")
    if p and not is_prime_power(d, p):
        raise IllegalDefect(f"defect {d} is not a power of {p}")
    return DefectResult(d, d == 1)


@dataclass
class SplittingReport:
    section: Homomorphism | None
    inertia_complement: Subgroup | None
    ramification_complement: Subgroup | None
    notes: list[str] = field(default_factory=list)
    nodes: int = 0

    @property
    def splits(self) -> bool:
        return self.section is not None


def splitting_report(datum: RamificationDatum, budget: Budget | None = None) -> SplittingReport:
    """Search for a section of rho and complements to G_0 and G_1 in Gamma."""
    budget = budget if budget is not None else Budget()
    G = datum.Gamma
    s = find_section(datum.rho, budget)
    C0 = find_complement(G, inertia(datum))
    C1 = find_complement(G, ramification(datum))
    notes = []
    if s is None:
        notes.append(
            "no section of rho exists: this datum cannot come from a Henselian field with these "
            "groups, or the finite shadow loses the information that makes it split"
        )
    if C1 is None:
        notes.append("G1 has no complement in Gamma")
    return SplittingReport(s, C0, C1, notes, budget.nodes)
