"""One check per acceptance criterion, each timed against its runtime limit.

A summary line per criterion is printed at the end of the pytest run.
"""

import itertools
import math
import time

import pytest

from builders import all_maps_homs, d4_problem, generated_problems, quotient_source_problems, s3, sign_map
from conftest import ACCEPTANCE
from galfree.catalog import build_catalog, default_catalog
from galfree.embed import EmbeddingProblem, MarkedGroup, all_solutions, check_extension_property, solve, solve_with_reason
from galfree.freeprod import (
    FreeProductContext,
    MarkedQuotient,
    enumerate_quotients,
    level_quotient,
    separate,
    sylow_retraction,
    word,
)
from galfree.groups import Homomorphism, build_from_table, cyclic, identity_map, is_prime_power, normal_subgroups
from galfree.homs import enumerate_homomorphisms, find_complement, is_complement
from galfree.twisted import cyclic_setup, verify_construction
from galfree.valuation import (
    NumericalExtensionData,
    RamificationDatum,
    check_tower,
    defect,
    inertia,
    ramification,
    splitting_report,
)
from galfree.errors import NotIntegral


class Criterion:
    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.notes: list[str] = []

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.limit
        detail = "; ".join(self.notes)
        if exc_type is not None:
            detail = f"{exc_type.__name__}: {exc}"
        elif elapsed >= self.limit:
            detail = f"too slow; {detail}"
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE.append(
            f"[{status}] criterion {self.number}: {self.title} ({elapsed:.2f} s, limit {self.limit:g} s) {detail}".rstrip()
        )
        if exc_type is None:
            assert elapsed < self.limit, f"criterion {self.number} took {elapsed:.2f} s"
        return False


def test_criterion_01_enumerator_matches_oracle():
    with Criterion(1, "homomorphism enumeration matches the all-functions oracle", 30) as c:
        cat = list(default_catalog(6))
        for G in cat:
            assert build_from_table(G.table.tolist()).order == G.order
        pairs = 0
        for G, H in itertools.product(cat, repeat=2):
            got = [h.map for h in enumerate_homomorphisms(G, H)]
            assert len(got) == len(set(got))
            assert set(got) == all_maps_homs(G, H)
            pairs += 1
        c.notes.append(f"{pairs} pairs")


def test_criterion_02_catalog_counts():
    with Criterion(2, "catalog counts for orders 1..12", 300) as c:
        cat = build_catalog(12)
        assert cat.counts() == [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5]
        c.notes.append(f"{len(cat)} groups")


def test_criterion_03_solution_uniqueness():
    with Criterion(3, "embedding-problem solutions are unique", 120) as c:
        problems = generated_problems(80) + quotient_source_problems(40)
        assert len(problems) >= 50
        solvable = 0
        for ep in problems:
            assert max(ep.G.order, ep.B.order) <= 12
            sols = all_solutions(ep)
            assert len(sols) <= 1
            found = solve(ep)
            assert (found is None) == (not sols)
            if sols:
                solvable += 1
                assert found.gamma == sols[0].gamma
        c.notes.append(f"{len(problems)} problems, {solvable} solvable")


def test_criterion_04_embedding_regression():
    with Criterion(4, "D4 problem unsolvable, identity problems give phi", 1):
        ep = d4_problem()
        sol, reason = solve_with_reason(ep)
        assert sol is None and reason == "no epimorphism exists (order obstruction 4 < 8)"
        D = ep.B
        ep2 = EmbeddingProblem(MarkedGroup(D, ep.marksB), ep.A, ep.psi, D, ep.psi, ep.marksB)
        assert solve(ep2).gamma == identity_map(D)
        V = ep.A
        ep3 = EmbeddingProblem(ep.source, V, ep.phi, V, identity_map(V), list(ep.source.marks))
        assert solve(ep3).gamma == ep3.phi


def test_criterion_05_level_quotient_universality():
    with Criterion(5, "level quotient of C2*C2 at bound 6 is universal", 120) as c:
        cat = default_catalog(6)
        q6 = level_quotient(FreeProductContext([cyclic(2), cyclic(2)]), cat)
        rep = check_extension_property(q6.marked_group(), cat)
        assert rep.passed and not rep.failures
        c.notes.append(f"|Q6| = {q6.Q.order}, {rep.tuples_checked} tuples")


def _words_up_to(ctx, n):
    out = [word(ctx)]
    for length in range(1, n + 1):
        for first in (0, 1):
            out.append(word(ctx, *[((first + k) % 2, 1) for k in range(length)]))
    return out


def test_criterion_06_separation_suite():
    with Criterion(6, "reduced words over C2*C2 are separated", 120) as c:
        ctx = FreeProductContext([cyclic(2), cyclic(2)])
        cat8 = default_catalog(8)
        words = _words_up_to(ctx, 4)
        assert len(words) == 9
        pairs = 0
        for w1, w2 in itertools.combinations(words, 2):
            wit = separate(ctx, w1, w2, cat8)
            assert wit is not None and wit.values[0] != wit.values[1]
            pairs += 1
        stst, tsts = words[7], words[8]
        assert separate(ctx, stst, tsts, default_catalog(4)) is None
        wit = separate(ctx, stst, tsts, default_catalog(6))
        assert wit is not None and wit.H.order == 6
        c.notes.append(f"{pairs} pairs")


def test_criterion_07_sylow_retraction():
    with Criterion(7, "Sylow retraction on S3 and on p-group quotients", 1) as c:
        S3, idx = s3()
        C2 = cyclic(2)
        mq = MarkedQuotient(
            S3, [Homomorphism(C2, S3, [0, idx[(1, 0, 2)]]), Homomorphism(C2, S3, [0, idx[(2, 1, 0)]])]
        )
        ret = sylow_retraction(mq, 2)
        assert ret.ok and ret.R.order == 2
        for S, cj in zip(mq.marks, ret.conjugators):
            assert all(S3.conj(g, cj) in ret.P for g in S)
        count = 0
        for p, ctx, bound in [(2, [C2, C2], 8), (3, [cyclic(3), cyclic(3)], 9)]:
            for q in enumerate_quotients(FreeProductContext(ctx), default_catalog(bound)):
                if q.Q.order > 1 and is_prime_power(q.Q.order, p):
                    r = sylow_retraction(q, p)
                    assert r.ok and r.P.order == q.Q.order and set(r.conjugators) == {q.Q.identity}
                    count += 1
        c.notes.append(f"{count} p-group quotients")


def test_criterion_08_valuation_shadow():
    with Criterion(8, "S3/C2/p=3 tower, section and defect arithmetic", 1):
        S3, idx = s3()
        datum = RamificationDatum(sign_map(S3, idx), 3)
        G0, G1 = inertia(datum), ramification(datum)
        assert G0.order == 3 and G1 == G0
        rep = check_tower(datum)
        assert rep.ok and rep.orders == (3, 3, 6)
        assert splitting_report(datum).splits
        d = defect(NumericalExtensionData(8, 2, 2, 2))
        assert d.d == 2 and not d.defectless
        with pytest.raises(NotIntegral):
            defect(NumericalExtensionData(6, 2, 2, 3))


def test_criterion_09_invariant_forms():
    with Criterion(9, "invariant forms and recovery over GF(4) and GF(64)", 5):
        for setup in (
            cyclic_setup(2, 1, 2, 2, poly=[1, 1, 1]),
            cyclic_setup(2, 1, 6, 3, poly=[1, 1, 0, 0, 0, 0, 1]),
        ):
            rep = verify_construction(setup)
            assert rep.ok, rep.checks
            assert rep.count == len(setup.R) * setup.m == setup.B.order


def test_criterion_10_coprime_complements():
    with Criterion(10, "complements to coprime normal subgroups exist", 60) as c:
        checked = 0
        for G in default_catalog(12):
            for N in normal_subgroups(G):
                if math.gcd(N.order, G.order // N.order) == 1:
                    C = find_complement(G, N)
                    assert C is not None and is_complement(G, N, C)
                    checked += 1
        c.notes.append(f"{checked} pairs (G, N)")
