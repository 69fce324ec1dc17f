import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import brute_isomorphic, brute_subgroups, klein, s3, sign_map
from galfree.catalog import default_catalog
from galfree.errors import DomainMismatch, NotABijection, NotAGroup, NotAHomomorphism, NotNormal, OrderLimitExceeded
from galfree.groups import (
    Homomorphism,
    Subgroup,
    are_isomorphic,
    build_from_permutations,
    build_from_table,
    closure,
    compose,
    conjugation_map,
    cyclic,
    direct_product,
    identity_map,
    minimal_generating_set,
    normal_subgroups,
    quotient,
    restrict,
    subgroup_generated,
    subgroups,
    sylow,
    trivial_map,
)

CAT = default_catalog(8)


def test_trivial_and_c2_tables():
    G = build_from_table([[0]])
    assert G.order == 1 and G.identity == 0
    C2 = build_from_table([[0, 1], [1, 0]])
    assert C2.order == 2 and list(C2.inv) == [0, 1]


def test_nonassociative_latin_square_reports_triple():
    table = [[0, 1, 2], [1, 0, 0], [2, 2, 1]]
    with pytest.raises(NotAGroup):
        build_from_table(table)
    # a genuine Latin square whose only failure is associativity
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroup) as exc:
        build_from_table(loop)
    a, b, c = exc.value.witness
    assert loop[loop[a][b]][c] != loop[a][loop[b][c]]


@pytest.mark.parametrize(
    "table",
    [[[0, 1], [1, 1]], [[0, 1, 2], [1, 2]], [[0, 5], [5, 0]], [[1, 0], [0, 0]]],
)
def test_malformed_tables_rejected(table):
    with pytest.raises(NotAGroup):
        build_from_table(table)


def test_permutation_groups():
    assert build_from_permutations(3, [])[0].order == 1
    assert build_from_permutations(2, [[1, 0]])[0].order == 2
    S, act = build_from_permutations(3, [[1, 0, 2], [1, 2, 0]])
    assert S.order == 6
    assert sorted(act) == sorted(itertools.permutations(range(3)))


def test_permutation_errors():
    with pytest.raises(NotABijection):
        build_from_permutations(3, [[0, 0, 1]])
    with pytest.raises(OrderLimitExceeded):
        build_from_permutations(5, [[1, 0, 2, 3, 4], [1, 2, 3, 4, 0]], cap=100)


def test_closure_examples():
    S, idx = s3()
    assert closure(S, []) == {S.identity}
    assert len(closure(S, [idx[(1, 2, 0)]])) == 3
    assert closure(S, range(6)) == set(range(6))


def test_quotient_examples():
    S, idx = s3()
    Q, proj = quotient(S, S.trivial_subgroup())
    assert Q.order == 6 and are_isomorphic(Q, S) is not None
    assert quotient(S, S.whole())[0].order == 1
    A3 = subgroup_generated(S, [idx[(1, 2, 0)]])
    Q2, proj2 = quotient(S, A3)
    assert Q2.order == 2 and proj2.kernel() == A3


def test_quotient_by_non_normal_has_witness():
    S, idx = s3()
    T = subgroup_generated(S, [idx[(1, 0, 2)]])
    with pytest.raises(NotNormal) as exc:
        quotient(S, T)
    a = exc.value.witness
    assert T.conjugate(a) != T


@pytest.mark.parametrize("G", list(CAT), ids=lambda G: G.label)
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_sylow_against_subset_oracle(G, p):
    k = 0
    while G.order % p ** (k + 1) == 0:
        k += 1
    found = {frozenset(P.elements) for P in sylow(G, p)}
    assert found == set(brute_subgroups(G, p**k))


def test_sylow_examples():
    assert len(sylow(cyclic(2), 2)) == 1
    S, _ = s3()
    assert [P.order for P in sylow(S, 3)] == [3]
    assert [P.order for P in sylow(S, 2)] == [2, 2, 2]
    with pytest.raises(ValueError):
        sylow(S, 4)


def test_homomorphism_examples():
    S, idx = s3()
    h = identity_map(S)
    assert h.kernel().order == 1 and h.image() == S.whole() and h.is_epi and h.is_mono
    sgn = sign_map(S, idx)
    assert sgn.kernel().order == 3
    assert conjugation_map(S, S.identity) == h


def test_not_a_homomorphism_and_domain_mismatch():
    S, _ = s3()
    with pytest.raises(NotAHomomorphism):
        Homomorphism(S, cyclic(2), [0, 1, 1, 1, 1, 1])
    with pytest.raises(DomainMismatch):
        compose(identity_map(cyclic(2)), identity_map(S))


def test_isomorphism_examples():
    S, _ = s3()
    assert are_isomorphic(S, S) is not None
    assert are_isomorphic(cyclic(4), klein()) is None
    # S3 from its regular Cayley table written with shuffled labels
    perm = [3, 5, 0, 1, 4, 2]
    inv = [perm.index(k) for k in range(6)]
    table = [[perm[S.mul(inv[a], inv[b])] for b in range(6)] for a in range(6)]
    T = build_from_table(table)
    iso = are_isomorphic(S, T)
    assert iso is not None and iso.is_epi and iso.is_mono


@pytest.mark.parametrize("pair", list(itertools.combinations_with_replacement(default_catalog(6).groups, 2)))
def test_isomorphism_against_bijection_oracle(pair):
    G, H = pair
    assert (are_isomorphic(G, H) is not None) == brute_isomorphic(G, H)


@pytest.mark.parametrize("G", list(default_catalog(12)), ids=lambda G: G.label)
def test_minimal_generating_set_generates(G):
    gens = minimal_generating_set(G)
    assert closure(G, gens) == set(range(G.order))
    if G.order > 1 and not G.is_abelian:
        assert len(gens) >= 2


def test_subgroup_lattice_against_oracle():
    for G in CAT:
        got = {frozenset(S.elements) for S in subgroups(G)}
        want = {S for d in range(1, G.order + 1) if G.order % d == 0 for S in brute_subgroups(G, d)}
        assert got == want
        for N in normal_subgroups(G):
            assert all(G.conj(n, a) in N for n in N for a in range(G.order))


def test_subgroup_rejects_non_closed_set():
    S, _ = s3()
    with pytest.raises(NotAGroup):
        Subgroup(S, [0, 1, 2])


def test_restrict_and_trivial_map():
    S, idx = s3()
    A3 = subgroup_generated(S, [idx[(1, 2, 0)]])
    r = restrict(sign_map(S, idx), A3)
    assert set(r.map) == {0}
    assert trivial_map(S, cyclic(3)).kernel() == S.whole()


group_strategy = st.sampled_from(list(default_catalog(8)))


@settings(max_examples=60, deadline=None)
@given(group_strategy, st.data())
def test_right_conjugation_is_a_right_action(G, data):
    g, a, b = (data.draw(st.integers(0, G.order - 1)) for _ in range(3))
    assert G.conj(G.conj(g, a), b) == G.conj(g, G.mul(a, b))
    assert G.conj(g, a) == G.mul(G.mul(G.inv[a], g), a)


@settings(max_examples=40, deadline=None)
@given(group_strategy, group_strategy)
def test_direct_product_is_a_group_of_product_order(G, H):
    P = direct_product(G, H)
    assert P.order == G.order * H.order
    assert build_from_table(P.table.tolist()).order == P.order


@settings(max_examples=40, deadline=None)
@given(group_strategy, st.data())
def test_quotient_order_and_projection(G, data):
    N = data.draw(st.sampled_from(normal_subgroups(G)))
    Q, proj = quotient(G, N)
    assert Q.order * N.order == G.order
    assert proj.is_epi and proj.kernel() == N


def test_table_is_read_only():
    G = cyclic(3)
    with pytest.raises(ValueError):
        G.table[0, 0] = 1
    assert isinstance(G.table, np.ndarray)
