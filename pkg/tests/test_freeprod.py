import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import all_maps_homs, klein, s3
from galfree.catalog import default_catalog
from galfree.embed import check_extension_property
from galfree.errors import EqualWords, MarksNotPGroups
from galfree.groups import (
    Homomorphism,
    are_isomorphic,
    closure,
    cyclic,
    is_prime_power,
    normal_subgroups,
)
from galfree.homs import automorphisms, enumerate_homomorphisms
from galfree.freeprod import (
    FreeProductContext,
    MarkedQuotient,
    ReducedWord,
    enumerate_quotients,
    evaluate,
    format_word,
    is_reduced,
    joint_image,
    level_quotient,
    marked_equivalence,
    max_p_quotient,
    p_residual,
    reduce_word,
    separate,
    sylow_retraction,
    word,
    word_inverse,
    word_multiply,
)

C2 = cyclic(2)
C3 = cyclic(3)
DIHEDRAL = FreeProductContext([C2, C2])
MODULAR = FreeProductContext([C2, C3])
S, T = (0, 1), (1, 1)


def alternating(first, n):
    out, cur = [], first
    for _ in range(n):
        out.append(cur)
        cur = T if cur == S else S
    return word(DIHEDRAL, *out)


def test_word_examples():
    w = word(DIHEDRAL, S, T, S)
    assert len(w) == 3 and is_reduced(DIHEDRAL, w)
    assert word_multiply(DIHEDRAL, w, word_inverse(DIHEDRAL, w)) == ReducedWord()
    assert word_multiply(DIHEDRAL, word(DIHEDRAL, S), word(DIHEDRAL, S)) == ReducedWord()
    assert reduce_word(DIHEDRAL, [S, S, T]) == word(DIHEDRAL, T)
    assert format_word(ReducedWord()) == "e"
    assert format_word(w, [["", "s"], ["", "t"]]) == "sts"
    with pytest.raises(ValueError):
        reduce_word(DIHEDRAL, [(0, 2)])


def test_evaluate_examples():
    H = C2
    eta1 = Homomorphism(C2, H, [0, 1])
    eta2 = Homomorphism(C2, H, [0, 0])
    assert evaluate(DIHEDRAL, ReducedWord(), [eta1, eta2]) == H.identity
    assert evaluate(DIHEDRAL, word(DIHEDRAL, S), [eta1, eta2]) == 1
    assert evaluate(DIHEDRAL, alternating(S, 3), [eta1, eta2]) == 0
    assert evaluate(DIHEDRAL, alternating(T, 3), [eta1, eta2]) == 1


syllable = st.tuples(st.integers(0, 1), st.integers(0, 2)).map(lambda p: (p[0], p[1] % (2 if p[0] == 0 else 3)))
raw_word = st.lists(syllable, max_size=8).map(lambda s: reduce_word(MODULAR, s))


@settings(max_examples=150, deadline=None)
@given(raw_word, raw_word, raw_word)
def test_word_multiplication_is_associative(a, b, c):
    m = word_multiply
    assert m(MODULAR, m(MODULAR, a, b), c) == m(MODULAR, a, m(MODULAR, b, c))


@settings(max_examples=150, deadline=None)
@given(raw_word, raw_word)
def test_products_stay_reduced_and_inverses_cancel(a, b):
    p = word_multiply(MODULAR, a, b)
    assert is_reduced(MODULAR, p)
    assert p == reduce_word(MODULAR, a.syllables + b.syllables)
    assert word_multiply(MODULAR, a, word_inverse(MODULAR, a)) == ReducedWord()


S3, IDX = s3()
MODULAR_HOMS = [
    (e1, e2)
    for e1 in enumerate_homomorphisms(C2, S3)
    for e2 in enumerate_homomorphisms(C3, S3)
]


@settings(max_examples=150, deadline=None)
@given(raw_word, raw_word, st.sampled_from(MODULAR_HOMS))
def test_evaluation_is_a_homomorphism(a, b, etas):
    lhs = evaluate(MODULAR, word_multiply(MODULAR, a, b), etas)
    assert lhs == S3.mul(evaluate(MODULAR, a, etas), evaluate(MODULAR, b, etas))


def test_joint_image_examples():
    triv = Homomorphism(C2, S3, [0, 0])
    assert joint_image(DIHEDRAL, [triv, triv]).Q.order == 1
    t1 = Homomorphism(C2, S3, [0, IDX[(1, 0, 2)]])
    t2 = Homomorphism(C2, S3, [0, IDX[(2, 1, 0)]])
    assert joint_image(DIHEDRAL, [t1, t2]).Q.order == 6
    V = klein()
    u, v = Homomorphism(C2, V, [0, 2]), Homomorphism(C2, V, [0, 1])
    assert are_isomorphic(joint_image(DIHEDRAL, [u, v]).Q, V) is not None


def test_quotients_bound_two():
    classes = enumerate_quotients(DIHEDRAL, default_catalog(2))
    assert sorted((mq.Q.order, tuple(e.map for e in mq.etas)) for mq in classes) == [
        (1, ((0, 0), (0, 0))),
        (2, ((0, 0), (0, 1))),
        (2, ((0, 1), (0, 0))),
        (2, ((0, 1), (0, 1))),
    ]


def test_quotients_bound_eight_types():
    classes = enumerate_quotients(DIHEDRAL, default_catalog(8))
    assert list(dict.fromkeys(mq.Q.label for mq in classes)) == ["C1", "C2", "C2xC2", "S3", "D4"]


def test_single_factor_quotients():
    ctx = FreeProductContext([C2])
    for bound in (2, 6):
        assert [mq.Q.order for mq in enumerate_quotients(ctx, default_catalog(bound))] == [1, 2]


@pytest.mark.parametrize("ctx", [DIHEDRAL, MODULAR], ids=["C2*C2", "C2*C3"])
def test_class_counts_against_orbit_oracle(ctx):
    cat = default_catalog(6)
    classes = enumerate_quotients(ctx, cat)
    for H in cat:
        homsets = [all_maps_homs(G, H) for G in ctx.factors]
        surj = sum(
            1 for maps in itertools.product(*homsets) if len(closure(H, (x for m in maps for x in m))) == H.order
        )
        # Aut(H) acts freely on generating tuples
        assert surj % len(automorphisms(H)) == 0
        assert sum(1 for mq in classes if mq.Q is H) == surj // len(automorphisms(H))


def test_classes_pairwise_inequivalent():
    classes = enumerate_quotients(DIHEDRAL, default_catalog(8))
    for a, b in itertools.combinations(classes, 2):
        assert marked_equivalence(a, b) is None
    for a in classes:
        assert marked_equivalence(a, a) is not None


def test_separation_examples():
    cat = default_catalog(8)
    wit = separate(DIHEDRAL, word(DIHEDRAL, S), word(DIHEDRAL, T), cat)
    assert wit.H.order == 2 and wit.values[0] != wit.values[1]
    wit = separate(DIHEDRAL, alternating(S, 3), alternating(T, 3), cat)
    assert wit.H.order == 2 and set(wit.values) == {0, 1}
    a, b = alternating(S, 4), alternating(T, 4)
    assert separate(DIHEDRAL, a, b, default_catalog(4)) is None
    wit = separate(DIHEDRAL, a, b, default_catalog(6))
    assert wit.H.label == "S3"
    assert all(e.image().order == 2 for e in wit.etas)
    assert {wit.H.element_orders[x] for x in wit.values} == {3}
    with pytest.raises(EqualWords):
        separate(DIHEDRAL, a, a, cat)


def test_level_quotient_small_bounds():
    assert level_quotient(DIHEDRAL, default_catalog(1)).Q.order == 1
    q2 = level_quotient(DIHEDRAL, default_catalog(2))
    assert are_isomorphic(q2.Q, klein()) is not None
    assert check_extension_property(q2.marked_group(), default_catalog(2)).passed


def test_level_quotient_bound_six_is_universal():
    q6 = level_quotient(DIHEDRAL, default_catalog(6))
    assert q6.Q.order == 12
    assert are_isomorphic(q6.Q, default_catalog().by_label("D6")) is not None
    rep = check_extension_property(q6.marked_group(), default_catalog(6))
    assert rep.passed and rep.tuples_checked > 0


def _residual_oracle(Q, p):
    keep = [N for N in normal_subgroups(Q) if is_prime_power(Q.order // N.order, p)]
    return min(keep, key=lambda N: N.order)


@pytest.mark.parametrize("G", list(default_catalog(12)), ids=lambda G: G.label)
@pytest.mark.parametrize("p", [2, 3])
def test_p_residual_against_normal_subgroup_scan(G, p):
    N = p_residual(G, p)
    want = _residual_oracle(G, p)
    assert N == want
    keep = [M for M in normal_subgroups(G) if is_prime_power(G.order // M.order, p)]
    assert all(N <= M for M in keep)


def test_max_p_quotient_examples():
    R, alpha = max_p_quotient(C2, 2)
    assert R.order == 2 and alpha.is_mono
    assert max_p_quotient(S3, 2)[0].order == 2
    assert max_p_quotient(S3, 3)[0].order == 1


def _s3_marked():
    t12 = Homomorphism(C2, S3, [0, IDX[(1, 0, 2)]])
    t13 = Homomorphism(C2, S3, [0, IDX[(2, 1, 0)]])
    return MarkedQuotient(S3, [t12, t13])


def test_retraction_on_s3():
    ret = sylow_retraction(_s3_marked(), 2)
    assert ret.ok and ret.R.order == 2
    assert ret.P.order == 2 and IDX[(1, 0, 2)] in ret.P
    c1, c2 = ret.conjugators
    assert c1 == S3.identity
    assert S3.element_orders[c2] == 3
    assert ret.alpha.map[c2] == ret.R.identity
    assert ret.section is not None and ret.section.is_mono


def test_retraction_on_p_groups():
    for mq in enumerate_quotients(DIHEDRAL, default_catalog(8)):
        if not is_prime_power(mq.Q.order, 2) and mq.Q.order != 1:
            continue
        ret = sylow_retraction(mq, 2)
        assert ret.ok and ret.P.order == mq.Q.order
        assert set(ret.conjugators) == {mq.Q.identity}


def test_retraction_needs_p_marks():
    mq = MarkedQuotient(C3, [Homomorphism(C2, C3, [0, 0]), Homomorphism(C3, C3, [0, 1, 2])])
    with pytest.raises(MarksNotPGroups):
        sylow_retraction(mq, 2)


def test_marked_quotient_must_be_generated():
    with pytest.raises(ValueError):
        MarkedQuotient(S3, [Homomorphism(C2, S3, [0, IDX[(1, 0, 2)]])])


def test_quotient_of_quotient_consistency():
    # every class at bound 6 maps onto a class at bound 2 via a quotient of Q
    small = enumerate_quotients(DIHEDRAL, default_catalog(2))
    for mq in enumerate_quotients(DIHEDRAL, default_catalog(6)):
        R, alpha = max_p_quotient(mq.Q, 2)
        img = MarkedQuotient(R, [e.then(alpha) for e in mq.etas]) if R.order <= 2 else None
        if img is not None:
            assert any(marked_equivalence(img, c) is not None for c in small)
