import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from doublecoset.classify import (
    DimensionReport,
    bruhat_z_term,
    dimension,
    enumerate_parameters,
    factor_pair,
    graph_z_term,
    group_dims,
    induction_stable_subset,
    intersection_dims,
    lemma_int_holds,
    reduction_data,
    stab_u_dim,
)
from doublecoset.isometry import empty_isometry, enumerate_partial_isometries, identity_isometry, parse_isometry
from doublecoset.rootsys import build_root_system
from doublecoset.weyl import generate


def _setup(kind):
    rs = build_root_system(kind)
    return rs, generate(rs)


def _subsets(r):
    return [frozenset(s) for k in range(r + 1) for s in itertools.combinations(range(r), k)]


def test_parameter_counts():
    rs, W = _setup("A1")
    full = identity_isometry(rs)
    assert [p.label() for p in enumerate_parameters(W, W, full, full)] == [("e", "e")]
    rs2, W2 = _setup("A2")
    assert len(enumerate_parameters(W2, W2, empty_isometry(rs2), empty_isometry(rs2))) == 36
    ps = enumerate_parameters(W, W, full, empty_isometry(rs))
    assert sorted(p.label() for p in ps) == [("e", "e"), ("s1", "e")]


def test_group_dims_examples():
    A1, A2 = build_root_system("A1"), build_root_system("A2")
    assert group_dims(A1, (0,), 1) == (3, 3, 0, 0)
    assert group_dims(A1, (), 1) == (2, 1, 1, 1)
    assert group_dims(A2, (0,), 2) == (6, 4, 2, 1)


def test_intersection_dims_examples():
    rs, W = _setup("A2")
    s1, s2 = W.from_word((0,)), W.from_word((1,))
    assert intersection_dims(W, (), (), s1)[1] == 2
    assert intersection_dims(W, {0}, {0}, W.identity) == (0, 2, 0)
    first, second, third = intersection_dims(W, {0}, {0}, s2)
    assert first + second == 1


def test_stab_u_dim_examples():
    rs, W = _setup("A1")
    full, empty = identity_isometry(rs), empty_isometry(rs)
    (p,) = enumerate_parameters(W, W, full, full)
    assert stab_u_dim(p, W, W, full, full) == 0
    dims = {p.label(): stab_u_dim(p, W, W, empty, empty) for p in enumerate_parameters(W, W, empty, empty)}
    assert dims[("e", "e")] == 2 and dims[("s1", "s1")] == 0


def test_dimension_examples():
    rs, W = _setup("A1")
    empty, full = empty_isometry(rs), identity_isometry(rs)
    for p in enumerate_parameters(W, W, empty, empty):
        r = dimension(p, W, W, empty, empty, 1, 1, bruhat_z_term(1), 1)
        assert r.total == (p.v1.length + 2) + (p.v2.length + 2)
    (p,) = enumerate_parameters(W, W, full, full)
    assert dimension(p, W, W, full, full, 1, 1, graph_z_term(), 0).total == 3
    assert dimension(p, W, W, full, full, 1, 1, graph_z_term(), 2).total == 5


def test_report_total_is_the_sum():
    r = DimensionReport(1, 2, 3, 4, 5, 6, 7, 8)
    assert r.total == 1 + 2 + 3 - 4 + 5 - 6 + 7 + 8
    assert r.as_dict()["total"] == r.total


def test_reduction_data_examples():
    rs, W = _setup("A2")
    full = identity_isometry(rs)
    e = W.identity
    red = reduction_data(W, W, full, full, e, e)
    assert red.A1new == red.A2new == red.C1new == red.C2new == {0, 1}
    assert red.a_new.map == {0: 0, 1: 1}
    red = reduction_data(W, W, empty_isometry(rs), full, e, e)
    assert red.A1new == red.A2new == frozenset()


def test_reduction_data_direct_sets():
    # A2 with a = id on alpha1, c = id on alpha2, w2 = s2 s1
    rs, W = _setup("A2")
    a, c = parse_isometry("id:1", rs, rs), parse_isometry("id:2", rs, rs)
    w2 = W.from_word((1, 0))
    assert W.is_min_rep(w2, {0}, {1})
    # w2(alpha2) = alpha1, w2^{-1}(alpha1) = alpha2
    assert W.act(w2, rs.simple(1)) == rs.simple(0)
    assert W.act(W.inverse(w2), rs.simple(0)) == rs.simple(1)
    red = reduction_data(W, W, a, c, W.identity, w2)
    assert red.A1new == {0} and red.A2new == {1}
    assert red.a_new.map == {0: 1}


def test_reduction_rejects_non_minimal():
    rs, W = _setup("A2")
    a, full = parse_isometry("id:1", rs, rs), identity_isometry(rs)
    with pytest.raises(ValueError):
        reduction_data(W, W, a, full, W.identity, W.from_word((1,)))


@pytest.mark.parametrize("kind", ["A1", "A2", "A1xA1", "B2", "A3", "G2"])
def test_lemma_int_exhaustive(kind):
    rs, W = _setup(kind)
    subs = _subsets(rs.rank)
    for A in subs:
        for C in subs:
            for w in W.min_reps(A, C):
                assert lemma_int_holds(W, A, C, w)


@given(st.sampled_from(["A2", "B2", "A1xA1", "G2"]), st.data())
def test_induction_stable_subset(kind, data):
    rs, W = _setup(kind)
    isos = enumerate_partial_isometries(rs, rs)
    a, c = data.draw(st.sampled_from(isos)), data.draw(st.sampled_from(isos))
    p = data.draw(st.sampled_from(enumerate_parameters(W, W, a, c)))
    u1, w1, w2, u2 = factor_pair(W, W, a, c, p.v1, p.v2)
    assert W.mul(u1, w1) == p.v1 and W.mul(w2, u2) == p.v2
    assert induction_stable_subset(W, W, a, c, p.v1, p.v2) == p.A1vv


@given(st.sampled_from(["A2", "B2", "A3"]), st.data())
def test_stab_u_dim_nonnegative(kind, data):
    rs, W = _setup(kind)
    isos = enumerate_partial_isometries(rs, rs)
    a, c = data.draw(st.sampled_from(isos)), data.draw(st.sampled_from(isos))
    for p in enumerate_parameters(W, W, a, c):
        assert stab_u_dim(p, W, W, a, c) >= 0
        assert W.is_min_rep(p.v1, p.A1vv, c.domain)
