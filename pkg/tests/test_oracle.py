import pytest
from hypothesis import given
from hypothesis import strategies as st

from doublecoset.isometry import enumerate_partial_isometries, parse_isometry
from doublecoset.oracle.cosets import double_cosets, flag_orbits, orbit_partition
from doublecoset.oracle.groups import GroupError, RepSection, build_group, standard_subgroups
from doublecoset.oracle.lie import class_dim_commutant, orbit_dim, z_term
from doublecoset.oracle.pairs import (
    GraphError,
    ProductGroup,
    all_pairs,
    find_thetas,
    graph_of,
    make_pair,
    quintuple_of,
    verify_property_lemma,
)
from doublecoset.oracle.scenario import Scenario, bruhat_scenario, make_scenario
from doublecoset.oracle.verify import (
    stabilizer,
    verify_flag_orbits,
    verify_induction,
    verify_induction_step,
    verify_main1,
    verify_main2,
    verify_main2_point,
)
from doublecoset.weyl import generate

from independent import conjugacy_class_count, sl2


@pytest.mark.parametrize("name,order", [("SL2/F2", 6), ("SL2/F3", 24), ("SL3/F2", 168), ("GL2/F2", 6), ("GL2/F3", 48)])
def test_group_orders(name, order):
    assert build_group(name).order == order


def test_rejects_unsupported_groups():
    with pytest.raises(GroupError):
        build_group("SL4/F2")
    with pytest.raises(GroupError):
        build_group("SL2/F5")


def test_table_is_a_group():
    G = build_group("SL2/F3")
    e = G.identity
    for x in range(G.order):
        assert G.mul(x, int(G.inv[x])) == e
    assert G.is_subgroup(G.elements)


def test_standard_subgroups():
    G = build_group("SL2/F3")
    B = standard_subgroups(G, ())
    assert len(B.P) == 6 and len(B.M) == 2 and len(B.U) == 3 and len(B.Z) == 2
    assert standard_subgroups(G, (0,)).P == G.elements
    S = standard_subgroups(build_group("SL3/F2"), (0,))
    assert len(S.U) == 4 and len(S.M) == 6 and len(S.P) == 24
    H = build_group("GL2/F3")
    assert len(standard_subgroups(H, (0,)).Z) == 2


def test_graph_subgroups():
    G = build_group("SL2/F3")
    GG = ProductGroup(G, G)
    full = parse_isometry("full-id", G.rs, G.rs)
    diag = make_pair(GG, full, "graph")
    assert len(diag.K) == 24 and diag.R == diag.K
    assert len(make_pair(GG, full, "center").K) == 48
    empty = parse_isometry("empty", G.rs, G.rs)
    torus = make_pair(GG, empty, "graph")
    assert len(torus.K) == 2
    HH = make_pair(GG, empty, "center")
    B = standard_subgroups(G, ()).P
    assert HH.K == GG.pairs(standard_subgroups(G, ()).M, standard_subgroups(G, ()).M)
    assert HH.R == GG.pairs(B, B)


def test_product_cap():
    with pytest.raises(GroupError):
        big = build_group("SL3/F2")
        from doublecoset.oracle import groups

        old = groups.PAIR_CAP
        try:
            import doublecoset.oracle.pairs as pairs

            pairs.PAIR_CAP = 100
            ProductGroup(big, big)
        finally:
            pairs.PAIR_CAP = old


def test_no_graph_for_unrealizable_map():
    # a transposition of the two A2 nodes is realized; check the returned map works
    G = build_group("SL3/F2")
    swap = parse_isometry("1>2,2>1", G.rs, G.rs)
    assert find_thetas(G, G, swap)
    with pytest.raises(GraphError):
        make_pair(ProductGroup(G, G), swap, "unknown")


@pytest.mark.parametrize("name", ["SL2/F3", "GL2/F3", "SL3/F2"])
def test_radical_meets_levi_in_K(name):
    G = build_group(name)
    GG = ProductGroup(G, G)
    for a in enumerate_partial_isometries(G.rs, G.rs):
        M1, M2 = standard_subgroups(G, a.domain).M, standard_subgroups(G, a.range).M
        for pd in all_pairs(GG, a):
            assert pd.R & GG.pairs(M1, M2) == pd.K
            assert graph_of(GG, quintuple_of(GG, pd.K)) == pd.K


def test_property_lemma_sl3():
    G = build_group("SL3/F2")
    GG = ProductGroup(G, G)
    full = parse_isometry("full-id", G.rs, G.rs)
    for pd in all_pairs(GG, full):
        for D1 in [(), (0,), (1,), (0, 1)]:
            assert verify_property_lemma(GG, full, pd.K, pd.R, D1)["pass"]


def test_orbit_partition_components():
    p = orbit_partition(5, [[1, 0, 2, 4, 3]])
    assert p.count == 3 and sorted(p.sizes().tolist()) == [1, 2, 2]


def test_whole_group_has_one_class():
    G = build_group("SL2/F2")
    GG = ProductGroup(G, G)
    everything = frozenset(range(GG.order))
    assert double_cosets(GG, everything, everything).count == 1
    part, _ = flag_orbits(GG, everything, (), ())
    assert part.count == 1


def test_diagonal_classes_are_conjugacy_classes(diag_sl2f3):
    count = conjugacy_class_count(sl2(3), 3)
    assert count == 7
    assert diag_sl2f3.classes.count == count
    assert verify_main1(diag_sl2f3)["pass"]


def test_bruhat_has_four_classes(bruhat_sl2f3):
    assert bruhat_sl2f3.classes.count == 4
    for p in bruhat_sl2f3.parameters:
        tw = bruhat_sl2f3.twisted(p)
        assert len(tw.z_reps) * tw.orbits.count == 1


def test_full_example_has_trivial_Z():
    # eta2(K) = M_A2 forces Z(v1, v2) = {e}
    for name in ["SL3/F2", "GL2/F3"]:
        for c in ["empty", "id:1"]:
            sc = make_scenario(name, a="full-id", c=c, L="center")
            for p in sc.parameters:
                assert sc.twisted(p).z_reps == [sc.G2.identity]


def test_mixed_census():
    sc = make_scenario("SL3/F2", a="empty", c="id:1")
    r = verify_main1(sc)
    assert r["pass"] and r["brute_count"] == r["parametrized_count"]


def test_main2_examples(diag_sl2f3, bruhat_sl2f3):
    sc = diag_sl2f3
    G = sc.G1
    (p,) = sc.parameters
    stab = stabilizer(sc, G.identity, G.identity)
    assert stab == sc.K
    assert verify_main2_point(sc, p, G.identity, G.identity)["pass"]
    sc = bruhat_sl2f3
    U = standard_subgroups(sc.G1, ()).U
    for p in sc.parameters:
        tw = sc.twisted(p)
        stab = stabilizer(sc, tw.v1dot, tw.v2dot)
        stab_u = stab & sc.GG.pairs(U, U)
        assert len(stab_u) == 3 ** (2 - p.v1.length - p.v2.length)


def test_main2_everywhere(diag_sl2f3, bruhat_sl2f3, mixed_sl3f2):
    for sc in (diag_sl2f3, bruhat_sl2f3, mixed_sl3f2):
        assert verify_main2(sc)["pass"]


def test_induction(bruhat_sl2f3, diag_sl2f3, mixed_sl3f2):
    sc = bruhat_sl2f3
    for w1 in sc.W1.elements:
        for w2 in sc.W2.elements:
            r = verify_induction_step(sc, w1, w2)
            assert r["pass"] and len(r["classes"]) == 1
    for sc in (diag_sl2f3, mixed_sl3f2):
        assert verify_induction(sc)["pass"]


def test_flag_orbits(bruhat_sl2f3, diag_sl2f3):
    r = verify_flag_orbits(bruhat_sl2f3, (), ())
    assert r["pass"] and r["orbits"] == 4
    r = verify_flag_orbits(diag_sl2f3, (), ())
    assert r["pass"] and r["orbits"] == r["formula"] == 2


def test_sections_differ_only_when_minus_one_is_not_one():
    for name, differ in [("SL2/F3", True), ("SL2/F2", False), ("SL3/F2", False)]:
        G = build_group(name)
        W = generate(G.rs)
        std, alt = RepSection(G, W), RepSection(G, W, "alternative")
        assert any(std(w) != alt(w) for w in W.elements) == differ


@pytest.mark.parametrize("variant", ["standard", "alternative"])
def test_sections_normalize_the_torus(variant):
    G = build_group("SL3/F2") if variant == "standard" else build_group("SL2/F3")
    W = generate(G.rs)
    reps = RepSection(G, W, variant)
    for w in W.elements:
        x = reps(w)
        for alpha in G.rs.roots:
            assert G.conj_set(x, G.root_group(alpha)) == G.root_group(W.act(w, alpha))


def test_lie_dimensions(diag_sl2f3, bruhat_sl2f3):
    G = diag_sl2f3.G1
    (p,) = diag_sl2f3.parameters
    assert class_dim_commutant(G, G.identity) == 0
    assert z_term(diag_sl2f3, p) == 0
    for m in diag_sl2f3.twisted(p).orbit_reps():
        assert orbit_dim(diag_sl2f3, p, m) == class_dim_commutant(G, m)
    for p in bruhat_sl2f3.parameters:
        assert z_term(bruhat_sl2f3, p) == 1


_SMALL = ["SL2/F2", "SL2/F3", "GL2/F3"]


@given(st.sampled_from(_SMALL), st.data())
def test_random_scenarios_agree(name, data):
    G = build_group(name)
    GG = ProductGroup(G, G)
    isos = enumerate_partial_isometries(G.rs, G.rs)
    a, c = data.draw(st.sampled_from(isos)), data.draw(st.sampled_from(isos))
    Kp = data.draw(st.sampled_from(all_pairs(GG, a)))
    Lp = data.draw(st.sampled_from(all_pairs(GG, c)))
    section = data.draw(st.sampled_from(["standard", "alternative"]))
    sc = Scenario(G, G, Kp, Lp, section)
    assert verify_main1(sc)["pass"]
    assert verify_main2(sc)["pass"]
    assert verify_induction(sc)["pass"]
    assert verify_flag_orbits(sc, (), ())["pass"]
