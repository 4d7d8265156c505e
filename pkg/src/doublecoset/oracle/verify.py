"""Brute-force checks of the parametrization against enumerated double cosets."""

from __future__ import annotations

import math

import numpy as np

from doublecoset.classify import reduction_data, stab_u_dim
from doublecoset.oracle.cosets import flag_orbits, orbit_partition
from doublecoset.oracle.groups import standard_subgroups
from doublecoset.oracle.pairs import GraphError, check_graph_condition, small_generators
from doublecoset.oracle.scenario import Scenario


def parametrized_count(sc: Scenario) -> int:
    total = 0
    for p in sc.parameters:
        tw = sc.twisted(p)
        total += len(tw.z_reps) * tw.orbits.count
    return total


def normal_form_points(sc: Scenario):
    """Yield ``(param, orbit, s, point)`` for every ``(m1 v1, v2 s)`` in the normal form."""
    G1, G2, GG = sc.G1, sc.G2, sc.GG
    for p in sc.parameters:
        tw = sc.twisted(p)
        for m1, orb in zip(tw.points, tw.orbits.labels.tolist()):
            for s in tw.z_reps:
                yield p, orb, s, GG.enc(G1.mul(m1, tw.v1dot), G2.mul(tw.v2dot, s))


def verify_main1(sc: Scenario) -> dict:
    """Every class has the normal form, and two normal forms agree exactly when the data agree."""
    part = sc.classes
    labels = part.labels
    seen: dict = {}
    consistent = True
    for p, orb, s, pt in normal_form_points(sc):
        key = (p.label(), orb, s)
        lab = int(labels[pt])
        if seen.setdefault(key, lab) != lab:
            consistent = False
    hit = list(seen.values())
    injective = len(set(hit)) == len(hit)
    covered = set(hit) == set(range(part.count))
    count = parametrized_count(sc)
    return {
        "brute_count": part.count,
        "parametrized_count": count,
        "consistent": consistent,
        "injective": injective,
        "covered": covered,
        "pass": consistent and injective and covered and count == part.count,
    }


def stabilizer(sc: Scenario, g1, g2) -> frozenset:
    """``{(p1, p2) : (p1, g2 p2 g2^-1) ∈ R_A, (g1^-1 p1 g1, p2) ∈ R_C}``."""
    GG, G1, G2 = sc.GG, sc.G1, sc.G2
    left = GG.conj_set(GG.enc(G1.identity, int(G2.inv[g2])), sc.RA)
    return left & GG.conj_set(GG.enc(g1, G2.identity), sc.RC)


def _orbit_size_check(sc: Scenario, pt, stab) -> bool:
    size = int(sc.classes.sizes()[sc.classes.labels[pt]])
    return size * len(stab) == len(sc.RA) * len(sc.RC)


def verify_main2_point(sc: Scenario, param, m1, s2) -> dict:
    """Decomposition of the stabilizer of ``(m1 v1, v2 s2)`` into Levi and unipotent parts."""
    G1, G2, GG = sc.G1, sc.G2, sc.GG
    tw = sc.twisted(param)
    g1, g2 = G1.mul(m1, tw.v1dot), G2.mul(tw.v2dot, s2)
    stab = stabilizer(sc, g1, g2)
    mbox = GG.pairs(tw.M1, tw.M2)
    stab_m = stab & mbox
    # Levi part by its two closed forms
    e1, e2 = G1.identity, G2.identity
    adK = GG.conj_set(GG.enc(e1, int(G2.inv[tw.v2dot])), sc.K)
    adL = GG.conj_set(GG.enc(g1, e2), sc.L)
    form_b = mbox & adK & adL
    form_a = tw.Kv & GG.conj_set(GG.enc(m1, e2), tw.Lv)
    # unipotent part
    S1, S2 = standard_subgroups(G1, param.A1vv), standard_subgroups(G2, param.C2vv)
    B1, B2 = standard_subgroups(G1, ()).U, standard_subgroups(G2, ()).U
    ubox = GG.pairs(S1.U & G1.conj_set(tw.v1dot, B1), S2.U & G2.conj_set(int(G2.inv[tw.v2dot]), B2))
    stab_u = stab & ubox
    res = {
        "levi_forms": stab_m == form_a == form_b,
        "product": GG.set_mul(stab_m, stab_u) == stab and len(stab) == len(stab_m) * len(stab_u),
        "trivial_meet": stab_m & stab_u == {GG.identity},
        "normalizes": all(GG.conj_set(x, stab_u) == stab_u for x in small_generators(GG, stab_m)),
        "unipotent_order": len(stab_u) == G1.q ** stab_u_dim(param, sc.W1, sc.W2, sc.a, sc.c),
        "class_size": _orbit_size_check(sc, GG.enc(g1, g2), stab),
    }
    # central extension of the stabilizer in J
    Jm = frozenset(
        j for j in tw.J
        if G1.mul(sc.GG1.dec(j)[0], m1, int(G1.inv[sc.GG1.dec(j)[1]])) == m1
    )
    m1i = int(G1.inv[m1])
    image = frozenset(sc.GG1.enc(k1, G1.mul(m1i, k1, m1)) for k1, _ in map(GG.dec, stab_m))
    kernel = frozenset(p for p in stab_m if p // GG.N2 == e1)
    res["extension"] = (
        image == Jm
        and len(stab_m) == len(kernel) * len(Jm)
        and GG.second(kernel) <= tw.Z2
    )
    res["pass"] = all(res.values())
    return res


def verify_main2(sc: Scenario, limit=None) -> dict:
    """Run the stabilizer checks over every ``m1 ∈ M_A1(v)`` and ``s2 ∈ Z_C2(v)``."""
    failures, checked = [], 0
    for p in sc.parameters:
        tw = sc.twisted(p)
        for m1 in tw.points:
            for s2 in sorted(tw.Z2):
                r = verify_main2_point(sc, p, m1, s2)
                checked += 1
                if not r["pass"]:
                    failures.append((p.label(), m1, s2, {k: v for k, v in r.items() if not v}))
                if limit is not None and checked >= limit:
                    break
    return {"checked": checked, "failures": failures, "pass": not failures and checked > 0}


# -- the reduction to Levi factors -----------------------------------------------------


def levi_level_pairs(sc: Scenario, w1, w2):
    """``R^new_A`` and ``R^new_C`` inside ``M_A1 x M_C2`` for the block of ``(w1, w2)``."""
    G1, G2, GG = sc.G1, sc.G2, sc.GG
    red = reduction_data(sc.W1, sc.W2, sc.a, sc.c, w1, w2)
    w1d, w2d = sc.reps1(w1), sc.reps2(w2)
    std1, std2 = standard_subgroups, standard_subgroups
    MA1 = std1(G1, sc.a.domain).M
    MC2 = std2(G2, sc.c.range).M
    Knew = GG.pairs(std1(G1, red.A1new).M, std2(G2, red.A2new).M) & GG.conj_set(
        GG.enc(G1.identity, int(G2.inv[w2d])), sc.K
    )
    Lnew = GG.pairs(std1(G1, red.C1new).M, std2(G2, red.C2new).M) & GG.conj_set(
        GG.enc(w1d, G2.identity), sc.L
    )
    check_graph_condition(GG, red.a_new, Knew)
    check_graph_condition(GG, red.c_new, Lnew)
    RAn = GG.set_mul(Knew, GG.pairs(std1(G1, red.A1new).U & MA1, std2(G2, red.A2new).U & MC2))
    RCn = GG.set_mul(Lnew, GG.pairs(std1(G1, red.C1new).U & MA1, std2(G2, red.C2new).U & MC2))
    if not (GG.is_subgroup(RAn) and GG.is_subgroup(RCn)):
        raise GraphError("Levi-level groups are not subgroups")
    return red, MA1, MC2, RAn, RCn


def verify_induction_step(sc: Scenario, w1, w2) -> dict:
    """Classes meeting ``M_A1 w1 x w2 M_C2`` match the Levi-level double cosets."""
    G1, G2, GG = sc.G1, sc.G2, sc.GG
    red, MA1, MC2, RAn, RCn = levi_level_pairs(sc, w1, w2)
    w1d, w2d = sc.reps1(w1), sc.reps2(w2)
    pts = sorted(GG.pairs(MA1, MC2))
    pos = {x: i for i, x in enumerate(pts)}
    arr = np.array(pts, dtype=np.int64)
    images = []
    for r in small_generators(GG, RAn):
        images.append([pos[x] for x in GG.mul_arr(np.full_like(arr, r), arr).tolist()])
    for r in small_generators(GG, RCn):
        images.append([pos[x] for x in GG.mul_arr(arr, np.full_like(arr, r)).tolist()])
    local = orbit_partition(len(pts), images)
    brute = sc.classes.labels
    lab = [int(brute[GG.enc(G1.mul(m, w1d), G2.mul(w2d, mm))]) for m, mm in map(GG.dec, pts)]
    fwd, back = {}, {}
    ok = True
    for l_new, l_old in zip(local.labels.tolist(), lab):
        ok &= fwd.setdefault(l_new, l_old) == l_old
        ok &= back.setdefault(l_old, l_new) == l_new
    return {"levi_classes": local.count, "classes": set(lab), "pass": bool(ok)}


def verify_induction(sc: Scenario) -> dict:
    """The strata over ``(w1, w2)`` are disjoint, cover all classes and each matches its Levi level."""
    A1, C1, A2, C2 = sc.a.domain, sc.c.domain, sc.a.range, sc.c.range
    union, disjoint, steps = set(), True, []
    for w1 in sc.W1.min_reps(A1, C1):
        for w2 in sc.W2.min_reps(A2, C2):
            r = verify_induction_step(sc, w1, w2)
            disjoint &= not (union & r["classes"])
            union |= r["classes"]
            steps.append(((w1.word_str(), w2.word_str()), r["levi_classes"], r["pass"]))
    covered = union == set(range(sc.classes.count))
    return {
        "steps": steps,
        "disjoint": disjoint,
        "covered": covered,
        "pass": disjoint and covered and all(s[2] for s in steps),
    }


# -- orbits on products of flag varieties ----------------------------------------------


def flag_orbit_parameters(sc: Scenario, C1, C2):
    A1 = sc.a.domain
    out = []
    for v1 in sc.W1.min_reps(A1, C1):
        D = sc.a.image(sc.W1.simple_meet(A1, v1, C1))
        for v2 in sc.W2.min_reps(D, C2):
            out.append((v1, v2))
    return out


def verify_flag_orbits(sc: Scenario, C1, C2) -> dict:
    """``R_A``-orbits on ``G1/P_C1 x G2/P_C2`` against the ``(v1, v2)`` enumeration."""
    part, locate = flag_orbits(sc.GG, sc.RA, C1, C2)
    params = flag_orbit_parameters(sc, C1, C2)
    hit = [int(part.labels[locate(sc.reps1(v1), sc.reps2(v2))]) for v1, v2 in params]
    distinct = len(set(hit)) == len(hit)
    return {
        "orbits": part.count,
        "formula": len(params),
        "distinct": distinct,
        "pass": distinct and part.count == len(params),
    }


# -- dimensions --------------------------------------------------------------------------


def _log_q(n, q) -> int:
    k = round(math.log(n, q))
    if q**k != n:
        raise ValueError(f"{n} is not a power of {q}")
    return k


def bruhat_cell_dim(G, rep) -> int:
    """``dim B w B = dim B + dim U - dim(U ∩ w U w^-1)`` from point counts of unipotent groups."""
    U = standard_subgroups(G, ()).U
    meet = U & G.conj_set(rep, U)
    dimU = _log_q(len(U), G.q)
    return G.rankH + dimU + dimU - _log_q(len(meet), G.q)


def verify_dimension(sc: Scenario, mode: str) -> dict:
    """Compare the dimension formula with an independent count.

    ``mode="bruhat"`` compares with ``dim B v1 B + dim B v2 B``; ``mode="diagonal"``
    compares with ``dim G`` plus the conjugacy class dimension of ``g1 g2^-1``.
    """
    from doublecoset.oracle.lie import class_dim_commutant, dimension_report

    G1, G2 = sc.G1, sc.G2
    rows, ok = [], True
    for p in sc.parameters:
        tw = sc.twisted(p)
        for m1 in tw.orbit_reps():
            for s in tw.z_reps:
                g1, g2 = G1.mul(m1, tw.v1dot), G2.mul(tw.v2dot, s)
                report = dimension_report(sc, p, m1)
                if mode == "bruhat":
                    expected = bruhat_cell_dim(G1, tw.v1dot) + bruhat_cell_dim(G2, tw.v2dot)
                elif mode == "diagonal":
                    dimG = G1.n * G1.n - (1 if G1.kind == "SL" else 0)
                    expected = dimG + class_dim_commutant(G1, G1.mul(g1, int(G1.inv[g2])))
                else:
                    raise ValueError(f"unknown dimension mode {mode!r}")
                ok &= report.total == expected
                rows.append({"v": p.label(), "m1": m1, "s": s, "total": report.total, "expected": expected})
    return {"rows": rows, "pass": bool(ok and rows)}
