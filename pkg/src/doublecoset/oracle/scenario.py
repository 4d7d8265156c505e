"""A concrete pair of admissible pairs over enumerated groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from doublecoset.classify import enumerate_parameters
from doublecoset.isometry import compose_correspondences, parse_isometry
from doublecoset.oracle.cosets import Partition, double_cosets, subgroup_orbits
from doublecoset.oracle.groups import FinGroup, GroupError, RepSection, build_group, standard_subgroups
from doublecoset.oracle.pairs import PairData, ProductGroup, make_pair, find_thetas
from doublecoset.weyl import generate


@dataclass
class Twisted:
    """Levi-level data attached to one coset parameter."""

    param: object
    v1dot: int
    v2dot: int
    M1: frozenset
    M2: frozenset
    Kv: frozenset
    Lv: frozenset
    J: frozenset
    orbits: Partition
    points: list
    Z2: frozenset
    Zsub: frozenset
    z_reps: list = field(default_factory=list)

    def orbit_of(self, m1) -> int:
        return int(self.orbits.labels[self.points.index(m1)])

    def orbit_reps(self) -> list:
        seen, out = set(), []
        for m, lab in zip(self.points, self.orbits.labels.tolist()):
            if lab not in seen:
                seen.add(lab)
                out.append(m)
        return out


class Scenario:
    def __init__(self, G1: FinGroup, G2: FinGroup, K: PairData, L: PairData, section="standard"):
        self.G1, self.G2 = G1, G2
        self.GG = ProductGroup(G1, G2)
        self.GG1 = ProductGroup(G1, G1)
        self.Kp, self.Lp = K, L
        self.a, self.c = K.iso, L.iso
        self.W1, self.W2 = generate(G1.rs), generate(G2.rs)
        self.section = section
        self.reps1 = RepSection(G1, self.W1, section)
        self.reps2 = RepSection(G2, self.W2, section)
        self._twisted: dict = {}

    @property
    def K(self):
        return self.Kp.K

    @property
    def L(self):
        return self.Lp.K

    @property
    def RA(self):
        return self.Kp.R

    @property
    def RC(self):
        return self.Lp.R

    def describe(self) -> dict:
        return {
            "G1": self.G1.name,
            "G2": self.G2.name,
            "a": str(self.a),
            "c": str(self.c),
            "K": f"{self.Kp.kind}:{self.Kp.theta}",
            "L": f"{self.Lp.kind}:{self.Lp.theta}",
            "section": self.section,
        }

    def with_section(self, section) -> "Scenario":
        return Scenario(self.G1, self.G2, self.Kp, self.Lp, section)

    @cached_property
    def parameters(self):
        return enumerate_parameters(self.W1, self.W2, self.a, self.c)

    @cached_property
    def classes(self) -> Partition:
        return double_cosets(self.GG, self.RA, self.RC)

    def twisted(self, param) -> Twisted:
        key = (param.v1.perm, param.v2.perm)
        if key not in self._twisted:
            self._twisted[key] = twisted_classes(self, param)
        return self._twisted[key]


def make_scenario(
    g1="SL2/F3",
    g2=None,
    a="full-id",
    c="full-id",
    K="graph",
    L="graph",
    section="standard",
    theta_a=None,
    theta_c=None,
) -> Scenario:
    """Build a scenario from short descriptors such as ``"SL2/F3"`` and ``"full-id"``."""
    G1 = g1 if isinstance(g1, FinGroup) else build_group(g1)
    G2 = G1 if g2 is None else (g2 if isinstance(g2, FinGroup) else build_group(g2))
    if (G1.n, G1.q) != (G2.n, G2.q):
        raise GroupError("both groups must share the matrix size and the field")
    GG = ProductGroup(G1, G2)
    a_iso = a if not isinstance(a, str) else parse_isometry(a, G1.rs, G2.rs)
    c_iso = c if not isinstance(c, str) else parse_isometry(c, G1.rs, G2.rs)
    Kp = make_pair(GG, a_iso, K, _pick(GG, a_iso, theta_a))
    Lp = make_pair(GG, c_iso, L, _pick(GG, c_iso, theta_c))
    return Scenario(G1, G2, Kp, Lp, section)


def bruhat_scenario(g="SL2/F3", section="standard") -> Scenario:
    return make_scenario(g, a="empty", c="empty", K="center", L="center", section=section)


def _pick(GG, iso, theta):
    if theta is None or not isinstance(theta, int):
        return theta
    return find_thetas(GG.G1, GG.G2, iso)[theta]


def twisted_classes(sc: Scenario, param) -> Twisted:
    """``K(v1, v2)``, ``L(v1, v2)``, ``J(v1, v2)``, its orbits on ``M_A1(v1,v2)`` and ``Z(v1, v2)``."""
    G1, G2, GG = sc.G1, sc.G2, sc.GG
    v1d, v2d = sc.reps1(param.v1), sc.reps2(param.v2)
    M1 = standard_subgroups(G1, param.A1vv).M
    S2 = standard_subgroups(G2, param.C2vv)
    M2 = S2.M
    v2i = int(G2.inv[v2d])
    Kv = set()
    for p in sc.K:
        k1, k2 = GG.dec(p)
        y = G2.conj(v2i, k2)
        if k1 in M1 and y in M2:
            Kv.add((k1, y))
    Lv = set()
    for p in sc.L:
        l1, l2 = GG.dec(p)
        x = G1.conj(v1d, l1)
        if x in M1 and l2 in M2:
            Lv.add((x, l2))
    J = compose_correspondences(Kv, {(n, m) for m, n in Lv})
    Jcodes = frozenset(sc.GG1.enc(m, n) for m, n in J)
    points = sorted(M1)

    def act(j, m):
        l, n = sc.GG1.dec(j)
        return G1.mul(l, m, int(G1.inv[n]))

    orbits = subgroup_orbits(sc.GG1, Jcodes, points, act)
    Z2 = S2.Z
    etaK = frozenset(G2.conj(v2i, p % GG.N2) for p in sc.K)
    etaL = frozenset(p % GG.N2 for p in sc.L)
    left, right = Z2 & etaK, Z2 & etaL
    Zsub = frozenset(G2.mul(x, y) for x in left for y in right)
    reps, covered = [], set()
    for z in sorted(Z2):
        if z not in covered:
            reps.append(z)
            covered |= {G2.mul(z, y) for y in Zsub}
    tw = Twisted(
        param, v1d, v2d, M1, M2,
        frozenset(GG.enc(*x) for x in Kv), frozenset(GG.enc(*x) for x in Lv),
        Jcodes, orbits, points, Z2, Zsub, reps,
    )
    return tw
