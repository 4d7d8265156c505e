"""Products G1 x G2, generalized graphs K and the groups R_A = K (U_A1 x U_A2)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from doublecoset.isometry import PartialIsometry, quintuple_from_graph, graph_from_quintuple
from doublecoset.oracle.groups import PAIR_CAP, FinGroup, GroupError, standard_subgroups
from doublecoset.rootsys import sub_system


class ProductGroup:
    """``G1 x G2`` with ``(g1, g2)`` encoded as ``g1 * |G2| + g2``."""

    def __init__(self, G1: FinGroup, G2: FinGroup):
        if G1.order * G2.order > PAIR_CAP:
            raise GroupError(f"|G1 x G2| = {G1.order * G2.order} exceeds the cap {PAIR_CAP}")
        self.G1, self.G2 = G1, G2
        self.N2 = G2.order
        self.order = G1.order * G2.order
        self.identity = self.enc(G1.identity, G2.identity)

    def enc(self, g1, g2):
        return g1 * self.N2 + g2

    def dec(self, p):
        return divmod(p, self.N2)

    def mul(self, *ps) -> int:
        out = self.identity
        for p in ps:
            a1, a2 = divmod(out, self.N2)
            b1, b2 = divmod(p, self.N2)
            out = int(self.G1.table[a1, b1]) * self.N2 + int(self.G2.table[a2, b2])
        return out

    def mul_arr(self, P, R):
        P, R = np.asarray(P), np.asarray(R)
        return self.G1.table[P // self.N2, R // self.N2] * self.N2 + self.G2.table[P % self.N2, R % self.N2]

    def inv(self, p) -> int:
        a1, a2 = divmod(p, self.N2)
        return int(self.G1.inv[a1]) * self.N2 + int(self.G2.inv[a2])

    def inv_arr(self, P):
        P = np.asarray(P)
        return self.G1.inv[P // self.N2] * self.N2 + self.G2.inv[P % self.N2]

    def conj(self, g, x) -> int:
        return self.mul(g, x, self.inv(g))

    def conj_set(self, g, S) -> frozenset:
        arr = np.fromiter(S, dtype=np.int64)
        gi = self.inv(g)
        return frozenset(self.mul_arr(self.mul_arr(np.full_like(arr, g), arr), np.full_like(arr, gi)).tolist())

    def pairs(self, S1, S2) -> frozenset:
        return frozenset(a * self.N2 + b for a in S1 for b in S2)

    def first(self, S) -> frozenset:
        return frozenset(p // self.N2 for p in S)

    def second(self, S) -> frozenset:
        return frozenset(p % self.N2 for p in S)

    def set_mul(self, S, T) -> frozenset:
        a = np.fromiter(S, dtype=np.int64)
        b = np.fromiter(T, dtype=np.int64)
        return frozenset(self.mul_arr(a[:, None], b[None, :]).ravel().tolist())

    def is_subgroup(self, S) -> bool:
        if self.identity not in S:
            return False
        arr = np.fromiter(S, dtype=np.int64)
        gens = small_generators(self, S)
        ok = all(np.isin(self.mul_arr(arr, np.full_like(arr, g)), arr).all() for g in gens)
        return ok and self.closure(gens) == frozenset(S)

    def closure(self, gens) -> frozenset:
        seen = {self.identity}
        frontier = np.array([self.identity], dtype=np.int64)
        gens = list(gens)
        while len(frontier):
            new = []
            for g in gens:
                img = self.mul_arr(frontier, np.full_like(frontier, g))
                for y in img.tolist():
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = np.array(new, dtype=np.int64)
        return frozenset(seen)


def small_generators(group, S) -> list:
    """Greedy generating set: add each element not yet in the generated subgroup."""
    gens: list = []
    H = frozenset([group.identity])
    for x in sorted(S):
        if x not in H:
            gens.append(x)
            H = group.closure(gens)
            if len(H) == len(S):
                break
    return gens


# -- graph maps between Levi factors ------------------------------------------------


@dataclass(frozen=True)
class ThetaMap:
    """``g -> P g P^{-1}`` or ``g -> P (g^{-1})^T P^{-1}`` for a permutation ``P``."""

    perm: tuple
    transpose: bool

    def pmatrix(self, n):
        P = np.zeros((n, n), dtype=np.int64)
        for j, i in enumerate(self.perm):
            P[i, j] = 1
        return P

    def apply_matrix(self, G: FinGroup, g) -> np.ndarray:
        m = G.matrix(G.inv[g]).T if self.transpose else G.matrix(g)
        P = self.pmatrix(G.n)
        return (P @ m @ P.T) % G.q

    def lie(self, X) -> np.ndarray:
        P = self.pmatrix(len(X))
        return -(P @ X.T @ P.T) if self.transpose else P @ X @ P.T

    def __str__(self):
        return ("T" if self.transpose else "") + "".join(str(i + 1) for i in self.perm)


def root_image(iso: PartialIsometry, root) -> tuple:
    out = [0] * iso.target.rank
    m = iso.map
    for i, c in enumerate(root):
        if c:
            out[m[i]] += c
    return tuple(out)


def _map_set(G1, G2, theta, S):
    out = set()
    for g in S:
        try:
            out.add(G2.index(theta.apply_matrix(G1, g)))
        except GroupError:
            return None
    return frozenset(out)


def find_thetas(G1: FinGroup, G2: FinGroup, iso: PartialIsometry) -> list[ThetaMap]:
    """All permutation/transpose maps sending ``U^{±α}`` onto ``U^{±a(α)}`` for simple ``α``."""
    if G1.n != G2.n or G1.q != G2.q:
        raise GroupError("graph maps need groups with the same matrix size and field")
    found = []
    for transpose in (False, True):
        for perm in permutations(range(G1.n)):
            th = ThetaMap(perm, transpose)
            ok = True
            for i in sorted(iso.domain):
                for sign in (1, -1):
                    r = tuple(sign if k == i else 0 for k in range(G1.rs.rank))
                    img = _map_set(G1, G2, th, G1.root_group(r))
                    if img != G2.root_group(root_image(iso, r)):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                found.append(th)
    return found


class GraphError(ValueError):
    pass


@dataclass
class PairData:
    """An admissible pair ``(a, K)`` realized inside ``G1 x G2``."""

    iso: PartialIsometry
    kind: str
    theta: ThetaMap
    K: frozenset
    R: frozenset
    U1: frozenset
    U2: frozenset


def build_K(GG: ProductGroup, iso: PartialIsometry, theta: ThetaMap, kind: str = "graph") -> frozenset:
    """Graph of ``theta`` on ``M_A1`` (kind ``graph``/``diag``), optionally times both centers."""
    if kind not in ("graph", "diag", "center"):
        raise GraphError(f"unknown subgroup kind {kind!r}")
    G1, G2 = GG.G1, GG.G2
    S1 = standard_subgroups(G1, iso.domain)
    S2 = standard_subgroups(G2, iso.range)
    graph = {}
    for k in sorted(S1.M):
        try:
            img = G2.index(theta.apply_matrix(G1, k))
        except GroupError:
            continue
        if img in S2.M:
            graph[k] = img
    K = frozenset(GG.enc(k, v) for k, v in graph.items())
    if kind == "center":
        K1, K2 = frozenset(graph), frozenset(graph.values())
        X = GG.pairs(S1.Z & K1, S2.Z & K2)
        K = GG.set_mul(X, K)
    check_graph_condition(GG, iso, K)
    return K


def check_graph_condition(GG: ProductGroup, iso: PartialIsometry, K) -> None:
    """Raise unless ``K ∩ (U^α x U^{a(α)})`` is the graph of a bijection for every ``α ∈ Δ_A1``."""
    G1, G2 = GG.G1, GG.G2
    for alpha in sorted(sub_system(G1.rs, iso.domain)):
        U1a = G1.root_group(alpha)
        U2a = G2.root_group(root_image(iso, alpha))
        meet = K & GG.pairs(U1a, U2a)
        if len(meet) != G1.q or GG.first(meet) != U1a or GG.second(meet) != U2a:
            raise GraphError(f"K is not a graph over the root group of {alpha}")


def build_RA(GG: ProductGroup, iso: PartialIsometry, K, minus: bool = False) -> frozenset:
    """``K (U_A1 x U_A2)``, or ``K (U_A1 x U_A2^-)`` with the opposite radical."""
    U1 = standard_subgroups(GG.G1, iso.domain).U
    S2 = standard_subgroups(GG.G2, iso.range)
    U2 = S2.Um if minus else S2.U
    R = GG.set_mul(K, GG.pairs(U1, U2))
    if len(R) != len(K) * len(U1) * len(U2):
        raise GraphError("factorization K (U_A1 x U_A2) is not unique")
    if not GG.is_subgroup(R):
        raise GraphError("K (U_A1 x U_A2) is not a subgroup")
    return R


def build_RA_minus(GG, iso, K):
    return build_RA(GG, iso, K, minus=True)


def make_pair(GG: ProductGroup, iso: PartialIsometry, kind="graph", theta: ThetaMap | None = None) -> PairData:
    if theta is None:
        thetas = find_thetas(GG.G1, GG.G2, iso)
        if not thetas:
            raise GraphError(f"no graph map realizes the isometry {iso}")
        theta = thetas[0]
    K = build_K(GG, iso, theta, kind)
    U1 = standard_subgroups(GG.G1, iso.domain).U
    U2 = standard_subgroups(GG.G2, iso.range).U
    return PairData(iso, "graph" if kind == "diag" else kind, theta, K, build_RA(GG, iso, K), U1, U2)


def all_pairs(GG: ProductGroup, iso: PartialIsometry) -> list[PairData]:
    """Every distinct ``K`` obtainable from the supported graph maps and kinds."""
    out, seen = [], set()
    for th in find_thetas(GG.G1, GG.G2, iso):
        for kind in ("graph", "center"):
            K = build_K(GG, iso, th, kind)
            if K not in seen:
                seen.add(K)
                out.append(make_pair(GG, iso, kind, th))
    return out


def unipotent_theta(GG: ProductGroup, iso: PartialIsometry, K) -> dict:
    """``θ: U1 ∩ M_A1 -> U2 ∩ M_A2`` read off from ``K``."""
    G1, G2 = GG.G1, GG.G2
    V1 = standard_subgroups(G1, ()).U & standard_subgroups(G1, iso.domain).M
    V2 = standard_subgroups(G2, ()).U & standard_subgroups(G2, iso.range).M
    meet = K & GG.pairs(V1, V2)
    theta = dict(GG.dec(p) for p in meet)
    if len(theta) != len(V1) or frozenset(theta.values()) != V2:
        raise GraphError("K ∩ (U1 x U2) is not the graph of a bijection")
    return theta


def quintuple_of(GG: ProductGroup, K):
    G1, G2 = GG.G1, GG.G2
    pairs = [GG.dec(p) for p in K]
    return quintuple_from_graph(pairs, G1.mul, G1.identity, G2.mul, G2.identity)


def graph_of(GG: ProductGroup, Q) -> frozenset:
    return frozenset(GG.enc(a, b) for a, b in graph_from_quintuple(Q, GG.G1.mul, GG.G2.mul))


# -- the property lemma ---------------------------------------------------------------


def verify_property_lemma(GG: ProductGroup, iso: PartialIsometry, K, R, D1) -> dict:
    """Finite set checks of the decompositions of ``K`` and ``R_A`` along ``D1 ⊆ A1``."""
    G1, G2 = GG.G1, GG.G2
    D1 = frozenset(D1)
    if not D1 <= iso.domain:
        raise ValueError("D1 must be a subset of the domain of a")
    D2 = iso.image(D1)
    A1, A2 = iso.domain, iso.range
    s1, s2 = standard_subgroups(G1, D1), standard_subgroups(G2, D2)
    t1, t2 = standard_subgroups(G1, A1), standard_subgroups(G2, A2)
    UD1A, UD2A = s1.U & t1.M, s2.U & t2.M
    P = GG.pairs
    res = {}
    pk = [P(s1.P, t2.M) & K, P(t1.M, s2.P) & K, P(s1.P, s2.P) & K]
    MK = P(s1.M, s2.M) & K
    UK = P(UD1A, UD2A) & K
    res["PK1"] = pk[0] == pk[1] == pk[2]
    res["PK2"] = pk[2] == GG.set_mul(MK, UK)
    pr = [P(s1.P, t2.P) & R, P(t1.P, s2.P) & R, P(s1.P, s2.P) & R]
    res["PR1"] = pr[0] == pr[1] == pr[2]
    res["PR2"] = pr[2] == GG.set_mul(P(s1.M, s2.M) & R, P(s1.U, s2.U) & R)
    res["PR3"] = pr[2] == GG.set_mul(pk[2], P(t1.U, t2.U))
    KM1 = frozenset(p % GG.N2 for p in K if p // GG.N2 in s1.M)
    KM2 = frozenset(p // GG.N2 for p in K if p % GG.N2 in s2.M)
    part1 = KM1 <= s2.M and KM2 <= s1.M
    try:
        check_graph_condition(GG, iso.restrict(D1), MK)
    except GraphError:
        part1 = False
    res["part1"] = part1
    res["part2"] = (
        len(UK) == len(UD1A) == len(UD2A) and GG.first(UK) == UD1A and GG.second(UK) == UD2A
    )
    res["pass"] = all(res.values())
    return res
