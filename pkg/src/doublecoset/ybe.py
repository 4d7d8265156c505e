"""Set-theoretic Yang-Baxter maps from bijective 1-cocycles ``n -> n psi(n)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

YB_CAP = 512


class YBError(RuntimeError):
    pass


@dataclass
class CocycleData:
    """``N`` and ``Q`` inside a group ``U`` with ``psi: N -> Q``.

    ``U`` is any object with ``mul``, ``inv`` and ``identity``; elements are ints.
    """

    U: object
    N: tuple
    Q: frozenset
    psi: dict
    S: frozenset = field(default=frozenset())
    k: int | None = None
    label: str = ""

    def __post_init__(self):
        self.N = tuple(sorted(self.N))
        if not self.S:
            self.S = frozenset(self.U.mul(n, self.psi[n]) for n in self.N)

    @property
    def size(self):
        return len(self.N)

    def check(self) -> dict:
        """``N ∩ Q = {e}``, ``Q`` normalizes ``N`` and ``S`` is a subgroup."""
        U, e = self.U, self.U.identity
        Nset = frozenset(self.N)
        return {
            "meet": Nset & self.Q == {e},
            "normalizes": all(U.mul(x, n, U.inv(x)) in Nset for x in self.Q for n in self.N),
            "psi_in_Q": all(self.psi[n] in self.Q for n in self.N),
            "S_subgroup": e in self.S and all(U.mul(s, U.inv(t)) in self.S for s in self.S for t in self.S),
        }


@dataclass
class YBMap:
    """A map of ``N x N`` stored as two index tables."""

    first: np.ndarray
    second: np.ndarray
    kind: str

    def __call__(self, i, j):
        return int(self.first[i, j]), int(self.second[i, j])

    def swapped(self) -> "YBMap":
        """``σ ∘ T``; it satisfies the quantum equation exactly when ``T`` satisfies the braid relation."""
        return YBMap(self.second.copy(), self.first.copy(), self.kind)

    def is_bijective(self) -> bool:
        n = self.first.shape[0]
        codes = self.first.ravel() * n + self.second.ravel()
        return len(np.unique(codes)) == n * n


def _tables(data: CocycleData):
    U, N = data.U, data.N
    pos = {x: i for i, x in enumerate(N)}
    n = len(N)
    mul = np.empty((n, n), dtype=np.int64)
    act = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(N):
        p = data.psi[x]
        pi = U.inv(p)
        for j, y in enumerate(N):
            mul[i, j] = pos[U.mul(x, y)]
            act[i, j] = pos[U.mul(p, y, pi)]
    inv = np.array([pos[U.inv(x)] for x in N], dtype=np.int64)
    return mul, inv, act


def build_T(data: CocycleData) -> tuple[YBMap, YBMap]:
    """``T0(n, n') = (n', n'^-1 n n')`` and its twist ``T = (σFσ)^-1 T0 F``."""
    n = data.size
    if n > YB_CAP:
        raise YBError(f"|N| = {n} exceeds the cap {YB_CAP}")
    mul, inv, act = _tables(data)
    I, J = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    T0 = YBMap(J.copy(), mul[mul[inv[J], I], J], "trivial")
    # act_inv[y, x] solves act[y, z] = x
    act_inv = np.empty_like(act)
    for y in range(n):
        act_inv[y, act[y]] = np.arange(n)
    m = act[I, J]
    x, y = m, mul[mul[inv[m], I], m]
    T = YBMap(act_inv[y, x], y, "twisted")
    for t in (T0, T):
        if not t.is_bijective():
            raise YBError(f"{t.kind} map is not a bijection of N x N")
    return T0, T


def qybe_witness(T: YBMap, chunk: int = 64, literal: bool = False):
    """First triple breaking ``R12 R13 R23 = R23 R13 R12``, or ``None``.

    ``T0`` and ``T`` are braided maps: the quantum equation holds for ``R = σ T``.
    With ``literal=True`` the equation is tested on ``T`` itself, which fails
    for non-abelian ``N``.
    """
    if not literal:
        T = T.swapped()
    n = T.first.shape[0]
    if n > YB_CAP:
        raise YBError(f"|N| = {n} exceeds the cap {YB_CAP}")
    f, s = T.first, T.second
    for start in range(0, n, chunk):
        a, b, c = np.meshgrid(np.arange(start, min(n, start + chunk)), np.arange(n), np.arange(n), indexing="ij")
        a, b, c = a.ravel(), b.ravel(), c.ravel()
        # left side: T23, then T13, then T12
        x, y, z = a, f[b, c], s[b, c]
        x, z = f[x, z], s[x, z]
        l1, l2, l3 = f[x, y], s[x, y], z
        # right side: T12, then T13, then T23
        x, y, z = f[a, b], s[a, b], c
        x, z = f[x, z], s[x, z]
        r1, r2, r3 = x, f[y, z], s[y, z]
        bad = np.nonzero((l1 != r1) | (l2 != r2) | (l3 != r3))[0]
        if len(bad):
            i = bad[0]
            return int(a[i]), int(b[i]), int(c[i])
    return None


def verify_qybe(T: YBMap) -> bool:
    return qybe_witness(T) is None


def braid_witness(T: YBMap):
    """First triple breaking ``T12 T23 T12 = T23 T12 T23``, or ``None``."""
    n = T.first.shape[0]
    if n > YB_CAP:
        raise YBError(f"|N| = {n} exceeds the cap {YB_CAP}")
    f, s = T.first, T.second
    a, b, c = (x.ravel() for x in np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij"))
    x, y, z = f[a, b], s[a, b], c
    y, z = f[y, z], s[y, z]
    left = (f[x, y], s[x, y], z)
    x, y, z = a, f[b, c], s[b, c]
    x, y = f[x, y], s[x, y]
    right = (x, f[y, z], s[y, z])
    bad = np.nonzero(np.any([l != r for l, r in zip(left, right)], axis=0))[0]
    return None if not len(bad) else (int(a[bad[0]]), int(b[bad[0]]), int(c[bad[0]]))


def cocycle_witness(data: CocycleData):
    """First pair ``(s1, s2)`` breaking ``π(s1 s2) = π(s1) (s1 · π(s2))``, or ``None``."""
    U = data.U
    pi = {U.mul(n, data.psi[n]): n for n in data.N}
    if len(pi) != data.size or frozenset(pi) != data.S:
        return ("not bijective",)
    for s1, n1 in pi.items():
        p = data.psi[n1]
        pin = U.inv(p)
        for s2, n2 in pi.items():
            prod = U.mul(s1, s2)
            if prod not in pi or pi[prod] != U.mul(n1, p, n2, pin):
                return s1, s2
    return None


def verify_cocycle(data: CocycleData) -> bool:
    return cocycle_witness(data) is None


# -- instances from stabilizers of normal-form points --------------------------------------


def _theta_on_unipotents(GG, pd):
    from doublecoset.oracle.pairs import unipotent_theta

    return unipotent_theta(GG, pd.iso, pd.K)


def _least_k(sigma, domain, e, cap):
    """Least ``k >= 0`` with ``sigma^(k+1) ≡ e`` on ``domain``."""
    img, k = set(domain), 0
    while True:
        img = {sigma(x) for x in img}
        if img == {e}:
            return k
        k += 1
        if k > cap:
            raise YBError("sigma is not nilpotent within the expected bound")


def build_psi(sc, param, m1, s2) -> CocycleData:
    """The map ``ψ = ψ1 x ψ2: N -> Q`` at ``q = (m1 v1, v2 s2)``."""
    from doublecoset.oracle.groups import levi_projection, standard_subgroups

    G1, G2, GG = sc.G1, sc.G2, sc.GG
    tw = sc.twisted(param)
    v1, v2 = tw.v1dot, tw.v2dot
    a, c = sc.a, sc.c
    th_a = _theta_on_unipotents(GG, sc.Kp)
    th_c_inv = {y: x for x, y in _theta_on_unipotents(GG, sc.Lp).items()}
    g1 = G1.mul(m1, v1)
    g2i = int(G2.inv[G2.mul(v2, s2)])

    def phi1(n):
        return G1.conj(g1, th_c_inv[levi_projection(G2, c.range, n)])

    def phi2(n):
        return G2.conj(g2i, th_a[levi_projection(G1, a.domain, n)])

    U1, U2 = standard_subgroups(G1, ()).U, standard_subgroups(G2, ()).U
    X1 = standard_subgroups(G1, param.A1vv).U & G1.conj_set(v1, U1)
    X2 = standard_subgroups(G2, param.C2vv).U & G2.conj_set(int(G2.inv[v2]), U2)
    e1, e2 = G1.identity, G2.identity
    cap = len(G1.rs.positive)
    k = max(
        _least_k(lambda x: phi1(phi2(x)), X1, e1, cap),
        _least_k(lambda x: phi2(phi1(x)), X2, e2, cap),
    )

    def iterate(sigma, x):
        out, y = [], x
        for _ in range(k):
            y = sigma(y)
            out.append(y)
        return out

    N1 = U1 & G1.conj_set(v1, standard_subgroups(G1, c.domain).U)
    N2 = U2 & G2.conj_set(int(G2.inv[v2]), standard_subgroups(G2, a.range).U)
    Mc1 = standard_subgroups(G1, c.domain).M
    Ma2 = standard_subgroups(G2, a.range).M
    Q1 = G1.conj_set(v1, standard_subgroups(G1, c.preimage(param.C2vv)).U & Mc1)
    Q2 = G2.conj_set(int(G2.inv[v2]), standard_subgroups(G2, a.image(param.A1vv)).U & Ma2)
    psi = {}
    for n1 in sorted(N1):
        f2 = phi2(n1)
        for n2 in sorted(N2):
            f1 = phi1(n2)
            x, y = G1.mul(n1, f1), G2.mul(n2, f2)
            p1 = G1.mul(f1, *iterate(lambda t: phi1(phi2(t)), x))
            p2 = G2.mul(f2, *iterate(lambda t: phi2(phi1(t)), y))
            psi[GG.enc(n1, n2)] = GG.enc(p1, p2)
    return CocycleData(
        GG, tuple(psi), GG.pairs(Q1, Q2), psi, k=k,
        label=f"v={param.label()} m1={m1} s2={s2}",
    )


def check_instance(sc, param, m1, s2) -> dict:
    """All YB checks for one normal-form point, including ``S = Stab_U(q)``."""
    from doublecoset.oracle.groups import standard_subgroups
    from doublecoset.oracle.verify import stabilizer

    G1, G2, GG = sc.G1, sc.G2, sc.GG
    data = build_psi(sc, param, m1, s2)
    tw = sc.twisted(param)
    stab = stabilizer(sc, G1.mul(m1, tw.v1dot), G2.mul(tw.v2dot, s2))
    U1, U2 = standard_subgroups(G1, ()).U, standard_subgroups(G2, ()).U
    ubox = GG.pairs(
        standard_subgroups(G1, param.A1vv).U & G1.conj_set(tw.v1dot, U1),
        standard_subgroups(G2, param.C2vv).U & G2.conj_set(int(G2.inv[tw.v2dot]), U2),
    )
    res = dict(data.check())
    res["S_is_stab_U"] = data.S == stab & ubox
    res["cocycle"] = verify_cocycle(data)
    T0, T = build_T(data)
    res["T0"] = verify_qybe(T0)
    res["T"] = verify_qybe(T)
    res["braid"] = braid_witness(T) is None
    res["k_bound"] = data.k <= len(G1.rs.positive)
    res["pass"] = all(res.values())
    return {"instance": data.label, "N": data.size, "k": data.k, **res}


def scenario_instances(sc):
    """Every normal-form point ``(v, m1, s2)`` of a scenario."""
    for p in sc.parameters:
        tw = sc.twisted(p)
        for m1 in tw.points:
            for s2 in sorted(tw.Z2):
                yield p, m1, s2


def corrupted(data: CocycleData, changes: dict) -> CocycleData:
    psi = dict(data.psi)
    psi.update(changes)
    return CocycleData(data.U, data.N, data.Q, psi, k=data.k, label=data.label + " corrupted")


def _corruptions(data: CocycleData, points: int):
    movable = [n for n in data.N if n != data.U.identity]
    values = sorted(data.Q)
    for ns in combinations(movable, points):
        for qs in product(values, repeat=points):
            if all(q != data.psi[n] for n, q in zip(ns, qs)):
                yield dict(zip(ns, qs))


def negative_control(data: CocycleData, max_points: int = 2) -> dict:
    """Change ``ψ`` inside ``Q`` at one, then two points until the braided identity breaks.

    Returns the first breaking change with a violating triple, or ``{}``. For
    abelian ``N`` the twisted map is the flip whatever ``ψ`` is, so nothing breaks.
    """
    for points in range(1, max_points + 1):
        for change in _corruptions(data, points):
            bad = corrupted(data, change)
            _, T = build_T(bad)
            w = qybe_witness(T)
            if w is not None:
                return {
                    "changes": change,
                    "witness": w,
                    "cocycle_witness": cocycle_witness(bad),
                    "S_subgroup": bad.check()["S_subgroup"],
                }
    return {}
