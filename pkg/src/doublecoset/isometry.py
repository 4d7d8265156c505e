"""Partial isometries of Dynkin diagrams, stable subsets and generalized graphs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from doublecoset.rootsys import RootSystem


class IsometryError(ValueError):
    pass


@dataclass(frozen=True)
class PartialIsometry:
    """Injective map ``i -> j`` on simple indices preserving Cartan integers."""

    source: RootSystem
    target: RootSystem
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs)))
        m = dict(self.pairs)
        if len(m) != len(self.pairs) or len(set(m.values())) != len(m):
            raise IsometryError(f"map {self.pairs} is not injective")
        for i, j in self.pairs:
            if not (0 <= i < self.source.rank and 0 <= j < self.target.rank):
                raise IsometryError(f"index pair {(i, j)} out of range")
        for i, j in m.items():
            for k, l in m.items():
                if self.source.cartan[i][k] != self.target.cartan[j][l]:
                    raise IsometryError(
                        f"{self.pairs} does not preserve the Cartan integer at ({i}, {k})"
                    )

    @property
    def map(self) -> dict:
        return dict(self.pairs)

    @property
    def domain(self) -> frozenset:
        return frozenset(i for i, _ in self.pairs)

    @property
    def range(self) -> frozenset:
        return frozenset(j for _, j in self.pairs)

    def __call__(self, i):
        return self.map.get(i)

    def image(self, S) -> frozenset:
        m = self.map
        return frozenset(m[i] for i in S)

    def preimage(self, S) -> frozenset:
        return frozenset(i for i, j in self.pairs if j in S)

    def inverse(self) -> "PartialIsometry":
        return PartialIsometry(self.target, self.source, tuple((j, i) for i, j in self.pairs))

    def restrict(self, S) -> "PartialIsometry":
        return PartialIsometry(self.source, self.target, tuple(p for p in self.pairs if p[0] in S))

    def then(self, other: "PartialIsometry") -> "PartialIsometry":
        """``other ∘ self`` where defined."""
        m = other.map
        return PartialIsometry(
            self.source, other.target, tuple((i, m[j]) for i, j in self.pairs if j in m)
        )

    def __str__(self):
        return ",".join(f"{i + 1}>{j + 1}" for i, j in self.pairs) or "empty"


def identity_isometry(rs: RootSystem, S=None) -> PartialIsometry:
    S = range(rs.rank) if S is None else S
    return PartialIsometry(rs, rs, tuple((i, i) for i in S))


def empty_isometry(rs1: RootSystem, rs2: RootSystem | None = None) -> PartialIsometry:
    return PartialIsometry(rs1, rs1 if rs2 is None else rs2, ())


def parse_isometry(text: str, rs1: RootSystem, rs2: RootSystem) -> PartialIsometry:
    """``full-id``, ``empty``, ``id:1,2`` or explicit 1-based pairs ``1>2,2>1``."""
    text = text.strip()
    if text == "full-id":
        if rs1.cartan != rs2.cartan:
            raise IsometryError("full-id needs two diagrams of the same type")
        return identity_isometry(rs1)
    if text in ("empty", ""):
        return empty_isometry(rs1, rs2)
    if text.startswith("id:"):
        idx = [int(t) - 1 for t in text[3:].split(",") if t.strip()]
        return PartialIsometry(rs1, rs2, tuple((i, i) for i in idx))
    pairs = []
    for tok in text.split(","):
        try:
            i, j = tok.split(">")
            pairs.append((int(i) - 1, int(j) - 1))
        except ValueError:
            raise IsometryError(f"cannot parse isometry token {tok!r}") from None
    return PartialIsometry(rs1, rs2, tuple(pairs))


def enumerate_partial_isometries(rs1: RootSystem, rs2: RootSystem) -> list[PartialIsometry]:
    """All partial isometries from the diagram of ``rs1`` to that of ``rs2``, empty map included."""
    out = []
    for k in range(min(rs1.rank, rs2.rank) + 1):
        for dom in combinations(range(rs1.rank), k):
            for img in permutations(range(rs2.rank), k):
                ok = all(
                    rs1.cartan[i][j] == rs2.cartan[img[x]][img[y]]
                    for x, i in enumerate(dom)
                    for y, j in enumerate(dom)
                )
                if ok:
                    out.append(PartialIsometry(rs1, rs2, tuple(zip(dom, img))))
    return out


def weyl_simple_map(W, w, S) -> dict:
    """Partial map ``i -> j`` on ``S`` where ``w(alpha_i) = alpha_j``."""
    out = {}
    for i in S:
        j = W.rs.simple_index(W.act(w, W.rs.simple(i)))
        if j is not None:
            out[i] = j
    return out


class PartialSimpleMap:
    """A composite of partial maps on simple indices, undefined wherever a factor is."""

    def __init__(self, steps):
        self.steps = list(steps)

    def __call__(self, i):
        for m in self.steps:
            if i is None:
                return None
            i = m.get(i)
        return i

    def restrict(self, S) -> dict:
        return {i: self(i) for i in sorted(S)}


def _fixpoint(f: PartialSimpleMap, start) -> frozenset:
    S = set(start)
    changed = True
    while changed:
        changed = False
        for i in sorted(S):
            j = f(i)
            if j is None or j not in S:
                S.discard(i)
                changed = True
    return frozenset(S)


def _maps(W1, W2, a, c, v1, v2):
    v1_map = weyl_simple_map(W1, v1, range(W1.rs.rank))
    v2inv_map = weyl_simple_map(W2, W2.inverse(v2), range(W2.rs.rank))
    d = PartialSimpleMap([a.map, v2inv_map, c.inverse().map, v1_map])
    e = PartialSimpleMap([c.inverse().map, v1_map, a.map, v2inv_map])
    return d, e


def stable_subset(W1, W2, a: PartialIsometry, c: PartialIsometry, v1, v2):
    """Largest subsets of ``A1`` and ``C2`` invariant under
    ``v1 c^{-1} v2^{-1} a`` and ``v2^{-1} a v1 c^{-1}`` respectively."""
    if not W1.is_min_rep(v1, (), c.domain):
        raise IsometryError(f"v1={v1!r} is not minimal in its coset modulo W_C1")
    if not W2.is_min_rep(v2, a.range, ()):
        raise IsometryError(f"v2={v2!r} is not minimal in its coset modulo W_A2")
    d, e = _maps(W1, W2, a, c, v1, v2)
    A1vv = _fixpoint(d, a.domain)
    C2vv = _fixpoint(e, c.range)
    # v1^{-1}(A1vv) = c^{-1}(C2vv) and v2(C2vv) = a(A1vv)
    v1inv = weyl_simple_map(W1, W1.inverse(v1), A1vv)
    v2m = weyl_simple_map(W2, v2, C2vv)
    if (
        len(v1inv) != len(A1vv)
        or frozenset(v1inv.values()) != c.preimage(C2vv)
        or len(v2m) != len(C2vv)
        or frozenset(v2m.values()) != a.image(A1vv)
    ):
        raise IsometryError("stable subsets fail the transport identities")
    return A1vv, C2vv


def induced_isometries(W1, W2, a, c, v1, v2, A1vv=None, C2vv=None):
    """``(v2^{-1} a, c v1^{-1}, d)`` restricted to the stable subsets."""
    if A1vv is None:
        A1vv, C2vv = stable_subset(W1, W2, a, c, v1, v2)
    v2inv_map = weyl_simple_map(W2, W2.inverse(v2), range(W2.rs.rank))
    v1inv_map = weyl_simple_map(W1, W1.inverse(v1), range(W1.rs.rank))
    am, cm = a.map, c.map
    first = PartialIsometry(W1.rs, W2.rs, tuple((i, v2inv_map[am[i]]) for i in sorted(A1vv)))
    second = PartialIsometry(W1.rs, W2.rs, tuple((i, cm[v1inv_map[i]]) for i in sorted(A1vv)))
    d = second.then(first.inverse())
    if d.domain != A1vv or d.range != A1vv:
        raise IsometryError("d is not a bijection of the stable subset")
    return first, second, d


# -- generalized graphs as finite correspondences -------------------------------


def compose_correspondences(K, L) -> frozenset:
    """``L ∘ K = {(m1, m3) : (m1, m2) ∈ K, (m2, m3) ∈ L for some m2}``."""
    by_first = {}
    for m2, m3 in L:
        by_first.setdefault(m2, []).append(m3)
    return frozenset((m1, m3) for m1, m2 in K for m3 in by_first.get(m2, ()))


@dataclass(frozen=True)
class Quintuple:
    """``(K1, X1, K2, X2, theta)`` with ``theta`` a dict between cosets ``kX``."""

    K1: frozenset
    X1: frozenset
    K2: frozenset
    X2: frozenset
    theta: dict

    def __hash__(self):
        return hash((self.K1, self.X1, self.K2, self.X2))


def _coset(k, X, mul):
    return frozenset(mul(k, x) for x in X)


def quintuple_from_graph(K, mul1, e1, mul2, e2) -> Quintuple:
    """Decompose a finite correspondence ``K`` into its quintuple."""
    K = frozenset(K)
    K1 = frozenset(k1 for k1, _ in K)
    K2 = frozenset(k2 for _, k2 in K)
    X1 = frozenset(k1 for k1, k2 in K if k2 == e2)
    X2 = frozenset(k2 for k1, k2 in K if k1 == e1)
    theta = {}
    for k1, k2 in K:
        c1, c2 = _coset(k1, X1, mul1), _coset(k2, X2, mul2)
        if theta.setdefault(c1, c2) != c2:
            raise IsometryError("theta is not well defined on K1/X1")
    return Quintuple(K1, X1, K2, X2, theta)


def graph_from_quintuple(Q: Quintuple, mul1, mul2) -> frozenset:
    """``K = {(k1, k2) : theta(k1 X1) = k2 X2}``."""
    img = {k1: Q.theta[_coset(k1, Q.X1, mul1)] for k1 in Q.K1}
    return frozenset((k1, k2) for k1 in Q.K1 for k2 in img[k1])


@dataclass(frozen=True)
class AdmissiblePair:
    iso: PartialIsometry
    K: frozenset


def compose_admissible(first: AdmissiblePair, second: AdmissiblePair) -> AdmissiblePair:
    """``(c a, L ∘ K)`` for ``first = (a, K)`` and ``second = (c, L)``."""
    a, c = first.iso, second.iso
    if c.domain != a.range or a.target.cartan != c.source.cartan:
        raise IsometryError(
            f"domain of the second isometry {sorted(c.domain)} differs from range {sorted(a.range)}"
        )
    return AdmissiblePair(a.then(c), compose_correspondences(first.K, second.K))
