"""Enumerated matrix groups SL_n(F_q), GL_n(F_q) and their standard subgroups.

Elements are indexed by the position of their row-major code
``sum(entry_k * q**k)`` in sorted order; all products go through a dense
multiplication table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product

import numpy as np

from doublecoset.rootsys import build_root_system

SUPPORTED_GROUPS = (("SL", 2, 2), ("SL", 2, 3), ("SL", 3, 2), ("GL", 2, 2), ("GL", 2, 3))
PAIR_CAP = 10**6


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class Fq:
    """A residue modulo a prime ``q``."""

    value: int
    q: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.q)

    def __add__(self, other):
        return Fq(self.value + int(other), self.q)

    def __sub__(self, other):
        return Fq(self.value - int(other), self.q)

    def __mul__(self, other):
        return Fq(self.value * int(other), self.q)

    def __neg__(self):
        return Fq(-self.value, self.q)

    def __int__(self):
        return self.value

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return Fq(pow(self.value, self.q - 2, self.q), self.q)


def _det(m):
    n = len(m)
    total = 0
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= m[i][p[i]]
        total += term
    return total


def parse_group(text: str):
    """``"SL2/F3"``, ``"SL2"`` with separate q, or a tuple."""
    if isinstance(text, tuple):
        return text
    t = text.strip().upper().replace(" ", "")
    kind, rest = t[:2], t[2:]
    if "/F" in rest:
        n, q = rest.split("/F")
        return kind, int(n), int(q)
    return kind, int(rest), None


class FinGroup:
    def __init__(self, kind: str, n: int, q: int):
        if (kind, n, q) not in SUPPORTED_GROUPS:
            raise GroupError(f"unsupported group {kind}{n}/F{q}; expected one of {SUPPORTED_GROUPS}")
        self.kind, self.n, self.q = kind, n, q
        self.name = f"{kind}{n}/F{q}"
        nn = n * n
        mats = []
        for entries in product(range(q), repeat=nn):
            m = [entries[i * n:(i + 1) * n] for i in range(n)]
            d = _det(m) % q
            if (kind == "SL" and d == 1) or (kind == "GL" and d != 0):
                mats.append(entries)
        arr = np.array(mats, dtype=np.int64)
        weights = q ** np.arange(nn, dtype=np.int64)
        codes = arr @ weights
        order = np.argsort(codes, kind="stable")
        self.flat = arr[order]
        self.codes = codes[order]
        self.mats = self.flat.reshape(-1, n, n)
        self.order = len(self.codes)
        self._weights = weights
        self._lookup = np.full(q**nn, -1, dtype=np.int64)
        self._lookup[self.codes] = np.arange(self.order)
        prods = np.einsum("aij,bjk->abik", self.mats, self.mats) % q
        self.table = self._lookup[prods.reshape(self.order, self.order, nn) @ weights]
        self.identity = self.index(np.eye(n, dtype=np.int64))
        self.inv = np.argmax(self.table == self.identity, axis=1)
        self.rs = build_root_system(f"A{n - 1}")
        self.rankH = n - 1 if kind == "SL" else n

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FinGroup({self.name}, order={self.order})"

    def index(self, m) -> int:
        m = np.asarray(m, dtype=np.int64) % self.q
        i = int(self._lookup[int(m.reshape(-1) @ self._weights)])
        if i < 0:
            raise GroupError(f"matrix {m.tolist()} is not in {self.name}")
        return i

    def matrix(self, i) -> np.ndarray:
        return self.mats[i]

    def key(self, i) -> tuple:
        """Row-major entries, the canonical encoding of an element."""
        return tuple(int(x) for x in self.flat[i])

    def mul(self, *xs) -> int:
        out = self.identity
        for x in xs:
            out = int(self.table[out, x])
        return out

    def conj(self, g, x) -> int:
        return int(self.table[self.table[g, x], self.inv[g]])

    def conj_set(self, g, S) -> frozenset:
        S = np.fromiter(S, dtype=np.int64)
        return frozenset(self.table[self.table[g, S], self.inv[g]].tolist())

    def closure(self, gens) -> frozenset:
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def is_subgroup(self, S) -> bool:
        arr = np.fromiter(S, dtype=np.int64)
        if self.identity not in S:
            return False
        prods = self.table[np.ix_(arr, arr)]
        return bool(np.isin(prods, arr).all())

    @cached_property
    def elements(self) -> frozenset:
        return frozenset(range(self.order))

    def select(self, mask) -> frozenset:
        return frozenset(np.nonzero(mask)[0].tolist())

    # -- root data ------------------------------------------------------------

    def root_position(self, root) -> tuple[int, int]:
        """Matrix position ``(i, j)`` of the root space for ``root``."""
        nz = [k for k, c in enumerate(root) if c]
        i, j = nz[0], nz[-1] + 1
        return (i, j) if root[nz[0]] > 0 else (j, i)

    def root_group(self, root) -> frozenset:
        i, j = self.root_position(root)
        out = []
        for t in range(self.q):
            m = np.eye(self.n, dtype=np.int64)
            m[i, j] = t
            out.append(self.index(m))
        return frozenset(out)

    def blocks(self, D) -> list[int]:
        return self.blocks_of(self.n, D)

    @staticmethod
    def blocks_of(n, D) -> list[int]:
        """Block number of each coordinate: ``i`` and ``i + 1`` share a block iff ``i ∈ D``."""
        b = [0]
        for i in range(n - 1):
            b.append(b[-1] if i in D else b[-1] + 1)
        return b


@dataclass(frozen=True)
class StandardSubgroups:
    D: frozenset
    P: frozenset
    M: frozenset
    U: frozenset
    Um: frozenset
    Z: frozenset
    Mprime: frozenset


_GROUP_CACHE: dict = {}


def build_group(kind, n=None, q=None) -> FinGroup:
    if n is None:
        kind, n, q2 = parse_group(kind)
        q = q if q2 is None else q2
    key = (kind, n, q)
    if key not in _GROUP_CACHE:
        _GROUP_CACHE[key] = FinGroup(kind, n, q)
    return _GROUP_CACHE[key]


def standard_subgroups(G: FinGroup, D) -> StandardSubgroups:
    """``P_D = M_D U_D``, the opposite radical, the center of ``M_D`` and ``M'_D``."""
    D = frozenset(D)
    cache = G.__dict__.setdefault("_std_cache", {})
    if D in cache:
        return cache[D]
    n, mats = G.n, G.mats
    b = G.blocks(D)
    head = [b.index(b[i]) for i in range(n)]
    lower = np.ones(G.order, dtype=bool)
    off = np.ones(G.order, dtype=bool)
    unip = np.ones(G.order, dtype=bool)
    unip_m = np.ones(G.order, dtype=bool)
    upper = np.ones(G.order, dtype=bool)
    scal = np.ones(G.order, dtype=bool)
    for i in range(n):
        for j in range(n):
            x = mats[:, i, j]
            if b[i] > b[j]:
                lower &= x == 0
                unip &= x == 0
            if b[i] < b[j]:
                upper &= x == 0
                unip_m &= x == 0
            if b[i] != b[j]:
                off &= x == 0
            else:
                want = 1 if i == j else 0
                unip &= x == want
                unip_m &= x == want
                if i != j:
                    scal &= x == 0
                else:
                    scal &= x == mats[:, head[i], head[i]]
    P = G.select(lower)
    M = G.select(off)
    Z = G.select(off & scal)
    gens = set()
    for r in G.rs.roots:
        if all(c == 0 for k, c in enumerate(r) if k not in D):
            gens |= G.root_group(r)
    out = StandardSubgroups(D, P, M, G.select(unip), G.select(unip_m), Z, G.closure(sorted(gens)))
    cache[D] = out
    return out


def levi_projection(G: FinGroup, D, x) -> int:
    """Component in ``M_D`` of ``x ∈ P_D``: keep the diagonal blocks."""
    b = G.blocks(D)
    m = G.matrix(x).copy()
    for i in range(G.n):
        for j in range(G.n):
            if b[i] != b[j]:
                m[i, j] = 0
    return G.index(m)


def torus(G):
    return standard_subgroups(G, ()).M


def borel(G):
    return standard_subgroups(G, ()).P


def unipotent(G):
    return standard_subgroups(G, ()).U


class RepSection:
    """Monomial representatives ``w -> ẇ`` in the normalizer of the torus.

    The standard section multiplies ``[[0, 1], [-1, 0]]`` blocks along the
    BFS reduced word. The alternative uses the inverse blocks along the
    reduced word found with reversed generator order, so it differs from the
    standard one whenever ``-1 != 1`` in the field.
    """

    def __init__(self, G: FinGroup, W, variant: str = "standard"):
        if variant not in ("standard", "alternative"):
            raise GroupError(f"unknown representative section {variant!r}")
        self.G, self.W, self.variant = G, W, variant
        self._cache: dict = {}
        if variant == "alternative":
            from doublecoset.weyl import generate

            W2 = generate(W.rs, order=range(W.rs.rank - 1, -1, -1))
            self._words = {w.perm: w.word for w in W2}

    def simple(self, i) -> int:
        n = self.G.n
        m = np.eye(n, dtype=np.int64)
        m[i, i] = m[i + 1, i + 1] = 0
        if self.variant == "standard":
            m[i, i + 1], m[i + 1, i] = 1, -1
        else:
            m[i, i + 1], m[i + 1, i] = -1, 1
        return self.G.index(m)

    def __call__(self, w) -> int:
        if w.perm not in self._cache:
            G = self.G
            if self.variant == "standard":
                x = G.mul(*[self.simple(i) for i in w.word])
            else:
                x = G.mul(*[self.simple(i) for i in self._words[w.perm]])
            self._cache[w.perm] = x
        return self._cache[w.perm]

    def integer_matrix(self, w) -> np.ndarray:
        """The same representative with entries lifted to ``{-1, 0, 1}``."""
        m = self.G.matrix(self(w)).copy()
        m[m == self.G.q - 1] = -1 if self.G.q > 2 else 1
        return m
