"""Finite Weyl groups as permutations of the root set.

An element is stored as the tuple ``perm`` with ``perm[k]`` the index of
``w(roots[k])``. Composition is composition of maps, so ``(u * w)(beta) =
u(w(beta))`` and the word ``(i1, ..., ik)`` means ``s_i1 s_i2 ... s_ik``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from doublecoset.rootsys import RootSystem, in_span, is_positive, positive_sub_system, reflect


class WeylError(ValueError):
    pass


@dataclass(frozen=True)
class WeylElement:
    perm: tuple[int, ...]
    word: tuple[int, ...] = field(compare=False)
    length: int = field(compare=False)

    def __hash__(self):
        return hash(self.perm)

    def word_str(self) -> str:
        return " ".join(f"s{i + 1}" for i in self.word) or "e"

    def __repr__(self):
        return f"<{self.word_str()}>"


class WeylGroup:
    def __init__(self, rs: RootSystem, elements: list[WeylElement]):
        self.rs = rs
        self.elements = elements
        self._by_perm = {w.perm: w for w in elements}
        self._mul_cache: dict = {}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, w):
        return w.perm in self._by_perm

    def __repr__(self):
        return f"WeylGroup({self.rs.name}, order={len(self)})"

    @cached_property
    def identity(self) -> WeylElement:
        return self._by_perm[tuple(range(len(self.rs.roots)))]

    @cached_property
    def simple_reflections(self) -> tuple[WeylElement, ...]:
        return tuple(self.from_word((i,)) for i in range(self.rs.rank))

    def element(self, perm) -> WeylElement:
        return self._by_perm[tuple(perm)]

    def index(self, w: WeylElement) -> int:
        return self._positions[w.perm]

    @cached_property
    def _positions(self):
        return {w.perm: k for k, w in enumerate(self.elements)}

    def mul(self, u: WeylElement, w: WeylElement) -> WeylElement:
        key = (u.perm, w.perm)
        out = self._mul_cache.get(key)
        if out is None:
            out = self._by_perm[tuple(u.perm[k] for k in w.perm)]
            self._mul_cache[key] = out
        return out

    def prod(self, *ws: WeylElement) -> WeylElement:
        out = self.identity
        for w in ws:
            out = self.mul(out, w)
        return out

    def inverse(self, w: WeylElement) -> WeylElement:
        inv = [0] * len(w.perm)
        for k, j in enumerate(w.perm):
            inv[j] = k
        return self._by_perm[tuple(inv)]

    def from_word(self, word) -> WeylElement:
        perm = list(range(len(self.rs.roots)))
        for i in word:
            s = _simple_perm(self.rs, i)
            perm = [perm[s[k]] for k in range(len(perm))]
        return self._by_perm[tuple(perm)]

    def act(self, w: WeylElement, root) -> tuple[int, ...]:
        rs = self.rs
        return rs.roots[w.perm[rs.index[tuple(root)]]]

    def act_set(self, w: WeylElement, roots) -> frozenset:
        return frozenset(self.act(w, r) for r in roots)

    def simple_image(self, w: WeylElement, D) -> frozenset:
        """``w(D)`` as a set of root vectors, ``D`` a set of simple indices."""
        return frozenset(self.act(w, self.rs.simple(i)) for i in D)

    def simple_meet(self, A, w: WeylElement, C) -> frozenset:
        """Simple indices in ``A`` lying in ``w(C)``, i.e. ``A ∩ w(C)``."""
        img = self.simple_image(w, C)
        return frozenset(i for i in A if self.rs.simple(i) in img)

    def inversions(self, w: WeylElement) -> frozenset:
        """Positive roots sent negative by ``w``."""
        return frozenset(r for r in self.rs.positive if not is_positive(self.act(w, r)))

    def parabolic(self, D) -> list[WeylElement]:
        """The subgroup ``W_D`` generated by the simple reflections in ``D``."""
        return _parabolic(self, frozenset(D))

    def in_parabolic(self, w: WeylElement, D) -> bool:
        # w is in W_D iff every inversion of w lies in the span of D
        D = frozenset(D)
        return all(in_span(r, D) for r in self.inversions(w))

    def is_min_rep(self, w: WeylElement, A=(), C=()) -> bool:
        """``w^{-1}(A) ⊂ Δ^+`` and ``w(C) ⊂ Δ^+``."""
        winv = self.inverse(w)
        return all(is_positive(r) for r in self.simple_image(winv, A)) and all(
            is_positive(r) for r in self.simple_image(w, C)
        )

    def min_reps(self, A=(), C=(), within=None) -> list[WeylElement]:
        """Minimal length representatives of ``W_A \\ W_within / W_C``.

        ``within=None`` means the whole group. ``A`` and ``C`` must be
        subsets of ``within`` when it is given.
        """
        A, C = frozenset(A), frozenset(C)
        pool = self.elements if within is None else self.parabolic(within)
        if within is not None and not (A <= frozenset(within) and C <= frozenset(within)):
            raise WeylError("A and C must lie inside the ambient parabolic subset")
        return [w for w in pool if self.is_min_rep(w, A, C)]

    def double_coset(self, A, w: WeylElement, C) -> frozenset:
        WA, WC = self.parabolic(A), self.parabolic(C)
        return frozenset(self.mul(self.mul(x, w), y) for x in WA for y in WC)

    def min_rep_of(self, A, w: WeylElement, C) -> WeylElement:
        return min(self.double_coset(A, w, C), key=lambda x: (x.length, x.word))


@lru_cache(maxsize=None)
def _simple_perm(rs: RootSystem, i: int) -> tuple[int, ...]:
    return tuple(rs.index[reflect(rs, i, r)] for r in rs.roots)


def _parabolic(W: WeylGroup, D: frozenset) -> list[WeylElement]:
    cache = W.__dict__.setdefault("_parabolic_cache", {})
    if D not in cache:
        seen = {W.identity.perm}
        queue = deque([W.identity])
        out = [W.identity]
        while queue:
            w = queue.popleft()
            for i in sorted(D):
                x = W.mul(w, W.simple_reflections[i])
                if x.perm not in seen:
                    seen.add(x.perm)
                    out.append(x)
                    queue.append(x)
        cache[D] = out
    return cache[D]


def generate(rs: RootSystem, order=None) -> WeylGroup:
    """Breadth-first closure over right multiplication by simple reflections.

    The BFS path to each element is a reduced word. ``order`` permutes the
    order in which generators are tried, which changes the chosen words.
    """
    n = len(rs.roots)
    gens = [_simple_perm(rs, i) for i in range(rs.rank)]
    order = list(range(rs.rank)) if order is None else list(order)
    ident = tuple(range(n))
    words = {ident: ()}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for i in order:
            q = tuple(p[gens[i][k]] for k in range(n))
            if q not in words:
                words[q] = words[p] + (i,)
                queue.append(q)
    pos = [rs.index[r] for r in rs.positive]
    npos = len(rs.positive)
    elements = []
    for p, word in words.items():
        length = sum(1 for k in pos if p[k] >= npos)
        if length != len(word):
            raise WeylError("BFS word is not reduced")
        elements.append(WeylElement(p, word, length))
    elements.sort(key=lambda w: (w.length, w.word))
    return WeylGroup(rs, elements)


def parabolic_factorize(W: WeylGroup, v: WeylElement, D, A, C):
    """Write ``v = u w`` with ``w ∈ ^A W^C`` and ``u ∈ ^D W_A^{A ∩ w(C)}``.

    Requires ``D ⊆ A`` and ``v ∈ ^D W^C``. The factor ``w`` is the minimal
    element of ``W_A v W_C``; the call checks that ``u`` lands in the stated
    set and that lengths add.
    """
    D, A, C = frozenset(D), frozenset(A), frozenset(C)
    if not D <= A:
        raise WeylError(f"D={sorted(D)} is not contained in A={sorted(A)}")
    if not W.is_min_rep(v, D, C):
        raise WeylError(f"{v!r} is not in ^D W^C for D={sorted(D)}, C={sorted(C)}")
    w = W.min_rep_of(A, v, C)
    u = W.mul(v, W.inverse(w))
    E = W.simple_meet(A, w, C)
    if not (W.in_parabolic(u, A) and W.is_min_rep(u, D, E)):
        raise WeylError(f"factor {u!r} of {v!r} is not in ^D W_A^(A∩w(C))")
    if u.length + w.length != v.length:
        raise WeylError(f"lengths do not add for {v!r} = {u!r} {w!r}")
    return u, w


def parabolic_factorize_right(W: WeylGroup, v: WeylElement, A, E, C):
    """Mirror factorization ``v = w u`` with ``w ∈ ^A W^C``, ``u ∈ ^{w^{-1}(A) ∩ C} W_C^E``.

    Obtained by factoring ``v^{-1}`` with the roles of the sides swapped.
    """
    u_inv, w_inv = parabolic_factorize(W, W.inverse(v), E, C, A)
    return W.inverse(w_inv), W.inverse(u_inv)


def cap_identity_check(W: WeylGroup, A, C, w: WeylElement) -> bool:
    """Direct set comparison of ``Δ_A^+ ∩ w(Δ_C^+) = Δ^+_{A∩w(C)}`` and
    ``A ∩ w(Δ_C^+) = A ∩ w(C)``."""
    rs = W.rs
    if not W.is_min_rep(w, A, C):
        raise WeylError(f"{w!r} is not a minimal double coset representative")
    pos_A = positive_sub_system(rs, A)
    w_pos_C = W.act_set(w, positive_sub_system(rs, C))
    meet = W.simple_meet(A, w, C)
    first = (pos_A & w_pos_C) == positive_sub_system(rs, meet)
    simple_A = frozenset(rs.simple(i) for i in A)
    second = (simple_A & w_pos_C) == frozenset(rs.simple(i) for i in meet)
    return first and second


def all_factorizations(W: WeylGroup, v: WeylElement, D, A, C) -> list:
    """Every ``(u, w)`` with ``v = u w``, ``w ∈ ^A W^C``, ``u ∈ ^D W_A^{A ∩ w(C)}`` and
    ``l(v) = l(u) + l(w)``, found by scanning all of ``^A W^C``."""
    out = []
    for w in W.min_reps(A, C):
        u = W.mul(v, W.inverse(w))
        if not W.in_parabolic(u, A):
            continue
        if W.is_min_rep(u, D, W.simple_meet(A, w, C)) and u.length + w.length == v.length:
            out.append((u, w))
    return out
