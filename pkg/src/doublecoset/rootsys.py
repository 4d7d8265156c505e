"""Finite root systems in the simple-root basis.

Roots are integer tuples of simple-root coordinates. The Cartan matrix
convention is ``cartan[i][j] = <alpha_j, alpha_i^vee>``, so the simple
reflection ``s_i`` sends ``beta`` to ``beta - (sum_j beta_j cartan[i][j]) alpha_i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

SUPPORTED = ("A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2")


class RootSystemError(ValueError):
    pass


def cartan_matrix(kind: str) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix of an irreducible type such as ``"B3"``."""
    if kind not in SUPPORTED:
        raise RootSystemError(f"unsupported root system type {kind!r}; expected one of {SUPPORTED}")
    letter, n = kind[0], int(kind[1:])
    if letter == "G":
        return ((2, -3), (-1, 2))
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if letter == "B":
        # alpha_n short
        a[n - 1][n - 2] = -2
    elif letter == "C":
        # alpha_n long
        a[n - 2][n - 1] = -2
    elif letter == "D":
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    return tuple(tuple(row) for row in a)


def _block_diag(blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return tuple(tuple(row) for row in out)


@dataclass(frozen=True)
class RootSystem:
    name: str
    cartan: tuple[tuple[int, ...], ...]
    roots: tuple[tuple[int, ...], ...] = field(compare=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def positive(self) -> tuple[tuple[int, ...], ...]:
        return tuple(r for r in self.roots if is_positive(r))

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {r: k for k, r in enumerate(self.roots)}

    def simple(self, i: int) -> tuple[int, ...]:
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def simple_index(self, root) -> int | None:
        """Index ``i`` if ``root`` is the simple root ``alpha_i``, else None."""
        root = tuple(root)
        if sum(root) == 1 and all(c in (0, 1) for c in root):
            return root.index(1)
        return None

    def pairing(self, beta, i: int) -> int:
        """``<beta, alpha_i^vee>``."""
        row = self.cartan[i]
        return sum(b * row[j] for j, b in enumerate(beta))

    def __repr__(self):
        return f"RootSystem({self.name})"


def is_positive(root) -> bool:
    return all(c >= 0 for c in root) and any(c > 0 for c in root)


def _reflect(cartan, i, beta):
    p = sum(b * cartan[i][j] for j, b in enumerate(beta))
    out = list(beta)
    out[i] -= p
    return tuple(out)


def _close(cartan) -> tuple[tuple[int, ...], ...]:
    n = len(cartan)
    simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                gamma = _reflect(cartan, i, beta)
                if gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    pos = sorted((r for r in seen if is_positive(r)), key=lambda r: (sum(r), r))
    neg = [tuple(-c for c in r) for r in pos]
    if len(pos) + len(neg) != len(seen):
        raise RootSystemError("reflection closure is not symmetric under negation")
    return tuple(pos) + tuple(neg)


def build_root_system(kind: str) -> RootSystem:
    """Build a root system from a type string.

    Irreducible types are listed in ``SUPPORTED``; products such as
    ``"A1xA1"`` give the orthogonal sum with simple roots numbered
    consecutively.
    """
    parts = [p for p in re.split(r"[x×]", kind.strip()) if p]
    if not parts:
        raise RootSystemError(f"empty root system type {kind!r}")
    cartan = _block_diag([cartan_matrix(p) for p in parts])
    if len(cartan) > 4:
        raise RootSystemError(f"rank {len(cartan)} exceeds the supported maximum of 4")
    return RootSystem("x".join(parts), cartan, _close(cartan))


def reflect(rs: RootSystem, i: int, beta) -> tuple[int, ...]:
    beta = tuple(beta)
    if beta not in rs.index:
        raise RootSystemError(f"{beta} is not a root of {rs.name}")
    if not 0 <= i < rs.rank:
        raise RootSystemError(f"simple index {i} out of range for {rs.name}")
    return _reflect(rs.cartan, i, beta)


def in_span(root, D) -> bool:
    return all(c == 0 for k, c in enumerate(root) if k not in D)


def sub_system(rs: RootSystem, D) -> frozenset:
    """Roots in the integer span of the simple roots indexed by ``D``."""
    D = frozenset(D)
    if not D <= set(range(rs.rank)):
        raise RootSystemError(f"{sorted(D)} is not a set of simple indices of {rs.name}")
    return frozenset(r for r in rs.roots if in_span(r, D))


def positive_sub_system(rs: RootSystem, D) -> frozenset:
    return frozenset(r for r in sub_system(rs, D) if is_positive(r))
