"""Orbit partitions by connected components of generator graphs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from doublecoset.oracle.groups import standard_subgroups
from doublecoset.oracle.pairs import ProductGroup, small_generators


@dataclass
class Partition:
    labels: np.ndarray
    count: int

    def classes(self) -> list[frozenset]:
        out: list[set] = [set() for _ in range(self.count)]
        for i, lab in enumerate(self.labels.tolist()):
            out[lab].add(i)
        return [frozenset(s) for s in out]

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.count)


def orbit_partition(n: int, images) -> Partition:
    """Components of the graph on ``range(n)`` with edges ``i -> img[i]`` for each array."""
    src = [np.arange(n)]
    dst = [np.arange(n)]
    for img in images:
        src.append(np.arange(n))
        dst.append(np.asarray(img, dtype=np.int64))
    s, d = np.concatenate(src), np.concatenate(dst)
    g = coo_matrix((np.ones(len(s), dtype=np.int8), (s, d)), shape=(n, n)).tocsr()
    count, raw = connected_components(g, directed=True, connection="weak")
    # relabel by first occurrence so labels do not depend on scipy internals
    _, first = np.unique(raw, return_index=True)
    order = np.argsort(first)
    remap = np.empty(count, dtype=np.int64)
    remap[order] = np.arange(count)
    return Partition(remap[raw], int(count))


def double_cosets(GG: ProductGroup, RA, RC) -> Partition:
    """``R_A \\ G1 x G2 / R_C`` by components under left and right generators."""
    pts = np.arange(GG.order, dtype=np.int64)
    images = []
    for r in small_generators(GG, RA):
        images.append(GG.mul_arr(np.full_like(pts, r), pts))
    for r in small_generators(GG, RC):
        images.append(GG.mul_arr(pts, np.full_like(pts, r)))
    return orbit_partition(GG.order, images)


def subgroup_orbits(group, S, points, act) -> Partition:
    """Orbits of the subgroup ``S`` of ``group`` on a point list under ``act(s, x)``."""
    points = list(points)
    pos = {x: i for i, x in enumerate(points)}
    images = []
    for s in small_generators(group, S):
        images.append([pos[act(s, x)] for x in points])
    return orbit_partition(len(points), images)


def coset_labels(G, PC) -> np.ndarray:
    """Label ``g`` by the least element of ``g P_C``."""
    P = np.fromiter(sorted(PC), dtype=np.int64)
    return G.table[:, P].min(axis=1)


def flag_orbits(GG: ProductGroup, RA, C1, C2):
    """``R_A``-orbits on ``G1/P_C1 x G2/P_C2``; returns the partition and the coset list."""
    G1, G2 = GG.G1, GG.G2
    lab1 = coset_labels(G1, standard_subgroups(G1, C1).P)
    lab2 = coset_labels(G2, standard_subgroups(G2, C2).P)
    cos1, cos2 = np.unique(lab1), np.unique(lab2)
    n2 = len(cos2)
    pos1 = {int(x): i for i, x in enumerate(cos1)}
    pos2 = {int(x): i for i, x in enumerate(cos2)}
    images = []
    for r in small_generators(GG, RA):
        r1, r2 = GG.dec(r)
        im1 = [pos1[int(lab1[G1.table[r1, x]])] for x in cos1]
        im2 = [pos2[int(lab2[G2.table[r2, x]])] for x in cos2]
        images.append([im1[i] * n2 + im2[j] for i in range(len(cos1)) for j in range(n2)])
    part = orbit_partition(len(cos1) * n2, images)

    def locate(g1, g2):
        return pos1[int(lab1[g1])] * n2 + pos2[int(lab2[g2])]

    return part, locate
