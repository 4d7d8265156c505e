"""Tangent-space dimensions for the finite instances.

Orbit dimensions are ranks over ``F_q`` of the differential of the orbit map
at an ``F_q``-point. The center term uses integer lifts and is computed over
the rationals, since Lie algebras of centers jump in small characteristic.
"""

from __future__ import annotations

import numpy as np
from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from doublecoset.classify import DimensionReport, dimension, group_dims


def _field(q):
    return QQ if q is None else GF(q)


def _dm(rows, ncols, K) -> DomainMatrix:
    rows = [list(r) for r in rows]
    return DomainMatrix([[K(int(x)) for x in r] for r in rows], (len(rows), ncols), K)


def _rows(M: DomainMatrix) -> DomainMatrix:
    """Row-reduced basis of the row space."""
    if M.shape[0] == 0:
        return M
    R, piv = M.rref()
    return R[: len(piv), :] if piv else DomainMatrix.zeros((0, M.shape[1]), M.domain)


def rank(M: DomainMatrix) -> int:
    return 0 if M.shape[0] == 0 else M.rank()


def intersect(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    """Basis of ``rowspace(A) ∩ rowspace(B)``."""
    n, K = A.shape[1], A.domain
    A, B = _rows(A), _rows(B)
    if A.shape[0] == 0 or B.shape[0] == 0:
        return DomainMatrix.zeros((0, n), K)
    coeffs = A.vstack(B).transpose().nullspace()
    if coeffs.shape[0] == 0:
        return DomainMatrix.zeros((0, n), K)
    return _rows(coeffs[:, : A.shape[0]] * A)


def levi_basis(n, D, sl=True):
    """Integer basis of ``m_D`` inside ``gl_n``, trace free when ``sl``."""
    from doublecoset.oracle.groups import FinGroup

    blocks = FinGroup.blocks_of(n, D)
    out = []
    for i in range(n):
        for j in range(n):
            if blocks[i] == blocks[j] and i != j:
                m = np.zeros((n, n), dtype=np.int64)
                m[i, j] = 1
                out.append(m.ravel())
    for i in range(n - 1 if sl else n):
        m = np.zeros((n, n), dtype=np.int64)
        m[i, i] = 1
        if sl:
            m[i + 1, i + 1] = -1
        out.append(m.ravel())
    return out


def center_basis(n, D, sl, K) -> DomainMatrix:
    """Block scalar matrices in ``m_D`` (trace free when ``sl``)."""
    from doublecoset.oracle.groups import FinGroup

    blocks = FinGroup.blocks_of(n, D)
    ids = sorted(set(blocks))
    scal = [np.diag([1 if b == k else 0 for b in blocks]).ravel() for k in ids]
    S = _dm(scal, n * n, K)
    if not sl:
        return S
    sizes = _dm([[blocks.count(k) for k in ids]], len(ids), K)
    null = sizes.nullspace()
    if null.shape[0] == 0:
        return DomainMatrix.zeros((0, n * n), K)
    return _rows(null * S)


def conj_matrix(g, ginv, K) -> DomainMatrix:
    """Matrix of ``X -> g X g^-1`` acting on row-major flattened row vectors."""
    n = g.shape[0]
    M = np.einsum("ij,kl->jkil", g, ginv).reshape(n * n, n * n)
    return _dm(M, n * n, K)


def _pad(M: DomainMatrix, side, nn) -> DomainMatrix:
    Z = DomainMatrix.zeros((M.shape[0], nn), M.domain)
    return M.hstack(Z) if side == 0 else Z.hstack(M)


def _block(A, B) -> DomainMatrix:
    nn, K = A.shape[0], A.domain
    Z = DomainMatrix.zeros((nn, nn), K)
    return A.hstack(Z).vstack(Z.hstack(B))


def pair_lie(pd, n, sl, K) -> DomainMatrix:
    """Lie algebra of ``K`` as rows ``(X, Y)`` in ``gl_n ⊕ gl_n``."""
    rows = []
    for x in levi_basis(n, pd.iso.domain, sl):
        y = pd.theta.lie(x.reshape(n, n)).ravel()
        rows.append(np.concatenate([x, y]))
    M = _dm(rows, 2 * n * n, K)
    if pd.kind == "center":
        M = M.vstack(_pad(center_basis(n, pd.iso.domain, sl, K), 0, n * n))
        M = M.vstack(_pad(center_basis(n, pd.iso.range, sl, K), 1, n * n))
    return _rows(M)


def _levi_pair(n, D1, D2, sl, K):
    A = _pad(_dm(levi_basis(n, D1, sl), n * n, K), 0, n * n)
    B = _pad(_dm(levi_basis(n, D2, sl), n * n, K), 1, n * n)
    return A.vstack(B)


def _mats(sc, param, lifted):
    if lifted:
        g1 = sc.reps1.integer_matrix(param.v1)
        g2 = sc.reps2.integer_matrix(param.v2)
        return g1, np.rint(np.linalg.inv(g1)).astype(np.int64), g2, np.rint(np.linalg.inv(g2)).astype(np.int64)
    G1, G2 = sc.G1, sc.G2
    v1, v2 = sc.reps1(param.v1), sc.reps2(param.v2)
    return G1.matrix(v1), G1.matrix(int(G1.inv[v1])), G2.matrix(v2), G2.matrix(int(G2.inv[v2]))


def twisted_lie(sc, param, q=None):
    """Lie algebras of ``K(v1, v2)`` and ``L(v1, v2)``."""
    K = _field(q)
    n, sl = sc.G1.n, sc.G1.kind == "SL"
    nn = n * n
    g1, g1i, g2, g2i = _mats(sc, param, q is None)
    I = conj_matrix(np.eye(n, dtype=np.int64), np.eye(n, dtype=np.int64), K)
    box = _levi_pair(n, param.A1vv, param.C2vv, sl, K)
    kv = intersect(box, pair_lie(sc.Kp, n, sl, K) * _block(I, conj_matrix(g2i, g2, K)))
    lv = intersect(box, pair_lie(sc.Lp, n, sl, K) * _block(conj_matrix(g1, g1i, K), I))
    return kv, lv


def j_lie(kv: DomainMatrix, lv: DomainMatrix, nn) -> DomainMatrix:
    """``{(X, X') : (X, Y) ∈ k(v), (X', Y) ∈ l(v)}`` as rows in ``gl ⊕ gl``."""
    K = kv.domain
    if kv.shape[0] == 0 or lv.shape[0] == 0:
        return DomainMatrix.zeros((0, 2 * nn), K)
    Y = kv[:, nn:].vstack(-lv[:, nn:])
    coeffs = Y.transpose().nullspace()
    if coeffs.shape[0] == 0:
        return DomainMatrix.zeros((0, 2 * nn), K)
    a, b = coeffs[:, : kv.shape[0]], coeffs[:, kv.shape[0]:]
    return _rows((a * kv[:, :nn]).hstack(b * lv[:, :nn]))


def orbit_dim(sc, param, m1) -> int:
    """Rank over ``F_q`` of ``(X, X') -> X - m1 X' m1^-1`` on the Lie algebra of ``J(v1, v2)``."""
    G1 = sc.G1
    n, q = G1.n, G1.q
    nn = n * n
    K = GF(q)
    kv, lv = twisted_lie(sc, param, q)
    J = j_lie(kv, lv, nn)
    if J.shape[0] == 0:
        return 0
    C = conj_matrix(G1.matrix(m1), G1.matrix(int(G1.inv[m1])), K)
    return rank(J[:, :nn] - J[:, nn:] * C)


def z_term(sc, param) -> int:
    """``dim η2((k + l) ∩ (Ad_{v1}^-1 z_A1(v) ⊕ Ad_{v2} z_C2(v)))`` over the rationals."""
    n, sl = sc.G1.n, sc.G1.kind == "SL"
    nn = n * n
    g1, g1i, g2, g2i = _mats(sc, param, True)
    kl = pair_lie(sc.Kp, n, sl, QQ).vstack(pair_lie(sc.Lp, n, sl, QQ))
    z1 = center_basis(n, param.A1vv, sl, QQ)
    z2 = center_basis(n, param.C2vv, sl, QQ)
    Zs = _pad(z1 * conj_matrix(g1i, g1, QQ), 0, nn).vstack(_pad(z2 * conj_matrix(g2, g2i, QQ), 1, nn))
    meet = intersect(kl, Zs)
    return rank(meet[:, nn:]) if meet.shape[0] else 0


def class_dim_commutant(G, m) -> int:
    """``n^2 - dim {X : m X = X m}``, the conjugacy class dimension read off the commutant."""
    n, K = G.n, GF(G.q)
    g, gi = G.matrix(m), G.matrix(int(G.inv[m]))
    C = conj_matrix(g, gi, K) - conj_matrix(np.eye(n, dtype=np.int64), np.eye(n, dtype=np.int64), K)
    return rank(C)


def dimension_report(sc, param, m1) -> DimensionReport:
    rank1, rank2 = sc.G1.rankH, sc.G2.rankH
    return dimension(
        param, sc.W1, sc.W2, sc.a, sc.c, rank1, rank2, z_term(sc, param), orbit_dim(sc, param, m1)
    )


def borel_dim(G) -> int:
    return group_dims(G.rs, (), G.rankH)[0]
