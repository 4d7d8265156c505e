"""Coset parameters, root-counting dimensions and the reduction step."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from doublecoset.isometry import PartialIsometry, induced_isometries, stable_subset, weyl_simple_map
from doublecoset.rootsys import is_positive, positive_sub_system


class InvariantViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class CosetParameter:
    v1: object
    v2: object
    A1vv: frozenset
    C2vv: frozenset
    v2inv_a: PartialIsometry
    c_v1inv: PartialIsometry
    d: PartialIsometry

    def label(self):
        return (self.v1.word_str(), self.v2.word_str())


def enumerate_parameters(W1, W2, a: PartialIsometry, c: PartialIsometry) -> list[CosetParameter]:
    """All ``(v1, v2)`` with ``v1 ∈ W1^{C1}``, ``v2 ∈ ^{A2}W2``, with their stable data."""
    out = []
    for v1 in W1.min_reps((), c.domain):
        for v2 in W2.min_reps(a.range, ()):
            A1vv, C2vv = stable_subset(W1, W2, a, c, v1, v2)
            f, g, d = induced_isometries(W1, W2, a, c, v1, v2, A1vv, C2vv)
            if not (W1.is_min_rep(v1, A1vv, c.domain) and W2.is_min_rep(v2, a.range, C2vv)):
                raise InvariantViolation(f"({v1!r}, {v2!r}) is not minimal for the stable subsets")
            out.append(CosetParameter(v1, v2, A1vv, C2vv, f, g, d))
    return out


def dim_U(rs, D) -> int:
    return len(rs.positive) - len(positive_sub_system(rs, D))


def group_dims(rs, D, rankH: int):
    """``(dim P_D, dim M_D, dim U_D, dim Z_D)`` for a reductive group of torus rank ``rankH``."""
    if rankH < rs.rank:
        raise ValueError(f"torus rank {rankH} is smaller than the semisimple rank {rs.rank}")
    npos_D = len(positive_sub_system(rs, D))
    dimU = len(rs.positive) - npos_D
    dimM = rankH + 2 * npos_D
    return dimM + dimU, dimM, dimU, rankH - len(frozenset(D))


def intersection_dims(W, A, C, w):
    """Root counts of ``U^A_{A∩w(C)}``, ``U_A ∩ w(U_C)`` and ``w(U^C_{w^{-1}(A)∩C})``."""
    rs = W.rs
    A, C = frozenset(A), frozenset(C)
    if not W.is_min_rep(w, A, C):
        raise ValueError(f"{w!r} is not a minimal (W_A, W_C) representative")
    AwC = W.simple_meet(A, w, C)
    winvA_C = W.simple_meet(C, W.inverse(w), A)
    first = len(positive_sub_system(rs, A)) - len(positive_sub_system(rs, AwC))
    pos_A = positive_sub_system(rs, A)
    pos_C = positive_sub_system(rs, C)
    winv = W.inverse(w)
    second = 0
    for beta in rs.positive:
        if beta in pos_A:
            continue
        gamma = W.act(winv, beta)
        if is_positive(gamma) and gamma not in pos_C:
            second += 1
    third = len(pos_C) - len(positive_sub_system(rs, winvA_C))
    return first, second, third


def lemma_int_holds(W, A, C, w) -> bool:
    first, second, third = intersection_dims(W, A, C, w)
    rs = W.rs
    return (
        first + second == dim_U(rs, C) - w.length
        and third + second == dim_U(rs, A) - w.length
    )


def stab_u_dim(param: CosetParameter, W1, W2, a, c) -> int:
    """``dim U_{C1} + dim U_{A2} - l(v1) - l(v2)``."""
    n = dim_U(W1.rs, c.domain) + dim_U(W2.rs, a.range) - param.v1.length - param.v2.length
    if n < 0:
        raise InvariantViolation(f"negative unipotent stabilizer dimension at {param.label()}")
    return n


@dataclass(frozen=True)
class DimensionReport:
    l1: int
    l2: int
    dimP_A1: int
    dimM_A1vv: int
    dimP_C2: int
    dimZ_C2vv: int
    z_term: int
    orbit_dim: int

    @property
    def total(self) -> int:
        return (
            self.l1 + self.l2 + self.dimP_A1 - self.dimM_A1vv + self.dimP_C2
            - self.dimZ_C2vv + self.z_term + self.orbit_dim
        )

    def as_dict(self):
        out = asdict(self)
        out["total"] = self.total
        return out


def dimension(param: CosetParameter, W1, W2, a, c, rankH1, rankH2, z_term, orbit_dim) -> DimensionReport:
    """Assemble the double coset dimension from root data plus the two supplied terms."""
    dimP_A1 = group_dims(W1.rs, a.domain, rankH1)[0]
    dimM_A1vv = group_dims(W1.rs, param.A1vv, rankH1)[1]
    dimP_C2 = group_dims(W2.rs, c.range, rankH2)[0]
    dimZ_C2vv = group_dims(W2.rs, param.C2vv, rankH2)[3]
    return DimensionReport(
        param.v1.length, param.v2.length, dimP_A1, dimM_A1vv, dimP_C2, dimZ_C2vv, z_term, orbit_dim
    )


def bruhat_z_term(rankH2: int) -> int:
    """Empty isometries with ``K = L = H1 x H2``: the term is the full torus of ``G2``."""
    return rankH2


def graph_z_term() -> int:
    """Graphs of isomorphisms between groups with finite centers contribute nothing."""
    return 0


@dataclass(frozen=True)
class ReductionData:
    A1new: frozenset
    A2new: frozenset
    C1new: frozenset
    C2new: frozenset
    a_new: PartialIsometry
    c_new: PartialIsometry


def reduction_data(W1, W2, a: PartialIsometry, c: PartialIsometry, w1, w2) -> ReductionData:
    """Subsets and isometries ``w2^{-1} a`` and ``c w1^{-1}`` of the Levi-level pairs."""
    A1, A2, C1, C2 = a.domain, a.range, c.domain, c.range
    if not W1.is_min_rep(w1, A1, C1):
        raise ValueError(f"w1={w1!r} is not in ^A1 W1^C1")
    if not W2.is_min_rep(w2, A2, C2):
        raise ValueError(f"w2={w2!r} is not in ^A2 W2^C2")
    D2 = W2.simple_meet(A2, w2, C2)
    A1new = a.preimage(D2)
    A2new = W2.simple_meet(C2, W2.inverse(w2), A2)
    C1new = W1.simple_meet(A1, w1, C1)
    C2new = c.image(W1.simple_meet(C1, W1.inverse(w1), A1))
    w2inv = weyl_simple_map(W2, W2.inverse(w2), A2)
    w1inv = weyl_simple_map(W1, W1.inverse(w1), A1)
    am, cm = a.map, c.map
    a_new = PartialIsometry(W1.rs, W2.rs, tuple((i, w2inv[am[i]]) for i in sorted(A1new)))
    c_new = PartialIsometry(W1.rs, W2.rs, tuple((i, cm[w1inv[i]]) for i in sorted(C1new)))
    if a_new.range != A2new or c_new.range != C2new:
        raise InvariantViolation("new isometries do not land on the new subsets")
    return ReductionData(A1new, A2new, C1new, C2new, a_new, c_new)


def factor_pair(W1, W2, a, c, v1, v2):
    """``v1 = u1 w1`` and ``v2 = w2 u2`` with ``w_i`` minimal double coset representatives."""
    from doublecoset.weyl import parabolic_factorize, parabolic_factorize_right

    u1, w1 = parabolic_factorize(W1, v1, (), a.domain, c.domain)
    w2, u2 = parabolic_factorize_right(W2, v2, a.range, (), c.range)
    return u1, w1, w2, u2


def induction_stable_subset(W1, W2, a, c, v1, v2):
    """Stable subset of ``(u1, u2)`` computed inside the Levi-level data of ``(w1, w2)``."""
    u1, w1, w2, u2 = factor_pair(W1, W2, a, c, v1, v2)
    red = reduction_data(W1, W2, a, c, w1, w2)
    return stable_subset(W1, W2, red.a_new, red.c_new, u1, u2)[0]
