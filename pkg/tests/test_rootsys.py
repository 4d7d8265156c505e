import pytest
from hypothesis import given
from hypothesis import strategies as st

from doublecoset.rootsys import (
    SUPPORTED,
    RootSystemError,
    build_root_system,
    cartan_matrix,
    in_span,
    is_positive,
    positive_sub_system,
    reflect,
    sub_system,
)

POSITIVE_COUNTS = {"A1": 1, "A2": 3, "A3": 6, "A4": 10, "B2": 4, "B3": 9, "B4": 16, "C3": 9, "C4": 16, "D4": 12, "G2": 6}


@pytest.mark.parametrize("kind,npos", sorted(POSITIVE_COUNTS.items()))
def test_root_counts(kind, npos):
    rs = build_root_system(kind)
    assert len(rs.positive) == npos
    assert len(rs.roots) == 2 * npos


def test_small_examples():
    assert len(build_root_system("A1").roots) == 2
    assert len(build_root_system("A2").roots) == 6
    assert len(build_root_system("B2").roots) == 8


def test_product_type():
    rs = build_root_system("A1xA1")
    assert rs.rank == 2 and len(rs.positive) == 2
    assert rs.cartan == ((2, 0), (0, 2))


def test_cartan_shapes():
    assert cartan_matrix("G2") == ((2, -3), (-1, 2))
    b2 = cartan_matrix("B2")
    assert b2[1][0] == -2 and b2[0][1] == -1
    c3 = cartan_matrix("C3")
    assert c3[1][2] == -2


def test_reflection_examples():
    rs = build_root_system("A2")
    assert reflect(rs, 0, (1, 0)) == (-1, 0)
    assert reflect(rs, 0, (0, 1)) == (1, 1)
    assert reflect(rs, 1, (1, 1)) == (1, 0)


def test_sub_systems():
    rs = build_root_system("A2")
    assert sub_system(rs, ()) == frozenset()
    assert sub_system(rs, (0,)) == {(1, 0), (-1, 0)}
    assert sub_system(rs, (0, 1)) == frozenset(rs.roots)
    assert positive_sub_system(rs, (0,)) == {(1, 0)}
    assert in_span((1, 0), {0}) and not in_span((1, 1), {0})


@pytest.mark.parametrize("bad", ["E8", "A9", "Z2", "", "B1"])
def test_rejects_unsupported(bad):
    with pytest.raises(RootSystemError):
        build_root_system(bad)


def test_rejects_bad_subset():
    with pytest.raises(RootSystemError):
        sub_system(build_root_system("A2"), (5,))


@given(st.sampled_from(SUPPORTED), st.data())
def test_reflections_permute_roots(kind, data):
    rs = build_root_system(kind)
    i = data.draw(st.integers(0, rs.rank - 1))
    beta = data.draw(st.sampled_from(rs.roots))
    image = reflect(rs, i, beta)
    assert image in rs.index
    assert reflect(rs, i, image) == beta
    # s_i permutes the positive roots other than alpha_i
    if is_positive(beta) and beta != rs.simple(i):
        assert is_positive(image)
