from fractions import Fraction

import pytest

from srbkit.rootsys import (
    SUPPORTED,
    UnsupportedRootSystem,
    build_root_system,
    close_positive_roots,
    exponents,
    gram_dual,
    simple_reflection_matrix,
)

ALL = [(f, r) for f, ranks in SUPPORTED.items() for r in ranks]


def test_a2():
    rs = build_root_system("A", 2)
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1)}
    assert rs.coxeter_number == 3


@pytest.mark.parametrize("family,rank,npos,h,exps", [
    ("A", 1, 1, 2, (1,)),
    ("B", 2, 4, 4, (1, 3)),
    ("G", 2, 6, 6, (1, 5)),
    ("A", 3, 6, 4, (1, 2, 3)),
    ("B", 3, 9, 6, (1, 3, 5)),
    ("C", 3, 9, 6, (1, 3, 5)),
    ("D", 4, 12, 6, (1, 3, 3, 5)),
])
def test_counts(family, rank, npos, h, exps):
    rs = build_root_system(family, rank)
    assert len(rs.positive_roots) == npos
    assert rs.coxeter_number == h
    assert exponents(rs) == exps


def test_gram():
    F = Fraction
    assert gram_dual(build_root_system("A", 2)).entries == ((F(2), F(-1)), (F(-1), F(2)))
    assert gram_dual(build_root_system("A", 1)).entries == ((F(2),),)
    assert gram_dual(build_root_system("B", 2)).entries == ((F(2), F(-1)), (F(-1), F(1)))


def test_labeling():
    # B: last simple root short; C: last simple root long; G2: first short
    b3 = build_root_system("B", 3).gram_dual.entries
    c3 = build_root_system("C", 3).gram_dual.entries
    g2 = build_root_system("G", 2).gram_dual.entries
    assert b3[2][2] < b3[0][0]
    assert c3[2][2] > c3[0][0]
    assert g2[0][0] < g2[1][1]


def test_reflection_a2():
    R = simple_reflection_matrix(build_root_system("A", 2), 0)
    assert R[0] == (-1, 0)  # s1(x1) = -x1
    assert R[1] == (1, 1)  # s1(x2) = x1 + x2


def test_reflection_g2_long_short():
    R = simple_reflection_matrix(build_root_system("G", 2), 0)
    assert R[1] == (3, 1)  # s1(x2) = x2 + 3 x1 with a1 short


def test_reflection_index_out_of_range():
    with pytest.raises(IndexError):
        simple_reflection_matrix(build_root_system("A", 2), 2)


def test_unsupported():
    with pytest.raises(UnsupportedRootSystem, match="supported"):
        build_root_system("E", 6)
    with pytest.raises(UnsupportedRootSystem):
        build_root_system("D", 3)


def _apply(R, v):
    # row vector of root coordinates transforms by s_i(sum v_j x_j) = sum_j v_j sum_m R[j][m] x_m
    n = len(v)
    return tuple(sum(v[j] * R[j][m] for j in range(n)) for m in range(n))


@pytest.mark.parametrize("family,rank", ALL)
def test_invariants(family, rank):
    rs = build_root_system(family, rank)
    l = rank
    pos = set(rs.positive_roots)
    assert 2 * len(pos) == l * rs.coxeter_number
    assert sum(rs.exponents) == len(pos)
    assert rs.gram_dual.is_symmetric()
    assert set(close_positive_roots(rs.cartan, list(pos))) == pos
    g = rs.gram_dual.entries
    for i in range(l):
        for j in range(l):
            assert rs.cartan[i][j] == 2 * g[i][j] / g[i][i]
    for i in range(l):
        R = rs.simple_reflections[i]
        assert _apply(R, rs.simple_roots[i]) == tuple(-c for c in rs.simple_roots[i])
        squared = [_apply(R, row) for row in R]
        assert squared == [tuple(int(a == b) for b in range(l)) for a in range(l)]
        rest = pos - {rs.simple_roots[i]}
        assert {_apply(R, r) for r in rest} == rest
        assert {rs.reflect_root(i, r) for r in rest} == rest
    for i in range(l):
        assert rs.exponents[i] + rs.exponents[l - 1 - i] == rs.coxeter_number


def test_json_shape():
    data = build_root_system("G", 2).to_json()
    assert data["gramDual"] == [["2/3", "-1"], ["-1", "2"]]
    assert len(data["positiveRoots"]) == 6
