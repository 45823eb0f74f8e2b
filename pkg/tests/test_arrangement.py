import pytest

from srbkit.arrangement import (
    b_gamma,
    catalan_arrangement,
    cone,
    cone_form,
    shi_arrangement,
    ziegler_multiplicity,
)
from srbkit.exactalg import LinearForm
from srbkit.rootsys import SUPPORTED, build_root_system

A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)


def test_shi_counts():
    assert len(shi_arrangement(A2, 1)) == 6
    assert len(shi_arrangement(build_root_system("B", 2), 2)) == 16
    assert shi_arrangement(A1, 1).hyperplanes == (((1,), 0), ((1,), 1))
    with pytest.raises(ValueError):
        shi_arrangement(A2, 0)


def test_catalan_counts():
    assert len(catalan_arrangement(A2, 1)) == 9
    assert {a for a, _ in catalan_arrangement(A2, 0).hyperplanes} == set(A2.positive_roots)
    assert len(catalan_arrangement(A2, 0)) == 3
    assert {j for _, j in catalan_arrangement(A1, 1).hyperplanes} == {-1, 0, 1}
    with pytest.raises(ValueError):
        catalan_arrangement(A2, -1)


def test_cones():
    assert len(cone(shi_arrangement(A2, 1))) == 7
    assert set(cone(shi_arrangement(A1, 1)).forms) == {LinearForm.of(1, 0), LinearForm.of(1, -1), LinearForm.of(0, 1)}
    assert set(cone(catalan_arrangement(A1, 1)).forms) == {
        LinearForm.of(1, 1), LinearForm.of(1, 0), LinearForm.of(1, -1), LinearForm.of(0, 1)}


def test_cone_form_convention():
    # H_{a,j} cones to a - j z, so level -k gives a + kz
    assert cone_form((1, 0), -1) == LinearForm.of(1, 0, 1)


def test_b_gamma():
    shi = cone(shi_arrangement(A2, 1))
    assert len(b_gamma(A2, 1, [0, 1], "+")) == 9
    assert len(b_gamma(A2, 1, [0], "-")) == 6
    assert b_gamma(A2, 1, [], "+").forms == shi.forms
    assert b_gamma(A2, 1, [], "-").forms == shi.forms
    removed = set(shi.forms) - set(b_gamma(A2, 1, [0], "-").forms)
    assert removed == {cone_form((1, 0), 1)}
    assert set(b_gamma(A2, 1, [0], "+").forms) > set(shi.forms) > set(b_gamma(A2, 1, [0], "-").forms)
    with pytest.raises(ValueError):
        b_gamma(A2, 1, [2], "+")
    with pytest.raises(ValueError):
        b_gamma(A2, 1, [0], "*")


def test_ziegler_multiplicity():
    z = ziegler_multiplicity(cone(shi_arrangement(A2, 1)))
    assert sorted(z.multiplicity.values()) == [2, 2, 2]
    plus = ziegler_multiplicity(b_gamma(A2, 1, [0], "+")).multiplicity
    minus = ziegler_multiplicity(b_gamma(A2, 1, [0], "-")).multiplicity
    a1 = LinearForm.of(1, 0)
    assert plus[a1] == 3 and minus[a1] == 1
    assert all(m == 2 for f, m in plus.items() if f != a1)
    assert all(m == 2 for f, m in minus.items() if f != a1)


def test_ziegler_needs_z():
    arr = cone(shi_arrangement(A2, 1)).minus([LinearForm.of(0, 0, 1)])
    with pytest.raises(ValueError):
        ziegler_multiplicity(arr)


def test_proportional_forms_rejected():
    from srbkit.arrangement import CentralArrangement
    with pytest.raises(ValueError):
        CentralArrangement(2, (LinearForm.of(1, 1), LinearForm.of(2, 2)))


@pytest.mark.parametrize("family,rank", [(f, r) for f, rs in SUPPORTED.items() for r in rs])
@pytest.mark.parametrize("k", [1, 2])
def test_cone_invariants(family, rank, k):
    rs = build_root_system(family, rank)
    shi = cone(shi_arrangement(rs, k))
    cat = cone(catalan_arrangement(rs, k))
    assert len({f.primitive() for f in shi.forms}) == len(shi) == 2 * k * len(rs.positive_roots) + 1
    assert len(cat) == (2 * k + 1) * len(rs.positive_roots) + 1
    z = ziegler_multiplicity(shi)
    assert set(z.multiplicity.values()) == {2 * k}
    assert z.total_multiplicity() == 2 * k * len(rs.positive_roots)
