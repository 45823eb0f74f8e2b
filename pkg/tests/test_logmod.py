import pytest

from srbkit.arrangement import (
    CentralArrangement,
    b_gamma,
    catalan_arrangement,
    cone,
    cone_form,
    constant_multiarrangement,
    shi_arrangement,
)
from srbkit.exactalg import LinearForm, Polynomial, divide_exact
from srbkit.logmod import (
    Derivation,
    MembershipError,
    decide_freeness,
    divisibility_witness,
    euler_derivation,
    graded_derivations,
    graded_dimension,
    is_member,
    membership_witness,
    saito_test,
    weyl_act,
    ziegler_restrict,
)
from srbkit.rootsys import build_root_system

A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)
B2 = build_root_system("B", 2)

x1 = Polynomial.variable(2, 0)
z = Polynomial.variable(2, 1)
ZERO = Polynomial.zero(2)


def shi_cone(rs, k=1):
    return cone(shi_arrangement(rs, k))


class TestGradedPieces:
    def test_a1_hand_solve(self):
        basis = graded_derivations(shi_cone(A1), 2, True)
        assert basis.dimension == 1
        assert basis[0] == Derivation((x1 * (x1 - z), ZERO), 2)

    def test_a2_shi_degree_kh(self):
        assert graded_dimension(shi_cone(A2), 3, True) == 2
        assert graded_dimension(shi_cone(A2), 2, True) == 0

    def test_constant_multiplicity_a2(self):
        multi = constant_multiarrangement(A2, 2)
        # exponents (3, 3): nothing below degree 3, two generators at 3
        assert graded_dimension(multi, 2) == 0
        assert graded_dimension(multi, 3) == 2

    def test_euler_in_degree_one(self):
        for rs in (A1, A2, B2):
            arr = shi_cone(rs)
            assert graded_dimension(arr, 1) == 1
            assert is_member(euler_derivation(rs.rank + 1), arr)

    def test_basis_members_checked_by_division(self):
        for rs, d in ((A2, 3), (B2, 4)):
            arr = shi_cone(rs)
            for theta in graded_derivations(arr, d, True):
                assert membership_witness(theta, arr, True) is None
                assert divisibility_witness(theta, arr, True) is None

    def test_catalan_k_euler_space(self):
        assert graded_dimension(cone(catalan_arrangement(A2, 1)), 4, True) == 1

    def test_minus_constraint_space(self):
        assert graded_dimension(b_gamma(A2, 1, [0], "-"), 2, True) == 1


class TestEulerAndRestriction:
    def test_euler_arity_two(self):
        e = euler_derivation(2)
        assert e.coefficients == (x1, z)

    def test_ziegler_restrict(self):
        theta = Derivation((x1 * (x1 - z), ZERO), 2)
        res = ziegler_restrict(theta)
        assert res.coefficients == (Polynomial.variable(1, 0) ** 2,)
        assert is_member(res, constant_multiarrangement(A1, 2))

    def test_restrict_kills_z_multiples(self):
        theta = Derivation((x1 * z, ZERO), 2)
        assert ziegler_restrict(theta).is_zero()

    def test_restrict_needs_d0(self):
        with pytest.raises(ValueError):
            ziegler_restrict(euler_derivation(2))


class TestSaito:
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    boolean = CentralArrangement(2, (LinearForm.of(1, 0), LinearForm.of(0, 1)), has_z=False)

    def test_boolean_basis(self):
        zero = Polynomial.zero(2)
        d1 = Derivation((self.x, zero), 1, False)
        d2 = Derivation((zero, self.y), 1, False)
        assert saito_test([d1, d2], self.boolean)

    def test_singular(self):
        zero = Polynomial.zero(2)
        d1 = Derivation((self.x, zero), 1, False)
        assert not saito_test([d1, d1.scale(2)], self.boolean)

    def test_non_member_is_an_error(self):
        zero = Polynomial.zero(2)
        d1 = Derivation((self.x, zero), 1, False)
        d2 = Derivation((zero, self.x), 1, False)
        with pytest.raises(MembershipError):
            saito_test([d1, Derivation((self.y, zero), 1, False)], self.boolean)
        with pytest.raises(ValueError):
            saito_test([d1], self.boolean)
        assert not saito_test([d1, d2], self.boolean, check_membership=False)


class TestFreeness:
    def test_shi_cone_free(self):
        v = decide_freeness(shi_cone(A2), [1, 3, 3])
        assert v.status == "Free" and v.exp0 == (3, 3)
        assert saito_test(list(v.basis), shi_cone(A2))

    def test_b_plus_free(self):
        v = decide_freeness(b_gamma(A2, 1, [0], "+"), [1, 3, 4])
        assert v.status == "Free" and v.exp0 == (3, 4)

    def test_highest_root_added_not_free(self):
        arr = shi_cone(A2).union([cone_form((1, 1), -1)])
        for exps in ([1, 3, 4], [1, 2, 5], [1, 1, 6], [2, 3, 3]):
            v = decide_freeness(arr, exps)
            assert v.status == "NotFree"
            cert = v.certificate
            assert graded_dimension(arr, cert["degree"], True) == cert["observed"]

    def test_degree_sum_mismatch(self):
        with pytest.raises(ValueError):
            decide_freeness(shi_cone(A2), [1, 3, 4])

    def test_multiarrangement(self):
        v = decide_freeness(constant_multiarrangement(A2, 2), [3, 3])
        assert v.status == "Free" and v.exponents == (3, 3)

    def test_max_degree_env(self, monkeypatch):
        monkeypatch.setenv("SRBKIT_MAX_DEGREE", "7")
        arr = shi_cone(A2).union([cone_form((1, 1), -1)])
        assert decide_freeness(arr, [1, 3, 4]).status == "NotFree"

    def test_deterministic(self):
        arr = b_gamma(B2, 1, [0, 1], "-")
        a = decide_freeness(arr, [1, 3, 3])
        b = decide_freeness(arr, [1, 3, 3])
        assert a == b and a.status == "Free"


class TestWeylAction:
    def test_involution(self):
        for theta in graded_derivations(shi_cone(A2), 3, True):
            for i in range(2):
                assert weyl_act(A2, i, weyl_act(A2, i, theta)) == theta

    def test_euler_invariant(self):
        e = euler_derivation(3)
        for i in range(2):
            assert weyl_act(A2, i, e) == e

    def test_a1_example(self):
        # s1 sends x1 to -x1; with s1(theta)(f) = s1(theta(s1 f)) the image of x1 is -x1(x1 + z)
        theta = Derivation((x1 * (x1 - z), ZERO), 2)
        img = weyl_act(A1, 0, theta)
        assert img.coefficients[0] == -(x1 * (x1 + z))

    def test_catalan_module_stable(self):
        arr = cone(catalan_arrangement(A2, 1))
        for theta in graded_derivations(arr, 4, True):
            for i in range(2):
                assert is_member(weyl_act(A2, i, theta), arr, True)


def test_derivation_json_roundtrip():
    theta = graded_derivations(shi_cone(B2), 4, True)[1]
    assert Derivation.from_json(theta.to_json()) == theta


def test_leibniz():
    theta = Derivation((x1 * (x1 - z), ZERO), 2)
    p = x1 * x1 * z
    assert theta.apply(p) == x1 * (x1 - z) * 2 * x1 * z
    assert divide_exact(theta.apply_form(LinearForm.of(1, -1)), x1 - z) == x1


def test_inhomogeneous_rejected():
    with pytest.raises(ValueError):
        Derivation((x1 * x1 + z, ZERO), 2)
