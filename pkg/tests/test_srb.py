import dataclasses
import json
import random
from fractions import Fraction

import pytest

from srbkit import srb as srb_module
from srbkit.arrangement import cone, cone_form, shi_arrangement
from srbkit.exactalg import LinearForm, Polynomial, rank
from srbkit.logmod import Derivation, DerivationSpace, graded_derivations, membership_witness, weyl_act
from srbkit.rootsys import build_root_system
from srbkit.srb import (
    SrbResult,
    TheoremFalsified,
    compute_srb,
    compute_srb_minus,
    compute_srb_plus_raw,
    normalize_srb_plus,
)
from srbkit.verify import (
    run_suites,
    verify_characterization,
    verify_exponents,
    verify_k_euler,
    verify_reflections,
    verify_simplefree,
    verify_ziegler,
)

A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)
B2 = build_root_system("B", 2)

x1 = Polynomial.variable(2, 0)
z = Polynomial.variable(2, 1)
ZERO = Polynomial.zero(2)


def d1(p, degree):
    return Derivation((p, ZERO), degree)


class TestA1HandOracle:
    def test_values(self):
        r = compute_srb(A1, 1)
        assert r.plus == (d1(x1 * (x1 - z), 2),)
        assert r.minus == (d1(x1 * (x1 - z) * 2, 2),)
        assert r.hat_minus == (d1(x1 * 2, 1),)
        assert r.eta == d1((x1 + z) * x1 * (x1 - z), 3)

    def test_text(self):
        text = compute_srb(A1, 1).to_text()
        assert "x1*(x1 - z)" in text
        assert "θ(x1) = x1^2 - x1*z" in text

    def test_reflection_identity_a1(self):
        r = compute_srb(A1, 1)
        lhs = weyl_act(A1, 0, r.plus[0]).scale(z - x1)
        assert lhs == r.plus[0].scale(x1 + z)
        assert lhs.coefficients[0] == x1 * (x1 + z) * (x1 - z)


class TestPipelineA2:
    def test_raw(self):
        raw = compute_srb_plus_raw(A2, 1)
        shi = graded_derivations(cone(shi_arrangement(A2, 1)), 3, True)
        assert len(raw) == 2 and all(t.degree == 3 for t in raw)
        assert shi.dimension == 2
        sp = DerivationSpace(3, 3, range(2), True)
        for t in raw:
            vecs = [sp.to_vector(s) for s in shi] + [sp.to_vector(t)]
            assert rank(vecs, sp.size) == 2  # t lies in the span

    def test_degrees(self):
        r = compute_srb(A2, 1)
        assert [t.degree for t in r.plus] == [3, 3]
        assert [t.degree for t in r.minus] == [3, 3]
        assert [t.degree for t in r.hat_minus] == [2, 2]
        assert r.eta.degree == 4

    def test_scalars_nonzero(self):
        assert all(compute_srb(A2, 1).scalars)

    def test_b2_k2_degree(self):
        r = compute_srb(B2, 2)
        assert r.degree == 8 and all(t.degree == 8 for t in r.plus)

    def test_change_of_basis_is_gram(self):
        r = compute_srb(B2, 1)
        g = B2.gram_dual.entries
        for j in range(2):
            assert r.minus[j] == Derivation.combine(r.plus, list(g[j]))

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_scale_robustness(self, seed):
        rng = random.Random(seed)
        raw = compute_srb_plus_raw(A2, 1)
        scaled = [t.scale(Fraction(rng.choice([-7, -2, 3, 5]), rng.randint(1, 9))) for t in raw]
        plus, eta, _ = normalize_srb_plus(A2, 1, scaled)
        ref = compute_srb(A2, 1)
        assert tuple(plus) == ref.plus and eta == ref.eta

    def test_json_roundtrip(self):
        r = compute_srb(A2, 1)
        back = SrbResult.from_json(json.loads(json.dumps(r.to_json())))
        assert back == r
        a = [rep.to_json() for rep in run_suites(r, ["characterization", "keuler", "reflections"])]
        b = [rep.to_json() for rep in run_suites(back, ["characterization", "keuler", "reflections"])]
        assert json.dumps(a) == json.dumps(b)


@pytest.mark.parametrize("family,rank,k", [("A", 1, 1), ("A", 2, 1), ("B", 2, 1)])
def test_all_suites_pass(family, rank, k):
    r = compute_srb(build_root_system(family, rank), k)
    for rep in run_suites(r, ["characterization", "keuler", "reflections", "ziegler"]):
        assert rep.passed, rep.to_text()


def test_simplefree_a2():
    rep = verify_simplefree(A2, 1)
    assert rep.passed, rep.to_text()
    statuses = [rec.witness["verdict"]["status"] for rec in rep.records]
    assert statuses.count("Free") == 4 and statuses.count("NotFree") == 2


def test_exponents_a2():
    rep = verify_exponents(A2, 1)
    assert rep.passed, rep.to_text()


def test_ziegler_dims_a1():
    rep = verify_ziegler(A1, 1)
    assert rep.passed
    assert [rec.witness.get("dimension") for rec in rep.records[:2]] == [1, 1]


class TestNegativeControls:
    def test_mixed_plus_basis(self):
        r = compute_srb(A2, 1)
        bad = dataclasses.replace(r, plus=(r.plus[0] + r.plus[1], r.plus[1]))
        rep = verify_characterization(bad)
        fails = rep.failures()
        assert fails
        assert any("j" in f.witness for f in fails)

    def test_perturbed_coefficient(self):
        r = compute_srb(A2, 1)
        bump = Polynomial.monomial((1, 1, 1), Fraction(1, 3))
        c = list(r.plus[0].coefficients)
        c[0] = c[0] + bump
        bad = dataclasses.replace(r, plus=(Derivation(tuple(c), 3), r.plus[1]))
        rep = verify_characterization(bad)
        assert any("hyperplane" in f.witness for f in rep.failures())
        assert not verify_reflections(bad).passed

    def test_perturbed_eta(self):
        r = compute_srb(A2, 1)
        c = list(r.eta.coefficients)
        c[1] = c[1] + Polynomial.monomial((0, 1, 3), 1)
        bad = dataclasses.replace(r, eta=Derivation(tuple(c), 4))
        rep = verify_k_euler(bad)
        assert not rep.passed
        assert all(f.witness for f in rep.failures())

    def test_perturbed_hat_minus(self):
        r = compute_srb(B2, 1)
        h = r.hat_minus[0].scale(2)
        bad = dataclasses.replace(r, hat_minus=(h, r.hat_minus[1]))
        assert not verify_characterization(bad).passed
        assert not verify_reflections(dataclasses.replace(r, hat_minus=(r.hat_minus[1], r.hat_minus[0]))).passed

    def test_spurious_hyperplane_aborts(self, monkeypatch):
        real = srb_module.plus_constraint_arrangement

        def spurious(rs, k, i):
            return real(rs, k, i).union([LinearForm.of(1, 1, 5)])

        monkeypatch.setattr(srb_module, "plus_constraint_arrangement", spurious)
        with pytest.raises(TheoremFalsified):
            compute_srb_plus_raw(A2, 1)

    def test_spurious_hyperplane_in_membership(self):
        r = compute_srb(A2, 1)
        arr = cone(shi_arrangement(A2, 1)).union([cone_form((1, 1), 3)])
        assert membership_witness(r.plus[0], arr, True) is not None

    def test_minus_not_divisible(self):
        r = compute_srb(A2, 1)
        swapped = (r.plus[1], r.plus[0])
        with pytest.raises(TheoremFalsified):
            compute_srb_minus(A2, 1, swapped)


def test_reports_deterministic():
    r = compute_srb(A2, 1)
    a = json.dumps([rep.to_json() for rep in run_suites(r, ["characterization", "simplefree"])])
    b = json.dumps([rep.to_json() for rep in run_suites(r, ["characterization", "simplefree"])])
    assert a == b


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suites(compute_srb(A1, 1), ["bogus"])
