"""Statement-level checks on a computed SRB, each recorded with a witness."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

from .arrangement import (
    b_gamma,
    catalan_arrangement,
    cone,
    cone_form,
    constant_multiarrangement,
    shi_arrangement,
    shifted_multiarrangement,
    ziegler_multiplicity,
)
from .exactalg import LinearForm, NotDivisible, Polynomial, divide_exact, rank as matrix_rank
from .logmod import (
    DEFAULT_SEED,
    DerivationSpace,
    Derivation,
    base_euler,
    decide_freeness,
    divisibility_witness,
    graded_derivations,
    membership_witness,
    weyl_act,
    ziegler_restrict,
)
from .rootsys import RootSystem
from .srb import SrbResult, k_euler_from_plus, plus_constraint_arrangement

SUITES = ("characterization", "simplefree", "keuler", "reflections", "exponents", "ziegler")

PASS, FAIL, UNKNOWN = "pass", "fail", "unknown"


@dataclass
class CheckRecord:
    statement: str
    status: str
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"statement": self.statement, "status": self.status, "witness": self.witness}


@dataclass
class VerificationReport:
    suite: str
    case: str
    records: list = field(default_factory=list)

    def add(self, statement: str, ok: bool, witness: dict | None = None, status: str | None = None):
        rec = CheckRecord(statement, status or (PASS if ok else FAIL), witness or {})
        self.records.append(rec)
        return rec

    @property
    def passed(self) -> bool:
        return all(r.status == PASS for r in self.records)

    @property
    def has_unknown(self) -> bool:
        return any(r.status == UNKNOWN for r in self.records)

    def failures(self) -> list:
        return [r for r in self.records if r.status != PASS]

    def to_json(self) -> dict:
        return {"suite": self.suite, "case": self.case, "records": [r.to_json() for r in self.records]}

    def to_text(self) -> str:
        lines = [f"suite {self.suite} [{self.case}]"]
        for r in self.records:
            line = f"  {r.status.upper():7s} {r.statement}"
            if r.status != PASS and r.witness:
                line += f"  witness={r.witness}"
            lines.append(line)
        n_ok = sum(r.status == PASS for r in self.records)
        lines.append(f"  {n_ok}/{len(self.records)} checks passed")
        return "\n".join(lines)


def _case(rs: RootSystem, k: int) -> str:
    return f"{rs.name} k={k}"


def _names(arity: int) -> list:
    return [f"x{i + 1}" for i in range(arity - 1)] + ["z"]


def _poly_str(p: Polynomial) -> str:
    return p.to_str(_names(p.arity))


def _deriv_diff(a: Derivation, b: Derivation) -> dict:
    """Witness for a failed derivation identity: first differing coefficient."""
    for idx, (x, y) in enumerate(zip(a.coefficients, b.coefficients)):
        if x != y:
            return {"coordinate": idx + 1, "residual": _poly_str(x - y)}
    return {}


def _divides(p: Polynomial, f: Polynomial):
    """Remainder-free division test through divide_exact; returns None or the offending p."""
    if not p:
        return None
    try:
        divide_exact(p, f)
        return None
    except NotDivisible:
        return p


# divisibility characterization and uniqueness dimensions


def verify_characterization(result: SrbResult, progress: Callable | None = None) -> VerificationReport:
    rs, k = result.rs, result.k
    kh = k * rs.coxeter_number
    rep = VerificationReport("characterization", _case(rs, k))
    shi = cone(shi_arrangement(rs, k))
    simple = rs.simple_roots

    for i, phi in enumerate(result.plus):
        w = membership_witness(phi, shi, True)
        rep.add(f"phi+_{i + 1} in D0(cone Shi^{k})_{kh}", w is None and phi.degree == kh,
                {} if w is None else {"hyperplane": _poly_str(w[0].polynomial())})

    for i, phi in enumerate(result.plus):
        for j in range(rs.rank):
            if i == j:
                continue
            f = cone_form(simple[j], -k).polynomial()
            bad = _divides(phi.apply_form(cone_form(simple[j], -k)), f)
            rep.add(f"phi+_{i + 1}(a_{j + 1}+{k}z) divisible by a_{j + 1}+{k}z", bad is None,
                    {} if bad is None else {"j": j + 1, "value": _poly_str(bad)})

    g = rs.gram_dual.entries
    for j, phi in enumerate(result.minus):
        expected = Derivation.combine(result.plus, list(g[j]))
        rep.add(f"phi-_{j + 1} = sum_p I*(a_{j + 1}, a_p) phi+_p", phi == expected, _deriv_diff(phi, expected))

    for i, phi in enumerate(result.minus):
        f = cone_form(simple[i], k).polynomial()
        bad = next((c for c in phi.coefficients if _divides(c, f) is not None), None)
        rep.add(f"phi-_{i + 1} divisible by a_{i + 1}-{k}z", bad is None,
                {} if bad is None else {"i": i + 1, "coefficient": _poly_str(bad)})
        hat = result.hat_minus[i]
        rep.add(f"phi-_{i + 1} = (a_{i + 1}-{k}z) * phihat-_{i + 1}", hat.scale(f) == phi,
                _deriv_diff(hat.scale(f), phi))
        w = membership_witness(hat, b_gamma(rs, k, [i], "-"), True)
        rep.add(f"phihat-_{i + 1} in D0(B-_{{a_{i + 1}}})_{kh - 1}", w is None,
                {} if w is None else {"hyperplane": _poly_str(w[0].polynomial())})

    for i in range(rs.rank):
        if progress:
            progress(f"characterization: uniqueness dimensions for i={i + 1}")
        dplus = graded_derivations(plus_constraint_arrangement(rs, k, i), kh, True).dimension
        rep.add(f"dim D0(B+_(Delta minus a_{i + 1}))_{kh} = 1", dplus == 1, {"dimension": dplus})
        dminus = graded_derivations(b_gamma(rs, k, [i], "-"), kh - 1, True).dimension
        rep.add(f"dim D0(B-_{{a_{i + 1}}})_{kh - 1} = 1", dminus == 1, {"dimension": dminus})
    return rep


# the k-Euler derivation


def verify_k_euler(result: SrbResult, progress: Callable | None = None) -> VerificationReport:
    rs, k = result.rs, result.k
    kh = k * rs.coxeter_number
    rep = VerificationReport("keuler", _case(rs, k))
    cat = cone(catalan_arrangement(rs, k))
    eta = result.eta

    expected = k_euler_from_plus(rs, k, result.plus)
    rep.add(f"eta^{k} = sum_i (a_i+{k}z) phi+_i", eta == expected, _deriv_diff(eta, expected))

    w = membership_witness(eta, cat, True)
    rep.add(f"eta^{k} in D0(cone Cat^{k})_{kh + 1}", w is None and eta.degree == kh + 1,
            {} if w is None else {"hyperplane": _poly_str(w[0].polynomial())})

    if progress:
        progress(f"keuler: dim D0(cone Cat^{k})_{kh + 1}")
    dim = graded_derivations(cat, kh + 1, True).dimension
    rep.add(f"dim D0(cone Cat^{k})_{kh + 1} = 1", dim == 1, {"dimension": dim})

    forms = set(cat.forms)
    for i in range(rs.rank):
        moved = {LinearForm(tuple(_reflect_form(rs, i, f.coefficients))).primitive() for f in cat.forms}
        rep.add(f"cone Cat^{k} is s_{i + 1}-stable", moved == forms)
    for i in range(rs.rank):
        img = weyl_act(rs, i, eta)
        rep.add(f"s_{i + 1}(eta^{k}) = eta^{k}", img == eta, _deriv_diff(img, eta))

    cat0 = cone(catalan_arrangement(rs, 0))
    basis0 = graded_derivations(cat0, 1, True)
    euler = base_euler(rs.rank + 1)
    ok = basis0.dimension == 1 and _proportional(basis0[0], euler)
    rep.add("eta^0 spans D0(cone Cat^0)_1 and is the Euler derivation up to scalar", ok,
            {"dimension": basis0.dimension})
    return rep


def _reflect_form(rs: RootSystem, i: int, coeffs) -> list:
    """Coefficients of s_i applied to the form sum c_j x_j + c_z z."""
    R = rs.simple_reflections[i]
    l = rs.rank
    out = [0] * (l + 1)
    for j in range(l):
        for m in range(l):
            out[m] += coeffs[j] * R[j][m]
    out[l] = coeffs[l]
    return out


def _proportional(a: Derivation, b: Derivation) -> bool:
    ca = next(((i, c) for i, c in enumerate(a.coefficients) if c), None)
    cb = next(((i, c) for i, c in enumerate(b.coefficients) if c), None)
    if ca is None or cb is None or ca[0] != cb[0]:
        return False
    ea, va = ca[1].leading_term()
    if ea != cb[1].leading_term()[0]:
        return False
    ratio = cb[1].leading_term()[1] / va
    return a.scale(ratio) == b


# simple reflections acting on the bases


def verify_reflections(result: SrbResult, progress: Callable | None = None) -> VerificationReport:
    rs, k = result.rs, result.k
    rep = VerificationReport("reflections", _case(rs, k))
    arity = rs.rank + 1
    for i in range(rs.rank):
        for j in range(rs.rank):
            if i == j:
                continue
            img = weyl_act(rs, i, result.plus[j])
            rep.add(f"(a) s_{i + 1}(phi+_{j + 1}) = phi+_{j + 1}", img == result.plus[j],
                    _deriv_diff(img, result.plus[j]))
    for i in range(rs.rank):
        img = weyl_act(rs, i, result.hat_minus[i])
        rep.add(f"(b) s_{i + 1}(phihat-_{i + 1}) = phihat-_{i + 1}", img == result.hat_minus[i],
                _deriv_diff(img, result.hat_minus[i]))
    z = Polynomial.variable(arity, arity - 1)
    for i in range(rs.rank):
        a_i = Polynomial.variable(arity, i)
        lhs = weyl_act(rs, i, result.plus[i]).scale(z * k - a_i)
        rhs = result.plus[i].scale(a_i + z * k)
        for j in range(rs.rank):
            if j != i and rs.cartan[i][j]:
                rhs = rhs + result.plus[j].scale(a_i * rs.cartan[i][j])
        rep.add(f"(c) (-a_{i + 1}+{k}z) s_{i + 1}(phi+_{i + 1}) = (a_{i + 1}+{k}z) phi+_{i + 1}"
                f" + a_{i + 1} sum_j c_{i + 1}j phi+_j", lhs == rhs, _deriv_diff(lhs, rhs))
    return rep


# freeness after adding or deleting one hyperplane


def verify_simplefree(rs: RootSystem, k: int, seed: int = DEFAULT_SEED,
                      progress: Callable | None = None) -> VerificationReport:
    kh = k * rs.coxeter_number
    l = rs.rank
    rep = VerificationReport("simplefree", _case(rs, k))
    shi = cone(shi_arrangement(rs, k))
    for root in rs.positive_roots:
        simple = rs.is_simple(root)
        for label, arr, exps in (
            ("added", shi.union([cone_form(root, -k)]), [1, kh + 1] + [kh] * (l - 1)),
            ("deleted", shi.minus([cone_form(root, k)]), [1, kh - 1] + [kh] * (l - 1)),
        ):
            if progress:
                progress(f"simplefree: {label} root {list(root)}")
            verdict = decide_freeness(arr, exps, seed=seed)
            expected = "Free" if simple else "NotFree"
            status = PASS if verdict.status == expected else (UNKNOWN if verdict.status == "Unknown" else FAIL)
            rep.add(f"{label} {list(root)} ({'simple' if simple else 'non-simple'}): {verdict.status}",
                    status == PASS, {"expected": expected, "verdict": verdict.to_json()}, status=status)
    return rep


# exponents of B^+/B^- and of the shifted multiarrangements


def default_gammas(rs: RootSystem) -> list:
    if rs.rank <= 2:
        return [tuple(c) for n in range(rs.rank + 1) for c in combinations(range(rs.rank), n)]
    return [(), (0,), tuple(range(rs.rank))]


def verify_exponents(rs: RootSystem, k: int, gammas: Sequence | None = None, seed: int = DEFAULT_SEED,
                     progress: Callable | None = None) -> VerificationReport:
    kh = k * rs.coxeter_number
    l = rs.rank
    rep = VerificationReport("exponents", _case(rs, k))
    if gammas is None:
        gammas = default_gammas(rs)
    for gamma in gammas:
        gamma = tuple(sorted(gamma))
        glabel = "{" + ",".join(f"a_{i + 1}" for i in gamma) + "}"
        n = len(gamma)
        for sign, step in (("+", 1), ("-", -1)):
            exp0 = sorted([kh + step] * n + [kh] * (l - n))
            arr = b_gamma(rs, k, gamma, sign)
            if progress:
                progress(f"exponents: B{sign} gamma={glabel}")
            verdict = decide_freeness(arr, [1] + exp0, seed=seed)
            status = PASS if verdict.status == "Free" else (UNKNOWN if verdict.status == "Unknown" else FAIL)
            rep.add(f"B{sign}_{glabel} free with exp0 {exp0}", status == PASS,
                    {"verdict": verdict.to_json()}, status=status)

            multi = shifted_multiarrangement(rs, k, gamma, step)
            z = ziegler_multiplicity(arr)
            rep.add(f"Ziegler multiplicity of B{sign}_{glabel} is 2k{sign}chi", z.multiplicity == multi.multiplicity)

            if progress:
                progress(f"exponents: (A(Phi), 2k{sign}chi) gamma={glabel}")
            mverdict = decide_freeness(multi, exp0, seed=seed)
            status = PASS if mverdict.status == "Free" else (UNKNOWN if mverdict.status == "Unknown" else FAIL)
            rep.add(f"(A(Phi), 2k{sign}chi_{glabel}) free with exponents {exp0}", status == PASS,
                    {"verdict": mverdict.to_json()}, status=status)
    return rep


# Ziegler restriction at degree kh


def verify_ziegler(rs: RootSystem, k: int, progress: Callable | None = None) -> VerificationReport:
    kh = k * rs.coxeter_number
    l = rs.rank
    rep = VerificationReport("ziegler", _case(rs, k))
    shi = cone(shi_arrangement(rs, k))
    base = constant_multiarrangement(rs, 2 * k)
    if progress:
        progress(f"ziegler: graded pieces at degree {kh}")
    top = graded_derivations(shi, kh, True)
    bottom = graded_derivations(base, kh)
    rep.add(f"dim D0(cone Shi^{k})_{kh} = {l}", top.dimension == l, {"dimension": top.dimension})
    rep.add(f"dim D(A(Phi), {2 * k})_{kh} = {l}", bottom.dimension == l, {"dimension": bottom.dimension})
    restricted = [ziegler_restrict(t) for t in top]
    bad = next((r for r in restricted if divisibility_witness(r, base) is not None), None)
    rep.add(f"res maps D0(cone Shi^{k})_{kh} into D(A(Phi), {2 * k})", bad is None)
    space = DerivationSpace(l, kh, range(l), False)
    rk = matrix_rank([space.to_vector(r) for r in restricted], space.size)
    rep.add("res is injective on degree kh", rk == top.dimension, {"rank": rk})
    rep.add("res is bijective on degree kh", rk == top.dimension == bottom.dimension,
            {"rank": rk, "target": bottom.dimension})
    return rep


def run_suites(result: SrbResult, suites: Sequence[str], seed: int = DEFAULT_SEED,
               gammas: Sequence | None = None, progress: Callable | None = None) -> list:
    reports = []
    for name in suites:
        if name == "characterization":
            reports.append(verify_characterization(result, progress))
        elif name == "keuler":
            reports.append(verify_k_euler(result, progress))
        elif name == "reflections":
            reports.append(verify_reflections(result, progress))
        elif name == "simplefree":
            reports.append(verify_simplefree(result.rs, result.k, seed, progress))
        elif name == "exponents":
            reports.append(verify_exponents(result.rs, result.k, gammas, seed, progress))
        elif name == "ziegler":
            reports.append(verify_ziegler(result.rs, result.k, progress))
        else:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return reports
