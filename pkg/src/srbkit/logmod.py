"""Graded pieces of logarithmic derivation modules, Saito's criterion, freeness.

A derivation is stored by its values on the coordinate functionals.  The
degree-d part of D(A, m) is the kernel of the linear map sending the unknown
coefficients of theta to the remainders of theta(a_H) modulo a_H^m(H).

Hyperplanes whose form involves a single unknown coordinate x_i (e.g.
x_i - j*z when theta(z) = 0) constrain theta(x_i) alone, so their product P_i
is factored out up front: theta(x_i) = P_i * g_i and only g_i is unknown.  The
remaining hyperplanes are imposed through remainder_mod_linear_power.
"""
from __future__ import annotations

import os
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .arrangement import CentralArrangement, MultiArrangement
from .exactalg import (
    Echelon,
    LinearForm,
    LinearPowerReducer,
    NotDivisible,
    Polynomial,
    det as scalar_det,
    divide_exact,
    monomials,
    poly_det,
    rational_str,
    row_space_basis,
    variable_names,
)
from .exactalg.linalg import kernel_from_echelon
from .rootsys import RootSystem

DEFAULT_SEED = 20240517
MAX_TRIALS = 5


class MembershipError(ValueError):
    """A derivation handed to Saito's criterion is not in the module."""


@dataclass(frozen=True)
class Derivation:
    coefficients: tuple  # Polynomial per coordinate; last one is d/dz when has_z
    degree: int
    has_z: bool = True

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        if not coeffs:
            raise ValueError("a derivation needs at least one coefficient")
        arity = coeffs[0].arity
        if len(coeffs) != arity or any(c.arity != arity for c in coeffs):
            raise ValueError("need one coefficient per variable, all of the same arity")
        for c in coeffs:
            if c and not c.homogeneous(self.degree):
                raise ValueError(f"coefficient {c} is not homogeneous of degree {self.degree}")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_polys(cls, coefficients: Sequence[Polynomial], has_z: bool = True) -> "Derivation":
        degree = max((c.degree() for c in coefficients), default=-1)
        return cls(tuple(coefficients), max(degree, 0), has_z)

    @property
    def arity(self) -> int:
        return len(self.coefficients)

    def names(self) -> list:
        return variable_names(self.arity, self.has_z)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def z_coefficient(self) -> Polynomial:
        if not self.has_z:
            raise ValueError("derivation has no z slot")
        return self.coefficients[-1]

    def apply_form(self, form: LinearForm) -> Polynomial:
        """theta(a) for a central linear form a."""
        return form.apply(self.coefficients)

    def apply(self, p: Polynomial) -> Polynomial:
        """theta(p) for an arbitrary polynomial, by the Leibniz rule."""
        out = Polynomial.zero(self.arity)
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            terms = {}
            for exp, v in p.items():
                if exp[i]:
                    e = exp[:i] + (exp[i] - 1,) + exp[i + 1:]
                    terms[e] = v * exp[i]
            out = out + Polynomial(self.arity, terms) * c
        return out

    def _same(self, other: "Derivation"):
        if other.arity != self.arity:
            raise ValueError("arity mismatch")

    def __add__(self, other: "Derivation") -> "Derivation":
        self._same(other)
        return Derivation.combine([self, other], [1, 1])

    def __sub__(self, other: "Derivation") -> "Derivation":
        self._same(other)
        return Derivation.combine([self, other], [1, -1])

    def __neg__(self) -> "Derivation":
        return self.scale(-1)

    def scale(self, c) -> "Derivation":
        """c * theta for a rational c or a homogeneous polynomial c."""
        if isinstance(c, Polynomial):
            deg = self.degree + max(c.degree(), 0)
            return Derivation(tuple(x * c for x in self.coefficients), deg, self.has_z)
        return Derivation(tuple(x * c for x in self.coefficients), self.degree, self.has_z)

    @staticmethod
    def combine(derivs: Sequence["Derivation"], coeffs: Sequence) -> "Derivation":
        """sum c_i * theta_i; the c_i may be rationals or polynomials."""
        terms = [d.scale(c) for d, c in zip(derivs, coeffs)]
        degrees = {t.degree for t in terms if not t.is_zero()}
        if len(degrees) > 1:
            raise ValueError("cannot add derivations of different degrees")
        degree = degrees.pop() if degrees else terms[0].degree
        arity = derivs[0].arity
        out = [Polynomial.zero(arity) for _ in range(arity)]
        for t in terms:
            out = [a + b for a, b in zip(out, t.coefficients)]
        return Derivation(tuple(out), degree, derivs[0].has_z)

    def to_json(self) -> dict:
        return {"degree": self.degree, "coefficients": [c.to_json() for c in self.coefficients]}

    @classmethod
    def from_json(cls, data, has_z: bool = True) -> "Derivation":
        coeffs = tuple(Polynomial.from_json(c) for c in data["coefficients"])
        return cls(coeffs, int(data["degree"]), has_z)

    def to_text(self, factor_forms: Sequence[LinearForm] = ()) -> list:
        names = self.names()
        lines = []
        for name, c in zip(names, self.coefficients):
            line = f"θ({name}) = {c.to_str(names)}"
            if factor_forms and c:
                fact = factored_str(c, factor_forms, names)
                if fact != c.to_str(names):
                    line += f"   [= {fact}]"
            lines.append(line)
        return lines


def factored_str(p: Polynomial, forms: Sequence[LinearForm], names) -> str:
    """Render p with the given linear forms pulled out as factors, where they divide."""
    factors = []
    rest = p
    for f in forms:
        fp = f.polynomial()
        while rest.degree() > 0:
            try:
                q = divide_exact(rest, fp)
            except NotDivisible:
                break
            factors.append(fp)
            rest = q
    if not factors:
        return p.to_str(names)
    parts = []
    for fp in factors:
        s = fp.to_str(names)
        parts.append(s if len(fp) == 1 and fp.coefficient(fp.leading_term()[0]) == 1 else f"({s})")
    if rest != 1:
        if rest.is_constant():
            c = rest.coefficient((0,) * rest.arity)
            parts.insert(0, rational_str(c) if c > 0 else f"({rational_str(c)})")
        else:
            parts.append(f"({rest.to_str(names)})")
    return "*".join(parts)


@dataclass(frozen=True)
class GradedBasis:
    degree: int
    derivations: tuple

    @property
    def dimension(self) -> int:
        return len(self.derivations)

    def __len__(self) -> int:
        return len(self.derivations)

    def __iter__(self):
        return iter(self.derivations)

    def __getitem__(self, i):
        return self.derivations[i]


@dataclass(frozen=True)
class FreenessVerdict:
    status: str  # "Free" | "NotFree" | "Unknown"
    exponents: tuple = ()
    basis: tuple = field(default=(), repr=False)
    certificate: dict | None = None
    module: str = "D"  # "D0" when decided through theta(z) = 0 plus the Euler derivation

    @property
    def exp0(self) -> tuple:
        if self.status != "Free" or self.module != "D0":
            return ()
        rest = list(self.exponents)
        rest.remove(1)
        return tuple(rest)

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "exponents": list(self.exponents),
            "certificateDegree": self.certificate["degree"] if self.certificate else None,
        }
        if self.module == "D0" and self.status == "Free":
            out["exp0"] = list(self.exp0)
        if self.certificate:
            out["certificate"] = dict(self.certificate)
        return out


# coordinates of derivation space


def _target_info(target, d0: bool):
    """(arity, has_z, free coordinate indices, {form: multiplicity})."""
    if isinstance(target, CentralArrangement):
        arity, has_z = target.arity, target.has_z
        mult = target.multiplicity
    elif isinstance(target, MultiArrangement):
        arity, has_z = target.arity, target.has_z
        mult = {f: m for f, m in target.mult if m > 0}
    else:
        raise TypeError(f"unsupported target {type(target).__name__}")
    if d0 and not has_z:
        raise ValueError("theta(z) = 0 only makes sense on a cone")
    coords = tuple(range(arity - 1)) if d0 else tuple(range(arity))
    return arity, has_z, coords, mult


class DerivationSpace:
    """Coordinates for degree-d derivations: coordinate-major, monomials in decreasing grlex."""

    def __init__(self, arity: int, degree: int, coords: Sequence[int], has_z: bool):
        self.arity = arity
        self.degree = degree
        self.coords = tuple(coords)
        self.has_z = has_z
        self.monos = monomials(arity, degree)
        self._mono_index = {m: t for t, m in enumerate(self.monos)}
        self.size = len(self.coords) * len(self.monos)

    def to_vector(self, theta: Derivation) -> dict:
        out = {}
        n = len(self.monos)
        for slot, i in enumerate(self.coords):
            for exp, c in theta.coefficients[i].items():
                out[slot * n + self._mono_index[exp]] = c
        for i in range(self.arity):
            if i not in self.coords and theta.coefficients[i]:
                raise ValueError("derivation has a coefficient outside the coordinate space")
        return out

    def from_vector(self, vec) -> Derivation:
        n = len(self.monos)
        coeffs = [dict() for _ in range(self.arity)]
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        for idx, c in items:
            if c:
                slot, t = divmod(idx, n)
                coeffs[self.coords[slot]][self.monos[t]] = c
        return Derivation(tuple(Polynomial(self.arity, c) for c in coeffs), self.degree, self.has_z)


def _axis_setup(arity, coords, mult):
    """Split the hyperplanes into per-coordinate factors P_i and the remaining forms."""
    axis = {i: Polynomial.constant(arity, 1) for i in coords}
    others = []
    for f, m in mult.items():
        if m <= 0:
            continue
        supp = [i for i in f.support() if i in coords]
        if not supp:
            continue  # only z, and theta(z) = 0
        if len(supp) == 1:
            axis[supp[0]] = axis[supp[0]] * f.polynomial() ** m
        else:
            others.append((f, m))
    return axis, others


@lru_cache(maxsize=4096)
def _solve(target, d: int, d0: bool):
    """Echelon form of the constraint system plus the unknown layout."""
    arity, has_z, coords, mult = _target_info(target, d0)
    axis, others = _axis_setup(arity, coords, mult)
    unknowns = []  # (coordinate, monomial of g_i)
    for i in coords:
        gdeg = d - axis[i].degree()
        for mon in monomials(arity, gdeg):
            unknowns.append((i, mon))
    ech = Echelon(len(unknowns))
    for f, m in others:
        reducer = LinearPowerReducer(f, m)
        rows: dict = {}
        for col, (i, mon) in enumerate(unknowns):
            c = f.coefficients[i]
            if not c:
                continue
            poly = axis[i] * Polynomial.monomial(mon)
            for e, v in reducer.expansion(poly).items():
                rows.setdefault(e, {})[col] = c * v
        for key in sorted(rows, reverse=True):
            ech.add(rows[key])
    return axis, tuple(unknowns), ech


def graded_dimension(target, d: int, restrict_to_d0: bool = False) -> int:
    if d < 0:
        return 0
    _, unknowns, ech = _solve(target, d, restrict_to_d0)
    return len(unknowns) - ech.rank


@lru_cache(maxsize=1024)
def graded_derivations(target, d: int, restrict_to_d0: bool = False) -> GradedBasis:
    """Basis of the degree-d part of D(target) (or of D_0 when restrict_to_d0).

    The basis is canonical: the reduced echelon basis of the solution space in
    the coordinates of DerivationSpace, so every vector's leading entry is 1.
    """
    if d < 0:
        return GradedBasis(d, ())
    arity, has_z, coords, _ = _target_info(target, restrict_to_d0)
    axis, unknowns, ech = _solve(target, d, restrict_to_d0)
    space = DerivationSpace(arity, d, coords, has_z)
    vectors = []
    for vec in kernel_from_echelon(ech):
        coeffs = {i: Polynomial.zero(arity) for i in coords}
        parts: dict = {i: {} for i in coords}
        for (i, mon), v in zip(unknowns, vec):
            if v:
                parts[i][mon] = v
        for i in coords:
            coeffs[i] = axis[i] * Polynomial(arity, parts[i])
        full = tuple(coeffs.get(i, Polynomial.zero(arity)) for i in range(arity))
        vectors.append(space.to_vector(Derivation(full, d, has_z)))
    canon = row_space_basis(vectors, space.size)
    return GradedBasis(d, tuple(space.from_vector(v) for v in canon))


def euler_derivation(arity: int, has_z: bool = True) -> Derivation:
    coeffs = tuple(Polynomial.variable(arity, i) for i in range(arity))
    return Derivation(coeffs, 1, has_z)


def base_euler(arity: int) -> Derivation:
    """sum x_i d/dx_i on a cone, without the z term (it lies in D_0)."""
    coeffs = [Polynomial.variable(arity, i) for i in range(arity - 1)] + [Polynomial.zero(arity)]
    return Derivation(tuple(coeffs), 1, True)


# membership


def membership_witness(theta: Derivation, target, restrict_to_d0: bool = False):
    """First hyperplane violating membership as (form, remainder components), else None."""
    _, _, _, mult = _target_info(target, restrict_to_d0)
    if restrict_to_d0 and theta.coefficients[-1]:
        z = LinearForm(tuple(int(i == theta.arity - 1) for i in range(theta.arity)))
        return z, [theta.coefficients[-1]]
    for f, m in mult.items():
        if m <= 0:
            continue
        comps = LinearPowerReducer(f, m).components(theta.apply_form(f))
        if any(comps):
            return f, comps
    return None


def is_member(theta: Derivation, target, restrict_to_d0: bool = False) -> bool:
    return membership_witness(theta, target, restrict_to_d0) is None


def divisibility_witness(theta: Derivation, target, restrict_to_d0: bool = False):
    """Same question as membership_witness, answered by repeated exact division."""
    _, _, _, mult = _target_info(target, restrict_to_d0)
    if restrict_to_d0 and theta.coefficients[-1]:
        return "z", theta.coefficients[-1]
    for f, m in mult.items():
        p = theta.apply_form(f)
        fp = f.polynomial()
        for _ in range(m):
            if not p:
                break
            try:
                p = divide_exact(p, fp)
            except NotDivisible:
                return f, p
    return None


# Ziegler restriction and Weyl action


def ziegler_restrict(theta: Derivation) -> Derivation:
    if not theta.has_z:
        raise ValueError("restriction needs a derivation on the cone")
    if theta.z_coefficient():
        raise ValueError("restriction needs theta(z) = 0")
    coeffs = tuple(c.drop_last_variable() for c in theta.coefficients[:-1])
    return Derivation(coeffs, theta.degree, has_z=False)


def _reflection_images(rs: RootSystem, i: int, arity: int) -> list:
    R = rs.simple_reflections[i]
    l = rs.rank
    images = []
    for j in range(l):
        images.append(Polynomial.linear(list(R[j]) + [0] * (arity - l)))
    for j in range(l, arity):
        images.append(Polynomial.variable(arity, j))
    return images


def weyl_act(rs: RootSystem, i: int, theta: Derivation) -> Derivation:
    """(s_i theta)(f) = s_i(theta(s_i f)); s_i acts on x by its reflection matrix and fixes z."""
    arity = theta.arity
    if arity not in (rs.rank, rs.rank + 1):
        raise ValueError("derivation arity does not match the root system")
    R = rs.simple_reflections[i]
    images = _reflection_images(rs, i, arity)
    moved = [c.substitute(images) for c in theta.coefficients]
    out = []
    for j in range(arity):
        if j < rs.rank:
            acc = Polynomial.zero(arity)
            for m, r in enumerate(R[j]):
                if r:
                    acc = acc + moved[m] * r
            out.append(acc)
        else:
            out.append(moved[j])
    return Derivation(tuple(out), theta.degree, theta.has_z)


# Saito's criterion


def saito_determinant(derivs: Sequence[Derivation]) -> Polynomial:
    return poly_det([list(d.coefficients) for d in derivs])


def saito_test(derivs: Sequence[Derivation], target, check_membership: bool = True) -> bool:
    """True iff det[theta_r(x_c)] is a nonzero constant times the defining polynomial."""
    arity = target.arity
    if len(derivs) != arity:
        raise ValueError(f"Saito's criterion needs {arity} derivations, got {len(derivs)}")
    if check_membership:
        for d in derivs:
            w = membership_witness(d, target)
            if w is not None:
                raise MembershipError(f"derivation is not in the module (fails at {w[0]})")
    det = saito_determinant(derivs)
    Q = target.defining_polynomial()
    if not det:
        return False
    e, c = det.leading_term()
    q = Q.coefficient(e)
    if not q:
        return False
    return det == Q * (c / q)


def saito_by_degree(derivs: Sequence[Derivation], target, rng: random.Random, points: int = 3) -> bool:
    """Saito's criterion for members of D(target), without expanding the determinant.

    For members, Q divides det; when the degrees add up to deg Q the quotient is a
    constant, so det = c*Q with c != 0 iff det is nonzero somewhere.  A nonzero
    value at one rational point settles it; otherwise fall back to the full
    determinant.
    """
    if len(derivs) != target.arity:
        raise ValueError(f"Saito's criterion needs {target.arity} derivations, got {len(derivs)}")
    if sum(d.degree for d in derivs) != target.total_multiplicity():
        return False
    for _ in range(points):
        pt = [Fraction(rng.randint(-97, 97), rng.randint(1, 13)) for _ in range(target.arity)]
        if scalar_det([[c.evaluate(pt) for c in d.coefficients] for d in derivs]):
            return True
    return saito_test(derivs, target, check_membership=False)


# freeness


def free_hilbert(exps: Sequence[int], nvars: int, d: int) -> int:
    """dim_d of a free graded module with generators in degrees exps over nvars variables."""
    return sum(comb(d - e + nvars - 1, nvars - 1) for e in exps if e <= d)


def _hilbert_certificate(target, d0: bool, n: int, nvars: int, total: int, max_degree: int, dims: dict):
    """Walk degrees 0..max_degree; return a contradiction record or None.

    Exponents up to degree d are forced by the graded dimensions, so a
    contradiction here rules out every exponent multiset with the given sum.
    """
    forced: list = []
    for d in range(max_degree + 1):
        observed = dims.setdefault(d, graded_dimension(target, d, d0))
        predicted = free_hilbert(forced, nvars, d)
        new = observed - predicted
        if new < 0:
            return {"degree": d, "observed": observed, "predicted": predicted,
                    "reason": "graded dimension below the forced free Hilbert function",
                    "forcedExponents": list(forced)}
        forced += [d] * new
        remaining = n - len(forced)
        rest = total - sum(forced)
        if remaining < 0:
            return {"degree": d, "observed": observed, "predicted": predicted,
                    "reason": f"more than {n} generators needed by degree {d}",
                    "forcedExponents": list(forced)}
        if remaining == 0 and rest != 0:
            return {"degree": d, "observed": observed, "predicted": predicted,
                    "reason": f"forced exponents sum to {sum(forced)}, not {total}",
                    "forcedExponents": list(forced)}
        if remaining > 0 and rest < remaining * (d + 1):
            return {"degree": d, "observed": observed, "predicted": predicted,
                    "reason": f"{remaining} exponents above {d} cannot sum to {rest}",
                    "forcedExponents": list(forced)}
    return None


def _complement(target, e: int, d0: bool, chosen: list, space: DerivationSpace) -> list:
    """Vectors of the degree-e basis independent of S-multiples of lower generators."""
    ech = Echelon(space.size)
    for g in chosen:
        if g.degree >= e:
            continue
        for mon in monomials(space.arity, e - g.degree):
            ech.add(space.to_vector(g.scale(Polynomial.monomial(mon))))
    out = []
    for theta in graded_derivations(target, e, d0):
        vec = space.to_vector(theta)
        if ech.add(vec):
            out.append(theta)
    return out


def _find_saito_basis(target, exps: Sequence[int], d0: bool, seed: int, trials: int):
    arity, has_z, coords, _ = _target_info(target, d0)
    rng = random.Random(seed)
    wanted = Counter(exps)
    prefix = [euler_derivation(arity, has_z)] if d0 else []
    for _ in range(trials):
        used_random = False
        chosen: list = []
        for e in sorted(wanted):
            space = DerivationSpace(arity, e, coords, has_z)
            comp = _complement(target, e, d0, chosen, space)
            need = wanted[e]
            if len(comp) < need:
                return None
            if len(comp) == need:
                chosen += comp
                continue
            used_random = True
            for _ in range(need):
                cs = [rng.randint(-20, 20) or 1 for _ in comp]
                chosen.append(Derivation.combine(comp, cs))
        candidate = prefix + chosen
        if saito_by_degree(candidate, target, rng):
            return tuple(candidate)
        if not used_random:
            return None
    return None


def max_degree_override() -> int | None:
    value = os.environ.get("SRBKIT_MAX_DEGREE")
    return int(value) if value else None


def decide_freeness(target, exponents: Sequence[int], max_degree: int | None = None,
                    seed: int = DEFAULT_SEED, trials: int = MAX_TRIALS) -> FreenessVerdict:
    """Free / NotFree / Unknown for D(target) against a hypothesized exponent multiset.

    Cones containing z are handled through D = S*theta_E + D_0: the search runs
    on D_0 with one exponent 1 set aside for the Euler derivation.
    """
    exponents = tuple(sorted(exponents))
    total = target.total_multiplicity()
    if sum(exponents) != total:
        raise ValueError(f"exponents sum to {sum(exponents)}, total multiplicity is {total}")
    if max_degree is None:
        max_degree = max_degree_override() or (max(exponents) + 1)
    d0 = target.contains_z()
    arity = target.arity
    if d0:
        module_exps = list(exponents)
        if 1 in module_exps:
            module_exps.remove(1)
            basis = _find_saito_basis(target, module_exps, True, seed, trials)
        else:
            basis = None
        n, mtotal = arity - 1, total - 1
    else:
        basis = _find_saito_basis(target, exponents, False, seed, trials)
        n, mtotal = arity, total
    module = "D0" if d0 else "D"
    if basis is not None:
        return FreenessVerdict("Free", exponents, basis, None, module)
    cert = _hilbert_certificate(target, d0, n, arity, mtotal, max_degree, {})
    if cert is not None:
        cert["module"] = module
        return FreenessVerdict("NotFree", (), (), cert, module)
    return FreenessVerdict("Unknown", (), (), None, module)
