"""Simple-root bases of D_0(cone Shi^k) at degree kh and the k-Euler derivation.

Pipeline:
  raw      phi_i^+ spans D_0(cone Shi^k + {a_j + kz : j != i})_{kh}   (1-dimensional)
  scalars  c with sum_i c_i (a_i + kz) raw_i in D_0(cone Cat^k)        (1-dimensional)
  plus     phi_i^+ = c_i raw_i, scaled so phi_1^+ has leading coefficient 1
  minus    phi_j^- = sum_p I*(a_j, a_p) phi_p^+, then divided by a_j - kz
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arrangement import b_gamma, catalan_arrangement, cone, cone_form
from .exactalg import Echelon, LinearPowerReducer, NotDivisible, divide_exact, rational_str
from .exactalg.linalg import kernel_from_echelon
from .logmod import Derivation, graded_derivations
from .rootsys import RootSystem, build_root_system


class TheoremFalsified(ArithmeticError):
    """A dimension or divisibility statement that must hold failed to hold."""


@dataclass(frozen=True)
class SrbResult:
    rs: RootSystem
    k: int
    plus: tuple
    minus: tuple
    hat_minus: tuple
    eta: Derivation
    scalars: tuple

    @property
    def degree(self) -> int:
        return self.k * self.rs.coxeter_number

    def to_json(self) -> dict:
        return {
            "family": self.rs.family,
            "rank": self.rs.rank,
            "k": self.k,
            "plus": [d.to_json() for d in self.plus],
            "minus": [d.to_json() for d in self.minus],
            "hatMinus": [d.to_json() for d in self.hat_minus],
            "eta": self.eta.to_json(),
            "scalars": [rational_str(c) for c in self.scalars],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SrbResult":
        rs = build_root_system(data["family"], int(data["rank"]))
        load = lambda items: tuple(Derivation.from_json(d) for d in items)  # noqa: E731
        return cls(
            rs=rs,
            k=int(data["k"]),
            plus=load(data["plus"]),
            minus=load(data["minus"]),
            hat_minus=load(data["hatMinus"]),
            eta=Derivation.from_json(data["eta"]),
            scalars=tuple(Fraction(c) for c in data["scalars"]),
        )

    def factor_forms(self) -> list:
        """Forms tried when printing factored coefficients: levels 0, then -1, 1, -2, 2, ..."""
        forms = []
        levels = [0] + [s * j for j in range(1, self.k + 1) for s in (-1, 1)]
        for j in levels:
            forms += [cone_form(a, j) for a in self.rs.positive_roots]
        return forms

    def to_text(self) -> str:
        rs, k = self.rs, self.k
        ff = self.factor_forms()
        lines = [f"SRB for {rs.name}, k = {k}: degree kh = {self.degree}"]
        for label, group in (("phi+", self.plus), ("phi-", self.minus), ("phi-hat", self.hat_minus)):
            for i, d in enumerate(group):
                lines.append(f"{label}_{i + 1} (degree {d.degree}):")
                lines += ["  " + s for s in d.to_text(ff)]
        lines.append(f"eta^{k} (degree {self.eta.degree}):")
        lines += ["  " + s for s in self.eta.to_text(ff)]
        lines.append("normalization scalars: " + ", ".join(rational_str(c) for c in self.scalars))
        return "\n".join(lines)


def _require(cond: bool, message: str):
    if not cond:
        raise TheoremFalsified(message)


def plus_constraint_arrangement(rs: RootSystem, k: int, i: int):
    """B^+ for Gamma = all simple roots except alpha_i."""
    return b_gamma(rs, k, [j for j in range(rs.rank) if j != i], "+")


def compute_srb_plus_raw(rs: RootSystem, k: int) -> list:
    kh = k * rs.coxeter_number
    raw = []
    for i in range(rs.rank):
        basis = graded_derivations(plus_constraint_arrangement(rs, k, i), kh, True)
        _require(
            basis.dimension == 1,
            f"dim D0(B+ without alpha_{i + 1})_{kh} = {basis.dimension}, expected 1",
        )
        raw.append(basis[0])
    return raw


def catalan_cone(rs: RootSystem, k: int):
    return cone(catalan_arrangement(rs, k))


def normalization_scalars(rs: RootSystem, k: int, raw) -> list:
    """Kernel of c -> remainders of sum_i c_i (a_i + kz) raw_i on every Catalan hyperplane."""
    arity = rs.rank + 1
    shifted = [d.scale(cone_form(rs.simple_roots[i], -k).polynomial()) for i, d in enumerate(raw)]
    ech = Echelon(len(shifted))
    for f in catalan_cone(rs, k).forms:
        if f.support() == (arity - 1,):
            continue  # z: theta(z) = 0 already
        reducer = LinearPowerReducer(f, 1)
        rows: dict = {}
        for col, d in enumerate(shifted):
            for e, v in reducer.expansion(d.apply_form(f)).items():
                rows.setdefault(e, {})[col] = v
        for key in sorted(rows, reverse=True):
            ech.add(rows[key])
    return kernel_from_echelon(ech)


def normalize_srb_plus(rs: RootSystem, k: int, raw) -> tuple:
    sols = normalization_scalars(rs, k, raw)
    _require(len(sols) == 1, f"normalization system has a {len(sols)}-dimensional solution space, expected 1")
    c = sols[0]
    _require(all(c), "a normalization scalar vanishes")
    # kernel vectors have leading entry 1, so c_1 = 1 and phi_1^+ keeps raw_1's leading coefficient 1
    plus = [d.scale(ci) for d, ci in zip(raw, c)]
    lead = leading_coefficient(plus[0])
    if lead != 1:
        plus = [d.scale(1 / lead) for d in plus]
        c = [ci / lead for ci in c]
    eta = k_euler_from_plus(rs, k, plus)
    return plus, eta, tuple(c)


def leading_coefficient(theta: Derivation) -> Fraction:
    """First nonzero coefficient in the order d/dx1, d/dx2, ..., monomials decreasing."""
    for c in theta.coefficients:
        if c:
            return c.leading_term()[1]
    raise TheoremFalsified("zero derivation where a basis element was expected")


def k_euler_from_plus(rs: RootSystem, k: int, plus) -> Derivation:
    factors = [cone_form(rs.simple_roots[i], -k).polynomial() for i in range(rs.rank)]
    return Derivation.combine(plus, factors)


def compute_srb_minus(rs: RootSystem, k: int, plus) -> tuple:
    g = rs.gram_dual.entries
    minus, hat = [], []
    for j in range(rs.rank):
        phi = Derivation.combine(plus, list(g[j]))
        f = cone_form(rs.simple_roots[j], k).polynomial()  # a_j - kz
        try:
            coeffs = tuple(divide_exact(c, f) for c in phi.coefficients)
        except NotDivisible:
            raise TheoremFalsified(f"phi_{j + 1}^- is not divisible by alpha_{j + 1} - {k}z") from None
        minus.append(phi)
        hat.append(Derivation(coeffs, phi.degree - 1, True))
    return minus, hat


@lru_cache(maxsize=None)
def compute_srb(rs: RootSystem, k: int) -> SrbResult:
    if k < 1:
        raise ValueError("k must be positive")
    raw = compute_srb_plus_raw(rs, k)
    plus, eta, scalars = normalize_srb_plus(rs, k, raw)
    minus, hat = compute_srb_minus(rs, k, plus)
    return SrbResult(rs, k, tuple(plus), tuple(minus), tuple(hat), eta, scalars)
