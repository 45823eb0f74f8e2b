"""Shi and Catalan arrangements, their cones, and Ziegler multiplicities.

An affine hyperplane H_{a,j} = {a = j} is stored as (root, level).  Its cone is
the central form a - j*z in the variables (x1, ..., xl, z); the cone always
contains the hyperplane at infinity z = 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .exactalg import LinearForm, Polynomial, product, rational_str, variable_names
from .rootsys import RootSystem


@dataclass(frozen=True)
class AffineArrangement:
    rank: int
    hyperplanes: tuple  # ((root tuple, level), ...)

    def __post_init__(self):
        if len(set(self.hyperplanes)) != len(self.hyperplanes):
            raise ValueError("duplicate hyperplane in affine arrangement")

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def to_text(self) -> str:
        lines = [f"affine arrangement: {len(self)} hyperplanes (root, level)"]
        for root, j in self.hyperplanes:
            lines.append(f"  {list(root)}  {j}")
        return "\n".join(lines)


@dataclass(frozen=True)
class CentralArrangement:
    arity: int
    forms: tuple  # LinearForm, pairwise non-proportional
    has_z: bool = True  # last variable is the homogenizing z

    def __post_init__(self):
        prims = [f.primitive() for f in self.forms]
        if len(set(prims)) != len(prims):
            raise ValueError("arrangement contains proportional forms")
        if any(f.arity != self.arity or not f.central for f in self.forms):
            raise ValueError("forms must be central with the arrangement's arity")
        object.__setattr__(self, "forms", tuple(prims))

    def __len__(self) -> int:
        return len(self.forms)

    def __contains__(self, form: LinearForm) -> bool:
        return form.primitive() in self.forms

    @property
    def multiplicity(self) -> dict:
        return {f: 1 for f in self.forms}

    def z_form(self) -> LinearForm:
        return LinearForm(tuple(int(i == self.arity - 1) for i in range(self.arity)))

    def contains_z(self) -> bool:
        return self.has_z and self.z_form() in self

    def defining_polynomial(self) -> Polynomial:
        return product((f.polynomial() for f in self.forms), self.arity)

    def total_multiplicity(self) -> int:
        return len(self.forms)

    def union(self, forms: Iterable[LinearForm]) -> "CentralArrangement":
        extra = [f.primitive() for f in forms if f not in self]
        return CentralArrangement(self.arity, self.forms + tuple(extra), self.has_z)

    def minus(self, forms: Iterable[LinearForm]) -> "CentralArrangement":
        drop = {f.primitive() for f in forms}
        return CentralArrangement(self.arity, tuple(f for f in self.forms if f not in drop), self.has_z)

    def names(self) -> list:
        return variable_names(self.arity, self.has_z)

    def to_json(self) -> dict:
        return {
            "rank": self.arity - 1 if self.has_z else self.arity,
            "forms": [[rational_str(c) for c in f.coefficients] for f in self.forms],
        }

    def to_text(self) -> str:
        names = self.names()
        lines = [f"central arrangement: {len(self)} hyperplanes"]
        lines += [f"  {f.polynomial().to_str(names)}" for f in self.forms]
        return "\n".join(lines)


@dataclass(frozen=True)
class MultiArrangement:
    arity: int
    mult: tuple  # ((LinearForm, multiplicity), ...)
    has_z: bool = False

    def __post_init__(self):
        merged: dict = {}
        for f, m in self.mult:
            if m < 0:
                raise ValueError("multiplicities must be non-negative")
            if f.arity != self.arity or not f.central:
                raise ValueError("forms must be central with the arrangement's arity")
            p = f.primitive()
            merged[p] = merged.get(p, 0) + m
        object.__setattr__(self, "mult", tuple(merged.items()))

    @classmethod
    def from_map(cls, arity: int, mult: Mapping, has_z: bool = False) -> "MultiArrangement":
        return cls(arity, tuple(mult.items()), has_z)

    @property
    def forms(self) -> tuple:
        return tuple(f for f, _ in self.mult)

    @property
    def multiplicity(self) -> dict:
        return dict(self.mult)

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.mult)

    def defining_polynomial(self) -> Polynomial:
        return product((f.polynomial() ** m for f, m in self.mult), self.arity)

    def contains_z(self) -> bool:
        return False

    def names(self) -> list:
        return variable_names(self.arity, self.has_z)

    def to_json(self) -> dict:
        return {
            "rank": self.arity,
            "forms": [[rational_str(c) for c in f.coefficients] for f, _ in self.mult],
            "multiplicity": [m for _, m in self.mult],
        }

    def to_text(self) -> str:
        names = self.names()
        lines = [f"multiarrangement: {len(self.mult)} hyperplanes, |m| = {self.total_multiplicity()}"]
        lines += [f"  {f.polynomial().to_str(names)}  m={m}" for f, m in self.mult]
        return "\n".join(lines)


def shi_arrangement(rs: RootSystem, k: int) -> AffineArrangement:
    if k < 1:
        raise ValueError("extended Shi arrangements need k >= 1")
    hs = tuple((a, j) for a in rs.positive_roots for j in range(-k + 1, k + 1))
    return AffineArrangement(rs.rank, hs)


def catalan_arrangement(rs: RootSystem, k: int) -> AffineArrangement:
    if k < 0:
        raise ValueError("extended Catalan arrangements need k >= 0")
    hs = tuple((a, j) for a in rs.positive_roots for j in range(-k, k + 1))
    return AffineArrangement(rs.rank, hs)


def cone_form(root, level: int) -> LinearForm:
    """The form a - level*z of the coned hyperplane H_{a, level}."""
    return LinearForm(tuple(root) + (-level,))


def cone(aff: AffineArrangement) -> CentralArrangement:
    forms = [cone_form(a, j) for a, j in aff.hyperplanes]
    forms.append(LinearForm((0,) * aff.rank + (1,)))
    return CentralArrangement(aff.rank + 1, tuple(forms))


def crystallographic_arrangement(rs: RootSystem) -> CentralArrangement:
    """A(Phi) in the l base variables."""
    return CentralArrangement(rs.rank, tuple(LinearForm(a) for a in rs.positive_roots), has_z=False)


def b_gamma(rs: RootSystem, k: int, gamma: Iterable[int], sign: str) -> CentralArrangement:
    """cone(Shi^k) with a + kz added (sign '+') or a - kz removed (sign '-') for a in gamma.

    gamma holds 0-based simple-root indices.
    """
    gamma = sorted(set(gamma))
    if any(not 0 <= i < rs.rank for i in gamma):
        raise ValueError(f"gamma must consist of simple-root indices 1..{rs.rank}")
    base = cone(shi_arrangement(rs, k))
    simple = rs.simple_roots
    if sign == "+":
        return base.union(cone_form(simple[i], -k) for i in gamma)
    if sign == "-":
        return base.minus(cone_form(simple[i], k) for i in gamma)
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def ziegler_multiplicity(central: CentralArrangement) -> MultiArrangement:
    """Restriction to the hyperplane at infinity z = 0, counting coincident traces."""
    if not central.contains_z():
        raise ValueError("the arrangement does not contain the hyperplane z = 0")
    z = central.z_form()
    mult: dict = {}
    for f in central.forms:
        if f == z:
            continue
        trace = LinearForm(f.coefficients[:-1]).primitive()
        mult[trace] = mult.get(trace, 0) + 1
    return MultiArrangement.from_map(central.arity - 1, mult)


def constant_multiarrangement(rs: RootSystem, m: int) -> MultiArrangement:
    return MultiArrangement.from_map(rs.rank, {LinearForm(a): m for a in rs.positive_roots})


def shifted_multiarrangement(rs: RootSystem, k: int, gamma: Iterable[int], sign: int) -> MultiArrangement:
    """(A(Phi), 2k + sign * chi_gamma)."""
    gamma = set(gamma)
    mult = {}
    for a in rs.positive_roots:
        simple_index = a.index(1) if sum(a) == 1 else None
        mult[LinearForm(a)] = 2 * k + (sign if simple_index in gamma else 0)
    return MultiArrangement.from_map(rs.rank, mult)
