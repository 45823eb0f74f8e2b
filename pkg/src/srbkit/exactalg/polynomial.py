"""Sparse multivariate polynomials over the rationals.

Variables are ordered x1 > x2 > ... > xl > z.  When a polynomial lives on a
cone (arity l+1) the last slot is z; a polynomial of arity l has no z.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

Rational = Fraction
Exponent = tuple  # tuple[int, ...]


class NotDivisible(ArithmeticError):
    """Raised (or returned) when an exact polynomial division leaves a remainder."""


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def rational_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def monomial_key(exp: Exponent):
    """Sort key for graded lex order; larger key = larger monomial."""
    return (sum(exp), exp)


@lru_cache(maxsize=None)
def monomials(arity: int, degree: int) -> tuple:
    """All exponent vectors of the given total degree, in decreasing grlex order."""
    if degree < 0:
        return ()
    if arity == 0:
        return ((),) if degree == 0 else ()
    out = []
    for combo in combinations_with_replacement(range(arity), degree):
        exp = [0] * arity
        for v in combo:
            exp[v] += 1
        out.append(tuple(exp))
    out.sort(reverse=True)
    return tuple(out)


def variable_names(arity: int, has_z: bool) -> list[str]:
    if has_z:
        return [f"x{i + 1}" for i in range(arity - 1)] + ["z"]
    return [f"x{i + 1}" for i in range(arity)]


class Polynomial:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero Fractions."""

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[Exponent, object] | None = None):
        self.arity = arity
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != arity:
                    raise ValueError(f"exponent {exp} does not have arity {arity}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = as_rational(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, arity: int, terms: dict) -> "Polynomial":
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.arity = arity
        p._terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, arity: int) -> "Polynomial":
        return cls._raw(arity, {})

    @classmethod
    def constant(cls, arity: int, c) -> "Polynomial":
        c = as_rational(c)
        return cls._raw(arity, {(0,) * arity: c} if c else {})

    @classmethod
    def variable(cls, arity: int, index: int) -> "Polynomial":
        if not 0 <= index < arity:
            raise IndexError(f"variable index {index} out of range for arity {arity}")
        exp = [0] * arity
        exp[index] = 1
        return cls._raw(arity, {tuple(exp): Fraction(1)})

    @classmethod
    def linear(cls, coefficients: Sequence, constant=0) -> "Polynomial":
        """The (homogeneous if constant == 0) polynomial sum c_i * var_i + constant."""
        n = len(coefficients)
        terms = {}
        for i, c in enumerate(coefficients):
            c = as_rational(c)
            if c:
                exp = [0] * n
                exp[i] = 1
                terms[tuple(exp)] = c
        constant = as_rational(constant)
        if constant:
            terms[(0,) * n] = constant
        return cls._raw(n, terms)

    @classmethod
    def monomial(cls, exp: Exponent, coef=1) -> "Polynomial":
        coef = as_rational(coef)
        return cls._raw(len(exp), {tuple(exp): coef} if coef else {})

    # basic queries

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exp: Exponent) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e in self._terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return d is None or degs == {d}

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=monomial_key)
        return exp, self._terms[exp]

    # arithmetic

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.arity, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._raw(self.arity, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.arity, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_rational(other)
            if not c:
                return Polynomial.zero(self.arity)
            return Polynomial._raw(self.arity, {e: v * c for e, v in self._terms.items()})
        self._check(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        terms: dict = {}
        get = terms.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = get(e, 0) + c1 * c2
        return Polynomial._raw(self.arity, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(self.arity, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.arity == other.arity and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.arity, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    # substitution

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace variable i by images[i] (all images share one arity)."""
        if len(images) != self.arity:
            raise ValueError("need one image per variable")
        target = images[0].arity if images else 0
        powers: list[dict] = [dict() for _ in images]

        def power(i, n):
            cache = powers[i]
            if n not in cache:
                cache[n] = images[i] ** n
            return cache[n]

        out = Polynomial.zero(target)
        for exp, c in self._terms.items():
            term = Polynomial.constant(target, c)
            for i, n in enumerate(exp):
                if n:
                    term = term * power(i, n)
            out = out + term
        return out

    def set_variable(self, index: int, value) -> "Polynomial":
        """Specialize one variable to a rational number (keeps the arity)."""
        value = as_rational(value)
        terms: dict = {}
        for exp, c in self._terms.items():
            n = exp[index]
            if n and not value:
                continue
            e = exp[:index] + (0,) + exp[index + 1:]
            terms[e] = terms.get(e, 0) + c * value ** n
        return Polynomial._raw(self.arity, {e: c for e, c in terms.items() if c})

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        pt = [as_rational(v) for v in point]
        for exp, c in self._terms.items():
            t = c
            for v, n in zip(pt, exp):
                if n:
                    t *= v ** n
            total += t
        return total

    def drop_last_variable(self) -> "Polynomial":
        """Set the last variable to zero and remove its slot (cone -> base)."""
        return Polynomial._raw(
            self.arity - 1,
            {e[:-1]: c for e, c in self._terms.items() if e[-1] == 0},
        )

    def extend(self, arity: int) -> "Polynomial":
        """Embed into more variables by appending zero exponents."""
        pad = (0,) * (arity - self.arity)
        return Polynomial._raw(arity, {e + pad: c for e, c in self._terms.items()})

    # rendering

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = variable_names(self.arity, has_z=False)
        if not self._terms:
            return "0"
        parts = []
        for i, (exp, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                names[v] if n == 1 else f"{names[v]}^{n}" for v, n in enumerate(exp) if n
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{rational_str(mag)}*{mono}"
            else:
                body = rational_str(mag)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.arity}, {self.to_str()!r})"

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "terms": [{"exp": list(e), "coef": rational_str(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Polynomial":
        return cls(int(data["arity"]), {tuple(t["exp"]): Fraction(t["coef"]) for t in data["terms"]})


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.arity != b.arity:
        raise ValueError(f"arity mismatch: {a.arity} vs {b.arity}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def _divide(p: Polynomial, d: Polynomial):
    """Multivariate division by d using grlex leading terms; returns (q, r)."""
    lead_exp, lead_c = d.leading_term()
    dterms = list(d.items())
    rem = dict(p.items())
    quot: dict = {}
    remainder: dict = {}
    while rem:
        exp = max(rem, key=monomial_key)
        c = rem[exp]
        shift = tuple(a - b for a, b in zip(exp, lead_exp))
        if min(shift) < 0:
            remainder[exp] = c
            del rem[exp]
            continue
        f = c / lead_c
        quot[shift] = f
        for de, dc in dterms:
            e = tuple(a + b for a, b in zip(shift, de))
            v = rem.get(e, 0) - f * dc
            if v:
                rem[e] = v
            else:
                rem.pop(e, None)
    return Polynomial._raw(p.arity, quot), Polynomial._raw(p.arity, remainder)


def divide_exact(p: Polynomial, d: Polynomial) -> Polynomial:
    """Exact quotient p / d; raises NotDivisible when d does not divide p."""
    if d.arity != p.arity:
        raise ValueError(f"arity mismatch: {p.arity} vs {d.arity}")
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    q, r = _divide(p, d)
    if r:
        raise NotDivisible(f"{d} does not divide {p}")
    return q


def try_divide(p: Polynomial, d: Polynomial) -> Polynomial | None:
    try:
        return divide_exact(p, d)
    except NotDivisible:
        return None


def product(polys: Iterable[Polynomial], arity: int) -> Polynomial:
    out = Polynomial.constant(arity, 1)
    for p in polys:
        out = out * p
    return out
