"""Linear forms and reduction of polynomials modulo powers of a linear form."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polynomial import Polynomial, as_rational, rational_str


@dataclass(frozen=True)
class LinearForm:
    """sum(coefficients[i] * var_i) + constant, stored with positive leading coefficient.

    Forms are only defined up to a nonzero scalar, so construction divides out
    the sign of the first nonzero coefficient.  Central forms have constant 0.
    """

    coefficients: tuple
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        coeffs = tuple(as_rational(c) for c in self.coefficients)
        const = as_rational(self.constant)
        lead = next((c for c in coeffs if c), None)
        if lead is None:
            raise ValueError("a linear form needs a nonzero coefficient")
        if lead < 0:
            coeffs = tuple(-c for c in coeffs)
            const = -const
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "constant", const)

    @classmethod
    def of(cls, *coefficients, constant=0) -> "LinearForm":
        return cls(tuple(coefficients), as_rational(constant))

    @property
    def arity(self) -> int:
        return len(self.coefficients)

    @property
    def central(self) -> bool:
        return self.constant == 0

    def primitive(self) -> "LinearForm":
        """Scale so the coefficients are coprime integers (the canonical representative)."""
        from math import gcd, lcm

        vals = self.coefficients + (self.constant,)
        den = lcm(*(v.denominator for v in vals))
        ints = [int(v * den) for v in vals]
        g = gcd(*ints)
        return LinearForm(tuple(Fraction(v, g) for v in ints[:-1]), Fraction(ints[-1], g))

    def proportional(self, other: "LinearForm") -> bool:
        return self.primitive() == other.primitive()

    def eliminated_variable(self) -> int:
        """Index of the first variable with nonzero coefficient."""
        return next(i for i, c in enumerate(self.coefficients) if c)

    def support(self) -> tuple:
        return tuple(i for i, c in enumerate(self.coefficients) if c)

    def polynomial(self) -> Polynomial:
        return Polynomial.linear(self.coefficients, self.constant)

    def apply(self, values: Sequence[Polynomial]) -> Polynomial:
        """Evaluate the form on a vector of polynomials (e.g. a derivation's coefficients)."""
        out = Polynomial.zero(values[0].arity)
        for c, v in zip(self.coefficients, values):
            if c:
                out = out + v * c
        if self.constant:
            out = out + self.constant
        return out

    def to_list(self) -> list:
        return [rational_str(c) for c in self.coefficients]

    def to_str(self, names: Sequence[str]) -> str:
        return self.polynomial().to_str(names) if self.central else (
            self.polynomial().to_str(list(names) + ["1"])
        )


class LinearPowerReducer:
    """Expands polynomials in powers of a central form f, keeping powers below m.

    The first variable v with nonzero coefficient in f is eliminated: writing
    u = f, we substitute x_v = (u - sum_{i != v} c_i x_i) / c_v and collect the
    coefficient of u^t (t < m).  The slot v then carries the power of u, and the
    returned components have zero exponent in that slot.
    """

    def __init__(self, form: LinearForm, m: int):
        if not form.central:
            raise ValueError("reduction needs a central form")
        if m < 1:
            raise ValueError("multiplicity must be at least 1")
        self.form = form
        self.m = m
        self.arity = form.arity
        self.var = form.eliminated_variable()
        cv = form.coefficients[self.var]
        terms = {}
        for i, c in enumerate(form.coefficients):
            e = [0] * self.arity
            e[i] = 1
            terms[tuple(e)] = 1 / cv if i == self.var else -c / cv
        self._image = Polynomial(self.arity, terms)
        self._powers = {0: {(0,) * self.arity: Fraction(1)}}

    def _power(self, n: int) -> dict:
        if n not in self._powers:
            prev = self._power(n - 1)
            v, m = self.var, self.m
            out: dict = {}
            for e1, c1 in prev.items():
                for e2, c2 in self._image.items():
                    if e1[v] + e2[v] >= m:
                        continue
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
            self._powers[n] = {e: c for e, c in out.items() if c}
        return self._powers[n]

    def monomial_image(self, exp) -> dict:
        """Truncated expansion of one monomial, keyed by exponent (slot v = power of u)."""
        v = self.var
        base = self._power(exp[v])
        rest = exp[:v] + (0,) + exp[v + 1:]
        return {tuple(a + b for a, b in zip(e, rest)): c for e, c in base.items()}

    def expansion(self, p: Polynomial) -> dict:
        out: dict = {}
        for exp, c in p.items():
            for e, ci in self.monomial_image(exp).items():
                out[e] = out.get(e, 0) + c * ci
        return {e: c for e, c in out.items() if c}

    def components(self, p: Polynomial) -> list:
        v = self.var
        buckets = [dict() for _ in range(self.m)]
        for e, c in self.expansion(p).items():
            buckets[e[v]][e[:v] + (0,) + e[v + 1:]] = c
        return [Polynomial(self.arity, b) for b in buckets]


def remainder_mod_linear_power(p: Polynomial, f: LinearForm, m: int) -> list:
    """Remainder components r_0..r_{m-1} of p written as a polynomial in f.

    All components vanish exactly when f^m divides p.
    """
    if f.arity != p.arity:
        raise ValueError(f"arity mismatch: {p.arity} vs {f.arity}")
    return LinearPowerReducer(f, m).components(p)
