"""Exact linear algebra over Q: kernels, echelon forms, and polynomial determinants.

Rows are cleared to primitive integer vectors and eliminated fraction-free
(row <- p*row - r*pivot_row, then divided by its content), which keeps the
integers small.  Rationals only reappear during back-substitution.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .polynomial import Polynomial, as_rational, divide_exact


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples of Fraction

    def __post_init__(self):
        entries = tuple(tuple(as_rational(x) for x in row) for row in self.entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ValueError("matrix entries do not match the declared shape")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer the column count of an empty matrix")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            return RationalMatrix.from_rows(
                [[sum((self.entries[i][t] * other.entries[t][j] for t in range(self.cols)), Fraction(0))
                  for j in range(other.cols)] for i in range(self.rows)],
                other.cols,
            )
        vec = [as_rational(v) for v in other]
        return [sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in self.entries]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix.from_rows(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows
        )

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i)
        )

    def to_json(self) -> list:
        from .polynomial import rational_str

        return [[rational_str(x) for x in row] for row in self.entries]


def _primitive(row: dict) -> dict:
    """Divide an integer sparse row by its content and make the leading entry positive."""
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _integer_row(values) -> dict:
    if isinstance(values, dict):
        items = [(c, as_rational(v)) for c, v in values.items()]
    else:
        items = [(c, as_rational(v)) for c, v in enumerate(values)]
    items = [(c, v) for c, v in items if v]
    if not items:
        return {}
    den = lcm(*(v.denominator for _, v in items))
    return _primitive({c: int(v * den) for c, v in items})


class Echelon:
    """Incrementally maintained row-echelon form over Q, using primitive integer rows.

    Rows may be dense sequences or sparse dicts {column: value}.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict = {}  # pivot column -> integer row (first nonzero at that column)
        self._order: list = []  # pivot columns, sorted

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        """Reduce an integer row against the current pivots (forward only)."""
        if not row:
            return row
        pivots = self.pivots
        for col in self._order:
            v = row.get(col)
            if not v:
                continue
            prow = pivots[col]
            p = prow[col]
            g = gcd(p, v)
            a, b = p // g, v // g
            new = {c: x * a for c, x in row.items()} if a != 1 else dict(row)
            for c, x in prow.items():
                y = new.get(c, 0) - b * x
                if y:
                    new[c] = y
                else:
                    new.pop(c, None)
            row = _primitive(new)
            if not row:
                return row
        return row

    def add(self, values) -> bool:
        """Insert a row; returns True when it increased the rank."""
        row = self.reduce(_integer_row(values))
        if not row:
            return False
        col = min(row)
        self.pivots[col] = row
        lo, hi = 0, len(self._order)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._order[mid] < col:
                lo = mid + 1
            else:
                hi = mid
        self._order.insert(lo, col)
        return True

    def contains(self, values) -> bool:
        return not self.reduce(_integer_row(values))

    def rref_rows(self) -> list:
        """Reduced row-echelon form: list of (pivot column, {col: Fraction}) with pivot 1."""
        rows = {}
        for col in reversed(self._order):
            row = {c: Fraction(v) for c, v in self.pivots[col].items()}
            for c in list(row):
                if c != col and c in rows:
                    f = row.get(c, 0)
                    if not f:
                        continue
                    for c2, v2 in rows[c].items():
                        y = row.get(c2, 0) - f * v2
                        if y:
                            row[c2] = y
                        else:
                            row.pop(c2, None)
            p = row[col]
            rows[col] = {c: v / p for c, v in row.items() if v}
        return [(col, rows[col]) for col in self._order]


def _dense(vec: dict, n: int) -> list:
    out = [Fraction(0)] * n
    for c, v in vec.items():
        out[c] = Fraction(v)
    return out


def _scale_first_to_one(vec: list) -> list:
    lead = next((v for v in vec if v), None)
    if lead is None or lead == 1:
        return vec
    return [v / lead for v in vec]


def _rows_and_cols(M) -> tuple:
    if isinstance(M, RationalMatrix):
        return M.entries, M.cols
    rows = list(M)
    return rows, (len(rows[0]) if rows else 0)


def kernel(M, ncols: int | None = None) -> list:
    """Basis of the right null space of M.

    One vector per free column of the reduced echelon form (in increasing
    column order), each scaled so its first nonzero entry is 1.
    """
    rows, cols = _rows_and_cols(M)
    if ncols is not None:
        cols = ncols
    ech = Echelon(cols)
    for r in rows:
        ech.add(r)
    return kernel_from_echelon(ech)


def kernel_from_echelon(ech: Echelon) -> list:
    rref = ech.rref_rows()
    pivot_cols = {c for c, _ in rref}
    basis = []
    for f in range(ech.ncols):
        if f in pivot_cols:
            continue
        vec = [Fraction(0)] * ech.ncols
        vec[f] = Fraction(1)
        for col, row in rref:
            v = row.get(f)
            if v:
                vec[col] = -v
        basis.append(_scale_first_to_one(vec))
    return basis


def rank(M, ncols: int | None = None) -> int:
    rows, cols = _rows_and_cols(M)
    ech = Echelon(ncols if ncols is not None else cols)
    for r in rows:
        ech.add(r)
    return ech.rank


def row_space_basis(vectors: Iterable, ncols: int) -> list:
    """Canonical basis of a span: the nonzero rows of its reduced echelon form."""
    ech = Echelon(ncols)
    for v in vectors:
        ech.add(v)
    return [_dense(row, ncols) for _, row in ech.rref_rows()]


def solve_membership(basis: Sequence, target: Sequence) -> list | None:
    """Coefficients c with sum c_i basis_i == target, or None if target is outside the span."""
    n = len(basis)
    if n == 0:
        return [] if not any(as_rational(t) for t in target) else None
    dim = len(target)
    # columns = basis vectors, augmented with -target
    rows = [[basis[j][i] for j in range(n)] + [-as_rational(target[i])] for i in range(dim)]
    for vec in kernel(rows, n + 1):
        if vec[n]:
            return [v / vec[n] for v in vec[:n]]
    return None


def det(M) -> Fraction:
    rows, n = _rows_and_cols(M)
    if len(rows) != n:
        raise ValueError("determinant needs a square matrix")
    a = [[as_rational(x) for x in r] for r in rows]
    sign = 1
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        out *= p
        for r in range(c + 1, n):
            f = a[r][c] / p
            if f:
                for j in range(c, n):
                    a[r][j] -= f * a[c][j]
    return out * sign


def poly_det(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a square polynomial matrix by Bareiss fraction-free elimination."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        raise ValueError("empty matrix")
    arity = M[0][0].arity
    a = [list(row) for row in M]
    sign = 1
    prev = Polynomial.constant(arity, 1)
    for c in range(n - 1):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Polynomial.zero(arity)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                a[r][j] = divide_exact(p * a[r][j] - a[r][c] * a[c][j], prev)
            a[r][c] = Polynomial.zero(arity)
        prev = p
    return a[n - 1][n - 1] * sign
