"""Irreducible crystallographic root systems in simple-root coordinates.

The coordinate functionals x1..xl are the simple roots themselves, so a root
is an integer vector of its simple-root coefficients and the dual basis vector
of alpha_i acts as d/dx_i.  Inner products are normalized so that long roots
have squared length 2; simple roots follow Bourbaki numbering (B_l: alpha_l
short, C_l: alpha_l long, G2: alpha_1 short).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactalg import RationalMatrix, rational_str

SUPPORTED = {
    "A": (1, 2, 3, 4),
    "B": (1, 2, 3, 4),
    "C": (1, 2, 3, 4),
    "D": (4,),
    "G": (2,),
}


class UnsupportedRootSystem(ValueError):
    pass


def supported_types() -> list[str]:
    return [f"{fam}{r}" for fam, ranks in SUPPORTED.items() for r in ranks]


def _ambient_simple_roots(family: str, rank: int) -> list[list[int]]:
    """Simple roots in a standard Euclidean realization (before normalization)."""
    n = rank

    def e(i, dim):
        v = [0] * dim
        v[i] = 1
        return v

    def diff(i, dim):  # e_i - e_{i+1}
        v = [0] * dim
        v[i], v[i + 1] = 1, -1
        return v

    if family == "A":
        return [diff(i, n + 1) for i in range(n)]
    if family == "B":
        return [diff(i, n) for i in range(n - 1)] + [e(n - 1, n)]
    if family == "C":
        last = e(n - 1, n)
        last[n - 1] = 2
        return [diff(i, n) for i in range(n - 1)] + [last]
    if family == "D":
        last = [0] * n
        last[n - 2], last[n - 1] = 1, 1
        return [diff(i, n) for i in range(n - 1)] + [last]
    if family == "G":
        return [[1, -1, 0], [-2, 1, 1]]
    raise UnsupportedRootSystem(family)


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    positive_roots: tuple  # integer tuples in simple-root coordinates
    gram_dual: RationalMatrix
    cartan: tuple  # cartan[i][j] = 2 (a_i, a_j) / (a_i, a_i)
    coxeter_number: int
    exponents: tuple
    simple_reflections: tuple = field(repr=False)  # integer matrices R, s_i(x_j) = sum_m R[j][m] x_m

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def simple_roots(self) -> tuple:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    def is_simple(self, root) -> bool:
        return sum(root) == 1

    def height(self, root) -> int:
        return sum(root)

    def highest_root(self) -> tuple:
        return max(self.positive_roots, key=sum)

    def inner(self, u, v) -> Fraction:
        """I*(u, v) for vectors in simple-root coordinates."""
        g = self.gram_dual.entries
        return sum(
            (Fraction(u[i]) * v[j] * g[i][j] for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )

    def reflect_root(self, i: int, root) -> tuple:
        """s_i(root) = root - <root, alpha_i^vee> alpha_i."""
        coroot = sum(root[j] * self.cartan[i][j] for j in range(self.rank))
        out = list(root)
        out[i] -= coroot
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "positiveRoots": [list(r) for r in self.positive_roots],
            "gramDual": self.gram_dual.to_json(),
            "cartan": [list(r) for r in self.cartan],
            "coxeterNumber": self.coxeter_number,
            "exponents": list(self.exponents),
            "simpleReflections": [[list(r) for r in m] for m in self.simple_reflections],
        }

    def to_text(self) -> str:
        lines = [
            f"root system {self.name}",
            f"  |Phi+| = {len(self.positive_roots)}, h = {self.coxeter_number}, "
            f"exponents = {list(self.exponents)}",
            "  positive roots (simple-root coordinates):",
        ]
        for r in self.positive_roots:
            lines.append(f"    {list(r)}  height {sum(r)}")
        lines.append("  Gram matrix I*(a_i, a_j):")
        for row in self.gram_dual.entries:
            lines.append("    " + "  ".join(rational_str(x) for x in row))
        lines.append("  Cartan matrix 2(a_i, a_j)/(a_i, a_i):")
        for row in self.cartan:
            lines.append("    " + "  ".join(str(x) for x in row))
        return "\n".join(lines)


def _gram(family: str, rank: int) -> list[list[Fraction]]:
    amb = _ambient_simple_roots(family, rank)
    g = [[Fraction(sum(a * b for a, b in zip(u, v))) for v in amb] for u in amb]
    longest = max(g[i][i] for i in range(rank))
    scale = Fraction(2) / longest
    return [[x * scale for x in row] for row in g]


def close_positive_roots(simple_cartan, start) -> list[tuple]:
    """Closure of a root set under the simple reflections, keeping positive roots.

    For a positive root b != a_i, s_i(b) is again positive, so starting from
    the simple roots this enumerates all of Phi+.
    """
    rank = len(simple_cartan)
    seen = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for root in frontier:
            for i in range(rank):
                coroot = sum(root[j] * simple_cartan[i][j] for j in range(rank))
                img = list(root)
                img[i] -= coroot
                img = tuple(img)
                if all(c >= 0 for c in img) and any(img) and img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return sorted(seen, key=lambda r: (sum(r), tuple(-c for c in r)))


def exponents_from_heights(positive_roots, rank: int) -> tuple:
    """Exponents as the partition dual to the height distribution of Phi+."""
    counts: dict = {}
    for r in positive_roots:
        counts[sum(r)] = counts.get(sum(r), 0) + 1
    top = max(counts)
    # exponent m occurs (#roots of height m) - (#roots of height m+1) times
    out = []
    for m in range(1, top + 1):
        out += [m] * (counts.get(m, 0) - counts.get(m + 1, 0))
    if len(out) != rank:
        raise ArithmeticError("height distribution does not produce rank many exponents")
    return tuple(sorted(out))


def exponents(rs: RootSystem) -> tuple:
    return exponents_from_heights(rs.positive_roots, rs.rank)


def simple_reflection_matrix(rs: RootSystem, i: int) -> tuple:
    """Integer matrix R of s_i on the coordinate functionals: s_i(x_j) = sum_m R[j][m] x_m."""
    if not 0 <= i < rs.rank:
        raise IndexError(f"simple root index {i + 1} out of range 1..{rs.rank}")
    return rs.simple_reflections[i]


def gram_dual(rs: RootSystem) -> RationalMatrix:
    return rs.gram_dual


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    family = family.upper()
    if family not in SUPPORTED or rank not in SUPPORTED[family]:
        raise UnsupportedRootSystem(
            f"unsupported root system {family}{rank}; supported: {', '.join(supported_types())}"
        )
    g = _gram(family, rank)
    cartan = []
    for i in range(rank):
        row = []
        for j in range(rank):
            c = 2 * g[i][j] / g[i][i]
            if c.denominator != 1:
                raise ArithmeticError("non-integral Cartan entry")
            row.append(int(c))
        cartan.append(tuple(row))
    cartan = tuple(cartan)
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    pos = close_positive_roots(cartan, simple)
    refl = []
    for i in range(rank):
        R = []
        for j in range(rank):
            row = [int(j == m) for m in range(rank)]
            row[i] -= cartan[i][j]
            R.append(tuple(row))
        refl.append(tuple(R))
    h = 2 * len(pos) // rank
    return RootSystem(
        family=family,
        rank=rank,
        positive_roots=tuple(pos),
        gram_dual=RationalMatrix.from_rows(g, rank),
        cartan=cartan,
        coxeter_number=h,
        exponents=exponents_from_heights(pos, rank),
        simple_reflections=tuple(refl),
    )
