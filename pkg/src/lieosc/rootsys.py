"""Simple and positive roots of the classical families A, B, C, D.

Roots live in the orthonormal coordinates ``l_1..l_n`` (``l_1..l_{n+1}`` for
A).  Each positive root carries a label: the sorted multiset of simple-root
indices whose sum it is, written as a digit word such as ``"11223"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import InvalidRankError

__all__ = [
    "Family",
    "PositiveRoot",
    "RootSystem",
    "simple_roots",
    "positive_roots",
    "algebra_dim",
    "defining_dim",
]


class Family(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"

    @classmethod
    def parse(cls, tag) -> Family:
        if isinstance(tag, Family):
            return tag
        try:
            return cls(str(tag).upper())
        except ValueError:
            raise InvalidRankError(f"unknown family {tag!r}") from None

    @property
    def min_rank(self) -> int:
        return {"A": 1, "B": 2, "C": 2, "D": 3}[self.value]

    @property
    def orthogonal(self) -> bool:
        return self in (Family.B, Family.D)


def _check(family, n: int) -> Family:
    fam = Family.parse(family)
    if not isinstance(n, int) or n < fam.min_rank:
        raise InvalidRankError(f"{fam.value}{n}: rank must be an integer >= {fam.min_rank}")
    return fam


def _unit(n: int, i: int, s: int = 1) -> list[int]:
    v = [0] * n
    v[i] = s
    return v


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def simple_roots(family, n: int) -> list[tuple[int, ...]]:
    fam = _check(family, n)
    dim = n + 1 if fam is Family.A else n
    roots = []
    chain = n if fam is Family.A else n - 1
    for i in range(chain):
        v = [0] * dim
        v[i], v[i + 1] = 1, -1
        roots.append(tuple(v))
    if fam is Family.C:
        roots.append(tuple(_unit(n, n - 1, 2)))
    elif fam is Family.B:
        roots.append(tuple(_unit(n, n - 1)))
    elif fam is Family.D:
        v = [0] * n
        v[n - 2] = v[n - 1] = 1
        roots.append(tuple(v))
    return roots


def algebra_dim(family, n: int) -> int:
    fam = _check(family, n)
    return {
        Family.A: n * (n + 2),
        Family.B: n * (2 * n + 1),
        Family.C: n * (2 * n + 1),
        Family.D: n * (2 * n - 1),
    }[fam]


def defining_dim(family, n: int) -> int:
    fam = _check(family, n)
    return {Family.A: n + 1, Family.B: 2 * n + 1, Family.C: 2 * n, Family.D: 2 * n}[fam]


@dataclass(frozen=True)
class PositiveRoot:
    label: str
    vector: tuple[int, ...]
    coeffs: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def to_json(self) -> dict:
        return {"label": self.label, "vector": list(self.vector)}


@dataclass(frozen=True)
class RootSystem:
    family: Family
    rank: int
    simple: tuple[tuple[int, ...], ...]
    positive: tuple[PositiveRoot, ...]

    def by_label(self, label: str) -> PositiveRoot:
        for r in self.positive:
            if r.label == label:
                return r
        raise KeyError(label)

    def by_vector(self, vector) -> PositiveRoot | None:
        vector = tuple(vector)
        for r in self.positive:
            if r.vector == vector:
                return r
        return None

    def index(self, label: str) -> int:
        return [r.label for r in self.positive].index(label)

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "rank": self.rank,
            "positive": [r.to_json() for r in self.positive],
        }


def _vectors(fam: Family, n: int) -> list[tuple[int, ...]]:
    """Positive roots in coordinates, before labelling."""
    out = []
    if fam is Family.A:
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                v = [0] * (n + 1)
                v[i], v[j] = 1, -1
                out.append(tuple(v))
        return out
    for i in range(n):
        for j in range(i + 1, n):
            for s in (-1, 1):
                v = [0] * n
                v[i], v[j] = 1, s
                out.append(tuple(v))
        if fam is Family.C:
            out.append(tuple(_unit(n, i, 2)))
        elif fam is Family.B:
            out.append(tuple(_unit(n, i)))
    return out


def _coefficients(vector, simple) -> tuple[int, ...]:
    # every simple system here is triangular after a tail adjustment, so a
    # small exact solve via fractions is simplest and obviously correct
    from fractions import Fraction

    n = len(simple)
    dim = len(vector)
    rows = [[Fraction(simple[j][k]) for j in range(n)] + [Fraction(vector[k])] for k in range(dim)]
    # Gaussian elimination on the (dim x n) system
    piv_row = 0
    pivots = []
    for col in range(n):
        sel = next((r for r in range(piv_row, dim) if rows[r][col] != 0), None)
        if sel is None:
            continue
        rows[piv_row], rows[sel] = rows[sel], rows[piv_row]
        p = rows[piv_row][col]
        rows[piv_row] = [x / p for x in rows[piv_row]]
        for r in range(dim):
            if r != piv_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[piv_row])]
        pivots.append(col)
        piv_row += 1
    coeffs = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        coeffs[col] = rows[r][n]
    if any(c.denominator != 1 or c < 0 for c in coeffs):
        raise ValueError(f"{vector} is not a nonnegative integer combination of simple roots")
    return tuple(int(c) for c in coeffs)


def _label(coeffs) -> str:
    return "".join(str(i + 1) * c for i, c in enumerate(coeffs))


def positive_roots(family, n: int) -> RootSystem:
    # validate first: the cache would otherwise answer 2.0 with the entry for 2
    return _positive_roots(_check(family, n), n)


@lru_cache(maxsize=None)
def _positive_roots(fam: Family, n: int) -> RootSystem:
    simple = simple_roots(fam, n)
    roots = []
    for v in _vectors(fam, n):
        coeffs = _coefficients(v, simple)
        roots.append(PositiveRoot(_label(coeffs), v, coeffs))
    roots.sort(key=lambda r: (r.height, r.label))
    return RootSystem(fam, n, tuple(simple), tuple(roots))
