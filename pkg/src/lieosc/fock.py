"""Bosonic and fermionic Fock spaces and the oscillator representations built on them.

Bosonic spaces are truncated by total occupation ``sum(m) <= cutoff``.
Operators are never formed as products of truncated ladder matrices;
each bilinear is normal ordered first and then applied state by state,
which makes the truncated matrix equal to ``P op P`` for the projector
``P`` onto the kept states.  A product of such bilinears is then exact
on every column with enough headroom below the cutoff: all factors but
the leftmost may raise the total by two, and none of those
intermediate states may be cut.  Commutators need depth 2, quadratic
expressions in ``L`` need 2, RTT products need 4.

Fermionic spaces are exact.  ``c_mu`` creates and ``pi_mu`` annihilates a
fermion in mode ``mu``; the Jordan-Wigner string counts occupied modes
with a smaller index.  The Majorana operator of the odd orthogonal
family lives on an extra last mode ``f`` as ``(f + f^dagger)/sqrt 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Callable, Sequence

from .definingrep import RepBundle, build_rep
from .errors import ConsistencyError, CutoffTooSmallError, FamilyMismatchError, InvalidRankError
from .matrix import SurdMatrix, lie_residual, reshape, stack
from .report import CheckReport
from .rootsys import Family
from .scalar import I, SQRT2, Surd

__all__ = [
    "FockSpace",
    "OperatorRep",
    "bosonic_space",
    "fermionic_space",
    "metaplectic_rep",
    "spinor_rep_d",
    "spinor_rep_b",
    "su_oscillator_rep",
    "chirality_blocks",
    "check_commutators",
    "ladder_operators",
    "split_roots",
]


@dataclass(frozen=True)
class FockSpace:
    kind: str  # "bosonic" or "fermionic"
    modes: int
    cutoff: int | None
    majorana: bool
    basis: tuple[tuple[int, ...], ...]
    index: dict = field(repr=False, compare=False, hash=False, default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def bosonic(self) -> bool:
        return self.kind == "bosonic"

    def totals(self) -> list[int]:
        return [sum(m) for m in self.basis]

    def interior(self, depth: int) -> list[int]:
        """Basis indices with total occupation at most ``cutoff - depth``."""
        if not self.bosonic:
            return list(range(self.dim))
        return [k for k, m in enumerate(self.basis) if sum(m) <= self.cutoff - depth]

    def level(self, lam: int) -> list[int]:
        return [k for k, m in enumerate(self.basis) if sum(m) == lam]

    # single ladder operators -------------------------------------------------
    def creator(self, mu: int) -> SurdMatrix:
        """``a_mu^dagger`` (bosonic, truncated) or ``c_mu`` (fermionic)."""
        return self._ladder(mu, +1)

    def annihilator(self, mu: int) -> SurdMatrix:
        """``a_mu`` (bosonic) or ``pi_mu`` (fermionic)."""
        return self._ladder(mu, -1)

    def number(self, mu: int) -> SurdMatrix:
        return SurdMatrix.from_entries(
            (self.dim, self.dim), {(k, k): m[mu] for k, m in enumerate(self.basis) if m[mu]}
        )

    def total_number(self) -> SurdMatrix:
        return SurdMatrix.from_entries(
            (self.dim, self.dim), {(k, k): sum(m) for k, m in enumerate(self.basis) if sum(m)}
        )

    def identity(self) -> SurdMatrix:
        return SurdMatrix.identity(self.dim)

    def _ladder(self, mu: int, step: int) -> SurdMatrix:
        if not 0 <= mu < len(self.basis[0]):
            raise IndexError(f"mode {mu} out of range")
        entries = {}
        for k, m in enumerate(self.basis):
            new = list(m)
            new[mu] += step
            target = self.index.get(tuple(new))
            if target is None:
                continue
            if self.bosonic:
                entries[(target, k)] = Surd.sqrt(m[mu] + 1 if step > 0 else m[mu])
            else:
                entries[(target, k)] = -1 if sum(m[:mu]) % 2 else 1
        return SurdMatrix.from_entries((self.dim, self.dim), entries)

    def normal_monomial(self, creators: Sequence[int], annihilators: Sequence[int]) -> SurdMatrix:
        """Truncated matrix of ``a^dag_{c1} ... a^dag_{ck} a_{a1} ... a_{al}`` (bosonic only).

        Annihilators act first; a column whose image leaves the truncated
        space is dropped, so the result is exactly ``P op P``.
        """
        if not self.bosonic:
            raise ValueError("normal_monomial is for bosonic spaces")
        entries = {}
        for k, m in enumerate(self.basis):
            cur = list(m)
            factor = 1
            ok = True
            for mu in annihilators:
                if cur[mu] == 0:
                    ok = False
                    break
                factor *= cur[mu]
                cur[mu] -= 1
            if not ok:
                continue
            for mu in creators:
                cur[mu] += 1
                factor *= cur[mu]
            target = self.index.get(tuple(cur))
            if target is not None:
                entries[(target, k)] = Surd.sqrt(factor)
        return SurdMatrix.from_entries((self.dim, self.dim), entries)


def _graded(vectors) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(vectors, key=lambda m: (sum(m), m)))


def bosonic_space(n: int, cutoff: int) -> FockSpace:
    if n < 1:
        raise InvalidRankError("need at least one bosonic mode")
    if cutoff < 4:
        raise CutoffTooSmallError(f"cutoff {cutoff} < 4 leaves no room for quadratic identities")
    basis = _graded(m for m in product(range(cutoff + 1), repeat=n) if sum(m) <= cutoff)
    assert len(basis) == comb(n + cutoff, n)
    return FockSpace("bosonic", n, cutoff, False, basis, {m: k for k, m in enumerate(basis)})


def fermionic_space(n: int, majorana: bool = False) -> FockSpace:
    if n < 1:
        raise InvalidRankError("need at least one fermionic mode")
    width = n + 1 if majorana else n
    basis = _graded(product((0, 1), repeat=width))
    return FockSpace("fermionic", n, None, majorana, basis, {m: k for k, m in enumerate(basis)})


def majorana_operator(space: FockSpace) -> SurdMatrix:
    """``c = (f + f^dagger)/sqrt 2`` on the auxiliary last mode."""
    if not space.majorana:
        raise ValueError("space has no auxiliary Majorana mode")
    f = space._ladder(space.modes, -1)
    return (f + f.T) * (SQRT2 / 2)


@dataclass(frozen=True)
class OperatorRep:
    """Fock-space matrices ``X_i`` indexed like the defining basis ``x_i``."""

    space: FockSpace
    family: Family
    rank: int
    X: tuple[SurdMatrix, ...]
    interior_depth: int
    vector: tuple[SurdMatrix, ...]
    bilinear: Callable[[int, int], SurdMatrix] = field(repr=False, compare=False)
    rep: RepBundle | None = field(default=None, repr=False, compare=False)
    name: str = ""

    @property
    def dim(self) -> int:
        return self.space.dim

    def interior(self, depth: int | None = None) -> list[int]:
        return self.space.interior(self.interior_depth if depth is None else depth)

    def restrict(self, indices: Sequence[int], suffix: str) -> OperatorRep:
        idx = list(indices)
        sub = FockSpace(
            self.space.kind, self.space.modes, self.space.cutoff, self.space.majorana,
            tuple(self.space.basis[k] for k in idx),
            {self.space.basis[k]: j for j, k in enumerate(idx)},
        )
        X = tuple(x.select(idx, idx) for x in self.X)
        vec = tuple(v.select(idx, idx) for v in self.vector)
        parent = self.bilinear
        return OperatorRep(
            sub, self.family, self.rank, X, self.interior_depth, vec,
            lambda a, b: parent(a, b).select(idx, idx), self.rep, f"{self.name}{suffix}",
        )


def _operator_from_bilinears(rep: RepBundle, metric: SurdMatrix, bil: Callable[[int, int], SurdMatrix], dimH: int) -> tuple[SurdMatrix, ...]:
    """``X_i = 1/2 sum_ab (x_i G)_ab B_ab`` for every basis matrix, in one product."""
    D = rep.dimV
    coeff = stack([x @ metric for x in rep.basisX]).matricize((0,), (1, 2)) * Fraction(1, 2)
    B = stack([bil(a, b) for a in range(D) for b in range(D)]).matricize((0,), (1, 2))
    flat = coeff @ B
    return tuple(reshape(flat.select(rows=[i]), (dimH, dimH)) for i in range(rep.dim))


def metaplectic_rep(n: int, cutoff: int, rep: RepBundle) -> OperatorRep:
    """``X_i = 1/2 v^T x_i (J v)`` with ``v = (a1^+, .., an^+, an, .., a1)``."""
    if rep.family is not Family.C or rep.rank != n:
        raise FamilyMismatchError(f"metaplectic representation needs the C{n} bundle")
    space = bosonic_space(n, cutoff)
    D = 2 * n

    def slot(a: int) -> tuple[str, int]:
        return ("c", a) if a < n else ("a", D - 1 - a)

    cache: dict[tuple[int, int], SurdMatrix] = {}

    def bilinear(a: int, b: int) -> SurdMatrix:
        """Exact truncation of ``v_a v_b``."""
        if (a, b) in cache:
            return cache[(a, b)]
        (ka, ma), (kb, mb) = slot(a), slot(b)
        if ka == "c" and kb == "c":
            m = space.normal_monomial([ma, mb], [])
        elif ka == "a" and kb == "a":
            m = space.normal_monomial([], [ma, mb])
        elif ka == "c":
            m = space.normal_monomial([ma], [mb])
        else:
            m = space.normal_monomial([mb], [ma])
            if ma == mb:
                m = m + space.identity()
        cache[(a, b)] = m
        return m

    X = _operator_from_bilinears(rep, rep.metric, bilinear, space.dim)
    vector = tuple(space.creator(a) if a < n else space.annihilator(D - 1 - a) for a in range(D))
    return OperatorRep(space, Family.C, n, X, 2, vector, bilinear, rep, f"M{n}")


def _spinor(rep: RepBundle, space: FockSpace, vector: list[SurdMatrix], name: str) -> OperatorRep:
    cache: dict[tuple[int, int], SurdMatrix] = {}

    def bilinear(a: int, b: int) -> SurdMatrix:
        if (a, b) not in cache:
            cache[(a, b)] = vector[a] @ vector[b]
        return cache[(a, b)]

    X = _operator_from_bilinears(rep, rep.metric, bilinear, space.dim)
    return OperatorRep(space, rep.family, rep.rank, X, 0, tuple(vector), bilinear, rep, name)


def spinor_rep_d(n: int, rep: RepBundle) -> OperatorRep:
    """``X_i = 1/2 v^T x_i (M v)`` with ``v = (c1, .., cn, pin, .., pi1)``."""
    if rep.family is not Family.D or rep.rank != n:
        raise FamilyMismatchError(f"spinor representation needs the D{n} bundle")
    space = fermionic_space(n)
    vector = [space.creator(m) for m in range(n)] + [space.annihilator(m) for m in reversed(range(n))]
    return _spinor(rep, space, vector, f"S(D{n})")


def spinor_rep_b(n: int, rep: RepBundle) -> OperatorRep:
    """As :func:`spinor_rep_d` with the Majorana operator in the middle slot of ``v``."""
    if rep.family is not Family.B or rep.rank != n:
        raise FamilyMismatchError(f"spinor representation needs the B{n} bundle")
    space = fermionic_space(n, majorana=True)
    vector = (
        [space.creator(m) for m in range(n)]
        + [majorana_operator(space)]
        + [space.annihilator(m) for m in reversed(range(n))]
    )
    return _spinor(rep, space, vector, f"S(B{n})")


def su_oscillator_rep(n: int, cutoff: int, rep: RepBundle | None = None) -> OperatorRep:
    """``X_i = 1/2 A^dag l_i A`` for the Gell-Mann matrices ``l_i`` of su(n)."""
    if n < 2:
        raise InvalidRankError("su(n) oscillators need n >= 2")
    rep = rep or build_rep(Family.A, n - 1)
    if rep.family is not Family.A or rep.dimV != n:
        raise FamilyMismatchError(f"su({n}) oscillators need the A{n - 1} bundle")
    space = bosonic_space(n, cutoff)
    cache: dict[tuple[int, int], SurdMatrix] = {}

    def bilinear(mu: int, nu: int) -> SurdMatrix:
        """``a_mu^dagger a_nu``."""
        if (mu, nu) not in cache:
            cache[(mu, nu)] = space.normal_monomial([mu], [nu])
        return cache[(mu, nu)]

    X = _operator_from_bilinears(rep, SurdMatrix.identity(n), bilinear, space.dim)
    vector = tuple(space.annihilator(m) for m in range(n))
    return OperatorRep(space, Family.A, n - 1, X, 0, vector, bilinear, rep, f"su({n}) oscillator")


# ---------------------------------------------------------------------------
# structure


def check_commutators(op: OperatorRep, structure) -> CheckReport:
    """``[X_i, X_j] = i f_ijk X_k`` on the interior columns (bilinear headroom 2)."""
    report = CheckReport("oscillator-commutators", "4.3")
    cols = op.interior(2) if op.space.bosonic else None
    report.add(f"[X_i, X_j] = i c_ijk X_k ({op.name})", lie_residual(stack(list(op.X)), structure, cols))
    report.meta.update({"interior_columns": len(cols) if cols is not None else op.dim, "dimH": op.dim})
    return report


def ladder_operators(op: OperatorRep) -> dict[str, tuple[SurdMatrix, SurdMatrix]]:
    """``(E_alpha, E_-alpha)`` on Fock space from ``sqrt2 E_pm = U +- i V``."""
    rep = op.rep
    if rep is None or rep.family is Family.A:
        raise FamilyMismatchError("ladder operators need a B, C or D bundle")
    n = rep.rank
    half = SQRT2 / 2
    out = {}
    for k, lab in enumerate(rep.labels):
        U, V = op.X[n + 2 * k], op.X[n + 2 * k + 1]
        out[lab] = ((U + V * I) * half, (U - V * I) * half)
    return out


def cartan_operators(op: OperatorRep) -> list[SurdMatrix]:
    return list(op.X[: op.rep.rank])


def split_roots(rep: RepBundle) -> tuple[list[str], list[str]]:
    """Labels of compact roots (``l_i - l_j``) and of ``n_+`` (all coordinates >= 0)."""
    compact, nplus = [], []
    for r in rep.roots.positive:
        if min(r.vector) < 0:
            compact.append(r.label)
        else:
            nplus.append(r.label)
    return compact, nplus


def chirality_blocks(op: OperatorRep):
    """Split by parity of total occupation; every ``X_i`` must be block diagonal."""
    even = [k for k, m in enumerate(op.space.basis) if sum(m) % 2 == 0]
    odd = [k for k, m in enumerate(op.space.basis) if sum(m) % 2 == 1]
    for i, x in enumerate(op.X):
        if not x.select(even, odd).is_zero() or not x.select(odd, even).is_zero():
            raise ConsistencyError(f"X_{i} mixes parity sectors", (i, i))
    return even, odd, op.restrict(even, "+"), op.restrict(odd, "-")
