"""Rational R-matrices, the Yang-Baxter equation and the RTT relation.

Index conventions on V (x) V follow :mod:`lieosc.tensors`: row pair
``(a, c)``, column pair ``(b, d)``, so ``P[(a,c),(b,d)] = delta_ad delta_cb``
and ``K[(a,c),(b,d)] = G_ac G_bd`` with ``G`` the metric of the bundle.
All spectral parameters are rationals, so every entry stays a Surd.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Sequence

from .definingrep import RepBundle
from .errors import ConsistencyError, FamilyMismatchError, PoleError
from .loper import LOperator
from .matrix import SurdMatrix
from .report import CheckReport
from .rootsys import Family
from .scalar import as_fraction
from .tensors import CompletionBasis, metric_projector, permutation, tensor_square_sum

__all__ = [
    "RMatrix",
    "TOperator",
    "r_matrix",
    "pole_free",
    "kernel_algebra",
    "invariant_form",
    "check_ybe",
    "build_T",
    "check_rtt",
    "monodromy",
    "check_monodromy_rtt",
    "sample_parameters",
]


def _q(x) -> Fraction:
    return as_fraction(x)


def _pole_shift(rep: RepBundle, eta: Fraction) -> Fraction | None:
    """``u`` is a pole of R exactly when ``u + shift == 0`` (``None``: no pole)."""
    if rep.family is Family.C:
        return eta * (rep.rank + 1)
    if rep.family.orthogonal:
        return eta * (rep.dimV - 2) / 2
    return None


def pole_free(rep: RepBundle, u, eta) -> bool:
    shift = _pole_shift(rep, _q(eta))
    return shift is None or _q(u) + shift != 0


@dataclass(frozen=True)
class RMatrix:
    matrix: SurdMatrix
    u: Fraction
    eta: Fraction
    family: Family
    rank: int
    P: SurdMatrix
    K: SurdMatrix | None
    k_coeff: Fraction

    @property
    def dimV(self) -> int:
        return isqrt(self.P.shape[0])


def r_matrix(rep: RepBundle, u, eta) -> RMatrix:
    """``R(u) = u + eta P - k(u) K`` with ``k = u eta / (u + shift)``.

    ``shift`` is ``eta (n+1)`` for C and ``eta (N-2)/2`` for so(N).  For the
    A family ``R = u + eta P`` (no K term).
    """
    u, eta = _q(u), _q(eta)
    D = rep.dimV
    P = permutation(D)
    shift = _pole_shift(rep, eta)
    if shift is None:
        K, k = None, Fraction(0)
    else:
        if u + shift == 0:
            raise PoleError(f"R({u}) has a pole at eta = {eta} for {rep.family.value}{rep.rank}")
        K = metric_projector(rep.metric)
        k = u * eta / (u + shift)
    R = SurdMatrix.identity(D * D) * u + P * eta
    if K is not None:
        R = R - K * k
    return RMatrix(R, u, eta, rep.family, rep.rank, P, K, k)


def kernel_algebra(rep: RepBundle) -> CheckReport:
    """``P^2 = 1``, ``PK = KP = s K`` and ``K^2 = tr(G G^T) K`` for the metric kernel.

    ``s = -1`` for the symplectic metric and ``+1`` for the orthogonal one.
    ``K`` is the rank-one outer product of ``vec G`` with itself, so its
    square carries the positive factor ``sum G_ab^2 = dimV``.
    """
    D = rep.dimV
    P = permutation(D)
    K = metric_projector(rep.metric)
    s = -1 if rep.family is Family.C else 1
    report = CheckReport("kernel-algebra", "r_sp" if rep.family is Family.C else "r_so")
    report.add("P^2 = 1", P @ P - SurdMatrix.identity(D * D))
    report.add(f"PK = {s} K", P @ K - K * s)
    report.add(f"KP = {s} K", K @ P - K * s)
    report.add(f"K^2 = {D} K", K @ K - K * D)
    return report


def invariant_form(R: RMatrix, rep: RepBundle, comp: CompletionBasis) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients ``(a, b, c)`` with ``R = a 1 + b sum x(x)x + c sum y(x)y``.

    Completeness gives ``sum x(x)x = P - K`` and ``sum y(x)y = P + K - (2/D) 1``,
    hence ``b = (eta + k)/2``, ``c = (eta - k)/2`` and ``a = u + 2c/D``.  The
    decomposition is then checked entrywise.
    """
    if R.K is None:
        raise FamilyMismatchError("invariant form needs a B, C or D R-matrix")
    D = rep.dimV
    k = R.k_coeff
    b = (R.eta + k) / 2
    c = (R.eta - k) / 2
    a = R.u + 2 * c / D
    sx = tensor_square_sum(rep.basisX)
    sy = tensor_square_sum(comp.matrices)
    rebuilt = SurdMatrix.identity(D * D) * a + sx * b + sy * c
    if rebuilt != R.matrix:
        raise ConsistencyError("R is not spanned by 1, sum x(x)x and sum y(x)y")
    return a, b, c


def _ybe_residual(rep: RepBundle, u: Fraction, v: Fraction, eta: Fraction) -> SurdMatrix:
    D = rep.dimV
    Id = SurdMatrix.identity(D)
    R12u = r_matrix(rep, u - v, eta).matrix.kron(Id)
    P23 = Id.kron(permutation(D))
    R13 = P23 @ r_matrix(rep, u, eta).matrix.kron(Id) @ P23
    R23 = Id.kron(r_matrix(rep, v, eta).matrix)
    return R12u @ R13 @ R23 - R23 @ R13 @ R12u


def check_ybe(rep: RepBundle, u, v, eta) -> CheckReport:
    """``R12(u-v) R13(u) R23(v) = R23(v) R13(u) R12(u-v)`` on V (x) V (x) V."""
    u, v, eta = _q(u), _q(v), _q(eta)
    for w in (u - v, u, v):
        if not pole_free(rep, w, eta):
            raise PoleError(f"R({w}) hits its pole at eta = {eta}")
    tag = "r_sp" if rep.family is Family.C else ("r_so" if rep.family.orthogonal else "1.4")
    report = CheckReport("yang-baxter", tag)
    report.add(f"YBE u={u} v={v} eta={eta}", _ybe_residual(rep, u, v, eta))
    report.meta.update({"family": rep.family.value, "rank": rep.rank, "u": str(u), "v": str(v), "eta": str(eta)})
    return report


@dataclass(frozen=True)
class TOperator:
    """``T(u)`` on V (x) H_1 (x) ... (x) H_k (one factor per site)."""

    matrix: SurdMatrix
    u: Fraction
    eta: Fraction
    dimV: int
    sites: tuple[LOperator, ...]

    @property
    def dimH(self) -> int:
        return self.matrix.shape[0] // self.dimV

    def quantum_columns(self, depth: int) -> list[int] | None:
        """Quantum-space columns whose every site has ``depth`` quanta of headroom."""
        if not any(L.bosonic for L in self.sites):
            return None
        per_site = [L.op.interior(depth) if L.bosonic else range(L.dimH) for L in self.sites]
        dims = [L.dimH for L in self.sites]
        out = []
        for combo in product(*per_site):
            idx = 0
            for q, d in zip(combo, dims):
                idx = idx * d + q
            out.append(idx)
        return out


def build_T(L: LOperator, u, eta) -> TOperator:
    """``T(u) = u + eta L``."""
    u, eta = _q(u), _q(eta)
    M = SurdMatrix.identity(L.matrix.shape[0]) * u + L.matrix * eta
    return TOperator(M, u, eta, L.dimV, (L,))


def _blocks(T: TOperator) -> list[list[SurdMatrix]]:
    D, H = T.dimV, T.dimH
    return [
        [T.matrix.select(range(a * H, (a + 1) * H), range(b * H, (b + 1) * H)) for b in range(D)]
        for a in range(D)
    ]


def _from_blocks(blocks: list[list[SurdMatrix]]) -> SurdMatrix:
    D = len(blocks)
    out = None
    for a in range(D):
        for b in range(D):
            blk = blocks[a][b]
            if blk.is_zero():
                continue
            term = SurdMatrix.unit((D, D), a, b).kron(blk)
            out = term if out is None else out + term
    if out is None:
        H = blocks[0][0].shape[0]
        out = SurdMatrix.zeros((D * H, D * H))
    return out


def _site_product(t1: TOperator, t2: TOperator) -> TOperator:
    """Auxiliary-space product ``(T1 T2)_ab = sum_c (T1)_ac (x) (T2)_cb``."""
    if t1.dimV != t2.dimV:
        raise FamilyMismatchError("sites do not share the auxiliary space")
    b1, b2 = _blocks(t1), _blocks(t2)
    D = t1.dimV
    out = []
    for a in range(D):
        row = []
        for b in range(D):
            acc = SurdMatrix.zeros((t1.dimH * t2.dimH, t1.dimH * t2.dimH))
            for c in range(D):
                if b1[a][c].is_zero() or b2[c][b].is_zero():
                    continue
                acc = acc + b1[a][c].kron(b2[c][b])
            row.append(acc)
        out.append(row)
    return TOperator(_from_blocks(out), t1.u, t1.eta, D, t1.sites + t2.sites)


def monodromy(Ls: Sequence[LOperator], u, eta) -> TOperator:
    """``T(u) = T_1(u) T_2(u) ... T_k(u)`` multiplied in the auxiliary space."""
    if not Ls:
        raise ValueError("monodromy needs at least one site")
    first = Ls[0]
    for L in Ls[1:]:
        if L.rep.family is not first.rep.family or L.rep.rank != first.rep.rank:
            raise FamilyMismatchError("all sites must share the auxiliary family and rank")
    T = build_T(first, u, eta)
    for L in Ls[1:]:
        T = _site_product(T, build_T(L, u, eta))
    return T


def _rtt_residual(rep: RepBundle, Tu: TOperator, Tv: TOperator, depth: int = 4) -> tuple[SurdMatrix, int]:
    """``R12(u-v) T1(u) T2(v) - T2(v) T1(u) R12(u-v)`` on the checkable columns."""
    D, H = rep.dimV, Tu.dimH
    R = r_matrix(rep, Tu.u - Tv.u, Tu.eta).matrix
    IV, IH = SurdMatrix.identity(D), SurdMatrix.identity(H)
    R12 = R.kron(IH)
    P12 = permutation(D).kron(IH)
    T2u = IV.kron(Tu.matrix)
    T1u = P12 @ T2u @ P12
    T2v = IV.kron(Tv.matrix)
    qcols = Tu.quantum_columns(depth)
    if qcols is None:
        return R12 @ T1u @ T2v - T2v @ T1u @ R12, D * D * H
    cols = [(a * D + c) * H + q for a in range(D) for c in range(D) for q in qcols]
    lhs = R12 @ (T1u @ T2v.select(cols=cols))
    rhs = T2v @ (T1u @ R12.select(cols=cols))
    return lhs - rhs, len(cols)


def check_rtt(rep: RepBundle, L: LOperator, u, v, eta) -> CheckReport:
    """``R12(u-v) T1(u) T2(v) = T2(v) T1(u) R12(u-v)`` on V (x) V (x) H.

    Bosonic quantum spaces are checked on columns with 4 quanta of headroom.
    """
    u, v, eta = _q(u), _q(v), _q(eta)
    if not pole_free(rep, u - v, eta):
        raise PoleError(f"R({u - v}) hits its pole at eta = {eta}")
    res, ncols = _rtt_residual(rep, build_T(L, u, eta), build_T(L, v, eta))
    report = CheckReport("rtt", "1.4")
    report.add(f"RTT ({L.op.name}) u={u} v={v} eta={eta}", res)
    report.meta.update(
        {
            "representation": L.op.name,
            "u": str(u),
            "v": str(v),
            "eta": str(eta),
            "interior_depth": 4 if L.bosonic else 0,
            "interior_columns": ncols,
            "r_matrix": "u + eta P" if rep.family is Family.A else "u + eta P - k K",
        }
    )
    return report


def check_monodromy_rtt(rep: RepBundle, Ls: Sequence[LOperator], u, v, eta) -> CheckReport:
    u, v, eta = _q(u), _q(v), _q(eta)
    if not pole_free(rep, u - v, eta):
        raise PoleError(f"R({u - v}) hits its pole at eta = {eta}")
    res, ncols = _rtt_residual(rep, monodromy(Ls, u, eta), monodromy(Ls, v, eta))
    report = CheckReport("monodromy-rtt", "1.4")
    report.add(f"RTT for {len(Ls)}-site monodromy u={u} v={v} eta={eta}", res)
    report.meta.update(
        {"sites": len(Ls), "u": str(u), "v": str(v), "eta": str(eta), "interior_columns": ncols}
    )
    return report


def sample_parameters(rep: RepBundle, count: int, seed: int, ybe: bool = True) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Seeded rational triples ``(u, v, eta)`` that avoid every R pole involved.

    With ``ybe`` the poles of ``R(u-v)``, ``R(u)`` and ``R(v)`` are avoided,
    otherwise only ``R(u-v)``.  ``u == v`` is skipped as trivial.
    """
    rng = random.Random(seed)

    def draw() -> Fraction:
        num = rng.randint(-9, 9)
        den = rng.randint(1, 5)
        return Fraction(num, den)

    out = []
    while len(out) < count:
        u, v, eta = draw(), draw(), draw()
        if eta == 0 or u == v:
            continue
        args = (u - v, u, v) if ybe else (u - v,)
        if all(pole_free(rep, w, eta) for w in args):
            out.append((u, v, eta))
    return out
