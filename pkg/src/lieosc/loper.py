"""L-operators ``L = sum_i x_i (x) X_i`` and their quadratic relations.

The composite index on V (x) H is ``a * dimH + q`` (auxiliary index major).
Bosonic quantum spaces are truncated, so every identity is checked only on
columns with enough headroom: depth 2 for anything quadratic in bilinears,
depth 4 for quartic expressions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

import numpy as np

from .definingrep import RepBundle
from .errors import FamilyMismatchError, StructureError
from .fock import OperatorRep, chirality_blocks
from .matrix import SurdMatrix, SurdTensor, pair_products, stack, tensordot
from .report import CheckReport
from .rootsys import Family
from .scalar import I, Surd
from .tensors import StructureTensors, su_tensors

__all__ = [
    "LOperator",
    "QuadraticSpec",
    "EigenStructure",
    "build_L",
    "closed_form_L",
    "quadratic_spec",
    "quadratic_residual",
    "eigen_structure",
    "spectrum_blocks",
    "casimir_checks",
    "operator_product_laws",
    "vmv_operator",
]


@dataclass(frozen=True)
class LOperator:
    matrix: SurdMatrix
    dimV: int
    dimH: int
    interior_depth: int
    op: OperatorRep
    rep: RepBundle

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dimV, self.dimH)

    @property
    def bosonic(self) -> bool:
        return self.op.space.bosonic

    def columns(self, quantum: Sequence[int] | None) -> list[int] | None:
        """Composite columns ``a * dimH + q`` for the given quantum columns."""
        if quantum is None:
            return None
        return [a * self.dimH + q for a in range(self.dimV) for q in quantum]

    def interior(self, depth: int) -> list[int] | None:
        """Composite interior columns, or ``None`` (all) for fermionic spaces."""
        return self.columns(self.op.interior(depth)) if self.bosonic else None

    def block(self, a: int, b: int) -> SurdMatrix:
        H = self.dimH
        return self.matrix.select(range(a * H, (a + 1) * H), range(b * H, (b + 1) * H))

    def partial_trace_v(self) -> SurdMatrix:
        out = SurdMatrix.zeros((self.dimH, self.dimH))
        for a in range(self.dimV):
            out = out + self.block(a, a)
        return out


def _assemble(blocks: SurdMatrix, D: int, H: int) -> SurdMatrix:
    """Turn a ``(D*D, H*H)`` table of blocks ``L_ab`` into the matrix on V (x) H."""
    t = SurdTensor.from_matrix(blocks, (D, D), (H, H))  # (a, b, p, q)
    return t.matricize((0, 2), (1, 3))


def build_L(rep: RepBundle, op: OperatorRep) -> LOperator:
    """``L = sum_i x_i (x) X_i``."""
    if rep.family is not op.family or rep.rank != op.rank:
        raise FamilyMismatchError(f"{rep.family.value}{rep.rank} bundle does not match {op.name}")
    if len(rep.basisX) != len(op.X):
        raise FamilyMismatchError("generator counts differ")
    D, H = rep.dimV, op.dim
    coeff = stack(rep.basisX).matricize((1, 2), (0,))  # ((a, b), i)
    blocks = coeff @ stack(list(op.X)).matricize((0,), (1, 2))
    return LOperator(_assemble(blocks, D, H), D, H, op.interior_depth, op, rep)


def closed_form_L(op: OperatorRep, metric: SurdMatrix | None = None) -> LOperator:
    """``L`` rebuilt from the oscillator vector ``v``.

    C:      ``L_ab = (Jv)_a v_b - 1/2 delta_ab``
    so(N):  ``L_ab = 1/2 delta_ab - (Mv)_a v_b``
    """
    rep = op.rep
    if rep is None or op.family is Family.A:
        raise FamilyMismatchError("closed form exists for metaplectic and spinor representations")
    G = rep.metric if metric is None else metric
    D, H = rep.dimV, op.dim
    sign, shift = (1, Fraction(-1, 2)) if op.family is Family.C else (-1, Fraction(1, 2))
    bil = stack([op.bilinear(c, b) for c in range(D) for b in range(D)]).matricize((0,), (1, 2))
    # row (a, b) of G (x) 1 picks sum_c G_ac B(c, b)
    sel = {}
    for a in range(D):
        for c in range(D):
            g = G.entry(a, c)
            if g:
                for b in range(D):
                    sel[(a * D + b, c * D + b)] = g
    blocks = SurdMatrix.from_entries((D * D, D * D), sel) @ bil * sign
    ident = SurdMatrix.from_entries(
        (D * D, H * H), {(a * D + a, q * H + q): shift for a in range(D) for q in range(H)}
    )
    return LOperator(_assemble(blocks + ident, D, H), D, H, op.interior_depth, op, rep)


def vmv_operator(op: OperatorRep) -> SurdMatrix:
    """``v^T G v`` on the quantum space (``N/2`` times the identity for so(N) spinors)."""
    G = op.rep.metric
    D = op.rep.dimV
    out = SurdMatrix.zeros((op.dim, op.dim))
    for a in range(D):
        for b in range(D):
            g = G.entry(a, b)
            if g:
                out = out + op.bilinear(a, b) * g
    return out


# ---------------------------------------------------------------------------
# quadratic relations


def _exact_sqrt(q: Fraction) -> Fraction:
    if q < 0:
        raise StructureError(f"negative discriminant {q}")
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn != q.numerator or rd * rd != q.denominator:
        raise StructureError(f"discriminant {q} is not a rational square")
    return Fraction(rn, rd)


@dataclass(frozen=True)
class QuadraticSpec:
    """``L^2 + p L + q = 0`` with rational roots ``lam_plus >= lam_minus``."""

    p: Fraction
    q: Fraction
    tag: str = ""
    level: int | None = None

    @property
    def roots(self) -> tuple[Fraction, Fraction]:
        s = _exact_sqrt(self.p * self.p - 4 * self.q)
        return (-self.p + s) / 2, (-self.p - s) / 2

    def describe(self) -> str:
        return f"L^2 + ({self.p}) L + ({self.q}) = 0"


def quadratic_spec(family, rank: int, level: int | None = None) -> QuadraticSpec:
    """The quadratic obeyed by ``L`` for the oscillator representation of a family.

    ``A`` (su(rank+1) oscillators) needs the occupation ``level``.
    """
    fam = Family.parse(family)
    if fam is Family.C:
        return QuadraticSpec(Fraction(rank + 1), Fraction(2 * rank + 1, 4), "5.4")
    if fam.orthogonal:
        N = 2 * rank + 1 if fam is Family.B else 2 * rank
        return QuadraticSpec(Fraction(N - 2, 2), Fraction(-(N - 1), 4), "5.12")
    if level is None:
        raise ValueError("su(n) quadratic needs the occupation level")
    n = rank + 1
    r = Fraction(level, n)
    # (L + 1 + r)(L + r - level) = 0
    return QuadraticSpec(1 + 2 * r - level, (1 + r) * (r - level), "5.22" if n == 2 else "5.24", level)


def _check_columns(L: LOperator, spec: QuadraticSpec) -> list[int] | None:
    if spec.level is not None:
        return L.columns(L.op.space.level(spec.level))
    return L.interior(2)


def quadratic_residual(L: LOperator, spec: QuadraticSpec) -> tuple[SurdMatrix, CheckReport]:
    """Residual ``L^2 + pL + q`` restricted to the checkable columns."""
    cols = _check_columns(L, spec)
    M = L.matrix
    Lc = M if cols is None else M.select(cols=cols)
    Ic = SurdMatrix.identity(M.shape[0])
    if cols is not None:
        Ic = Ic.select(cols=cols)
    res = M @ Lc + Lc * spec.p + Ic * spec.q
    report = CheckReport("quadratic-relation", spec.tag)
    report.add(spec.describe() + f" ({L.op.name})", res)
    report.meta.update(
        {
            "representation": L.op.name,
            "interior_columns": M.shape[0] if cols is None else len(cols),
            "dim": M.shape[0],
            "p": str(spec.p),
            "q": str(spec.q),
        }
    )
    if spec.level is not None:
        report.meta["level"] = spec.level
    return res, report


@dataclass(frozen=True)
class EigenStructure:
    lam_plus: Fraction
    m_plus: int
    lam_minus: Fraction
    m_minus: int
    block: str = ""
    numeric_check: bool = True

    def to_json(self) -> dict:
        return {
            "block": self.block,
            "eigenvalues": [str(self.lam_plus), str(self.lam_minus)],
            "multiplicities": [self.m_plus, self.m_minus],
            "numeric_check": self.numeric_check,
        }


def _rank_multiplicity(M: np.ndarray, lam: Fraction, tol: float = 1e-8) -> int:
    A = M - float(lam) * np.eye(M.shape[0])
    return M.shape[0] - int(np.linalg.matrix_rank(A, tol=tol))


def eigen_structure(
    L: LOperator, spec: QuadraticSpec, block: Sequence[int] | None = None, name: str = ""
) -> EigenStructure:
    """Multiplicities of the two roots from ``m+ + m- = dim`` and the trace of ``L``.

    ``block`` lists composite indices of an ``L``-invariant subspace on which
    the quadratic holds; the trace is taken there.  A floating-point rank of
    ``L - lam`` cross-checks both multiplicities.
    """
    M = L.matrix if block is None else L.matrix.select(block, block)
    dim = M.shape[0]
    if not (M @ M + M * spec.p + SurdMatrix.identity(dim) * spec.q).is_zero():
        raise StructureError(f"quadratic {spec.describe()} fails on block {name!r}")
    tr = M.trace()
    if not tr.is_rational():
        raise StructureError(f"trace {tr} of L is not rational")
    tr = tr.to_fraction()
    lp, lm = spec.roots
    if lp == lm:
        raise StructureError("degenerate quadratic: the trace system is singular")
    m_plus = (tr - lm * dim) / (lp - lm)
    m_minus = dim - m_plus
    if m_plus.denominator != 1 or m_plus < 0 or m_minus < 0:
        raise StructureError(f"trace system gives non-integer multiplicities ({m_plus}, {m_minus})")
    dense = M.to_complex()
    ok = _rank_multiplicity(dense, lp) == m_plus and _rank_multiplicity(dense, lm) == m_minus
    return EigenStructure(lp, int(m_plus), lm, int(m_minus), name, ok)


def _charge(L: LOperator) -> list[int]:
    """Conserved charge ``w_a + N`` for metaplectic ``L`` (``w = +1`` on the upper half of V)."""
    n = L.rep.rank
    totals = L.op.space.totals()
    return [(1 if a < n else -1) + t for a in range(L.dimV) for t in totals]


def spectrum_blocks(L: LOperator) -> dict[str, list[int]]:
    """``L``-invariant blocks on which the quadratic holds exactly.

    Fermionic spaces split by chirality.  Bosonic metaplectic spaces split by
    the charge ``w_a + N``; a charge sector is kept only when it fits entirely
    below the cutoff, and sectors are gathered by parity.  su(n) oscillators
    split by level.
    """
    op = L.op
    if op.family is Family.A:
        return {f"level {lam}": L.columns(op.space.level(lam)) for lam in range(op.space.cutoff + 1)}
    if not L.bosonic:
        even, odd, _, _ = chirality_blocks(op)
        return {"even": L.columns(even), "odd": L.columns(odd)}
    charge = _charge(L)
    top = op.space.cutoff - 1
    out: dict[str, list[int]] = {"even": [], "odd": []}
    for k, c in enumerate(charge):
        if c <= top:
            out["even" if c % 2 == 0 else "odd"].append(k)
    return out


# ---------------------------------------------------------------------------
# Casimirs and operator product laws


def _sum_squares(mats: Sequence[SurdMatrix], cols) -> SurdMatrix:
    out = None
    for m in mats:
        right = m if cols is None else m.select(cols=cols)
        term = m @ right
        out = term if out is None else out + term
    return out


def _scalar_cols(shape_rows: int, cols, value) -> SurdMatrix:
    Id = SurdMatrix.identity(shape_rows)
    return (Id if cols is None else Id.select(cols=cols)) * value


def casimir_checks(
    op: OperatorRep, st: StructureTensors | None, L: LOperator | None = None, stated_quartic: bool = True
) -> CheckReport:
    """Quadratic, cubic and quartic Casimir identities for an oscillator representation.

    For the metaplectic case the quartic is compared with the exactly derived
    value ``(n^2-1)(n+2)(2n+1)/3`` and, when ``stated_quartic`` is set, also
    with the published closed form, which is twice as large and fails.
    """
    report = CheckReport("casimirs", "4.6")
    fam = op.family
    n = op.rank
    H = op.dim
    cols2 = op.interior(2) if op.space.bosonic else None

    if fam is Family.C:
        target = Fraction(-n * (2 * n + 1), 4)
        report.add(f"C2(M{n}) = {target}", _sum_squares(op.X, cols2) - _scalar_cols(H, cols2, target))
        report.meta["C2_H"] = str(target)
        if st is not None:
            total, cols4 = _quartic(op, st)
            stated = Fraction(2, 3) * (n * n - 1) * (n + 2) * (2 * n + 1)
            derived = stated / 2
            if stated_quartic:
                report.add(f"C4 = 2/3 (n^2-1)(n+2)(2n+1) = {stated}", total - _scalar_cols(H, cols4, stated))
            report.add(f"C4 = 1/3 (n^2-1)(n+2)(2n+1) = {derived}", total - _scalar_cols(H, cols4, derived))
            report.meta["C4_H"] = str(total.entry(0, 0))
            report.meta["quartic_interior_columns"] = len(cols4)
    elif fam.orthogonal:
        c2 = _sum_squares(op.X, None)
        value = c2.entry(0, 0)
        report.add("C2(spinor) is scalar", c2 - SurdMatrix.identity(H) * value)
        report.meta["C2_H"] = str(value)
    else:
        N = n + 1
        _, d, _ = su_tensors(N)
        Xs = stack(list(op.X))
        for lam in range(op.space.cutoff + 1):
            cols = op.space.level(lam)
            r = Fraction(lam, N)
            c2t = Fraction(N - 1, 2) * lam * (1 + r)
            report.add(f"C2 at level {lam} = {c2t}", _sum_squares(op.X, cols) - _scalar_cols(H, cols, c2t))
            c3t = Fraction((N - 1) * (N - 2), 4) * lam * (1 + r) * (1 + 2 * r)
            report.add(f"C3 at level {lam} = {c3t}", _cubic(Xs, d, cols) - _scalar_cols(H, cols, c3t))

    if L is not None:
        dec = _decomposition(L)
        for chk in dec.checks:
            report.record(chk["relation"], chk["pass"], Surd.parse(chk["max_residual"]), group="X1")
    return report


def _cubic(Xs: SurdTensor, d: SurdTensor, cols) -> SurdMatrix:
    """``d_ijk X_i X_j X_k`` on the given columns."""
    g, H, _ = Xs.dims
    right = SurdTensor.from_matrix(Xs.matricize((0, 1), (2,)).select(cols=cols), (g, H), (len(cols),))
    dk = tensordot(d, right, [2], [0])  # (i, j, r, c) = sum_k d_ijk X_k
    jx = tensordot(Xs, dk, [0, 2], [1, 2])  # (r, i, c) = sum_j X_j d_ijk X_k
    out = tensordot(Xs, jx, [0, 2], [1, 0])  # (r, c)
    return out.matricize((0,), (1,))


def _quartic(op: OperatorRep, st: StructureTensors) -> tuple[SurdMatrix, list[int]]:
    """``d_a(ij d_kl)a X_i X_j X_k X_l`` on the depth-4 interior columns.

    Only the ``(ik)(jl)`` pairing survives on Fock space, and with
    ``c_pqk d_ipa d_jqa = (2/n)(n+2)(n-1) c_ijk`` it evaluates to
    ``(n^2-1)(n+2)(2n+1)/3``.  The symmetrised sum is formed in full here.
    """
    g = st.n_x
    cols = op.interior(4)
    E = tensordot(st.d_xy, st.d_xy, [2], [2])  # (i, j, k, l) = d_ija d_kla
    sym = (E + E.transpose((0, 2, 1, 3)) + E.transpose((0, 2, 3, 1))) * Fraction(1, 3)
    Xs = stack(list(op.X))
    H = op.dim
    right = SurdTensor.from_matrix(Xs.matricize((0, 1), (2,)).select(cols=cols), (g, H), (len(cols),))
    kl = pair_products(Xs, right)  # (k, l, r, c)
    q = tensordot(sym, kl, [2, 3], [0, 1])  # (i, j, r, c)
    ij = pair_products(Xs, Xs)  # (i, j, r, s)
    return tensordot(ij, q, [0, 1, 3], [0, 1, 2]).matricize((0,), (1,)), cols


def _decomposition(L: LOperator) -> CheckReport:
    """``C2(V (x) H) = C2(V) (x) 1 + 1 (x) C2(H) + 2 L`` on the interior."""
    report = CheckReport("casimir-decomposition", "X1")
    rep, op = L.rep, L.op
    D, H = L.dimV, L.dimH
    cols_h = op.interior(2) if op.space.bosonic else None
    cols = L.columns(cols_h)
    IV, IH = SurdMatrix.identity(D), SurdMatrix.identity(H)
    Y = [x.kron(IH) + IV.kron(X) for x, X in zip(rep.basisX, op.X)]
    lhs = _sum_squares(Y, cols)
    cv = _sum_squares(rep.basisX, None)
    ch = _sum_squares(op.X, None)
    rhs = cv.kron(IH) + IV.kron(ch) + L.matrix * 2
    if cols is not None:
        rhs = rhs.select(cols=cols)
    report.add(f"C2(VxH) = C2(V) + C2(H) + 2L ({op.name})", lhs - rhs)
    return report


def operator_product_laws(op: OperatorRep, st: StructureTensors | None = None) -> CheckReport:
    """Contracted products of two generators on Fock space.

    C:      ``d_ija X_i X_j = 0`` and ``i c_ijk X_i X_j = -2(n+1) X_k``.
    su(n):  ``d_ijk X_i X_j = (n + 2 lam)(n - 2)/(2n) X_k`` per level ``lam``.

    The c-contraction is also rebuilt from antisymmetry alone:
    ``i c_ijk X_i X_j = (i/2) c_ijk [X_i, X_j] = -1/2 c_ijk c_ijl X_l``.
    """
    fam = op.family
    H = op.dim
    Xs = stack(list(op.X))
    g = len(op.X)
    if fam is Family.C:
        if st is None:
            raise ValueError("metaplectic product laws need the structure tensors")
        report = CheckReport("operator-product-laws", "5.41")
        n = op.rank
        col_sets = [("interior", op.interior(2))]
        c, dxy = st.c, st.d_xy
        laws = [("d", dxy, None)]
        kappa = Fraction(-2 * (n + 1))
    elif fam is Family.A:
        report = CheckReport("operator-product-laws", "5.33")
        n = op.rank + 1
        c, d, _ = su_tensors(n)
        col_sets = [(f"level {lam}", op.space.level(lam)) for lam in range(op.space.cutoff + 1)]
        laws = [("d", d, lambda lam: Fraction((n + 2 * lam) * (n - 2), 2 * n))]
        kappa = Fraction(-n, 2)
    else:
        raise FamilyMismatchError("product laws are stated for metaplectic and su(n) oscillators")

    # -1/2 c_ijk c_ijl, read off the tensor itself
    cc = tensordot(c, c, [0, 1], [0, 1]).matricize((0,), (1,))
    derived = cc * Fraction(-1, 2)
    report.add(f"-1/2 c_ijk c_ijl = {kappa} delta", derived - SurdMatrix.identity(g) * kappa)

    for label, cols in col_sets:
        if not cols:
            continue
        right = SurdTensor.from_matrix(Xs.matricize((0, 1), (2,)).select(cols=cols), (g, H), (len(cols),))
        pp = pair_products(Xs, right).matricize((0, 1), (2, 3))  # ((i,j), (r,c))
        Xk = right.matricize((0,), (1, 2))
        lhs_c = c.matricize((2,), (0, 1)) @ pp * I
        report.add(f"i c_ijk X_i X_j = {kappa} X_k [{label}]", lhs_c - Xk * kappa)
        report.add(f"i c_ijk X_i X_j = -1/2 c c X [{label}]", lhs_c - derived @ Xk)
        for name, t, coeff in laws:
            lhs = t.matricize((2,), (0, 1)) @ pp
            if coeff is None:
                report.add(f"{name}_ija X_i X_j = 0 [{label}]", lhs)
            else:
                lam = int(label.split()[-1])
                k = coeff(lam)
                report.add(f"{name}_ijk X_i X_j = {k} X_k [{label}]", lhs - Xk * k)
    return report
