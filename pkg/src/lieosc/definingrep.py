"""Defining representations of the B, C, D families built from the lower-triangular layout.

The layout puts Cartan generators on the diagonal, simple-root ladders on
the first sub-diagonal and, in each remaining lower cell, the ladder whose
label is the multiset sum of the sub-diagonal labels that the cell
subtends.  Signs are fixed by the transpose constraint
``x^T = -G x G^{-1}`` and a factor ``sqrt(2)`` is applied to any ladder that
occupies a single cell, which is what ``Tr x_i x_j = 2 delta_ij`` demands.

The A family is not built this way; :func:`gellmann_basis` supplies the
standard generalized Gell-Mann matrices instead.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .errors import ConstructionError, FamilyMismatchError
from .matrix import SurdMatrix, stack
from .report import CheckReport
from .rootsys import Family, RootSystem, _check, defining_dim, positive_roots
from .scalar import I, SQRT2, Surd

__all__ = [
    "LayoutCell",
    "RepBundle",
    "build_layout",
    "reduced_display",
    "metric_form",
    "build_rep",
    "check_cartan_weyl",
    "check_trace_transpose",
    "gellmann_basis",
]


@dataclass(frozen=True)
class LayoutCell:
    """One cell of the lower-triangular layout, with 1-based ``row`` and ``col``."""

    row: int
    col: int
    kind: Literal["zero", "cartan", "ladder"]
    label: str = ""
    index: int = 0
    sign: int = 1
    sqrt2: bool = False

    def describe(self) -> str:
        if self.kind == "zero":
            return "0"
        sgn = "-" if self.sign < 0 else ""
        if self.kind == "cartan":
            return f"{sgn}H_{self.index}"
        root2 = "sqrt(2) " if self.sqrt2 else ""
        return f"{sgn}{root2}E_{self.label}"


def _weights(fam: Family, n: int) -> list[tuple[int, ...]]:
    """Weights of the standard basis vectors of the defining space."""
    unit = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    neg = [tuple(-x for x in u) for u in reversed(unit)]
    if fam is Family.B:
        return unit + [(0,) * n] + neg
    return unit + neg


def _segment_labels(indices: list[int], weights, roots: RootSystem) -> dict[tuple[int, int], str]:
    """Telescoping assignment on one display.

    ``indices`` are the 1-based rows kept in the display.  The sub-diagonal
    of the display must consist of simple roots; each lower cell gets the
    multiset union of the sub-diagonal labels it subtends, kept only when
    the resulting vector is a positive root.
    """
    simple_labels = {r.vector: r.label for r in roots.positive if len(r.label) == 1}
    sub = []
    for k in range(len(indices) - 1):
        a, b = indices[k + 1], indices[k]
        v = tuple(x - y for x, y in zip(weights[b - 1], weights[a - 1]))
        if v not in simple_labels:
            raise ConstructionError("sub-diagonal entry is not a simple root", (a, b))
        sub.append((v, simple_labels[v]))
    out = {}
    for hi in range(1, len(indices)):
        for lo in range(hi):
            counts = Counter()
            vec = (0,) * len(weights[0])
            for k in range(lo, hi):
                counts.update(sub[k][1])
                vec = tuple(x + y for x, y in zip(vec, sub[k][0]))
            label = "".join(sorted(counts.elements()))
            root = roots.by_vector(vec)
            cell = (indices[hi], indices[lo])
            if root is None:
                out[cell] = ""
            elif root.label != label:
                raise ConstructionError(f"label {label} does not match root {root.label}", cell)
            else:
                out[cell] = label
    return out


def reduced_display(family, n: int, drop: int | None = None) -> dict[tuple[int, int], str]:
    """Schematic lower-triangular display, with optional deleted row/column ``drop``.

    Keys are 1-based cells of the full matrix, values are root labels with
    ``""`` marking a zero cell.
    """
    fam = _check(family, n)
    if fam is Family.A:
        raise FamilyMismatchError("the A family has no layout display")
    dim = defining_dim(fam, n)
    kept = [i for i in range(1, dim + 1) if i != drop]
    return _segment_labels(kept, _weights(fam, n), positive_roots(fam, n))


def metric_form(family, n: int) -> SurdMatrix:
    fam = _check(family, n)
    if fam is Family.A:
        raise FamilyMismatchError("the A family carries no metric form here")
    dim = defining_dim(fam, n)
    entries = {}
    for a in range(dim):
        b = dim - 1 - a
        entries[(a, b)] = -1 if (fam is Family.C and a >= n) else 1
    return SurdMatrix.from_entries((dim, dim), entries)


def _metric_inverse(fam: Family, G: SurdMatrix) -> SurdMatrix:
    # J^2 = -1 and M^2 = +1
    return -G if fam is Family.C else G


def _ladder_cells(fam: Family, n: int) -> dict[tuple[int, int], str]:
    """Label of every lower off-diagonal cell of the full display."""
    dim = defining_dim(fam, n)
    if fam is not Family.D:
        return _segment_labels(list(range(1, dim + 1)), _weights(fam, n), positive_roots(fam, n))
    # D: no single display has a simple-root sub-diagonal, so merge the two
    # reduced displays that drop one of the middle rows
    first = reduced_display(fam, n, drop=n + 1)
    second = reduced_display(fam, n, drop=n)
    for cell in first.keys() & second.keys():
        if first[cell] != second[cell]:
            raise ConstructionError("reduced displays disagree", cell)
    merged = {**first, **second}
    merged[(n + 1, n)] = ""
    return merged


def _solve_signs(fam, n, G, Ginv, cells_by_label) -> dict[str, tuple[tuple[int, int], int, tuple[int, int] | None, bool]]:
    dim = G.shape[0]
    out = {}
    for label, cells in cells_by_label.items():
        cells = sorted(cells, key=lambda rc: (rc[0] + rc[1], rc))
        primary = cells[0]
        if len(cells) == 1:
            out[label] = (primary, 1, None, True)
            continue
        if len(cells) != 2:
            raise ConstructionError(f"ladder {label} occupies {len(cells)} cells", cells)
        mirror = cells[1]
        if mirror != (dim + 1 - primary[1], dim + 1 - primary[0]):
            raise ConstructionError(f"ladder {label} cells are not antidiagonal mirrors", cells)
        chosen = None
        for s in (1, -1):
            e = SurdMatrix.from_entries(
                (dim, dim),
                {(primary[0] - 1, primary[1] - 1): 1, (mirror[0] - 1, mirror[1] - 1): s},
            )
            if e.T == -(G @ e @ Ginv):
                chosen = s
                break
        if chosen is None:
            raise ConstructionError(f"no sign satisfies the transpose constraint for {label}", mirror)
        out[label] = (primary, chosen, mirror, False)
    return out


def build_layout(family, n: int) -> list[LayoutCell]:
    """Full lower-triangular layout (diagonal included), row-major."""
    fam = _check(family, n)
    if fam is Family.A:
        raise FamilyMismatchError("the A family has no layout display")
    dim = defining_dim(fam, n)
    G = metric_form(fam, n)
    labels = _ladder_cells(fam, n)
    by_label: dict[str, list] = {}
    for cell, lab in labels.items():
        if lab:
            by_label.setdefault(lab, []).append(cell)
    signs = _solve_signs(fam, n, G, _metric_inverse(fam, G), by_label)
    cell_info = {}
    for lab, (primary, s, mirror, root2) in signs.items():
        cell_info[primary] = (lab, 1, root2)
        if mirror is not None:
            cell_info[mirror] = (lab, s, root2)
    out = []
    for r in range(1, dim + 1):
        for c in range(1, r + 1):
            if r == c:
                if fam is Family.B and r == n + 1:
                    out.append(LayoutCell(r, c, "zero"))
                elif r <= n:
                    out.append(LayoutCell(r, c, "cartan", index=r, sign=1))
                else:
                    out.append(LayoutCell(r, c, "cartan", index=dim + 1 - r, sign=-1))
            elif (r, c) in cell_info:
                lab, s, root2 = cell_info[(r, c)]
                out.append(LayoutCell(r, c, "ladder", label=lab, sign=s, sqrt2=root2))
            else:
                out.append(LayoutCell(r, c, "zero"))
    return out


@dataclass(frozen=True)
class RepBundle:
    family: Family
    rank: int
    dimV: int
    metric: SurdMatrix | None
    cartan: tuple[SurdMatrix, ...]
    ladders: dict[str, tuple[SurdMatrix, SurdMatrix]]
    basisX: tuple[SurdMatrix, ...]
    roots: RootSystem | None = None
    labels: tuple[str, ...] = field(default=())

    @property
    def dim(self) -> int:
        return len(self.basisX)

    @property
    def N(self) -> int:
        """Size of the defining matrices (the N of so(N) or su(N))."""
        return self.dimV

    def metric_inverse(self) -> SurdMatrix:
        return _metric_inverse(self.family, self.metric)

    def generator_names(self) -> list[str]:
        names = [f"h{r}" for r in range(1, len(self.cartan) + 1)]
        if self.family is Family.A:
            return [f"lambda{i}" for i in range(1, self.dim + 1)]
        for lab in self.labels:
            names += [f"u{lab}", f"v{lab}"]
        return names


def _check_basis(fam: Family, basis, G, Ginv) -> None:
    for i, x in enumerate(basis):
        if x.H != x:
            raise ConstructionError("generator is not hermitian", (i, i))
        if not x.trace().is_zero():
            raise ConstructionError("generator is not traceless", (i, i))
        if G is not None and x.T != -(G @ x @ Ginv):
            raise ConstructionError("transpose constraint fails", (i, i))
    for i, a in enumerate(basis):
        for j in range(i, len(basis)):
            t = (a @ basis[j]).trace()
            if t != (2 if i == j else 0):
                raise ConstructionError(f"Tr x_i x_j = {t}", (i, j))


def build_rep(family, n: int) -> RepBundle:
    fam = _check(family, n)
    if fam is Family.A:
        return _build_rep_a(n)
    dim = defining_dim(fam, n)
    roots = positive_roots(fam, n)
    G = metric_form(fam, n)
    Ginv = _metric_inverse(fam, G)
    cartan = tuple(
        SurdMatrix.from_entries((dim, dim), {(r, r): 1, (dim - 1 - r, dim - 1 - r): -1})
        for r in range(n)
    )
    lowers: dict[str, dict] = {}
    for cell in build_layout(fam, n):
        if cell.kind != "ladder":
            continue
        v = SQRT2 * cell.sign if cell.sqrt2 else Surd.rational(cell.sign)
        lowers.setdefault(cell.label, {})[(cell.row - 1, cell.col - 1)] = v
    ladders = {}
    for r in roots.positive:
        if r.label not in lowers:
            raise ConstructionError(f"ladder {r.label} missing from the layout")
        e_minus = SurdMatrix.from_entries((dim, dim), lowers[r.label])
        ladders[r.label] = (e_minus.T, e_minus)
    inv_sqrt2 = SQRT2 / 2
    basis = list(cartan)
    for r in roots.positive:
        ep, em = ladders[r.label]
        basis.append((ep + em) * inv_sqrt2)
        basis.append((ep - em) * (-I * inv_sqrt2))
    _check_basis(fam, basis, G, Ginv)
    return RepBundle(
        fam, n, dim, G, cartan, ladders, tuple(basis), roots,
        tuple(r.label for r in roots.positive),
    )


def gellmann_basis(N: int) -> list[SurdMatrix]:
    """Generalized Gell-Mann matrices of size ``N`` with ``Tr l_a l_b = 2 delta_ab``.

    For each size step ``k = 2..N`` the symmetric and antisymmetric pairs
    ``(j, k)`` come first, followed by the new diagonal matrix.  ``N = 2``
    gives the Pauli matrices and ``N = 3`` the usual eight.
    """
    if N < 2:
        raise ValueError("Gell-Mann basis needs N >= 2")
    out = []
    for k in range(1, N):
        for j in range(k):
            out.append(SurdMatrix.from_entries((N, N), {(j, k): 1, (k, j): 1}))
            out.append(SurdMatrix.from_entries((N, N), {(j, k): -I, (k, j): I}))
        scale = Surd.sqrt(Fraction(2, k * (k + 1)))
        diag = {(m, m): scale for m in range(k)}
        diag[(k, k)] = scale * (-k)
        out.append(SurdMatrix.from_entries((N, N), diag))
    return out


def _build_rep_a(n: int) -> RepBundle:
    N = n + 1
    basis = gellmann_basis(N)
    roots = positive_roots(Family.A, n)
    cartan = tuple(x for x in basis if all(r == c for r, c in x.support()))
    ladders = {}
    for r in roots.positive:
        i = r.vector.index(1)
        j = r.vector.index(-1)
        ep = SurdMatrix.unit((N, N), i, j, SQRT2)
        ladders[r.label] = (ep, ep.T)
    _check_basis(Family.A, basis, None, None)
    return RepBundle(
        Family.A, n, N, None, cartan, ladders, tuple(basis), roots,
        tuple(r.label for r in roots.positive),
    )


def check_trace_transpose(rep: RepBundle) -> CheckReport:
    """Hermiticity, ``Tr x_i = 0``, ``Tr x_i x_j = 2 delta_ij`` and the metric transpose rule."""
    report = CheckReport("trace-transpose", "1.2")
    g = rep.dim
    X = stack(list(rep.basisX))
    XT = stack([x.T for x in rep.basisX])
    gram = X.matricize((0,), (1, 2)) @ XT.matricize((0,), (1, 2)).T
    report.add("Tr x_i x_j = 2 delta_ij", gram - SurdMatrix.identity(g) * 2)
    herm = max((x.H - x for x in rep.basisX), key=lambda m: abs(m.max_abs_entry()))
    report.add("x_i hermitian", herm)
    traces = [x.trace() for x in rep.basisX]
    worst = max(traces, key=abs)
    report.record("Tr x_i = 0", worst.is_zero(), worst)
    if rep.metric is not None:
        G, Ginv = rep.metric, rep.metric_inverse()
        tag = "2.8" if rep.family is Family.C else "2.21"
        resid = SurdMatrix.zeros(G.shape)
        bad = 0
        for x in rep.basisX:
            r = x.T + G @ x @ Ginv
            if not r.is_zero():
                bad += 1
                resid = r
        report.record("x_i^T = -G x_i G^-1", bad == 0, resid.max_abs_entry(), tag=tag)
    return report


def check_cartan_weyl(rep: RepBundle, roots: RootSystem | None = None) -> CheckReport:
    """Verify the Cartan-Weyl relations and ladder closure exactly."""
    if rep.family is Family.A:
        raise FamilyMismatchError("Cartan-Weyl check is defined for the B, C, D layouts")
    roots = roots or rep.roots
    report = CheckReport("cartan-weyl", "2.1")
    h = rep.cartan
    for a, ra in enumerate(roots.positive):
        ep, em = rep.ladders[ra.label]
        for r in range(rep.rank):
            report.add(f"[h{r + 1}, e+{ra.label}]", h[r].commutator(ep) - ep * ra.vector[r])
            report.add(f"[h{r + 1}, e-{ra.label}]", h[r].commutator(em) + em * ra.vector[r])
        rh = SurdMatrix.zeros(ep.shape)
        for r in range(rep.rank):
            if ra.vector[r]:
                rh = rh + h[r] * ra.vector[r]
        report.add(f"[e+{ra.label}, e-{ra.label}]", ep.commutator(em) - rh)
        report.add(f"[e+{ra.label}, e+{ra.label}]", ep.commutator(ep))
        for rb in roots.positive[a + 1:]:
            eq, eqm = rep.ladders[rb.label]
            for sign, other in ((1, eq), (-1, eqm)):
                comm = ep.commutator(other)
                target_vec = tuple(x + sign * y for x, y in zip(ra.vector, rb.vector))
                rel = f"[e+{ra.label}, e{'+' if sign > 0 else '-'}{rb.label}]"
                report.checks.append(_closure(rel, comm, target_vec, roots, rep))
    return report


def _closure(rel, comm: SurdMatrix, target_vec, roots: RootSystem, rep: RepBundle) -> dict:
    pos = roots.by_vector(target_vec)
    neg = roots.by_vector(tuple(-x for x in target_vec))
    if pos is None and neg is None:
        ok = comm.is_zero()
        return {"relation": rel, "target": "0", "coefficient": "0", "pass": ok,
                "max_residual": str(comm.max_abs_entry())}
    target, lab = (rep.ladders[pos.label][0], pos.label) if pos else (rep.ladders[neg.label][1], "-" + neg.label)
    # coefficient by trace projection: Tr(e_gamma e_-gamma) = 2
    partner = rep.ladders[pos.label][1] if pos else rep.ladders[neg.label][0]
    coeff = (comm @ partner).trace() / 2
    resid = comm - target * coeff
    return {
        "relation": rel,
        "target": f"e+{lab}" if pos else f"e{lab}",
        "coefficient": str(coeff),
        "pass": resid.is_zero() and not coeff.is_zero(),
        "max_residual": str(resid.max_abs_entry()),
    }
