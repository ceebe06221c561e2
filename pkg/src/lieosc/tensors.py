"""Completion basis y_alpha, ad-invariant tensors and their identity suite.

Everything here is computed by exact traces in the defining representation:

    c_ijk   = -i Tr x_i x_j x_k        d_ija  = Tr x_i x_j y_a
    h_iab   = -i Tr x_i y_a y_b        d_abc  = Tr y_a y_b y_c

The family enters only through the metric ``G`` that fixes the transpose
symmetry and through the trace normalisation ``a = 2 / dimV`` of the
identity term in the product laws (``1/n`` for C, ``2/N`` for so(N)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .definingrep import RepBundle, gellmann_basis
from .errors import ConsistencyError, ConstructionError, FamilyMismatchError
from .matrix import (
    SurdMatrix,
    SurdTensor,
    lie_residual,
    pair_products,
    reshape,
    stack,
    tensordot,
    triple_traces,
    unstack,
)
from .report import CheckReport
from .rootsys import Family
from .scalar import I, Surd

__all__ = [
    "CompletionBasis",
    "StructureTensors",
    "complete_basis",
    "structure_tensors",
    "verify_completeness",
    "verify_identities",
    "verify_product_laws",
    "v_tensor",
    "check_v_tensor",
    "closed_form_v",
    "sextic_component",
    "sextic_bruteforce",
    "derived_reps",
    "verify_derived_reps",
    "identity_constants",
    "duality_check",
    "su_tensors",
]


@dataclass(frozen=True)
class CompletionBasis:
    matrices: tuple[SurdMatrix, ...]

    @property
    def count(self) -> int:
        return len(self.matrices)


@dataclass(frozen=True)
class StructureTensors:
    family: Family
    rank: int
    dimV: int
    c: SurdTensor
    d_xy: SurdTensor
    h: SurdTensor
    d_yyy: SurdTensor

    @property
    def delta_coeff(self) -> Fraction:
        """Identity coefficient in the product laws, ``2 / dimV``."""
        return Fraction(2, self.dimV)

    @property
    def n_x(self) -> int:
        return self.c.dims[0]

    @property
    def n_y(self) -> int:
        return self.d_yyy.dims[0]

    def table(self, name: str) -> SurdTensor:
        return {"c": self.c, "d": self.d_xy, "h": self.h, "dyyy": self.d_yyy}[name]


def expected_completion_count(family: Family, n: int) -> int:
    if family is Family.C:
        return (2 * n + 1) * (n - 1)
    if family in (Family.B, Family.D):
        N = 2 * n + 1 if family is Family.B else 2 * n
        return (N - 1) * (N + 2) // 2
    raise FamilyMismatchError("completion basis is defined for B, C, D")


def _hermitian_spanning_set(N: int) -> list[SurdMatrix]:
    """Traceless hermitian matrices with Gaussian-rational entries, in a fixed order."""
    out = []
    for j in range(N):
        for k in range(j + 1, N):
            out.append(SurdMatrix.from_entries((N, N), {(j, k): 1, (k, j): 1}))
            out.append(SurdMatrix.from_entries((N, N), {(j, k): -I, (k, j): I}))
    for k in range(N - 1):
        out.append(SurdMatrix.from_entries((N, N), {(k, k): 1, (k + 1, k + 1): -1}))
    return out


def _inner(a: SurdMatrix, b: SurdMatrix) -> Fraction:
    t = (a @ b).trace()
    if not t.is_rational():
        raise ConstructionError(f"inner product {t} is not rational")
    return t.to_fraction()


def complete_basis(rep: RepBundle) -> CompletionBasis:
    """Orthonormal hermitian basis of the ``G y G^-1 = y^T`` traceless subspace."""
    if rep.family is Family.A:
        raise FamilyMismatchError("the A family basis already spans su(N)")
    G, Ginv = rep.metric, rep.metric_inverse()
    ortho: list[SurdMatrix] = []
    norms: list[Fraction] = []
    for s in _hermitian_spanning_set(rep.dimV):
        y = (s + Ginv @ s.T @ G) * Fraction(1, 2)
        for q, nq in zip(ortho, norms):
            coeff = _inner(q, y) / nq
            if coeff:
                y = y - q * coeff
        if y.is_zero():
            continue
        ortho.append(y)
        norms.append(_inner(y, y))
    basis = tuple(q * Surd.sqrt(Fraction(2) / nq) for q, nq in zip(ortho, norms))
    expected = expected_completion_count(rep.family, rep.rank)
    if len(basis) != expected:
        raise ConstructionError(f"completion basis has {len(basis)} elements, expected {expected}")
    for idx, y in enumerate(basis):
        if G @ y @ Ginv != y.T:
            raise ConstructionError("completion matrix violates the metric symmetry", (idx, idx))
    return CompletionBasis(basis)


def _real(t: SurdTensor, name: str) -> SurdTensor:
    if not t.is_real():
        raise ConsistencyError(f"tensor {name} has a nonzero imaginary part")
    return t


def structure_tensors(rep: RepBundle, comp: CompletionBasis) -> StructureTensors:
    X = stack(rep.basisX)
    Y = stack(comp.matrices)
    c = _real(triple_traces(X, X, X) * (-I), "c")
    d = _real(triple_traces(X, X, Y), "d")
    h = _real(triple_traces(X, Y, Y) * (-I), "h")
    dyyy = _real(triple_traces(Y, Y, Y), "dyyy")
    st = StructureTensors(rep.family, rep.rank, rep.dimV, c, d, h, dyyy)
    _check_symmetries(st)
    return st


def _check_symmetries(st: StructureTensors) -> None:
    c, d, h, dy = st.c, st.d_xy, st.h, st.d_yyy
    for perm in ((1, 0, 2), (0, 2, 1)):
        if c.transpose(perm) != -c:
            raise ConsistencyError(f"c is not antisymmetric under {perm}")
        if dy.transpose(perm) != dy:
            raise ConsistencyError(f"d_yyy is not symmetric under {perm}")
    if d.transpose((1, 0, 2)) != d:
        raise ConsistencyError("d_ija is not symmetric in i, j")
    if h.transpose((0, 2, 1)) != -h:
        raise ConsistencyError("h_iab is not antisymmetric in a, b")
    if not _trace_pair(d).is_zero():
        raise ConsistencyError("d_iia does not vanish")
    if not _trace_pair(dy).is_zero():
        raise ConsistencyError("d_aag does not vanish")


def _trace_pair(t: SurdTensor) -> SurdMatrix:
    """Contract the first two (equal) axes: ``sum_i T[i, i, k]``."""
    g = t.dims[0]
    m = t.matricize((0, 1), (2,))
    return m.select(rows=[i * g + i for i in range(g)]).T @ SurdMatrix.from_entries(
        (g, 1), {(i, 0): 1 for i in range(g)}
    )


def _delta_tensor(g: int) -> SurdMatrix:
    """Column vector ``delta_ij`` over the flattened pair index."""
    return SurdMatrix.from_entries((g * g, 1), {(i * g + i, 0): 1 for i in range(g)})


# ---------------------------------------------------------------------------
# completeness


def metric_projector(G: SurdMatrix) -> SurdMatrix:
    """``K[(a,c),(b,d)] = G_ac G_bd`` on V (x) V in the row-major pair index."""
    v = G.vec().T  # ((a, c), 1)
    return v @ v.T


def permutation(D: int) -> SurdMatrix:
    """``P[(a,c),(b,d)] = delta_ad delta_cb``."""
    return SurdMatrix.from_entries(
        (D * D, D * D), {(a * D + c, c * D + a): 1 for a in range(D) for c in range(D)}
    )


def tensor_square_sum(mats) -> SurdMatrix:
    """``sum_i (m_i (x) m_i)`` arranged as ``[(a,c),(b,d)] = sum_i m_i[a,b] m_i[c,d]``."""
    T = stack(list(mats))  # (i, a, b)
    prod = tensordot(T, T, [0], [0])  # (a, b, c, d)
    return prod.matricize((0, 2), (1, 3))


def verify_completeness(rep: RepBundle, comp: CompletionBasis) -> CheckReport:
    D = rep.dimV
    G = rep.metric
    P = permutation(D)
    K = metric_projector(G)
    Id = SurdMatrix.identity(D * D)
    a = Fraction(2, D)
    fam_c = rep.family is Family.C
    report = CheckReport("completeness", "3.1" if fam_c else "3.52")
    sx = tensor_square_sum(rep.basisX)
    sy = tensor_square_sum(comp.matrices)
    report.add("sum x(x)x = P - K", sx - (P - K))
    report.add("sum y(x)y = P + K - a I", sy - (P + K - Id * a))
    # contraction over b = c reproduces the quadratic Casimir of V
    cas = SurdMatrix.zeros((D, D))
    for x in rep.basisX:
        cas = cas + x @ x
    report.add("contracted: x_i x_i = (2 dim g / dimV) I", cas - SurdMatrix.identity(D) * Fraction(len(rep.basisX) * 2, D))
    return report


# ---------------------------------------------------------------------------
# identity suite


def identity_constants(family: Family, n: int) -> dict[str, Fraction]:
    """Closed-form right-hand sides of the contraction identities."""
    if family is Family.C:
        q = Fraction(n)
        return {
            "xx": 2 * q + 1,
            "yy": (2 * q + 1) * (q - 1) / q,
            "xxjx": Fraction(-1),
            "yxy": 1 - 1 / q,
            "xyx": Fraction(1),
            "yyby": -(1 + 1 / q),
            "cc": 4 * (q + 1),
            "dd_ab": 4 * (q + 1),
            "dd_jk": 4 / q * (q * q - 1),
            "hh_ij": 4 * (q - 1),
            "hh_bg": 4 * q,
            "dyy": 4 / q * (q - 2) * (q + 1),
            "dxx_y": 2 * (q + 1),
            "ccc": -2 * (q + 1),
            "cdd": 2 / q * (q + 2) * (q - 1),
            "cc_delta": 4 / q,
        }
    if family in (Family.B, Family.D):
        N = Fraction(2 * n + 1 if family is Family.B else 2 * n)
        return {
            "xx": N - 1,
            "yy": (N + 2) * (N - 1) / N,
            "xxjx": Fraction(1),
            "yxy": -(1 + 2 / N),
            "xyx": Fraction(-1),
            "yyby": 1 - 2 / N,
            "cc": 2 * (N - 2),
            "dd_ab": 2 * (N - 2),
            "dd_jk": 2 / N * (N * N - 4),
            "hh_ij": 2 * (N + 2),
            "hh_bg": 2 * N,
            "dyy": 2 / N * (N - 2) * (N + 4),
            "dxx_y": N - 2,
            "ccc": -(N - 2),
            "cdd": (N - 4) * (N + 2) / N,
            "cc_delta": 8 / N,
        }
    raise FamilyMismatchError("identity constants are defined for B, C, D")


def _c_const(key: str, n) -> Fraction:
    """C-family constants as rational functions of ``n`` (used by the duality check)."""
    q = Fraction(n)
    return {
        "xx": 2 * q + 1,
        "yy": (2 * q + 1) * (q - 1) / q,
        "cc": 4 * (q + 1),
        "dd_ab": 4 * (q + 1),
        "dd_jk": 4 / q * (q * q - 1),
        "hh_ij": 4 * (q - 1),
        "hh_bg": 4 * q,
        "dyy": 4 / q * (q - 2) * (q + 1),
        "dxx_y": 2 * (q + 1),
        "ccc": -2 * (q + 1),
        "cdd": 2 / q * (q + 2) * (q - 1),
        "cc_delta": 4 / q,
    }[key]


def _so_const(key: str, N) -> Fraction:
    N = Fraction(N)
    return {
        "xx": N - 1,
        "yy": (N + 2) * (N - 1) / N,
        "cc": 2 * (N - 2),
        "dd_ab": 2 * (N - 2),
        "dd_jk": 2 / N * (N * N - 4),
        "hh_ij": 2 * (N + 2),
        "hh_bg": 2 * N,
        "dyy": 2 / N * (N - 2) * (N + 4),
        "dxx_y": N - 2,
        "ccc": -(N - 2),
        "cdd": (N - 4) * (N + 2) / N,
        "cc_delta": 8 / N,
    }[key]


def duality_check(samples=range(3, 16)) -> dict[str, int]:
    """Compare C constants at ``n = -N/2`` with so(N) constants.

    Returns the per-identity sign ``s`` with ``C(-N/2) = s * so(N)``.  Every
    constant is a rational function of low degree (numerator degree at most
    two after clearing ``1/n``), so agreement at more than three sample
    points is an identity of rational functions.
    """
    signs = {}
    for key in ("cc", "dd_ab", "dd_jk", "hh_ij", "hh_bg", "dyy", "dxx_y", "ccc", "cdd", "cc_delta"):
        found = None
        for N in samples:
            lhs = _c_const(key, Fraction(-N, 2))
            rhs = _so_const(key, N)
            if rhs == 0:
                if lhs != 0:
                    raise ConsistencyError(f"duality fails for {key} at N={N}")
                continue
            s = lhs / rhs
            if s not in (1, -1) or (found is not None and s != found):
                raise ConsistencyError(f"duality fails for {key} at N={N}: ratio {s}")
            found = s
        signs[key] = int(found)
    return signs


def _sum_sandwich(outer, inner) -> list[SurdMatrix]:
    """``[sum_a outer_a m outer_a for m in inner]``."""
    O = stack(list(outer))
    M = stack(list(inner))
    om = tensordot(O, M, [2], [1])  # (a, r, j, s)
    omo = tensordot(om, O, [3, 0], [1, 0])  # (r, j, t)
    return unstack(omo.transpose((1, 0, 2)))


def _scalar_id(m: SurdMatrix, q) -> SurdMatrix:
    return m - SurdMatrix.identity(m.shape[0]) * q


def verify_identities(st: StructureTensors, rep: RepBundle, comp: CompletionBasis) -> CheckReport:
    """Exact check of the Casimir sums, sandwich identities and tensor contractions."""
    k = identity_constants(rep.family, rep.rank)
    fam_c = rep.family is Family.C
    report = CheckReport("identities", "3.15-3.19" if fam_c else "3.54-3.56")
    xs, ys = list(rep.basisX), list(comp.matrices)
    gx, gy = len(xs), len(ys)

    # quadratic Casimir sums
    sx = sum((x @ x for x in xs[1:]), xs[0] @ xs[0])
    sy = sum((y @ y for y in ys[1:]), ys[0] @ ys[0])
    tag = "3.15" if fam_c else "3.54"
    report.add(f"{tag}: x_i x_i", _scalar_id(sx, k["xx"]))
    report.add(f"{tag}: y_a y_a", _scalar_id(sy, k["yy"]))

    # sandwich identities
    tag = "3.16" if fam_c else "3.55"
    for name, outer, inner, coeff in (
        ("x_i x_j x_i", xs, xs, k["xxjx"]),
        ("y_a x_i y_a", ys, xs, k["yxy"]),
        ("x_i y_a x_i", xs, ys, k["xyx"]),
        ("y_a y_b y_a", ys, ys, k["yyby"]),
    ):
        worst = SurdMatrix.zeros(xs[0].shape)
        ok = True
        for m, s in zip(inner, _sum_sandwich(outer, inner)):
            r = s - m * coeff
            if not r.is_zero():
                ok = False
                worst = r
        report.add(f"{tag}: {name}", worst if not ok else SurdMatrix.zeros(xs[0].shape))

    # two-tensor contractions
    tag = "3.17" if fam_c else "3.56"
    c, d, h, dy = st.c, st.d_xy, st.h, st.d_yyy
    cm = c.matricize((0, 1), (2,))
    report.add(f"{tag}: c_ijk c_ijl", _scalar_id(cm.T @ cm, k["cc"]))
    dm = d.matricize((0, 1), (2,))
    report.add(f"{tag}: d_ija d_ijb", _scalar_id(dm.T @ dm, k["dd_ab"]))
    dj = d.matricize((0, 2), (1,))
    report.add(f"{tag}: d_ija d_ika", _scalar_id(dj.T @ dj, k["dd_jk"]))
    hi = h.matricize((1, 2), (0,))
    report.add(f"{tag}: h_iab h_jab", _scalar_id(hi.T @ hi, k["hh_ij"]))
    hb = h.matricize((0, 1), (2,))
    report.add(f"{tag}: h_iab h_iag", _scalar_id(hb.T @ hb, k["hh_bg"]))
    dym = dy.matricize((1, 2), (0,))
    report.add(f"{tag}: d_agm d_bgm", _scalar_id(dym.T @ dym, k["dyy"]))

    # y_a rebuilt from the x_i
    X = stack(xs)
    xx = pair_products(X, X).matricize((0, 1), (2, 3))  # ((i,j), vec)
    lhs = dm.T @ xx  # (a, vec)
    rhs = stack(ys).matricize((0,), (1, 2)) * k["dxx_y"]
    report.add(f"{'3.17A' if fam_c else '3.17A-so'}: d_ija x_i x_j", lhs - rhs)

    # cubic contractions
    tag = "3.18" if fam_c else "3.18-so"
    C = stack([_slice(c, i) for i in range(gx)])  # (C_i)_pq = c_ipq
    ccc = triple_traces(C, C, C) * (-1)
    report.add(f"{tag}: c_piq c_qjr c_rkp", (ccc - c * k["ccc"]).flat)
    t = tensordot(d, c, [1], [0])  # d_ipa c_pqk -> (i, a, q, k)
    cdd = tensordot(t, d, [2, 1], [1, 2])  # (i, k, j)
    cdd = cdd.transpose((0, 2, 1))
    report.add(f"{tag}: c_pqk d_ipa d_jqa", (cdd - c * k["cdd"]).flat)

    # c-c expansion
    tag = "3.19" if fam_c else "3.19-so"
    cc = tensordot(c, c, [2], [2])  # (i, j, k, m)
    dd = tensordot(d, d, [2], [2])  # (i, k, j, m) = d_ika d_jma
    term1 = dd.transpose((0, 2, 1, 3))
    term2 = dd.transpose((0, 2, 3, 1))
    delta = _delta_tensor(gx)  # (i, k) column
    dd_delta = SurdTensor.from_matrix(delta @ delta.T, (gx, gx), (gx, gx))  # delta_ik delta_jm at (i,k,j,m)
    dpart = dd_delta.transpose((0, 2, 1, 3)) - dd_delta.transpose((0, 2, 3, 1))
    resid = cc - dpart * k["cc_delta"] - term1 + term2
    report.add(f"{tag}: c_ijl c_kml", resid.flat)
    report.meta.update({"family": rep.family.value, "rank": rep.rank, "n_x": gx, "n_y": gy})
    return report


def _slice(t: SurdTensor, i: int) -> SurdMatrix:
    """``M[p, q] = T[i, p, q]``."""
    _, a, b = t.dims
    row = t.matricize((0,), (1, 2)).select(rows=[i])
    return reshape(row, (a, b))


def verify_product_laws(st: StructureTensors, rep: RepBundle, comp: CompletionBasis) -> CheckReport:
    """Rebuild ``x x``, ``x y`` and ``y y`` from the tensor tables, entrywise."""
    fam_c = rep.family is Family.C
    report = CheckReport("product-laws", "3.5" if fam_c else "3.51")
    a = st.delta_coeff
    X, Y = stack(rep.basisX), stack(comp.matrices)
    gx, gy = X.dims[0], Y.dims[0]
    D = rep.dimV
    vecI = SurdMatrix.identity(D).vec()
    Xv = X.matricize((0,), (1, 2))
    Yv = Y.matricize((0,), (1, 2))
    half_i = I * Fraction(1, 2)
    half = Fraction(1, 2)

    lhs = pair_products(X, X).matricize((0, 1), (2, 3))
    rhs = (_delta_tensor(gx) @ vecI) * a
    rhs = rhs + (st.c.matricize((0, 1), (2,)) @ Xv) * half_i + (st.d_xy.matricize((0, 1), (2,)) @ Yv) * half
    report.add("x_i x_j", lhs - rhs)

    lhs = pair_products(X, Y).matricize((0, 1), (2, 3))
    rhs = (st.h.matricize((0, 1), (2,)) @ Yv) * half_i
    rhs = rhs + (st.d_xy.matricize((0, 2), (1,)) @ Xv) * half
    report.add("x_i y_a", lhs - rhs)

    lhs = pair_products(Y, Y).matricize((0, 1), (2, 3))
    rhs = (_delta_tensor(gy) @ vecI) * a
    rhs = rhs + (st.h.matricize((1, 2), (0,)) @ Xv) * half_i + (st.d_yyy.matricize((0, 1), (2,)) @ Yv) * half
    report.add("y_a y_b", lhs - rhs)
    return report


# ---------------------------------------------------------------------------
# fourth and sixth rank tensors


def _sym3(t: SurdTensor) -> SurdTensor:
    """Unit-weight symmetrisation over the first three of four axes."""
    acc = None
    for p in permutations(range(3)):
        term = t.transpose(p + (3,))
        acc = term if acc is None else acc + term
    return acc * Fraction(1, 6)


def v_tensor(st: StructureTensors, rep: RepBundle) -> SurdTensor:
    """Fourth rank tensor with ``x_(i x_j x_k) = v_ijkl x_l``, computed two ways.

    The trace form is ``v_ijkl = 1/2 Tr x_(i x_j x_k) x_l`` (the factor 1/2
    undoes ``Tr x_l x_m = 2 delta_lm``); the closed form is
    ``a delta_(ij delta_k)l + 1/4 d_a(ij d_k)la``.  A mismatch raises.
    """
    g = len(rep.basisX)
    trace_form = _v_trace_form(rep)
    closed = closed_form_v(st)
    if trace_form != closed:
        raise ConsistencyError("trace and closed forms of v_ijkl disagree")
    for p in ((1, 0, 2, 3), (0, 1, 3, 2), (2, 1, 0, 3)):
        if trace_form.transpose(p) != trace_form:
            raise ConsistencyError("v_ijkl is not totally symmetric")
    assert trace_form.dims == (g,) * 4
    return trace_form


def _v_trace_form(rep: RepBundle) -> SurdTensor:
    X = stack(rep.basisX)
    xx = pair_products(X, X)  # (i, j, r, s)
    quad = tensordot(xx, xx, [2, 3], [3, 2])  # Tr(x_i x_j x_k x_l)
    return _sym3(quad) * Fraction(1, 2)


def check_v_tensor(st: StructureTensors, rep: RepBundle) -> CheckReport:
    """Entrywise comparison of the trace and closed forms of ``v_ijkl``."""
    report = CheckReport("v-tensor", "3.13")
    trace_form = _v_trace_form(rep)
    report.add("1/2 Tr x_(i x_j x_k) x_l = a delta_(ij delta_k)l + 1/4 d_(ij d_k)l", (trace_form - closed_form_v(st)).flat)
    report.add("v_ijkl totally symmetric", (trace_form - trace_form.transpose((1, 2, 3, 0))).flat)
    return report


def closed_form_v(st: StructureTensors) -> SurdTensor:
    g = st.n_x
    delta = _delta_tensor(g)
    dd_delta = SurdTensor.from_matrix(delta @ delta.T, (g, g), (g, g))  # delta_ij delta_kl
    dd = tensordot(st.d_xy, st.d_xy, [2], [2])  # d_ija d_kla
    return _sym3(dd_delta) * st.delta_coeff + _sym3(dd) * Fraction(1, 4)


def _pairings(items):
    if not items:
        yield []
        return
    first = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for p in _pairings(rest):
            yield [(first, items[k])] + p


def _dvec(st: StructureTensors, i: int, j: int) -> SurdMatrix:
    """Row vector ``d_ij.`` over the y index."""
    g = st.n_x
    return st.d_xy.matricize((0, 1), (2,)).select(rows=[i * g + j])


def _dyyy_contract(st: StructureTensors, u: SurdMatrix, v: SurdMatrix, w: SurdMatrix) -> Surd:
    gy = st.n_y
    m = st.d_yyy.matricize((0,), (1, 2))  # (a, (b, c))
    uv = u @ m  # (1, (b, c))
    uvm = reshape(uv, (gy, gy))
    return (v @ uvm @ w.T).entry(0, 0)


def sextic_component(st: StructureTensors, i, j, k, l, p, q) -> Surd:
    """One component of ``d_abc d_(ij^a d_kl^b d_pq)^c`` with unit-weight symmetrisation.

    The unsymmetrised expression is already symmetric inside each pair and
    under exchange of pairs, so the average over all 720 orderings equals
    the average over the 15 ways to split the six indices into pairs.
    """
    idx = (i, j, k, l, p, q)
    g = st.n_x
    if any(not (0 <= t < g) for t in idx):
        raise IndexError(f"index out of range 0..{g - 1}: {idx}")
    total = Surd()
    count = 0
    for pairing in _pairings(list(idx)):
        (a, b), (c, d), (e, f) = pairing
        total = total + _dyyy_contract(st, _dvec(st, a, b), _dvec(st, c, d), _dvec(st, e, f))
        count += 1
    return total / count


def sextic_bruteforce(st: StructureTensors, idx) -> Surd:
    """Direct average over all 720 orderings (slow reference)."""
    cache = {}
    total = Surd()
    for perm in permutations(idx):
        if perm not in cache:
            a, b, c, d, e, f = perm
            cache[perm] = _dyyy_contract(st, _dvec(st, a, b), _dvec(st, c, d), _dvec(st, e, f))
        total = total + cache[perm]
    return total / 720


# ---------------------------------------------------------------------------
# representations carried by the tensors


def derived_reps(st: StructureTensors) -> tuple[list[SurdMatrix], list[SurdMatrix]]:
    """Adjoint matrices ``(F_i)_jk = -i c_ijk`` and ``(R_i)_ab = -i h_iab``."""
    F = [_slice(st.c, i) * (-I) for i in range(st.n_x)]
    R = [_slice(st.h, i) * (-I) for i in range(st.n_x)]
    return F, R


def verify_derived_reps(st: StructureTensors) -> CheckReport:
    fam_c = st.family is Family.C
    k = identity_constants(st.family, st.rank)
    report = CheckReport("derived-representations", "3.14A")
    F, R = derived_reps(st)
    report.add("[F_i, F_j] = i c_ijk F_k", lie_residual(stack(F), st.c))
    report.add("[R_i, R_j] = i c_ijk R_k", lie_residual(stack(R), st.c))
    cf = sum((f @ f for f in F[1:]), F[0] @ F[0])
    cr = sum((r @ r for r in R[1:]), R[0] @ R[0])
    report.add(f"F.F = {k['cc']}", _scalar_id(cf, k["cc"]))
    report.add(f"{'R' if fam_c else 'S'}.{'R' if fam_c else 'S'} = {k['hh_bg']}", _scalar_id(cr, k["hh_bg"]))
    return report


# ---------------------------------------------------------------------------
# su(N) tables


def su_tensors(N: int) -> tuple[SurdTensor, SurdTensor, list[SurdMatrix]]:
    """Structure constants of su(N) in the Gell-Mann basis.

    Returns ``(f, d, lambdas)`` with ``[l_i, l_j] = 2i f_ijk l_k`` and
    ``{l_i, l_j} = (4/N) delta_ij + 2 d_ijk l_k``.
    """
    lam = gellmann_basis(N)
    L = stack(lam)
    t = triple_traces(L, L, L)  # Tr(l_i l_j l_k) = 2 (d_ijk + i f_ijk)
    tt = t.transpose((1, 0, 2))
    f = _real((t - tt) * (-I * Fraction(1, 4)), "f")
    d = _real((t + tt) * Fraction(1, 4), "d")
    return f, d, lam
