"""Sparse exact matrices and tensors with Surd-valued entries.

A :class:`SurdMatrix` is stored as

    (1/denom) * sum_{(d, ph)} i**ph * sqrt(d) * part[d, ph]

where every ``part`` is an int64 ``scipy.sparse`` CSR matrix and ``denom`` is a
Python int.  Products of radicands are reduced with the same gcd rule as the
scalars.  Every operation checks an a-priori magnitude bound before touching
int64 data and raises ``OverflowError`` instead of wrapping around.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, prod
from typing import Iterator, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .scalar import Surd, as_fraction

__all__ = [
    "SurdMatrix",
    "SurdTensor",
    "tensordot",
    "vstack",
    "reshape",
    "stack",
    "unstack",
    "pair_products",
    "triple_traces",
    "lie_residual",
]

_LIMIT = 1 << 62


def _maxabs(m: sp.csr_matrix) -> int:
    return int(np.abs(m.data).max()) if m.nnz else 0


def _guard(bound: int, what: str) -> None:
    if bound >= _LIMIT:
        raise OverflowError(f"{what}: intermediate entries may exceed int64 (bound {bound})")


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _surd_int_terms(s: Surd) -> tuple[list[tuple[int, int, int]], int]:
    """Split a Surd into integer ``(radicand, phase, coeff)`` terms over one denominator."""
    den = 1
    for a, b in s.terms.values():
        den = _lcm(den, a.denominator)
        den = _lcm(den, b.denominator)
    out = []
    for d, (a, b) in s.terms.items():
        if a:
            out.append((d, 0, int(a * den)))
        if b:
            out.append((d, 1, int(b * den)))
    return out, den


class SurdMatrix:
    __slots__ = ("shape", "denom", "parts")

    def __init__(self, shape: tuple[int, int], parts: Mapping | None = None, denom: int = 1):
        self.shape = (int(shape[0]), int(shape[1]))
        self.denom = int(denom)
        self.parts: dict[tuple[int, int], sp.csr_matrix] = dict(parts or {})
        self._reduce()

    # construction ------------------------------------------------------------
    def _reduce(self) -> None:
        g = self.denom
        clean = {}
        for key, m in self.parts.items():
            m = sp.csr_matrix(m, dtype=np.int64)
            m.eliminate_zeros()
            if m.nnz:
                clean[key] = m
                if g != 1:
                    g = gcd(g, int(np.gcd.reduce(np.abs(m.data))))
        self.parts = dict(sorted(clean.items()))
        if not self.parts:
            self.denom = 1
            return
        if g > 1:
            for m in self.parts.values():
                m.data //= g
            self.denom //= g

    @classmethod
    def zeros(cls, shape) -> SurdMatrix:
        return cls(shape)

    @classmethod
    def identity(cls, n: int, scale=1) -> SurdMatrix:
        return cls((n, n), {(1, 0): sp.identity(n, dtype=np.int64, format="csr")}) * scale

    @classmethod
    def from_entries(cls, shape, entries: Mapping[tuple[int, int], object]) -> SurdMatrix:
        den = 1
        split = []
        for (r, c), v in entries.items():
            terms, d = _surd_int_terms(Surd.coerce(v))
            if terms:
                split.append((r, c, terms, d))
                den = _lcm(den, d)
        buckets: dict[tuple[int, int], tuple[list, list, list]] = {}
        for r, c, terms, d in split:
            f = den // d
            for rad, ph, k in terms:
                rows, cols, vals = buckets.setdefault((rad, ph), ([], [], []))
                rows.append(r)
                cols.append(c)
                vals.append(k * f)
        parts = {}
        for key, (rows, cols, vals) in buckets.items():
            _guard(max(abs(v) for v in vals), "from_entries")
            parts[key] = sp.csr_matrix(
                (np.array(vals, dtype=np.int64), (rows, cols)), shape=shape
            )
        return cls(shape, parts, den)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> SurdMatrix:
        shape = (len(rows), len(rows[0]) if rows else 0)
        return cls.from_entries(
            shape,
            {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row) if v != 0},
        )

    @classmethod
    def unit(cls, shape, r: int, c: int, value=1) -> SurdMatrix:
        return cls.from_entries(shape, {(r, c): value})

    def copy(self) -> SurdMatrix:
        return SurdMatrix(self.shape, {k: m.copy() for k, m in self.parts.items()}, self.denom)

    # inspection --------------------------------------------------------------
    @property
    def nnz(self) -> int:
        if not self.parts:
            return 0
        acc = None
        for m in self.parts.values():
            pattern = abs(m).astype(bool)
            acc = pattern if acc is None else acc + pattern
        return int(acc.nnz)

    def is_zero(self) -> bool:
        return not self.parts

    def __bool__(self) -> bool:
        return bool(self.parts)

    def entry(self, r: int, c: int) -> Surd:
        terms = {}
        for (d, ph), m in self.parts.items():
            v = int(m[r, c])
            if v:
                q = Fraction(v, self.denom)
                re_, im_ = terms.get(d, (0, 0))
                terms[d] = (re_ + q, im_) if ph == 0 else (re_, im_ + q)
        return Surd(terms)

    __getitem__ = lambda self, rc: self.entry(*rc)  # noqa: E731

    def support(self) -> list[tuple[int, int]]:
        keys = set()
        for m in self.parts.values():
            coo = m.tocoo()
            keys.update(zip(coo.row.tolist(), coo.col.tolist()))
        return sorted(keys)

    def iter_entries(self) -> Iterator[tuple[int, int, Surd]]:
        """Nonzero entries in row-major order."""
        raw: dict[tuple[int, int], dict] = {}
        for (d, ph), m in self.parts.items():
            coo = m.tocoo()
            for r, c, v in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
                slot = raw.setdefault((r, c), {})
                re_, im_ = slot.get(d, (0, 0))
                q = Fraction(v, self.denom)
                slot[d] = (re_ + q, im_) if ph == 0 else (re_, im_ + q)
        for rc in sorted(raw):
            yield rc[0], rc[1], Surd(raw[rc])

    def to_complex(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=complex)
        for (d, ph), m in self.parts.items():
            out += m.toarray() * (float(d) ** 0.5) * (1j if ph else 1.0)
        return out / self.denom

    def max_abs_entry(self) -> Surd:
        """Entry of largest float magnitude (exact value); zero for the zero matrix."""
        if not self.parts:
            return Surd()
        dense = np.abs(self.to_complex())
        r, c = np.unravel_index(int(np.argmax(dense)), dense.shape)
        return self.entry(int(r), int(c))

    def is_real(self) -> bool:
        return all(ph == 0 for _, ph in self.parts)

    def is_rational(self) -> bool:
        return all(key == (1, 0) for key in self.parts)

    # arithmetic --------------------------------------------------------------
    def _check_shape(self, other: SurdMatrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other) -> SurdMatrix:
        if not isinstance(other, SurdMatrix):
            return NotImplemented
        self._check_shape(other)
        if not other.parts:
            return self
        if not self.parts:
            return other
        den = _lcm(self.denom, other.denom)
        fa, fb = den // self.denom, den // other.denom
        bound = sum(_maxabs(m) for m in self.parts.values()) * fa + sum(
            _maxabs(m) for m in other.parts.values()
        ) * fb
        _guard(bound, "add")
        out = {k: (m * fa if fa != 1 else m) for k, m in self.parts.items()}
        for k, m in other.parts.items():
            m = m * fb if fb != 1 else m
            out[k] = out[k] + m if k in out else m
        return SurdMatrix(self.shape, out, den)

    def __neg__(self) -> SurdMatrix:
        return SurdMatrix(self.shape, {k: -m for k, m in self.parts.items()}, self.denom)

    def __sub__(self, other) -> SurdMatrix:
        if not isinstance(other, SurdMatrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> SurdMatrix:
        if isinstance(scalar, SurdMatrix):
            return NotImplemented
        if isinstance(scalar, (int, Fraction)) or not isinstance(scalar, Surd):
            q = as_fraction(scalar)
            if q == 0 or not self.parts:
                return SurdMatrix(self.shape)
            _guard(max(_maxabs(m) for m in self.parts.values()) * abs(q.numerator), "scale")
            return SurdMatrix(
                self.shape,
                {k: m * q.numerator for k, m in self.parts.items()},
                self.denom * q.denominator,
            )
        terms, den = _surd_int_terms(scalar)
        if not terms or not self.parts:
            return SurdMatrix(self.shape)
        bound = (
            sum(_maxabs(m) for m in self.parts.values())
            * sum(abs(k) for _, _, k in terms)
            * max(d for d, _, _ in terms)
        )
        _guard(bound, "scale")
        out: dict = {}
        for (d1, p1), m in self.parts.items():
            for d2, p2, k in terms:
                g = gcd(d1, d2)
                key, sign = self._combine(d1, p1, d2, p2)
                term = m * (sign * g * k)
                out[key] = out[key] + term if key in out else term
        return SurdMatrix(self.shape, out, self.denom * den)

    __rmul__ = __mul__

    def __truediv__(self, q) -> SurdMatrix:
        q = as_fraction(q.to_fraction() if isinstance(q, Surd) else q)
        return self * (1 / q)

    @staticmethod
    def _combine(d1: int, p1: int, d2: int, p2: int) -> tuple[tuple[int, int], int]:
        g = gcd(d1, d2)
        ph = p1 + p2
        return ((d1 // g) * (d2 // g), ph % 2), (-1 if ph == 2 else 1)

    def __matmul__(self, other) -> SurdMatrix:
        if not isinstance(other, SurdMatrix):
            return NotImplemented
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"matmul shape mismatch {self.shape} @ {other.shape}")
        shape = (self.shape[0], other.shape[1])
        if not self.parts or not other.parts:
            return SurdMatrix(shape)
        inner = self.shape[1]
        bound = (
            sum(_maxabs(m) for m in self.parts.values())
            * sum(_maxabs(m) for m in other.parts.values())
            * inner
            * max(gcd(a, b) for a, _ in self.parts for b, _ in other.parts)
        )
        _guard(bound, "matmul")
        out: dict = {}
        for (d1, p1), a in self.parts.items():
            for (d2, p2), b in other.parts.items():
                key, sign = self._combine(d1, p1, d2, p2)
                term = a @ b
                f = sign * gcd(d1, d2)
                if f != 1:
                    term = term * f
                out[key] = out[key] + term if key in out else term
        return SurdMatrix(shape, out, self.denom * other.denom)

    def kron(self, other: SurdMatrix) -> SurdMatrix:
        shape = (self.shape[0] * other.shape[0], self.shape[1] * other.shape[1])
        if not self.parts or not other.parts:
            return SurdMatrix(shape)
        bound = (
            max(_maxabs(m) for m in self.parts.values())
            * max(_maxabs(m) for m in other.parts.values())
            * len(self.parts)
            * len(other.parts)
            * max(gcd(a, b) for a, _ in self.parts for b, _ in other.parts)
        )
        _guard(bound, "kron")
        out: dict = {}
        for (d1, p1), a in self.parts.items():
            for (d2, p2), b in other.parts.items():
                key, sign = self._combine(d1, p1, d2, p2)
                term = sp.kron(a, b, format="csr")
                f = sign * gcd(d1, d2)
                if f != 1:
                    term = term * f
                out[key] = out[key] + term if key in out else term
        return SurdMatrix(shape, out, self.denom * other.denom)

    @property
    def T(self) -> SurdMatrix:
        return SurdMatrix(
            (self.shape[1], self.shape[0]),
            {k: m.T.tocsr() for k, m in self.parts.items()},
            self.denom,
        )

    def conj(self) -> SurdMatrix:
        return SurdMatrix(
            self.shape,
            {(d, ph): (-m if ph else m) for (d, ph), m in self.parts.items()},
            self.denom,
        )

    @property
    def H(self) -> SurdMatrix:
        return self.conj().T

    def trace(self) -> Surd:
        terms: dict[int, tuple] = {}
        for (d, ph), m in self.parts.items():
            v = int(m.diagonal().sum())
            if v:
                q = Fraction(v, self.denom)
                re_, im_ = terms.get(d, (0, 0))
                terms[d] = (re_ + q, im_) if ph == 0 else (re_, im_ + q)
        return Surd(terms)

    def select(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> SurdMatrix:
        """Submatrix on the given row and column index lists."""
        r = np.arange(self.shape[0]) if rows is None else np.asarray(rows, dtype=np.int64)
        c = np.arange(self.shape[1]) if cols is None else np.asarray(cols, dtype=np.int64)
        parts = {k: m[r][:, c] for k, m in self.parts.items()}
        return SurdMatrix((len(r), len(c)), parts, self.denom)

    def commutator(self, other: SurdMatrix) -> SurdMatrix:
        return self @ other - other @ self

    def anticommutator(self, other: SurdMatrix) -> SurdMatrix:
        return self @ other + other @ self

    # comparison ----------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, SurdMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        return f"SurdMatrix(shape={self.shape}, nnz={self.nnz}, components={list(self.parts)})"

    # flattening -------------------------------------------------------------------
    def vec(self) -> SurdMatrix:
        """Row-major flattening into a ``(1, rows*cols)`` row vector."""
        n = self.shape[0] * self.shape[1]
        parts = {}
        for k, m in self.parts.items():
            coo = m.tocoo()
            idx = coo.row.astype(np.int64) * self.shape[1] + coo.col
            parts[k] = sp.csr_matrix(
                (coo.data, (np.zeros_like(idx), idx)), shape=(1, n), dtype=np.int64
            )
        return SurdMatrix((1, n), parts, self.denom)


def vstack(rows: Sequence[SurdMatrix]) -> SurdMatrix:
    """Stack matrices with equal column counts (typically row vectors)."""
    if not rows:
        raise ValueError("nothing to stack")
    ncols = rows[0].shape[1]
    den = 1
    for r in rows:
        den = _lcm(den, r.denom)
    keys = sorted({k for r in rows for k in r.parts})
    parts = {}
    for k in keys:
        blocks = []
        for r in rows:
            m = r.parts.get(k)
            if m is None:
                blocks.append(sp.csr_matrix(r.shape, dtype=np.int64))
            else:
                f = den // r.denom
                _guard(_maxabs(m) * f, "vstack")
                blocks.append(m * f if f != 1 else m)
        parts[k] = sp.vstack(blocks, format="csr", dtype=np.int64)
    total = sum(r.shape[0] for r in rows)
    return SurdMatrix((total, ncols), parts, den)


def block_diag_embed(blocks: Mapping[tuple[int, int], SurdMatrix], nblocks: int, bsize: int) -> SurdMatrix:
    """Assemble a matrix from ``(i, j) -> block`` with square blocks of size ``bsize``."""
    shape = (nblocks * bsize, nblocks * bsize)
    out = SurdMatrix(shape)
    for (i, j), b in blocks.items():
        if b.is_zero():
            continue
        out = out + SurdMatrix.unit((nblocks, nblocks), i, j).kron(b)
    return out


class SurdTensor:
    """Sparse tensor of Surds stored as a flat column vector."""

    __slots__ = ("dims", "flat")

    def __init__(self, dims: Sequence[int], flat: SurdMatrix):
        self.dims = tuple(int(d) for d in dims)
        if flat.shape != (prod(self.dims), 1):
            raise ValueError(f"flat storage shape {flat.shape} does not match dims {self.dims}")
        self.flat = flat

    @classmethod
    def from_entries(cls, dims: Sequence[int], entries: Mapping[tuple, object]) -> SurdTensor:
        dims = tuple(dims)
        flat = {(int(np.ravel_multi_index(idx, dims)), 0): v for idx, v in entries.items()}
        return cls(dims, SurdMatrix.from_entries((prod(dims), 1), flat))

    @classmethod
    def from_matrix(cls, m: SurdMatrix, row_dims: Sequence[int], col_dims: Sequence[int]) -> SurdTensor:
        dims = tuple(row_dims) + tuple(col_dims)
        if m.shape != (prod(row_dims), prod(col_dims)):
            raise ValueError("matrix shape does not match the requested dims")
        return cls(dims, _regroup(m, (prod(dims), 1), None))

    def entry(self, idx: Sequence[int]) -> Surd:
        return self.flat.entry(int(np.ravel_multi_index(tuple(idx), self.dims)), 0)

    __getitem__ = entry

    def nonzero(self) -> Iterator[tuple[tuple[int, ...], Surd]]:
        for r, _, v in self.flat.iter_entries():
            yield tuple(int(i) for i in np.unravel_index(r, self.dims)), v

    def is_zero(self) -> bool:
        return self.flat.is_zero()

    def is_real(self) -> bool:
        return self.flat.is_real()

    @property
    def nnz(self) -> int:
        return self.flat.nnz

    def matricize(self, row_axes: Sequence[int], col_axes: Sequence[int]) -> SurdMatrix:
        row_axes, col_axes = tuple(row_axes), tuple(col_axes)
        if sorted(row_axes + col_axes) != list(range(len(self.dims))):
            raise ValueError("row_axes and col_axes must partition the tensor axes")
        shape = (
            prod(self.dims[a] for a in row_axes),
            prod(self.dims[a] for a in col_axes),
        )
        return _regroup(self.flat, shape, (self.dims, row_axes, col_axes))

    def transpose(self, axes: Sequence[int]) -> SurdTensor:
        axes = tuple(axes)
        m = self.matricize(axes, ())
        return SurdTensor(tuple(self.dims[a] for a in axes), m)

    def __add__(self, other: SurdTensor) -> SurdTensor:
        return SurdTensor(self.dims, self.flat + other.flat)

    def __sub__(self, other: SurdTensor) -> SurdTensor:
        return SurdTensor(self.dims, self.flat - other.flat)

    def __neg__(self) -> SurdTensor:
        return SurdTensor(self.dims, -self.flat)

    def __mul__(self, scalar) -> SurdTensor:
        return SurdTensor(self.dims, self.flat * scalar)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SurdTensor):
            return NotImplemented
        return self.dims == other.dims and self.flat == other.flat

    __hash__ = None

    def __repr__(self) -> str:
        return f"SurdTensor(dims={self.dims}, nnz={self.nnz})"


def tensordot(a: SurdTensor, b: SurdTensor, axes_a: Sequence[int], axes_b: Sequence[int]) -> SurdTensor:
    """Contract ``axes_a`` of ``a`` with ``axes_b`` of ``b`` (free axes of a, then of b)."""
    free_a = [i for i in range(len(a.dims)) if i not in axes_a]
    free_b = [i for i in range(len(b.dims)) if i not in axes_b]
    ma = a.matricize(free_a, axes_a)
    mb = b.matricize(axes_b, free_b)
    dims = [a.dims[i] for i in free_a] + [b.dims[i] for i in free_b]
    prod_m = ma @ mb
    return SurdTensor.from_matrix(prod_m, [a.dims[i] for i in free_a], [b.dims[i] for i in free_b]) if dims else SurdTensor((), prod_m)


def _regroup(m: SurdMatrix, shape: tuple[int, int], spec) -> SurdMatrix:
    """Re-index every component of ``m``.

    With ``spec is None`` the matrix is flattened row-major into a column of
    length ``shape[0]``.  Otherwise ``spec = (dims, row_axes, col_axes)`` and
    ``m`` is a flat column holding a tensor of shape ``dims``.
    """
    parts = {}
    for k, comp in m.parts.items():
        coo = comp.tocoo()
        if spec is None:
            flat = coo.row.astype(np.int64) * m.shape[1] + coo.col
            r, c = flat, np.zeros_like(flat)
        else:
            dims, row_axes, col_axes = spec
            multi = np.unravel_index(coo.row.astype(np.int64), dims)
            if row_axes:
                r = np.ravel_multi_index([multi[a] for a in row_axes], [dims[a] for a in row_axes])
            else:
                r = np.zeros_like(coo.row, dtype=np.int64)
            if col_axes:
                c = np.ravel_multi_index([multi[a] for a in col_axes], [dims[a] for a in col_axes])
            else:
                c = np.zeros_like(coo.row, dtype=np.int64)
        parts[k] = sp.csr_matrix((coo.data, (r, c)), shape=shape, dtype=np.int64)
    return SurdMatrix(shape, parts, m.denom)


def reshape(m: SurdMatrix, shape: tuple[int, int]) -> SurdMatrix:
    """Row-major reshape."""
    if shape[0] * shape[1] != m.shape[0] * m.shape[1]:
        raise ValueError(f"cannot reshape {m.shape} into {shape}")
    parts = {}
    for k, comp in m.parts.items():
        coo = comp.tocoo()
        flat = coo.row.astype(np.int64) * m.shape[1] + coo.col
        r, c = np.divmod(flat, shape[1])
        parts[k] = sp.csr_matrix((coo.data, (r, c)), shape=shape, dtype=np.int64)
    return SurdMatrix(shape, parts, m.denom)


def stack(mats: Sequence[SurdMatrix]) -> SurdTensor:
    """Tensor ``T[i, a, b] = mats[i][a, b]``."""
    rows, cols = mats[0].shape
    flat = vstack([m.vec() for m in mats])
    return SurdTensor((len(mats), rows, cols), reshape(flat, (len(mats) * rows * cols, 1)))


def unstack(t: SurdTensor) -> list[SurdMatrix]:
    """Inverse of :func:`stack`."""
    n, rows, cols = t.dims
    m = t.matricize((0,), (1, 2))
    return [reshape(m.select(rows=[i]), (rows, cols)) for i in range(n)]


def pair_products(a: SurdTensor, b: SurdTensor) -> SurdTensor:
    """``P[i, j, r, c] = (A_i B_j)[r, c]`` for stacked matrices."""
    return tensordot(a, b, [2], [1]).transpose((0, 2, 1, 3))


def triple_traces(a: SurdTensor, b: SurdTensor, c: SurdTensor) -> SurdTensor:
    """``T[i, j, k] = Tr(A_i B_j C_k)`` for stacked square matrices."""
    ab = tensordot(a, b, [2], [1])  # (i, r, j, s)
    return tensordot(ab, c, [1, 3], [2, 1])


def lie_residual(mats: SurdTensor, structure: SurdTensor, cols: Sequence[int] | None = None) -> SurdMatrix:
    """Residual of ``[M_i, M_j] = i f_ijk M_k`` as a ``(g*g, rows*ncols)`` matrix.

    With ``cols`` given, only those columns of every product are formed;
    this is how truncated bosonic operators are checked on the interior.
    """
    from .scalar import I

    g, rows, _ = mats.dims
    right = mats
    if cols is not None:
        m = mats.matricize((0, 1), (2,)).select(cols=cols)
        right = SurdTensor.from_matrix(m, (g, rows), (len(cols),))
    ncols = right.dims[2]
    p = pair_products(mats, right)  # (i, j, r, c)
    comm = p - p.transpose((1, 0, 2, 3))
    lhs = comm.matricize((0, 1), (2, 3))
    rhs = structure.matricize((0, 1), (2,)) @ right.matricize((0,), (1, 2))
    assert rhs.shape == (g * g, rows * ncols)
    return lhs - rhs * I
