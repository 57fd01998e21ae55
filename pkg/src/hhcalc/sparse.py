"""Exact sparse matrices: rank, kernel bases, solving, cohomology dimensions.

Storage is column-major: per column a sorted array('i') of row indices and a
parallel list of nonzero field elements.  Prime-field ranks and the heavy
zero-product checks dispatch to the compiled kernel (hhcalc._fastelim) when
it is available; set HHCALC_PURE=1 to force the pure-Python path.
"""

from __future__ import annotations

import os
import random
from array import array

from . import _elim
from .fields import Field, MixedFieldError, PRIME_FIELD, RATIONALS

try:
    if os.environ.get("HHCALC_PURE"):
        _fast = None
    else:
        from . import _fastelim as _fast
except ImportError:  # pragma: no cover
    _fast = None

try:
    import numpy as _np
except ImportError:  # pragma: no cover
    _np = None

HAVE_FAST_KERNEL = _fast is not None and _np is not None


class ShapeError(ValueError):
    pass


class ComplexNotExactlyComposable(ValueError):
    """d_out . d_in != 0: the two maps do not form a complex."""


class SingularMatrixError(ValueError):
    pass


class RankCertificationError(ArithmeticError):
    """Modular re-computations of a rational rank disagreed."""


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "field", "_cols")

    def __init__(self, nrows: int, ncols: int, field: Field, cols=None):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        if cols is None:
            cols = [(array("i"), []) for _ in range(ncols)]
        self._cols = cols

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nrows: int, ncols: int, field: Field) -> "SparseMatrix":
        return cls(nrows, ncols, field)

    @classmethod
    def identity(cls, n: int, field: Field) -> "SparseMatrix":
        cols = [(array("i", [i]), [field.one]) for i in range(n)]
        return cls(n, n, field, cols)

    @classmethod
    def from_entries(cls, nrows, ncols, field, entries) -> "SparseMatrix":
        """entries: iterable of (row, col, value); duplicate keys rejected."""
        acc: list[dict] = [{} for _ in range(ncols)]
        for i, j, v in entries:
            field.check(v)
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ShapeError(f"entry ({i},{j}) outside {nrows}x{ncols}")
            col = acc[j]
            if i in col:
                raise ValueError(f"duplicate entry at ({i},{j})")
            if not field.is_zero(v):
                col[i] = v
        return cls.from_col_dicts(nrows, ncols, field, acc)

    @classmethod
    def from_col_dicts(cls, nrows, ncols, field, col_dicts) -> "SparseMatrix":
        cols = []
        for d in col_dicts:
            idx = array("i", sorted(d))
            cols.append((idx, [d[i] for i in idx]))
        return cls(nrows, ncols, field, cols)

    @classmethod
    def from_dense(cls, rows, field) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        ent = [(i, j, field.of(v) if isinstance(v, int) else v)
               for i, r in enumerate(rows) for j, v in enumerate(r)
               if not field.is_zero(field.of(v) if isinstance(v, int) else v)]
        return cls.from_entries(nrows, ncols, field, ent)

    # -- basic access ------------------------------------------------------

    @property
    def nnz(self) -> int:
        return sum(len(c[0]) for c in self._cols)

    def iter_entries(self):
        for j, (idx, vals) in enumerate(self._cols):
            for i, v in zip(idx, vals):
                yield i, j, v

    def col_dict(self, j: int) -> dict:
        idx, vals = self._cols[j]
        return dict(zip(idx, vals))

    def entry(self, i: int, j: int):
        idx, vals = self._cols[j]
        for r, v in zip(idx, vals):
            if r == i:
                return v
        return self.field.zero

    def to_dense(self):
        out = [[self.field.zero] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.iter_entries():
            out[i][j] = v
        return out

    def __repr__(self):
        return (f"SparseMatrix({self.nrows}x{self.ncols} over {self.field}, "
                f"nnz={self.nnz})")

    # -- algebra -----------------------------------------------------------

    def _check_same(self, other):
        if self.field != other.field:
            raise MixedFieldError(
                f"mixed fields {self.field} and {other.field}")

    def transpose(self) -> "SparseMatrix":
        acc: list[dict] = [{} for _ in range(self.nrows)]
        for i, j, v in self.iter_entries():
            acc[i][j] = v
        return SparseMatrix.from_col_dicts(
            self.ncols, self.nrows, self.field, acc)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_same(other)
        if self.ncols != other.nrows:
            raise ShapeError(f"{self.ncols} != {other.nrows}")
        f = self.field
        out_cols = []
        for jb in range(other.ncols):
            bidx, bvals = other._cols[jb]
            acc: dict = {}
            for col, coef in zip(bidx, bvals):
                aidx, avals = self._cols[col]
                for row, av in zip(aidx, avals):
                    cur = acc.get(row)
                    acc[row] = f.mul(coef, av) if cur is None \
                        else f.add(cur, f.mul(coef, av))
            acc = {i: v for i, v in acc.items() if not f.is_zero(v)}
            idx = array("i", sorted(acc))
            out_cols.append((idx, [acc[i] for i in idx]))
        return SparseMatrix(self.nrows, other.ncols, f, out_cols)

    def matvec(self, vec: dict) -> dict:
        f = self.field
        acc: dict = {}
        for j, coef in vec.items():
            idx, vals = self._cols[j]
            for i, v in zip(idx, vals):
                cur = acc.get(i)
                acc[i] = f.mul(coef, v) if cur is None \
                    else f.add(cur, f.mul(coef, v))
        return {i: v for i, v in acc.items() if not f.is_zero(v)}

    def _combine(self, other, s) -> "SparseMatrix":
        self._check_same(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ShapeError("shape mismatch")
        f = self.field
        cols = []
        for j in range(self.ncols):
            r = _elim.axpy(
                (list(self._cols[j][0]), self._cols[j][1]),
                (list(other._cols[j][0]), other._cols[j][1]), s, f)
            cols.append((array("i", r[0]), r[1]))
        return SparseMatrix(self.nrows, self.ncols, f, cols)

    def __add__(self, other):
        return self._combine(other, self.field.one)

    def __sub__(self, other):
        return self._combine(other, self.field.of(-1))

    def scale(self, s) -> "SparseMatrix":
        f = self.field
        if f.is_zero(s):
            return SparseMatrix.zero(self.nrows, self.ncols, f)
        cols = [(array("i", idx), [f.mul(s, v) for v in vals])
                for idx, vals in self._cols]
        return SparseMatrix(self.nrows, self.ncols, f, cols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.field == other.field
                and (self.nrows, self.ncols) == (other.nrows, other.ncols)
                and all(a[1] == b[1] and list(a[0]) == list(b[0])
                        for a, b in zip(self._cols, other._cols)))

    __hash__ = None  # mutable container semantics

    def is_zero(self) -> bool:
        return all(len(c[0]) == 0 for c in self._cols)

    # -- elimination -------------------------------------------------------

    def _sparse_rows(self):
        """Row-major view: list of ([cols], [vals]) sorted rows."""
        rows: list[tuple[list, list]] = [([], []) for _ in range(self.nrows)]
        for j in range(self.ncols):
            idx, vals = self._cols[j]
            for i, v in zip(idx, vals):
                rows[i][0].append(j)
                rows[i][1].append(v)
        return rows

    def _csr_arrays(self):
        indptr = _np.zeros(self.nrows + 1, dtype=_np.int32)
        nnz = self.nnz
        indices = _np.empty(nnz, dtype=_np.int32)
        data = _np.empty(nnz, dtype=_np.int64)
        counts = _np.zeros(self.nrows, dtype=_np.int64)
        for idx, _ in self._cols:
            for i in idx:
                counts[i] += 1
        indptr[1:] = _np.cumsum(counts)
        fill = indptr[:-1].copy()
        for j in range(self.ncols):
            idx, vals = self._cols[j]
            for i, v in zip(idx, vals):
                k = fill[i]
                indices[k] = j
                data[k] = v
                fill[i] += 1
        return indptr, indices, data

    def _csc_arrays(self):
        indptr = _np.zeros(self.ncols + 1, dtype=_np.int32)
        nnz = self.nnz
        indices = _np.empty(nnz, dtype=_np.int32)
        data = _np.empty(nnz, dtype=_np.int64)
        k = 0
        for j, (idx, vals) in enumerate(self._cols):
            for i, v in zip(idx, vals):
                indices[k] = i
                data[k] = v
                k += 1
            indptr[j + 1] = k
        return indptr, indices, data

    def rank(self, certify: bool = False, _seed: int = 20260823) -> int:
        """Exact rank.  Over Q with certify=True the result is re-computed
        modulo two random primes and required to agree."""
        if self.nnz == 0:
            return 0
        work = self if self.ncols <= self.nrows else self.transpose()
        r = work._rank_impl()
        if certify and self.field.kind == RATIONALS:
            self._certify_rank(r, _seed)
        return r

    def _rank_impl(self) -> int:
        f = self.field
        if f.kind == PRIME_FIELD and HAVE_FAST_KERNEL:
            indptr, indices, data = self._csr_arrays()
            return _fast.rank_fp(self.nrows, self.ncols,
                                 indptr, indices, data, f.p)
        return _elim.rank_of_rows(self._sparse_rows(), f)

    def _certify_rank(self, r: int, seed: int):
        rng = random.Random(seed)
        checked = 0
        attempts = 0
        while checked < 2 and attempts < 20:
            attempts += 1
            p = rng.randrange(10007, 2 ** 20)
            if not _is_probable_prime(p):
                continue
            red = self._reduce_mod(p)
            if red is None:
                continue  # p divides a denominator
            rp = red.rank()
            if rp > r:
                raise RankCertificationError(
                    f"rank mod {p} = {rp} exceeds rational rank {r}")
            if rp < r:
                # unlucky prime is possible but rare; a second drop is a bug
                continue
            checked += 1
        if checked < 2:
            raise RankCertificationError(
                f"could not certify rational rank {r}")

    def _reduce_mod(self, p: int):
        fp = Field.prime(p)
        cols = []
        for idx, vals in self._cols:
            d: dict = {}
            for i, v in zip(idx, vals):
                num = int(v.numerator)
                den = int(v.denominator)
                if den % p == 0:
                    return None
                w = (num * pow(den, p - 2, p)) % p
                if w:
                    d[i] = w
            cols.append(d)
        return SparseMatrix.from_col_dicts(self.nrows, self.ncols, fp, cols)

    def rref(self):
        return _elim.rref(self._sparse_rows(), self.field)

    def kernel_basis(self) -> list[dict]:
        """Basis of {v : M v = 0} as {index: value} dicts."""
        piv = self.rref()
        return _elim.kernel_from_rref(piv, self.ncols, self.field)

    def solve_right(self, rhs: "SparseMatrix"):
        """A particular X with self @ X = rhs, or None if inconsistent."""
        self._check_same(rhs)
        if self.nrows != rhs.nrows:
            raise ShapeError("rhs row count mismatch")
        f = self.field
        aug_rows = self._sparse_rows()
        for i, j, v in rhs.iter_entries():
            aug_rows[i][0].append(self.ncols + j)
            aug_rows[i][1].append(v)
        piv = _elim.rref(aug_rows, f)
        if any(j >= self.ncols for j in piv):
            return None
        out: list[dict] = [{} for _ in range(rhs.ncols)]
        for j, (cols, vals) in piv.items():
            for c, v in zip(cols, vals):
                if c >= self.ncols:
                    out[c - self.ncols][j] = v
        return SparseMatrix.from_col_dicts(self.ncols, rhs.ncols, f, out)

    def inverse(self) -> "SparseMatrix":
        if self.nrows != self.ncols:
            raise ShapeError("inverse of non-square matrix")
        x = self.solve_right(SparseMatrix.identity(self.nrows, self.field))
        if x is None or self.rank() < self.nrows:
            raise SingularMatrixError("matrix is singular")
        return x

    def is_zero_product_with(self, other: "SparseMatrix") -> bool:
        """True iff self @ other == 0; avoids materializing the product."""
        self._check_same(other)
        if self.ncols != other.nrows:
            raise ShapeError(f"{self.ncols} != {other.nrows}")
        f = self.field
        if f.kind == PRIME_FIELD and HAVE_FAST_KERNEL:
            a_indptr, a_indices, a_data = self._csc_arrays()
            b_indptr, b_indices, b_data = other._csc_arrays()
            return _fast.spmm_is_zero_fp(self.nrows,
                                         a_indptr, a_indices, a_data,
                                         b_indptr, b_indices, b_data, f.p)
        return (self @ other).is_zero()


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


def block_matrix(blocks, row_dims, col_dims, field) -> SparseMatrix:
    """Assemble a sparse matrix from a 2D grid of optional blocks."""
    nrows = sum(row_dims)
    ncols = sum(col_dims)
    roff = [0]
    for d in row_dims:
        roff.append(roff[-1] + d)
    coff = [0]
    for d in col_dims:
        coff.append(coff[-1] + d)
    acc: list[dict] = [{} for _ in range(ncols)]
    for bi, row in enumerate(blocks):
        for bj, blk in enumerate(row):
            if blk is None:
                continue
            if (blk.nrows, blk.ncols) != (row_dims[bi], col_dims[bj]):
                raise ShapeError("block shape mismatch")
            for i, j, v in blk.iter_entries():
                acc[coff[bj] + j][roff[bi] + i] = v
    return SparseMatrix.from_col_dicts(nrows, ncols, field, acc)


def rank(m: SparseMatrix) -> int:
    return m.rank()


def kernel_basis(m: SparseMatrix) -> list[dict]:
    return m.kernel_basis()


def cohomology_dim(d_in: SparseMatrix, d_out: SparseMatrix) -> int:
    """dim ker(d_out) - rank(d_in) for consecutive differentials."""
    if d_in.field != d_out.field:
        raise MixedFieldError("differentials over different fields")
    if d_out.ncols != d_in.nrows:
        raise ShapeError(
            f"differentials do not compose: {d_out.ncols} != {d_in.nrows}")
    if not d_out.is_zero_product_with(d_in):
        raise ComplexNotExactlyComposable("d_out . d_in != 0")
    return (d_out.ncols - d_out.rank()) - d_in.rank()
