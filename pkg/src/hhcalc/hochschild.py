"""Hochschild (co)homology of a structure-constant algebra with
coefficients in a bimodule, computed from the bar cochain complex, plus an
independent Ext oracle built from explicit free bimodule resolutions.

Cochain coordinates: an elementary n-cochain sends one basis tuple
(e_{t_0}, ..., e_{t_{n-1}}) to one coefficient basis vector m_u and all other
basis tuples to zero; its column index is rank(t) * dim(M) + u with rank(t)
the big-endian base-dim(A) value of t.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fields import Field
from .sparse import SparseMatrix, cohomology_dim
from .algebra import Algebra, Bimodule, _vec_axpy
from . import _elim


class SizeLimitExceeded(RuntimeError):
    def __init__(self, what: str, estimate: int, limit: int):
        super().__init__(
            f"{what}: estimated {estimate} entries exceeds the size limit "
            f"{limit}; raise the limit to force the computation")
        self.what = what
        self.estimate = estimate
        self.limit = limit


DEFAULT_SIZE_LIMIT = 5_000_000


@dataclass
class CochainComplex:
    """Cochain spaces C^0..C^{top} with differentials d^n: C^n -> C^{n+1}.
    A differential may be None when it was skipped for size; cohomology in
    the affected degrees is then unavailable."""

    field: Field
    dims: list[int]
    diffs: list  # SparseMatrix | None, diffs[n]: dims[n] -> dims[n+1]
    skip_reasons: dict = None

    def __post_init__(self):
        if self.skip_reasons is None:
            self.skip_reasons = {}

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def differential(self, n: int) -> SparseMatrix | None:
        if 0 <= n < len(self.diffs):
            return self.diffs[n]
        return None

    def verify_dd(self) -> list[int]:
        """Check d^{n+1} d^n = 0 for every pair of available differentials;
        returns the degrees n actually checked."""
        checked = []
        for n in range(len(self.diffs) - 1):
            d0, d1 = self.diffs[n], self.diffs[n + 1]
            if d0 is None or d1 is None:
                continue
            if not d1.is_zero_product_with(d0):
                raise ArithmeticError(f"d∘d != 0 at degree {n}")
            checked.append(n)
        return checked

    def cohomology_dim(self, n: int) -> int:
        d_out = self.differential(n)
        if d_out is None:
            raise SizeLimitExceeded(
                self.skip_reasons.get(n, f"differential {n} unavailable"),
                0, 0)
        if n == 0:
            d_in = SparseMatrix.zero(self.dims[0], 0, self.field)
        else:
            d_in = self.differential(n - 1)
            if d_in is None:
                raise SizeLimitExceeded(
                    self.skip_reasons.get(n - 1,
                                          f"differential {n-1} unavailable"),
                    0, 0)
        return cohomology_dim(d_in, d_out)

    def cohomology_dims(self, n_max: int) -> list:
        """H^0..H^n_max; None where size-skipped."""
        out = []
        for n in range(n_max + 1):
            try:
                out.append(self.cohomology_dim(n))
            except SizeLimitExceeded:
                out.append(None)
        return out


@dataclass
class DimTable:
    """Dimensions indexed by cohomological degree, None = size-skipped."""

    label: str
    dims: list

    def __str__(self):
        cells = " ".join("?" if d is None else str(d) for d in self.dims)
        return f"{self.label}: {cells}"


def _tuple_rank_parts(rank_t: int, j: int, n: int, d: int):
    """Split the rank of an n-tuple into (prefix rank before slot j,
    digit at j, suffix rank after slot j)."""
    suf_pow = d ** (n - j - 1)
    suffix = rank_t % suf_pow
    rest = rank_t // suf_pow
    return rest // d, rest % d, suffix


def hochschild_differential(a: Algebra, m: Bimodule, n: int) -> SparseMatrix:
    """Matrix of b^n: Hom(A^{⊗n}, M) -> Hom(A^{⊗n+1}, M)."""
    f = a.field
    dA, dM = a.dim, m.dim
    fact = a.factorizations()
    left_cols = [[m.left[s].col_dict(u) for u in range(dM)]
                 for s in range(dA)]
    right_cols = [[m.right[s].col_dict(u) for u in range(dM)]
                  for s in range(dA)]
    sign_last = f.one if (n + 1) % 2 == 0 else f.neg(f.one)
    inner_signs = [f.one if (j + 1) % 2 == 0 else f.neg(f.one)
                   for j in range(n)]
    ncols = dM * dA ** n
    nrows = dM * dA ** (n + 1)
    pow_n = dA ** n
    cols: list[dict] = []
    for rank_t, t in enumerate(itertools.product(range(dA), repeat=n)):
        for u in range(dM):
            col: dict = {}
            # x1 · f(x2..x_{n+1})
            for s1 in range(dA):
                base = (s1 * pow_n + rank_t) * dM
                for k, v in left_cols[s1][u].items():
                    _vec_axpy(f, col, f.one, {base + k: v})
            # inner contractions
            for j in range(n):
                pre, _, suf = _tuple_rank_parts(rank_t, j, n, dA)
                suf_pow = dA ** (n - j - 1)
                sgn = inner_signs[j]
                for (p, q, c) in fact[t[j]]:
                    rank_s = ((pre * dA + p) * dA + q) * suf_pow + suf
                    key = rank_s * dM + u
                    w = f.add(col.get(key, f.zero), f.mul(sgn, c))
                    if f.is_zero(w):
                        col.pop(key, None)
                    else:
                        col[key] = w
            # (-1)^{n+1} f(x1..xn) · x_{n+1}
            for sl in range(dA):
                base = (rank_t * dA + sl) * dM
                for k, v in right_cols[sl][u].items():
                    key = base + k
                    w = f.add(col.get(key, f.zero), f.mul(sign_last, v))
                    if f.is_zero(w):
                        col.pop(key, None)
                    else:
                        col[key] = w
            cols.append(col)
    return SparseMatrix.from_col_dicts(nrows, ncols, f, cols)


def _check_size(what: str, estimate: int, size_limit: int):
    if estimate > size_limit:
        raise SizeLimitExceeded(what, estimate, size_limit)


def hochschild_cochain(a: Algebra, m: Bimodule, n_max: int,
                       size_limit: int = DEFAULT_SIZE_LIMIT,
                       strict: bool = False) -> CochainComplex:
    """Cochain complex computing HH^0..HH^{n_max}(A, M).  Differentials
    whose estimated size exceeds size_limit are recorded as skipped (or
    raise when strict=True)."""
    dA, dM = a.dim, m.dim
    dims = [dM * dA ** n for n in range(n_max + 2)]
    diffs = []
    reasons: dict = {}
    for n in range(n_max + 1):
        estimate = dims[n] * dA * (n + 2)
        what = (f"Hochschild differential b^{n} "
                f"({dims[n+1]}x{dims[n]}) for {a.name}")
        try:
            _check_size(what, estimate, size_limit)
        except SizeLimitExceeded as exc:
            if strict:
                raise
            diffs.append(None)
            reasons[n] = str(exc)
            continue
        diffs.append(hochschild_differential(a, m, n))
    return CochainComplex(a.field, dims, diffs, reasons)


def hh_dims(a: Algebra, m: Bimodule | None = None, n_max: int = 2,
            size_limit: int = DEFAULT_SIZE_LIMIT) -> list:
    """dim HH^0..HH^{n_max}(A, M); M defaults to A itself.  None entries
    mark size-skipped degrees."""
    from .algebra import regular_bimodule
    if m is None:
        m = regular_bimodule(a)
    cx = hochschild_cochain(a, m, n_max, size_limit)
    cx.verify_dd()
    return cx.cohomology_dims(n_max)


def twisted_hh_dims(a: Algebra, fmor, gmor, n_max: int = 2,
                    size_limit: int = DEFAULT_SIZE_LIMIT) -> list:
    """HH^*(A, M) with M = A twisted by a . x . b = f(a) x g(b)."""
    from .algebra import twisted_bimodule
    return hh_dims(a, twisted_bimodule(a, fmor, gmor), n_max, size_limit)


def hochschild_boundary(a: Algebra, m: Bimodule, n: int) -> SparseMatrix:
    """Matrix of the chain boundary d_n: M ⊗ A^{⊗n} -> M ⊗ A^{⊗n-1},
    d(m⊗x₁..xₙ) = mx₁⊗rest + Σ (-1)^j m⊗..xⱼxⱼ₊₁.. + (-1)^n xₙm⊗x₁..xₙ₋₁."""
    f = a.field
    dA, dM = a.dim, m.dim
    ncols = dM * dA ** n
    nrows = dM * dA ** (n - 1)
    sign_last = f.one if n % 2 == 0 else f.neg(f.one)
    cols: list[dict] = []
    for rank_t, t in enumerate(itertools.product(range(dA), repeat=n)):
        for u in range(dM):
            col: dict = {}
            rank_tail = rank_t % dA ** (n - 1)
            for k, v in m.right[t[0]].col_dict(u).items():
                _vec_axpy(f, col, f.one, {rank_tail * dM + k: v})
            for j in range(1, n):
                sgn = f.one if j % 2 == 0 else f.neg(f.one)
                # the two merged digits t[j-1], t[j] occupy slots j-1, j
                suf_pow = dA ** (n - j - 1)
                suffix = rank_t % suf_pow
                pre2 = rank_t // dA ** (n - j + 1)
                prod = a.product_basis(t[j - 1], t[j])
                for k, c in prod.items():
                    rank_s = (pre2 * dA + k) * suf_pow + suffix
                    _vec_axpy(f, col, f.mul(sgn, c),
                              {rank_s * dM + u: f.one})
            rank_head = rank_t // dA
            for k, v in m.left[t[-1]].col_dict(u).items():
                _vec_axpy(f, col, sign_last, {rank_head * dM + k: v})
            cols.append(col)
    return SparseMatrix.from_col_dicts(nrows, ncols, f, cols)


def hochschild_homology_dims(a: Algebra, m: Bimodule | None = None,
                             n_max: int = 2,
                             size_limit: int = DEFAULT_SIZE_LIMIT) -> list:
    """dim HH_0..HH_{n_max}(A, M)."""
    from .algebra import regular_bimodule
    if m is None:
        m = regular_bimodule(a)
    f = a.field
    dA, dM = a.dim, m.dim
    bounds = [None]  # d_0 is zero into the zero space
    for n in range(1, n_max + 2):
        estimate = dM * dA ** n * dA * (n + 2)
        _check_size(f"Hochschild boundary d_{n} for {a.name}",
                    estimate, size_limit)
        bounds.append(hochschild_boundary(a, m, n))
    for n in range(1, n_max + 1):
        if not bounds[n].is_zero_product_with(bounds[n + 1]):
            raise ArithmeticError(f"d∘d != 0 at chain degree {n + 1}")
    out = []
    for n in range(n_max + 1):
        d_out = bounds[n] if n >= 1 else \
            SparseMatrix.zero(0, dM, f)
        d_in = bounds[n + 1]
        out.append(cohomology_dim(d_in, d_out))
    return out


# -- Ext over the enveloping algebra, by explicit syzygies -------------------

class _Span:
    """Incrementally maintained row space over a field."""

    def __init__(self, field: Field):
        self.field = field
        self.pivots: dict = {}

    def reduce(self, vec: dict) -> dict:
        row = (sorted(vec), [vec[i] for i in sorted(vec)])
        f = self.field
        cols, vals = row
        while cols:
            piv = self.pivots.get(cols[0])
            if piv is None:
                break
            cols, vals = _elim.axpy((cols, vals), piv, f.neg(vals[0]), f)
        return dict(zip(cols, vals))

    def add(self, vec: dict) -> bool:
        """Insert; True if the rank grew."""
        f = self.field
        red = self.reduce(vec)
        if not red:
            return False
        cols = sorted(red)
        vals = [red[c] for c in cols]
        lead_inv = f.inv(vals[0])
        self.pivots[cols[0]] = (cols, [f.mul(lead_inv, v) for v in vals])
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _module_generators(vectors, left, right, field: Field):
    """Greedy generating set: scan candidate vectors, keep those outside the
    submodule generated so far.  left/right are the ambient action
    matrices."""
    d = len(left)
    span = _Span(field)
    gens = []
    for v in vectors:
        if not span.reduce(v):
            continue
        gens.append(v)
        # close under the bimodule action: e_i · v · e_j for all i, j
        for i in range(d):
            vi = left[i].matvec(v)
            for j in range(d):
                w = right[j].matvec(vi)
                if w:
                    span.add(w)
    return gens


def _free_bimodule_actions(a: Algebra, r: int):
    """Action matrices on (A ⊗ A)^r, coordinates (slot, i, j) ->
    slot*d*d + i*d + j."""
    from .algebra import _kron
    f = a.field
    d = a.dim
    ident = SparseMatrix.identity(d, f)

    def blockdiag(mat):
        cols: list[dict] = []
        for s in range(r):
            off = s * d * d
            for j in range(d * d):
                cols.append({off + i: v
                             for i, v in mat.col_dict(j).items()})
        return SparseMatrix.from_col_dicts(r * d * d, r * d * d, f, cols)

    left = [blockdiag(_kron(a.left_mult_matrix(i), ident)) for i in
            range(d)]
    right = [blockdiag(_kron(ident, a.right_mult_matrix(j))) for j in
             range(d)]
    return left, right


def ext_bimodule_dims(m: Bimodule, n: Bimodule, n_max: int,
                      size_limit: int = DEFAULT_SIZE_LIMIT) -> list[int]:
    """dim Ext^0..Ext^{n_max} of the A-bimodules M, N over the enveloping
    algebra, via a free resolution of M by (A⊗A)^r terms built from greedy
    syzygy generators."""
    a = m.algebra
    f = a.field
    d = a.dim

    # step 0: free cover of M by generators among its basis vectors
    basis_vecs = [{i: f.one} for i in range(m.dim)]
    gens = _module_generators(basis_vecs, m.left, m.right, f)
    gen_counts = [len(gens)]
    # epsilon: (A⊗A)^r -> M, slot s with (i,j) ↦ e_i g_s e_j
    eps_cols: list[dict] = []
    for g in gens:
        for i in range(d):
            gi = m.left[i].matvec(g)
            for j in range(d):
                eps_cols.append(m.right[j].matvec(gi))
    eps = SparseMatrix.from_col_dicts(m.dim, len(gens) * d * d, f, eps_cols)
    if eps.rank() != m.dim:
        raise ArithmeticError("free cover is not surjective")

    # iterate syzygies; record for each resolution step the generator
    # images (vectors in the previous free module's coordinates)
    gen_vectors: list[list[dict]] = []
    current_map = eps
    r = len(gens)
    for _step in range(n_max + 1):
        _check_size(f"syzygy kernel at step {_step} for {a.name}",
                    current_map.nrows * current_map.ncols, size_limit)
        kernel = current_map.kernel_basis()
        fl, fr = _free_bimodule_actions(a, r)
        kgens = _module_generators(kernel, fl, fr, f)
        gen_vectors.append(kgens)
        gen_counts.append(len(kgens))
        # next free cover: (A⊗A)^{len(kgens)} -> kernel ⊆ (A⊗A)^r
        cols: list[dict] = []
        for g in kgens:
            for i in range(d):
                gi = fl[i].matvec(g)
                for j in range(d):
                    cols.append(fr[j].matvec(gi))
        current_map = SparseMatrix.from_col_dicts(
            r * d * d, len(kgens) * d * d, f, cols)
        r = len(kgens)

    # apply Hom_{A^e}(-, N): Hom((A⊗A)^r, N) ≅ N^r; pullback along the map
    # sending generator s to v_s is φ ↦ (Σ coeffs e_i φ_u e_j)_s
    dN = n.dim
    act = {}

    def act_mat(i, j):
        if (i, j) not in act:
            act[(i, j)] = n.left[i] @ n.right[j]
        return act[(i, j)]

    homs = []  # pullback matrices Hom(F_k, N) -> Hom(F_{k+1}, N)
    prev_r = gen_counts[0]
    for k, kgens in enumerate(gen_vectors):
        rows = dN * len(kgens)
        cols_mat: list[dict] = [{} for _ in range(dN * prev_r)]
        for s, v in enumerate(kgens):
            for idx, c in v.items():
                u, rem = divmod(idx, d * d)
                i, j = divmod(rem, d)
                blk = act_mat(i, j)
                for col_n in range(dN):
                    target = cols_mat[u * dN + col_n]
                    for row_n, w in blk.col_dict(col_n).items():
                        key = s * dN + row_n
                        val = f.add(target.get(key, f.zero), f.mul(c, w))
                        if f.is_zero(val):
                            target.pop(key, None)
                        else:
                            target[key] = val
        homs.append(SparseMatrix.from_col_dicts(rows, dN * prev_r, f,
                                                cols_mat))
        prev_r = len(kgens)

    out = []
    for k in range(n_max + 1):
        d_in = homs[k - 1] if k >= 1 else \
            SparseMatrix.zero(dN * gen_counts[0], 0, f)
        d_out = homs[k]
        out.append(cohomology_dim(d_in, d_out))
    return out
