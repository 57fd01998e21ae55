"""The weight decomposition of the Hochschild complex of a split algebra
E = A ⋉ M.

B^n_r is the span of basis n-tensors over E with exactly r slots in M.  The
Hochschild cochain complex of E splits as the direct sum over p of
subcomplexes X_(p) with X^n_(p) = Hom(B^n_{p-1}, A) ⊕ Hom(B^n_p, M); this
module builds those subcomplexes block by block, the associated bimodule
resolutions of the tensor powers M^{⊗_A p}, the null-homotopy that splits
X_(1) for M = DA, and the cyclic-functional spaces on (DA)^{⊗_A p}.

E-basis digits: 0..dim(A)-1 tag the A part, dim(A)..dim(A)+dim(M)-1 the M
part.  B^n_r tuples are ordered lexicographically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .fields import Field
from .sparse import SparseMatrix, block_matrix, cohomology_dim
from .algebra import (Algebra, Bimodule, dual_bimodule,
                      split_extension_algebra, tensor_power_over_A,
                      _coinvariants_quotient, _kron)
from .hochschild import (CochainComplex, SizeLimitExceeded, _check_size,
                         DEFAULT_SIZE_LIMIT, hochschild_cochain)


class RestrictionLeak(RuntimeError):
    """A differential term left the expected M-slot-count subspace."""


@dataclass(frozen=True)
class SplitAlgebra:
    """A split algebra E = A ⋉ M with its two factors."""

    algebra: Algebra
    module: Bimodule
    ext: Algebra

    @staticmethod
    def build(a: Algebra, m: Bimodule) -> "SplitAlgebra":
        return SplitAlgebra(a, m, split_extension_algebra(a, m))

    @staticmethod
    def trivial_extension(a: Algebra) -> "SplitAlgebra":
        m = dual_bimodule(a)
        return SplitAlgebra(a, m, split_extension_algebra(
            a, m, name=f"T({a.name})"))

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim_a(self) -> int:
        return self.algebra.dim

    @property
    def dim_m(self) -> int:
        return self.module.dim


def count_B(n: int, r: int, dA: int, dM: int) -> int:
    """dim B^n_r."""
    if r < 0 or r > n:
        return 0
    return comb(n, r) * dA ** (n - r) * dM ** r


class BRanker:
    """Lexicographic ranking of the basis tuples of B^n_r."""

    def __init__(self, n: int, r: int, dA: int, dM: int):
        self.n, self.r, self.dA, self.dM = n, r, dA, dM
        self.size = count_B(n, r, dA, dM)

    def _count(self, slots: int, m_left: int) -> int:
        return count_B(slots, m_left, self.dA, self.dM)

    def rank(self, t) -> int:
        dA = self.dA
        m_left = self.r
        rank = 0
        for i, d in enumerate(t):
            rem = self.n - i - 1
            if d < dA:
                rank += d * self._count(rem, m_left)
            else:
                rank += dA * self._count(rem, m_left)
                rank += (d - dA) * self._count(rem, m_left - 1)
                m_left -= 1
        if m_left != 0:
            raise RestrictionLeak(
                f"tuple has wrong M-slot count for B^{self.n}_{self.r}")
        return rank

    def tuples(self):
        """All basis tuples in lexicographic (= rank) order."""
        dA, dM = self.dA, self.dM
        n, r = self.n, self.r

        def rec(i, m_left, prefix):
            if i == n:
                if m_left == 0:
                    yield tuple(prefix)
                return
            rem = n - i - 1
            if m_left <= rem:
                for d in range(dA):
                    prefix.append(d)
                    yield from rec(i + 1, m_left, prefix)
                    prefix.pop()
            if m_left >= 1:
                for d in range(dA, dA + dM):
                    prefix.append(d)
                    yield from rec(i + 1, m_left - 1, prefix)
                    prefix.pop()

        if 0 <= r <= n:
            yield from rec(0, r, [])


def _vertical_block(sa: SplitAlgebra, r: int, n: int,
                    out_a: bool) -> SparseMatrix:
    """Hochschild-type differential Hom(B^n_r, V) -> Hom(B^{n+1}_r, V)
    where V is the A part (out_a, with the outer actions projected to A) or
    the M part (the full b on M-valued cochains)."""
    a, m, e = sa.algebra, sa.module, sa.ext
    f = sa.field
    dA, dM = sa.dim_a, sa.dim_m
    dimV = dA if out_a else dM
    if out_a:
        left_v = [a.left_mult_matrix(i) for i in range(dA)]
        right_v = [a.right_mult_matrix(i) for i in range(dA)]
    else:
        left_v, right_v = m.left, m.right
    fact_e = e.factorizations()
    dom = BRanker(n, r, dA, dM)
    cod = BRanker(n + 1, r, dA, dM)
    sign_last = f.one if (n + 1) % 2 == 0 else f.neg(f.one)
    inner_signs = [f.one if (j + 1) % 2 == 0 else f.neg(f.one)
                   for j in range(n)]
    cols: list[dict] = []
    for t in dom.tuples():
        for u in range(dimV):
            col: dict = {}
            # outer term pi(x1) f(x2..): only A digits act
            for s1 in range(dA):
                base = cod.rank((s1,) + t) * dimV
                for k, v in left_v[s1].col_dict(u).items():
                    key = base + k
                    w = f.add(col.get(key, f.zero), v)
                    if f.is_zero(w):
                        col.pop(key, None)
                    else:
                        col[key] = w
            # inner contractions via E products (M·M = 0 drops out)
            for j in range(n):
                sgn = inner_signs[j]
                for (pp, qq, c) in fact_e[t[j]]:
                    s = t[:j] + (pp, qq) + t[j + 1:]
                    key = cod.rank(s) * dimV + u
                    w = f.add(col.get(key, f.zero), f.mul(sgn, c))
                    if f.is_zero(w):
                        col.pop(key, None)
                    else:
                        col[key] = w
            # outer term (-1)^{n+1} f(..) pi(x_{n+1})
            for sl in range(dA):
                base = cod.rank(t + (sl,)) * dimV
                for k, v in right_v[sl].col_dict(u).items():
                    key = base + k
                    w = f.add(col.get(key, f.zero), f.mul(sign_last, v))
                    if f.is_zero(w):
                        col.pop(key, None)
                    else:
                        col[key] = w
            cols.append(col)
    return SparseMatrix.from_col_dicts(cod.size * dimV, dom.size * dimV,
                                       f, cols)


def b0_block(sa: SplitAlgebra, p: int, n: int) -> SparseMatrix:
    """Hom(B^n_{p-1}, A) -> Hom(B^{n+1}_{p-1}, A)."""
    return _vertical_block(sa, p - 1, n, out_a=True)


def b1_block(sa: SplitAlgebra, p: int, n: int) -> SparseMatrix:
    """Hom(B^n_p, M) -> Hom(B^{n+1}_p, M)."""
    return _vertical_block(sa, p, n, out_a=False)


def delta_block(sa: SplitAlgebra, p: int, n: int) -> SparseMatrix:
    """The connecting map Hom(B^n_{p-1}, A) -> Hom(B^{n+1}_p, M):
    f ↦ pi_M(x1) f(x2..) + (-1)^{n+1} f(..x_n) pi_M(x_{n+1})."""
    m = sa.module
    f = sa.field
    dA, dM = sa.dim_a, sa.dim_m
    dom = BRanker(n, p - 1, dA, dM)
    cod = BRanker(n + 1, p, dA, dM)
    sign_last = f.one if (n + 1) % 2 == 0 else f.neg(f.one)
    cols: list[dict] = []
    for t in dom.tuples():
        for u in range(dA):
            col: dict = {}
            for w in range(dM):
                # pi_M(x1)·e_u is the right action of e_u on m_w
                base = cod.rank((dA + w,) + t) * dM
                for k, v in m.right[u].col_dict(w).items():
                    key = base + k
                    val = f.add(col.get(key, f.zero), v)
                    if f.is_zero(val):
                        col.pop(key, None)
                    else:
                        col[key] = val
                # e_u·pi_M(x_{n+1}) is the left action of e_u on m_w
                base = cod.rank(t + (dA + w,)) * dM
                for k, v in m.left[u].col_dict(w).items():
                    key = base + k
                    val = f.add(col.get(key, f.zero), f.mul(sign_last, v))
                    if f.is_zero(val):
                        col.pop(key, None)
                    else:
                        col[key] = val
            cols.append(col)
    return SparseMatrix.from_col_dicts(cod.size * dM, dom.size * dA,
                                       f, cols)


def x_space_dims(sa: SplitAlgebra, p: int, n: int) -> tuple[int, int]:
    """(dim Hom(B^n_{p-1}, A), dim Hom(B^n_p, M))."""
    dA, dM = sa.dim_a, sa.dim_m
    return (count_B(n, p - 1, dA, dM) * dA, count_B(n, p, dA, dM) * dM)


def build_X(sa: SplitAlgebra, p: int, n_max: int,
            size_limit: int = DEFAULT_SIZE_LIMIT) -> CochainComplex:
    """The subcomplex X_(p) in degrees 0..n_max+1.  The total differential
    is the restriction of the Hochschild differential of E and has the
    block form [[b0, 0], [delta, b1]]."""
    f = sa.field
    dE = sa.ext.dim
    dims = [sum(x_space_dims(sa, p, n)) for n in range(n_max + 2)]
    diffs = []
    reasons: dict = {}
    for n in range(n_max + 1):
        estimate = dims[n] * dE * (n + 2)
        what = f"X_({p}) differential at degree {n} for {sa.ext.name}"
        try:
            _check_size(what, estimate, size_limit)
        except SizeLimitExceeded as exc:
            diffs.append(None)
            reasons[n] = str(exc)
            continue
        da_dom, dm_dom = x_space_dims(sa, p, n)
        da_cod, dm_cod = x_space_dims(sa, p, n + 1)
        zero = SparseMatrix.zero(da_cod, dm_dom, f)
        b0 = b0_block(sa, p, n) if da_dom or da_cod else \
            SparseMatrix.zero(da_cod, da_dom, f)
        b1 = b1_block(sa, p, n) if dm_dom or dm_cod else \
            SparseMatrix.zero(dm_cod, dm_dom, f)
        delta = delta_block(sa, p, n) if da_dom and dm_cod else \
            SparseMatrix.zero(dm_cod, da_dom, f)
        diffs.append(block_matrix([[b0, zero], [delta, b1]],
                                  [da_cod, dm_cod], [da_dom, dm_dom], f))
    return CochainComplex(f, dims, diffs, reasons)


def build_column(sa: SplitAlgebra, p: int, column: int, n_max: int,
                 size_limit: int = DEFAULT_SIZE_LIMIT) -> CochainComplex:
    """Column 0 (A-valued, differential b0) or column 1 (M-valued, b1) of
    the double complex behind X_(p), in degrees 0..n_max+1."""
    f = sa.field
    dA, dM = sa.dim_a, sa.dim_m
    r = p - 1 if column == 0 else p
    dimV = dA if column == 0 else dM
    dims = [count_B(n, r, dA, dM) * dimV for n in range(n_max + 2)]
    diffs = []
    reasons: dict = {}
    for n in range(n_max + 1):
        estimate = dims[n] * sa.ext.dim * (n + 2)
        what = (f"X_({p}) column {column} differential at degree {n} "
                f"for {sa.ext.name}")
        try:
            _check_size(what, estimate, size_limit)
        except SizeLimitExceeded as exc:
            diffs.append(None)
            reasons[n] = str(exc)
            continue
        diffs.append(_vertical_block(sa, r, n, out_a=(column == 0)))
    return CochainComplex(f, dims, diffs, reasons)


def x_coordinate_indices(sa: SplitAlgebra, p: int, n: int) -> list[int]:
    """Indices of the X^n_(p) coordinates inside the full cochain space
    Hom(E^{⊗n}, E) with its (tuple-rank * dim E + output) layout."""
    dA, dM = sa.dim_a, sa.dim_m
    dE = dA + dM
    out = []
    for t in BRanker(n, p - 1, dA, dM).tuples():
        full_rank = 0
        for d in t:
            full_rank = full_rank * dE + d
        for u in range(dA):
            out.append(full_rank * dE + u)
    for t in BRanker(n, p, dA, dM).tuples():
        full_rank = 0
        for d in t:
            full_rank = full_rank * dE + d
        for w in range(dM):
            out.append(full_rank * dE + dA + w)
    return out


# -- sigma: the null homotopy splitting X_(1) for M = DA ---------------------

def sigma_matrix(sa: SplitAlgebra, n: int) -> SparseMatrix:
    """sigma_n: Hom(B^n_0, A) -> Hom(B^n_1, DA) for a trivial extension:
    on a tuple whose unique DA slot is psi at position j (1-based),
    sigma(f)(x)(a) = (-1)^{jn+1} psi(f(x_{j+1..n} ⊗ a ⊗ x_{1..j-1}))."""
    f = sa.field
    dA, dM = sa.dim_a, sa.dim_m
    if dM != dA:
        raise ValueError("sigma is defined for trivial extensions only")
    dom = BRanker(n, 0, dA, dM)
    cod = BRanker(n, 1, dA, dM)
    cols: list[dict] = [{} for _ in range(dom.size * dA)]
    for rank_t, t in enumerate(dom.tuples()):
        for u in range(dA):
            col = cols[rank_t * dA + u]
            for j in range(1, n + 1):
                # s has psi_u at position j; a = t[n-j] (0-based)
                s = t[n - j + 1:] + (dA + u,) + t[:n - j]
                a_idx = t[n - j]
                sign = f.one if (j * n + 1) % 2 == 0 else f.neg(f.one)
                key = cod.rank(s) * dM + a_idx
                w = f.add(col.get(key, f.zero), sign)
                if f.is_zero(w):
                    col.pop(key, None)
                else:
                    col[key] = w
    return SparseMatrix.from_col_dicts(cod.size * dM, dom.size * dA,
                                       f, cols)


def verify_sigma_homotopy(sa: SplitAlgebra, n: int) -> bool:
    """Check delta^{1,n} = b1 ∘ sigma_n - sigma_{n+1} ∘ b0 exactly."""
    lhs = delta_block(sa, 1, n)
    rhs = b1_block(sa, 1, n) @ sigma_matrix(sa, n) \
        - sigma_matrix(sa, n + 1) @ b0_block(sa, 1, n)
    return lhs == rhs


# -- resolutions of M^{⊗_A p} -------------------------------------------------

@dataclass
class Resolution:
    """Chain complex A ⊗ B^{p+n}_p ⊗ A (degree n) with boundaries
    d[n]: degree n -> degree n-1 and augmentation mu onto M^{⊗_A p}."""

    sa: SplitAlgebra
    p: int
    dims: list[int]
    boundaries: list  # boundaries[n]: dims[n] -> dims[n-1], n >= 1
    mu: SparseMatrix
    target_dim: int

    def verify_dd(self) -> bool:
        for k in range(2, len(self.boundaries)):
            if not self.boundaries[k - 1].is_zero_product_with(
                    self.boundaries[k]):
                return False
        if len(self.boundaries) >= 2:
            if not self.mu.is_zero_product_with(self.boundaries[1]):
                return False
        return True

    def homology_dims(self, n_max: int) -> list[int]:
        """H_0..H_{n_max} of the augmented complex: H_0 is measured as
        coker(mu) + (ker mu / im d_1); exactness means all zero."""
        out = []
        coker = self.target_dim - self.mu.rank()
        ker_mu = self.dims[0] - self.mu.rank()
        h0_extra = ker_mu - self.boundaries[1].rank()
        out.append(coker + h0_extra)
        for k in range(1, n_max + 1):
            out.append(cohomology_dim(self.boundaries[k + 1],
                                      self.boundaries[k]))
        return out


def _res_boundary(sa: SplitAlgebra, p: int, n: int) -> SparseMatrix:
    """Boundary A ⊗ B^{p+n}_p ⊗ A -> A ⊗ B^{p+n-1}_p ⊗ A."""
    a, e = sa.algebra, sa.ext
    f = sa.field
    dA, dM = sa.dim_a, sa.dim_m
    mlen = p + n
    dom = BRanker(mlen, p, dA, dM)
    cod = BRanker(mlen - 1, p, dA, dM)
    nrows = dA * cod.size * dA
    cols: list[dict] = []
    sign_last = f.one if mlen % 2 == 0 else f.neg(f.one)
    dom_tuples = list(dom.tuples())
    # column layout matches the row layout: (i * size + rank) * dA + j
    for i in range(dA):
        for t in dom_tuples:
            for j in range(dA):
                col: dict = {}
                # pi_A(x0 x1) ⊗ x2..: only when the first middle digit is
                # in A does the product stay in A
                if t[0] < dA:
                    tail = t[1:]
                    base = cod.rank(tail)
                    for k, c in a.product_basis(i, t[0]).items():
                        key = (k * cod.size + base) * dA + j
                        w = f.add(col.get(key, f.zero), c)
                        if f.is_zero(w):
                            col.pop(key, None)
                        else:
                            col[key] = w
                # inner merges within the middle block
                for pos in range(mlen - 1):
                    sgn = f.one if (pos + 1) % 2 == 0 else f.neg(f.one)
                    prod = e.multiply({t[pos]: f.one}, {t[pos + 1]: f.one})
                    for k, c in prod.items():
                        s = t[:pos] + (k,) + t[pos + 2:]
                        key = (i * cod.size + cod.rank(s)) * dA + j
                        w = f.add(col.get(key, f.zero), f.mul(sgn, c))
                        if f.is_zero(w):
                            col.pop(key, None)
                        else:
                            col[key] = w
                # (-1)^{p+n} .. ⊗ pi_A(x_{p+n} x_{p+n+1})
                if t[-1] < dA:
                    head = t[:-1]
                    base = cod.rank(head)
                    for k, c in a.product_basis(t[-1], j).items():
                        key = (i * cod.size + base) * dA + k
                        w = f.add(col.get(key, f.zero),
                                  f.mul(sign_last, c))
                        if f.is_zero(w):
                            col.pop(key, None)
                        else:
                            col[key] = w
                cols.append(col)
    return SparseMatrix.from_col_dicts(nrows, dA * dom.size * dA, f, cols)


def build_resolution(sa: SplitAlgebra, p: int, n_max: int,
                     size_limit: int = DEFAULT_SIZE_LIMIT) -> Resolution:
    """The complex resolving M^{⊗_A p}, built in degrees 0..n_max+1."""
    a, m = sa.algebra, sa.module
    f = sa.field
    dA, dM = sa.dim_a, sa.dim_m
    dims = [dA * count_B(p + n, p, dA, dM) * dA for n in range(n_max + 2)]
    for n, d in enumerate(dims):
        _check_size(f"resolution term {n} for p={p} on {sa.ext.name}",
                    d * sa.ext.dim * (p + n + 2), size_limit)
    boundaries = [None]
    for n in range(1, n_max + 2):
        boundaries.append(_res_boundary(sa, p, n))

    # augmentation mu onto M^{⊗_A p} (or onto A when p = 0)
    if p == 0:
        target = dA
        cols = []
        for i in range(dA):
            for j in range(dA):
                cols.append(dict(a.product_basis(i, j)))
        mu = SparseMatrix.from_col_dicts(target, dA * dA, f, cols)
    else:
        bim, proj, _sec = tensor_power_over_A(m, p)
        target = bim.dim
        dom = BRanker(p, p, dA, dM)
        dom_tuples = list(dom.tuples())
        cols = []
        for i in range(dA):
            for t in dom_tuples:
                ws = [d - dA for d in t]
                first = m.left[i].col_dict(ws[0])
                for j in range(dA):
                    if p == 1:
                        full_vec = m.right[j].matvec(first)
                    else:
                        last = m.right[j].col_dict(ws[-1])
                        full_vec = {}
                        mid_rank = 0
                        for w_mid in ws[1:-1]:
                            mid_rank = mid_rank * dM + w_mid
                        for k0, v0 in first.items():
                            for k1, v1 in last.items():
                                idx = k0
                                idx = idx * dM ** (p - 2) + mid_rank
                                idx = idx * dM + k1
                                full_vec[idx] = f.mul(v0, v1)
                    cols.append(proj.matvec(full_vec))
        mu = SparseMatrix.from_col_dicts(target, dA * dom.size * dA, f,
                                         cols)
    return Resolution(sa, p, dims, boundaries, mu, target)


# -- cyclic functionals on (DA)^{⊗_A p} ---------------------------------------

def rotation_on_coinvariants(m: Bimodule, p: int):
    """The rotation psi_1⊗..⊗psi_p ↦ psi_2⊗..⊗psi_p⊗psi_1 induced on
    (M^{⊗_A p})/[A, ·]; raises RestrictionLeak if it is not well defined
    there."""
    f = m.algebra.field
    dM = m.dim
    bim, proj, sec = tensor_power_over_A(m, p)
    cq = _coinvariants_quotient(bim)
    proj_c = cq.projection @ proj          # full tensor space -> C
    sec_c = sec @ cq.section               # C -> full tensor space
    amb = dM ** p
    rot_cols: list[dict] = [{} for _ in range(amb)]
    for t in itertools.product(range(dM), repeat=p):
        src = 0
        for d in t:
            src = src * dM + d
        rt = t[1:] + (t[0],)
        dst = 0
        for d in rt:
            dst = dst * dM + d
        rot_cols[src][dst] = f.one
    rot_full = SparseMatrix.from_col_dicts(amb, amb, f, rot_cols)
    ident = SparseMatrix.identity(amb, f)
    if not (proj_c @ rot_full @ (ident - sec_c @ proj_c)).is_zero():
        raise RestrictionLeak(
            "rotation does not descend to the coinvariant space")
    return proj_c @ rot_full @ sec_c, cq.dim


def cyc_dim_definition(a: Algebra, p: int) -> int:
    """dim of the space of functionals on (DA)^{⊗_A p} coinvariants with
    g∘rot = (-1)^{p-1} g, straight from the definition."""
    if p < 2:
        raise ValueError("cyclic functionals need p >= 2")
    f = a.field
    m = dual_bimodule(a)
    rot, cdim = rotation_on_coinvariants(m, p)
    sign = f.one if (p - 1) % 2 == 0 else f.neg(f.one)
    shifted = rot - SparseMatrix.identity(cdim, f).scale(sign)
    return cdim - shifted.rank()
