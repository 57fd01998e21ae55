"""Finite-dimensional associative algebras given by structure constants,
their bimodules (dual, twisted, tensor-over-A, trivial extension), algebra
morphisms, and the built-in algebra zoo.

Conventions frozen here:
  * dual bimodule action: (a . psi . b)(x) = psi(b x a);
  * trivial extension basis: A-basis first, then the dual basis of DA;
  * quotient bases (tensor over A, coinvariants) are the non-pivot
    coordinates of the relation span's RREF under the natural column order;
  * taft:N basis is x^i g^j ordered lexicographically in (i, j).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .fields import Field, NoPrimitiveRoot
from .sparse import SparseMatrix, SingularMatrixError
from . import _elim


class AlgebraError(ValueError):
    pass


class AssociativityViolation(AlgebraError):
    def __init__(self, i, j, k):
        super().__init__(f"(e{i}·e{j})·e{k} != e{i}·(e{j}·e{k})")
        self.indices = (i, j, k)


class UnitViolation(AlgebraError):
    def __init__(self, i):
        super().__init__(f"unit law fails on basis element e{i}")
        self.index = i


class BimoduleAxiomError(AlgebraError):
    pass


class MorphismError(AlgebraError):
    pass


class NotInvertible(AlgebraError):
    pass


def _vec_axpy(field, acc: dict, s, vec: dict):
    for k, v in vec.items():
        w = field.add(acc.get(k, field.zero), field.mul(s, v))
        if field.is_zero(w):
            acc.pop(k, None)
        else:
            acc[k] = w


@dataclass(frozen=True)
class Algebra:
    """Associative unital algebra by a sparse structure tensor:
    e_i e_j = sum_k mul[(i,j)][k] e_k."""

    field: Field
    dim: int
    basis_labels: tuple[str, ...]
    mul: dict  # (i, j) -> {k: coeff}, zero products omitted
    unit: dict  # {k: coeff}
    name: str = "algebra"

    def product_basis(self, i: int, j: int) -> dict:
        return self.mul.get((i, j), {})

    def multiply(self, x: dict, y: dict) -> dict:
        f = self.field
        out: dict = {}
        for i, xi in x.items():
            for j, yj in y.items():
                prod = self.mul.get((i, j))
                if prod:
                    _vec_axpy(f, out, f.mul(xi, yj), prod)
        return out

    def left_mult_matrix(self, i: int) -> SparseMatrix:
        """Matrix of x -> e_i x."""
        cols = [self.product_basis(i, j) for j in range(self.dim)]
        return SparseMatrix.from_col_dicts(self.dim, self.dim, self.field,
                                           cols)

    def right_mult_matrix(self, i: int) -> SparseMatrix:
        """Matrix of x -> x e_i."""
        cols = [self.product_basis(j, i) for j in range(self.dim)]
        return SparseMatrix.from_col_dicts(self.dim, self.dim, self.field,
                                           cols)

    def factorizations(self) -> list[list[tuple[int, int, object]]]:
        """For each basis index k, the list of (i, j, c) with
        coefficient c of e_k in e_i e_j."""
        out: list[list] = [[] for _ in range(self.dim)]
        for (i, j), prod in self.mul.items():
            for k, c in prod.items():
                out[k].append((i, j, c))
        return out

    def element_from_coords(self, coords) -> dict:
        f = self.field
        return {i: f.check(v) for i, v in enumerate(coords)
                if not f.is_zero(v)}

    def is_invertible(self, x: dict) -> bool:
        try:
            self.inverse_element(x)
            return True
        except NotInvertible:
            return False

    def inverse_element(self, x: dict) -> dict:
        """Two-sided inverse of x, if any."""
        f = self.field
        cols = [self.multiply(x, {j: f.one}) for j in range(self.dim)]
        lm = SparseMatrix.from_col_dicts(self.dim, self.dim, f, cols)
        rhs = SparseMatrix.from_col_dicts(self.dim, 1, f, [self.unit])
        try:
            sol = lm.inverse() @ rhs
        except SingularMatrixError:
            raise NotInvertible("element has no inverse")
        inv = sol.col_dict(0)
        if self.multiply(inv, x) != self.unit:
            raise NotInvertible("element has no two-sided inverse")
        return inv

    def __str__(self):
        return f"{self.name} (dim {self.dim} over {self.field})"


def make_algebra(field: Field, dim: int, mul_table, unit,
                 labels=None, name: str = "algebra") -> Algebra:
    """Validate and build an Algebra.  mul_table maps (i, j) to {k: coeff}
    (missing pairs mean zero product); unit is a coordinate mapping or
    sequence."""
    f = field
    mul: dict = {}
    for (i, j), prod in mul_table.items():
        clean = {k: f.check(v) for k, v in prod.items() if not f.is_zero(v)}
        if clean:
            mul[(i, j)] = clean
    if not isinstance(unit, dict):
        unit = {i: v for i, v in enumerate(unit) if not f.is_zero(v)}
    unit = {i: f.check(v) for i, v in unit.items() if not f.is_zero(v)}
    if labels is None:
        labels = tuple(f"e{i}" for i in range(dim))
    a = Algebra(f, dim, tuple(labels), mul, unit, name)

    for i in range(dim):
        ei = {i: f.one}
        if a.multiply(unit, ei) != ei or a.multiply(ei, unit) != ei:
            raise UnitViolation(i)
    for i in range(dim):
        ei = {i: f.one}
        for j in range(dim):
            ej = {j: f.one}
            ij = a.multiply(ei, ej)
            for k in range(dim):
                ek = {k: f.one}
                left = a.multiply(ij, ek)
                right = a.multiply(ei, a.multiply(ej, ek))
                if left != right:
                    raise AssociativityViolation(i, j, k)
    return a


@dataclass(frozen=True)
class AlgebraMorphism:
    """Unital algebra map between structure-constant algebras, stored as the
    coordinate matrix (columns are images of basis vectors)."""

    source: Algebra
    target: Algebra
    matrix: SparseMatrix

    @staticmethod
    def identity(a: Algebra) -> "AlgebraMorphism":
        return AlgebraMorphism(a, a, SparseMatrix.identity(a.dim, a.field))

    def apply(self, x: dict) -> dict:
        return self.matrix.matvec(x)

    def validate(self):
        a, b = self.source, self.target
        if self.apply(a.unit) != b.unit:
            raise MorphismError("morphism does not preserve the unit")
        f = a.field
        for i in range(a.dim):
            fi = self.apply({i: f.one})
            for j in range(a.dim):
                fj = self.apply({j: f.one})
                lhs = self.apply(a.product_basis(i, j))
                if lhs != b.multiply(fi, fj):
                    raise MorphismError(
                        f"f(e{i} e{j}) != f(e{i}) f(e{j})")
        return self

    def compose(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """self after other."""
        if other.target is not self.source and \
                other.target.dim != self.source.dim:
            raise MorphismError("composition mismatch")
        return AlgebraMorphism(other.source, self.target,
                               self.matrix @ other.matrix)

    def power(self, k: int) -> "AlgebraMorphism":
        if self.source is not self.target:
            raise MorphismError("powers need an endomorphism")
        if k < 0:
            return self.inverse().power(-k)
        out = AlgebraMorphism.identity(self.source)
        for _ in range(k):
            out = self.compose(out)
        return out

    def inverse(self) -> "AlgebraMorphism":
        return AlgebraMorphism(self.target, self.source,
                               self.matrix.inverse())

    def is_identity(self) -> bool:
        return self.matrix == SparseMatrix.identity(self.source.dim,
                                                    self.source.field)


@dataclass(frozen=True)
class Bimodule:
    """A-bimodule by action matrices: left[i] is x -> e_i . x and right[i]
    is x -> x . e_i on the m-dimensional underlying space."""

    algebra: Algebra
    dim: int
    left: tuple[SparseMatrix, ...]
    right: tuple[SparseMatrix, ...]

    def act_left(self, i: int, vec: dict) -> dict:
        return self.left[i].matvec(vec)

    def act_right(self, vec: dict, i: int) -> dict:
        return self.right[i].matvec(vec)

    def act(self, a_coeff: dict, vec: dict, side_left: bool) -> dict:
        f = self.algebra.field
        out: dict = {}
        mats = self.left if side_left else self.right
        for i, c in a_coeff.items():
            _vec_axpy(f, out, c, mats[i].matvec(vec))
        return out

    def validate(self):
        a = self.algebra
        f = a.field
        d, m = a.dim, self.dim
        ident = SparseMatrix.identity(m, f)

        def lin_comb(mats, coeffs):
            out = SparseMatrix.zero(m, m, f)
            for i, c in coeffs.items():
                out = out + mats[i].scale(c)
            return out

        if lin_comb(self.left, a.unit) != ident:
            raise BimoduleAxiomError("left action not unital")
        if lin_comb(self.right, a.unit) != ident:
            raise BimoduleAxiomError("right action not unital")
        for i in range(d):
            for j in range(d):
                prod = a.product_basis(i, j)
                if self.left[i] @ self.left[j] != lin_comb(self.left, prod):
                    raise BimoduleAxiomError(
                        f"left action not associative at ({i},{j})")
                if self.right[j] @ self.right[i] != lin_comb(self.right,
                                                             prod):
                    raise BimoduleAxiomError(
                        f"right action not associative at ({i},{j})")
                if self.left[i] @ self.right[j] != \
                        self.right[j] @ self.left[i]:
                    raise BimoduleAxiomError(
                        f"left/right actions do not commute at ({i},{j})")
        return self


def regular_bimodule(a: Algebra) -> Bimodule:
    left = tuple(a.left_mult_matrix(i) for i in range(a.dim))
    right = tuple(a.right_mult_matrix(i) for i in range(a.dim))
    return Bimodule(a, a.dim, left, right).validate()


def dual_bimodule(a: Algebra) -> Bimodule:
    """DA = Hom_k(A, k) in the dual basis with (a.psi.b)(x) = psi(b x a)."""
    left = tuple(a.right_mult_matrix(i).transpose() for i in range(a.dim))
    right = tuple(a.left_mult_matrix(i).transpose() for i in range(a.dim))
    return Bimodule(a, a.dim, left, right).validate()


def twisted_bimodule(a: Algebra, fmor: AlgebraMorphism,
                     gmor: AlgebraMorphism) -> Bimodule:
    """Underlying space A with a . x . b = f(a) x g(b)."""
    f = a.field

    def act_matrix(image: dict, left_side: bool) -> SparseMatrix:
        out = SparseMatrix.zero(a.dim, a.dim, f)
        for i, c in image.items():
            base = a.left_mult_matrix(i) if left_side \
                else a.right_mult_matrix(i)
            out = out + base.scale(c)
        return out

    left = tuple(act_matrix(fmor.apply({i: f.one}), True)
                 for i in range(a.dim))
    right = tuple(act_matrix(gmor.apply({i: f.one}), False)
                  for i in range(a.dim))
    return Bimodule(a, a.dim, left, right).validate()


def trivial_extension(a: Algebra) -> Algebra:
    """TA = A x DA with (a+psi)(a'+psi') = aa' + a.psi' + psi.a'."""
    return split_extension_algebra(a, dual_bimodule(a),
                                   name=f"T({a.name})")


def split_extension_algebra(a: Algebra, m: Bimodule,
                            name: str | None = None) -> Algebra:
    """The split algebra A x M (M squares to zero); basis is the A-basis
    followed by the M-basis."""
    f = a.field
    d, dm = a.dim, m.dim
    mul: dict = {}
    for (i, j), prod in a.mul.items():
        mul[(i, j)] = dict(prod)
    for i in range(d):
        for j in range(dm):
            col = m.left[i].col_dict(j)
            if col:
                mul[(i, d + j)] = {d + k: v for k, v in col.items()}
            col = m.right[i].col_dict(j)
            if col:
                mul[(d + j, i)] = {d + k: v for k, v in col.items()}
    unit = dict(a.unit)
    labels = tuple(a.basis_labels) + tuple(f"m{i}" for i in range(dm))
    return make_algebra(f, d + dm, mul, unit, labels,
                        name or f"{a.name}⋉M")


# -- quotients --------------------------------------------------------------

@dataclass(frozen=True)
class Quotient:
    """Quotient of k^ambient by the span of relation vectors, with the
    deterministic non-pivot basis."""

    ambient: int
    dim: int
    projection: SparseMatrix  # dim x ambient
    section: SparseMatrix     # ambient x dim
    pivot_cols: tuple[int, ...]


def quotient_by_relations(ambient: int, relations, field: Field) -> Quotient:
    """relations: iterable of {index: value} vectors spanning the subspace
    to kill."""
    rows = []
    for r in relations:
        idx = sorted(r)
        rows.append((idx, [r[i] for i in idx]))
    piv = _elim.rref(rows, field)
    pivot_cols = tuple(sorted(piv))
    pivot_set = set(pivot_cols)
    free = [j for j in range(ambient) if j not in pivot_set]
    pos = {j: t for t, j in enumerate(free)}
    q = len(free)
    proj_cols: list[dict] = [{} for _ in range(ambient)]
    for j in free:
        proj_cols[j][pos[j]] = field.one
    for p in pivot_cols:
        cols, vals = piv[p]
        for c, v in zip(cols[1:], vals[1:]):
            proj_cols[p][pos[c]] = field.neg(v)
    projection = SparseMatrix.from_col_dicts(q, ambient, field, proj_cols)
    sec_cols = [{free[t]: field.one} for t in range(q)]
    section = SparseMatrix.from_col_dicts(ambient, q, field, sec_cols)
    return Quotient(ambient, q, projection, section, pivot_cols)


def _kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    f = a.field
    acc: list[dict] = [{} for _ in range(a.ncols * b.ncols)]
    for i, j, v in a.iter_entries():
        for i2, j2, v2 in b.iter_entries():
            acc[j * b.ncols + j2][i * b.nrows + i2] = f.mul(v, v2)
    return SparseMatrix.from_col_dicts(a.nrows * b.nrows,
                                       a.ncols * b.ncols, f, acc)


def tensor_over_A(m: Bimodule, n: Bimodule):
    """M tensor_A N: quotient of M tensor_k N by (x.a) ⊗ y - x ⊗ (a.y).
    Returns (bimodule, projection from the mn-dimensional tensor space)."""
    bim, quot = _tensor_over_A_quot(m, n)
    return bim, quot.projection


def _tensor_over_A_quot(m: Bimodule, n: Bimodule):
    if m.algebra is not n.algebra and m.algebra != n.algebra:
        raise AlgebraError("tensor factors over different algebras")
    a = m.algebra
    f = a.field
    amb = m.dim * n.dim

    def unit_idx(i, j):
        return i * n.dim + j

    relations = []
    for t in range(a.dim):
        for i in range(m.dim):
            xa = m.right[t].col_dict(i)  # coords of e_i . a_t in M
            for j in range(n.dim):
                ay = n.left[t].col_dict(j)
                rel: dict = {}
                for k, v in xa.items():
                    rel[unit_idx(k, j)] = v
                for k, v in ay.items():
                    w = f.sub(rel.get(unit_idx(i, k), f.zero), v)
                    if f.is_zero(w):
                        rel.pop(unit_idx(i, k), None)
                    else:
                        rel[unit_idx(i, k)] = w
                if rel:
                    relations.append(rel)
    quot = quotient_by_relations(amb, relations, f)
    ident_n = SparseMatrix.identity(n.dim, f)
    ident_m = SparseMatrix.identity(m.dim, f)
    left = []
    right = []
    # the action of each generator must map the relation span into itself,
    # i.e. kill the (1 - section∘projection) component after projecting
    defect = SparseMatrix.identity(amb, f) - quot.section @ quot.projection
    for t in range(a.dim):
        lt = _kron(m.left[t], ident_n)
        rt = _kron(ident_m, n.right[t])
        for mat in (lt, rt):
            if not (quot.projection @ mat @ defect).is_zero():
                raise BimoduleAxiomError(
                    "action does not descend to the tensor quotient")
        left.append(quot.projection @ lt @ quot.section)
        right.append(quot.projection @ rt @ quot.section)
    bim = Bimodule(a, quot.dim, tuple(left), tuple(right)).validate()
    return bim, quot


def tensor_power_over_A(m: Bimodule, p: int):
    """M^{⊗_A p} with the projection from and section into the full tensor
    space M^{⊗ p}; returns (bimodule, projection, section)."""
    if p < 1:
        raise AlgebraError("tensor power needs p >= 1")
    f = m.algebra.field
    cur = m
    proj = SparseMatrix.identity(m.dim, f)
    sec = SparseMatrix.identity(m.dim, f)
    ident_m = SparseMatrix.identity(m.dim, f)
    for _ in range(p - 1):
        cur, quot = _tensor_over_A_quot(cur, m)
        proj = quot.projection @ _kron(proj, ident_m)
        sec = _kron(sec, ident_m) @ quot.section
    return cur, proj, sec


def _coinvariants_quotient(m: Bimodule) -> Quotient:
    a = m.algebra
    f = a.field
    relations = []
    for t in range(a.dim):
        comm = m.left[t] - m.right[t]
        for j in range(m.dim):
            col = comm.col_dict(j)
            if col:
                relations.append(col)
    return quotient_by_relations(m.dim, relations, f)


def coinvariants(m: Bimodule):
    """M / [A, M]; returns (dimension, projection matrix)."""
    quot = _coinvariants_quotient(m)
    return quot.dim, quot.projection


# -- the algebra zoo ---------------------------------------------------------

def zoo(name: str, field: Field) -> Algebra:
    """Built-in algebras: dual-numbers, trunc:n, cyclic:n, mat:n, taft:N."""
    f = field
    if name == "dual-numbers":
        return zoo("trunc:2", f)
    if name.startswith("trunc:"):
        n = int(name.split(":")[1])
        if n < 2:
            raise AlgebraError("trunc:n needs n >= 2")
        mul = {(i, j): {i + j: f.one}
               for i in range(n) for j in range(n) if i + j < n}
        labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, n)]
        label = "dual-numbers" if n == 2 else name
        return make_algebra(f, n, mul, {0: f.one}, labels, label)
    if name.startswith("cyclic:"):
        n = int(name.split(":")[1])
        if n < 1:
            raise AlgebraError("cyclic:n needs n >= 1")
        mul = {(i, j): {(i + j) % n: f.one}
               for i in range(n) for j in range(n)}
        labels = [f"g^{i}" if i > 1 else ("1" if i == 0 else "g")
                  for i in range(n)]
        return make_algebra(f, n, mul, {0: f.one}, labels, name)
    if name.startswith("mat:"):
        n = int(name.split(":")[1])
        d = n * n

        def idx(i, j):
            return i * n + j

        mul = {}
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        if j == k:
                            mul[(idx(i, j), idx(k, l))] = {idx(i, l): f.one}
        unit = {idx(i, i): f.one for i in range(n)}
        labels = [f"E{i}{j}" for i in range(n) for j in range(n)]
        return make_algebra(f, d, mul, unit, labels, name)
    if name.startswith("taft:"):
        n = int(name.split(":")[1])
        w = f.primitive_root_of_unity(n)
        return taft_algebra(n, f, w)
    raise AlgebraError(f"unknown zoo algebra {name!r}")


def taft_algebra(n: int, field: Field, w) -> Algebra:
    """Taft algebra: g^N = 1, x^N = 0, x g = w g x; basis x^i g^j ordered
    lexicographically in (i, j)."""
    f = field
    if not f.is_primitive_root_of_unity(w, n):
        raise NoPrimitiveRoot(n, f)

    def idx(i, j):
        return i * n + j

    mul = {}
    for i1 in range(n):
        for j1 in range(n):
            for i2 in range(n):
                for j2 in range(n):
                    # (x^i1 g^j1)(x^i2 g^j2) = w^{-j1 i2} x^{i1+i2} g^{j1+j2}
                    if i1 + i2 < n:
                        c = f.pow(w, (-j1 * i2) % n)
                        mul[(idx(i1, j1), idx(i2, j2))] = {
                            idx(i1 + i2, (j1 + j2) % n): c}
    labels = [f"x^{i}g^{j}" for i in range(n) for j in range(n)]
    return make_algebra(f, n * n, mul, {idx(0, 0): f.one}, labels,
                        f"taft:{n}")


ZOO_NAMES = ("dual-numbers", "trunc:3", "cyclic:2", "cyclic:3", "mat:2",
             "taft:2", "taft:3")


# -- JSON interchange ---------------------------------------------------------

def algebra_from_json(data, default_field: Field | None = None) -> Algebra:
    """Parse the algebra JSON format:
    {"field": {"kind": "Q"} | {"kind": "Fp", "p": 7}, "dim": d,
     "basis": [...], "unit": [...], "mul": [[i, j, k, "coeff"], ...]}."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    fspec = data.get("field")
    if fspec is None:
        if default_field is None:
            raise AlgebraError("algebra JSON lacks a field")
        f = default_field
    elif fspec.get("kind") == "Q":
        f = Field.rationals()
    elif fspec.get("kind") == "Fp":
        f = Field.prime(int(fspec["p"]))
    else:
        raise AlgebraError(f"bad field spec {fspec!r}")
    dim = int(data["dim"])
    labels = data.get("basis") or [f"e{i}" for i in range(dim)]
    if len(labels) != dim:
        raise AlgebraError("basis label count does not match dim")
    unit = {i: f.parse(str(v)) for i, v in enumerate(data["unit"])}
    mul: dict = {}
    for row in data["mul"]:
        if len(row) != 4:
            raise AlgebraError(f"bad mul row {row!r} (want [i, j, k, c])")
        i, j, k, c = row
        mul.setdefault((int(i), int(j)), {})[int(k)] = f.parse(str(c))
    return make_algebra(f, dim, mul, unit, labels,
                        data.get("name", "algebra"))


def algebra_to_json(a: Algebra) -> dict:
    fspec = {"kind": "Q"} if a.field.characteristic == 0 \
        else {"kind": "Fp", "p": a.field.p}
    unit = [str(a.unit.get(i, a.field.zero)) for i in range(a.dim)]
    mul = [[i, j, k, str(c)]
           for (i, j), prod in sorted(a.mul.items())
           for k, c in sorted(prod.items())]
    return {"field": fspec, "dim": a.dim, "basis": list(a.basis_labels),
            "unit": unit, "mul": mul, "name": a.name}
