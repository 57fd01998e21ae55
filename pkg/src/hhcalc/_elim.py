"""Pure-Python sparse elimination over an exact field.

Rows are pairs (cols, vals) of parallel lists sorted by column index with no
stored zeros.  This is the fallback implementation; prime-field ranks go
through the compiled kernel in _fastelim when it is importable.
"""

from __future__ import annotations

from .fields import Field

Row = tuple[list, list]


def axpy(r1: Row, r2: Row, s, field: Field) -> Row:
    """r1 + s*r2 as a merged sorted row (s nonzero)."""
    c1, v1 = r1
    c2, v2 = r2
    n1, n2 = len(c1), len(c2)
    oc: list = []
    ov: list = []
    i = j = 0
    add, mul, is_zero = field.add, field.mul, field.is_zero
    while i < n1 and j < n2:
        a, b = c1[i], c2[j]
        if a < b:
            oc.append(a)
            ov.append(v1[i])
            i += 1
        elif a > b:
            oc.append(b)
            ov.append(mul(s, v2[j]))
            j += 1
        else:
            v = add(v1[i], mul(s, v2[j]))
            if not is_zero(v):
                oc.append(a)
                ov.append(v)
            i += 1
            j += 1
    if i < n1:
        oc.extend(c1[i:])
        ov.extend(v1[i:])
    while j < n2:
        oc.append(c2[j])
        ov.append(mul(s, v2[j]))
        j += 1
    return oc, ov


def scale_row(r: Row, s, field: Field) -> Row:
    c, v = r
    mul = field.mul
    return list(c), [mul(s, x) for x in v]


def echelon(rows, field: Field) -> dict[int, Row]:
    """Forward elimination.  Returns {pivot column: normalized row}; rows is
    an iterable of sparse rows consumed once."""
    pivots: dict[int, Row] = {}
    neg, inv = field.neg, field.inv
    for row in rows:
        cols, vals = row
        while cols:
            j = cols[0]
            piv = pivots.get(j)
            if piv is None:
                lead_inv = inv(vals[0])
                pivots[j] = scale_row((cols, vals), lead_inv, field) \
                    if vals[0] != field.one else (list(cols), list(vals))
                break
            cols, vals = axpy((cols, vals), piv, neg(vals[0]), field)
    return pivots


def rank_of_rows(rows, field: Field) -> int:
    return len(echelon(rows, field))


def rref(rows, field: Field) -> dict[int, Row]:
    """Fully reduced row echelon form keyed by pivot column."""
    pivots = echelon(rows, field)
    neg = field.neg
    for j in sorted(pivots, reverse=True):
        cols, vals = pivots[j]
        k = 1
        while k < len(cols):
            c = cols[k]
            piv = pivots.get(c)
            if piv is not None:
                cols, vals = axpy((cols, vals), piv, neg(vals[k]), field)
                # entry at c eliminated; earlier entries untouched, re-scan
                # from the same index
            else:
                k += 1
        pivots[j] = (cols, vals)
    return pivots


def kernel_from_rref(pivots: dict[int, Row], ncols: int, field: Field):
    """Kernel basis vectors (as {index: value} dicts) from an RREF."""
    pivot_cols = sorted(pivots)
    pivot_set = set(pivot_cols)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = {f: field.one}
        for j in pivot_cols:
            cols, vals = pivots[j]
            for c, v in zip(cols, vals):
                if c == f:
                    vec[j] = field.neg(v)
                    break
        basis.append(vec)
    return basis


def reduce_vector(vec: dict, pivots: dict[int, Row], field: Field) -> dict:
    """Reduce a {index: value} vector modulo the row space of an RREF."""
    out = dict(vec)
    neg, mul, add, is_zero = field.neg, field.mul, field.add, field.is_zero
    for j in sorted(pivots):
        s = out.get(j)
        if s is None or is_zero(s):
            continue
        cols, vals = pivots[j]
        for c, v in zip(cols, vals):
            w = add(out.get(c, field.zero), mul(neg(s), v))
            if is_zero(w):
                out.pop(c, None)
            else:
                out[c] = w
    return out
