"""Implementations of the structural identity checks that the `hh verify`
command orchestrates.  Each check compares independently computed
dimension tables and returns a CheckOutcome; hypothesis failures
(no Frobenius form found, no primitive root of unity, automorphism of
unestablished order) and size-limit refusals degrade to `skipped` with
the reason recorded."""

from __future__ import annotations

from .fields import NoPrimitiveRoot
from .algebra import (Algebra, zoo, trivial_extension, dual_bimodule,
                      regular_bimodule, tensor_power_over_A)
from .hochschild import (hh_dims, hochschild_homology_dims,
                         ext_bimodule_dims, SizeLimitExceeded,
                         DEFAULT_SIZE_LIMIT)
from .split import (SplitAlgebra, build_X, build_column, build_resolution,
                    verify_sigma_homotopy, cyc_dim_definition)
from .frobenius import (find_frobenius, change_form, Inconclusive,
                        InfiniteOrder,
                        GradingMissing, grading, grading_of_weights,
                        build_Y, predict_hh_TA, remark_cyc_dim,
                        delta_scalar_check, graded_column_cohomology,
                        graded_total_Y_dims, weighted_cochain_complex,
                        chain_maps_check)
from .report import CheckOutcome, VerificationReport

CHECK_IDS = ("thm1.1", "thm1.3", "thm2.2", "lem2.3", "cor2.5", "thm2.7",
             "prop3.1", "thm3.2", "prop3.4", "cor3.5", "rmk3.6", "thm3.8",
             "prop3.9", "thm3.10", "thm3.15", "ex3.16")

_SKIP_EXC = (Inconclusive, InfiniteOrder, GradingMissing, NoPrimitiveRoot,
             SizeLimitExceeded)


class CheckContext:
    """Shared lazily-computed objects for one verification run."""

    def __init__(self, a: Algebra, n_max: int, seed: int = 0,
                 size_limit: int = DEFAULT_SIZE_LIMIT):
        self.a = a
        self.n_max = n_max
        self.seed = seed
        self.size_limit = size_limit
        self._cache: dict = {}

    def _get(self, key, make):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    @property
    def sa(self) -> SplitAlgebra:
        return self._get("sa",
                         lambda: SplitAlgebra.trivial_extension(self.a))

    @property
    def ta(self) -> Algebra:
        return self._get("ta", lambda: trivial_extension(self.a))

    @property
    def fro(self):
        return self._get("fro",
                         lambda: find_frobenius(self.a, seed=self.seed))

    @property
    def grading(self):
        return self._get("grading", lambda: grading(self.a, self.fro))

    def hh(self, n_max: int) -> list:
        cur = self._cache.get("hh")
        if cur is None or len(cur) <= n_max:
            self._cache["hh"] = hh_dims(self.a, None, n_max,
                                        self.size_limit)
        return self._cache["hh"]

    def hh_low(self, n_max: int) -> list:
        cur = self._cache.get("hh_low")
        if cur is None or len(cur) <= n_max:
            self._cache["hh_low"] = hochschild_homology_dims(
                self.a, None, n_max, self.size_limit)
        return self._cache["hh_low"]

    def hh_ta(self, n_max: int) -> list:
        cur = self._cache.get("hh_ta")
        if cur is None or len(cur) <= n_max:
            self._cache["hh_ta"] = hh_dims(self.ta, None, n_max,
                                           self.size_limit)
        return self._cache["hh_ta"]

    def x_dims(self, p: int, n_max: int) -> list:
        key = ("x", p, n_max)
        return self._get(key, lambda: build_X(
            self.sa, p, n_max, self.size_limit).cohomology_dims(n_max))

    def y_dims(self, p: int, n_max: int) -> list:
        key = ("y", p, n_max)
        return self._get(key, lambda: build_Y(
            self.a, self.fro, p, n_max,
            self.size_limit).cohomology_dims(n_max))

    def cyc_rotation(self, p: int) -> int:
        return self._get(("cyc", p), lambda: cyc_dim_definition(self.a, p))


_MISSING = object()


def _compare(check: str, pairs: dict, notes=None) -> CheckOutcome:
    """pairs maps a comparison name to (lhs dims, rhs dims).  Status is
    pass if every entry agrees, fail on any disagreement, skipped if
    agreement holds but some entries were size-skipped (None)."""
    import itertools as _it
    notes = list(notes or [])
    has_none = False
    failed = False
    for _name, (lv, rv) in pairs.items():
        for x, y in _it.zip_longest(lv, rv, fillvalue=_MISSING):
            if x is _MISSING or y is _MISSING:
                failed = True
            elif x is None or y is None:
                has_none = True
            elif x != y:
                failed = True
    if failed:
        status = "fail"
    elif has_none:
        status = "skipped"
        notes.append("some degrees exceeded the size limit")
    else:
        status = "pass"
    lhs = {k: list(v[0]) for k, v in pairs.items()}
    rhs = {k: list(v[1]) for k, v in pairs.items()}
    return CheckOutcome(check, status, lhs, rhs, notes)


def _bool_table(check: str, name: str, flags: list,
                notes=None) -> CheckOutcome:
    return _compare(check,
                    {name: ([1 if f else 0 for f in flags],
                            [1] * len(flags))}, notes)


# -- individual checks --------------------------------------------------------

def check_thm_1_1(ctx: CheckContext) -> CheckOutcome:
    """HH of the trivial extension splits as the sum of the p-filtered
    subcomplex cohomologies."""
    cap = min(ctx.n_max, 4 if ctx.a.dim <= 2 else 3)
    direct = ctx.hh_ta(cap)[:cap + 1]
    sums = []
    for n in range(cap + 1):
        total = 0
        for p in range(n + 2):
            h = ctx.x_dims(p, cap)[n]
            if h is None:
                total = None
                break
            total += h
        sums.append(total)
    return _compare("thm1.1",
                    {"HH(TA) vs sum of H(X_(p))": (direct, sums)})


def check_thm_1_3(ctx: CheckContext) -> CheckOutcome:
    """The two columns of X_(p) compute Ext groups over the enveloping
    algebra (syzygy oracle), and the generating complex is exact."""
    cap = min(ctx.n_max, 3)
    a, sa = ctx.a, ctx.sa
    da = dual_bimodule(a)
    reg = regular_bimodule(a)
    pairs = {}
    for p in (1, 2):
        src = da if p == 1 else tensor_power_over_A(da, p)[0]
        src0 = reg if p == 1 else da
        col1 = build_column(sa, p, 1, p + cap,
                            ctx.size_limit).cohomology_dims(p + cap)
        col0 = build_column(sa, p, 0, p - 1 + cap,
                            ctx.size_limit).cohomology_dims(p - 1 + cap)
        pairs[f"p={p} shifted dual-valued column vs Ext oracle"] = (
            col1[p:], ext_bimodule_dims(src, da, cap, ctx.size_limit))
        pairs[f"p={p} shifted plain column vs Ext oracle"] = (
            col0[p - 1:],
            ext_bimodule_dims(src0, reg, cap, ctx.size_limit))
        hres = [None] * 4
        for depth in (3, 2, 1):
            try:
                res = build_resolution(sa, p, depth, ctx.size_limit)
            except SizeLimitExceeded:
                continue
            hres[:depth + 1] = res.homology_dims(depth)
            break
        pairs[f"p={p} resolution homology"] = (
            hres, [None if h is None else 0 for h in hres])
    return _compare("thm1.3", pairs)


def check_thm_2_2(ctx: CheckContext) -> CheckOutcome:
    """The contracting homotopy identity for the p=1 connecting map, and
    its consequence H^n(X_(1)) = HH^n(A) + Ext^{n-1}(DA, DA)."""
    cap = min(ctx.n_max, 3)
    flags = [verify_sigma_homotopy(ctx.sa, n) for n in range(cap + 1)]
    da = dual_bimodule(ctx.a)
    ext = ext_bimodule_dims(da, da, cap, ctx.size_limit)
    hh = ctx.hh(cap)
    pred = []
    for n in range(cap + 1):
        e = ext[n - 1] if n >= 1 else 0
        pred.append(None if hh[n] is None or e is None else hh[n] + e)
    x1 = ctx.x_dims(1, cap)[:cap + 1]
    return _compare("thm2.2", {
        "homotopy identity": ([1 if f else 0 for f in flags],
                              [1] * len(flags)),
        "H(X_(1)) vs HH + shifted Ext(DA,DA)": (x1, pred)})


def check_lem_2_3(ctx: CheckContext) -> CheckOutcome:
    """The rotation-eigenspace dimension of cyclic functionals equals
    H^{p-1}(X_(p))."""
    cap_p = min(ctx.n_max + 1, 4)
    ps = [p for p in range(2, cap_p + 1)]
    if not ps:
        ps = [2]
    return _compare("lem2.3", {
        "Cyc (definition) vs H^{p-1}(X_(p))": (
            [ctx.cyc_rotation(p) for p in ps],
            [ctx.x_dims(p, p - 1)[p - 1] for p in ps])},
        [f"p = {ps[0]}..{ps[-1]}"])


def check_cor_2_5(ctx: CheckContext) -> CheckOutcome:
    """HH^n(TA) as homology-dual + HH + Ext + cyclic + middle X terms,
    n >= 1.  Needs no Frobenius structure."""
    cap = min(ctx.n_max, 3)
    direct = ctx.hh_ta(cap)[1:cap + 1]
    da = dual_bimodule(ctx.a)
    ext = ext_bimodule_dims(da, da, cap, ctx.size_limit)
    hh = ctx.hh(cap)
    hhl = hochschild_homology_dims(ctx.a, None, cap, ctx.size_limit)
    pred = []
    for n in range(1, cap + 1):
        parts = [hhl[n], hh[n], ext[n - 1], ctx.cyc_rotation(n + 1)]
        for p in range(2, n + 1):
            parts.append(ctx.x_dims(p, cap)[n])
        pred.append(None if any(x is None for x in parts)
                    else sum(parts))
    return _compare("cor2.5",
                    {"HH(TA) n>=1 vs five-term sum": (direct, pred)})


def check_thm_2_7(ctx: CheckContext) -> CheckOutcome:
    """Closed forms in degrees 0 and 1: HH^0(TA) = HH^0 + HH_0*, and
    HH^1(TA) = HH^1 + HH_1* + dim Z(A) + Cyc^2."""
    cap = min(ctx.n_max, 1)
    direct = ctx.hh_ta(cap)[:cap + 1]
    hh = ctx.hh(1)
    hhl = ctx.hh_low(1)
    pred = [hh[0] + hhl[0]]
    if cap >= 1:
        pred.append(hh[1] + hhl[1] + hh[0] + ctx.cyc_rotation(2))
    return _compare("thm2.7",
                    {"HH(TA) low degrees vs closed form": (direct, pred)})


def check_prop_3_1(ctx: CheckContext) -> CheckOutcome:
    """Comparison chain maps between the small resolution and the twisted
    bar resolution: both squares plus the augmentation identities."""
    fro = ctx.fro
    notes = []
    flags = []
    for p in (1, 2):
        res = chain_maps_check(ctx.sa, fro, p, min(ctx.n_max, 2))
        flags += [res["theta_squares"], res["psi_variant"] is not None,
                  res["item3_mu_theta"], res["item3_mu_psi"]]
        notes.append(f"p={p}: psi index-bound variant = "
                     f"{res['psi_variant'] or 'none'}")
    return _bool_table("prop3.1", "squares and augmentations", flags,
                       notes)


def check_thm_3_2(ctx: CheckContext) -> CheckOutcome:
    """The reduced two-column complexes have the same cohomology as the
    big split subcomplexes, p <= 3."""
    cap = min(ctx.n_max, 3)
    pairs = {}
    for p in (1, 2, 3):
        pairs[f"H(Y_({p})) vs H(X_({p}))"] = (
            ctx.y_dims(p, cap), ctx.x_dims(p, cap)[:cap + 1])
    return _compare("thm3.2", pairs)


def check_prop_3_4(ctx: CheckContext) -> CheckOutcome:
    """H^n(Y_(1)) = HH^n(A) + HH^{n-1}(A)."""
    cap = min(ctx.n_max, 4)
    got = ctx.y_dims(1, cap)
    hh = ctx.hh(cap)
    pred = []
    for n in range(cap + 1):
        lo = hh[n - 1] if n >= 1 else 0
        pred.append(None if hh[n] is None or lo is None else hh[n] + lo)
    return _compare("prop3.4",
                    {"H(Y_(1)) vs HH^n + HH^{n-1}": (got, pred)})


def check_cor_3_5(ctx: CheckContext) -> CheckOutcome:
    """HH^n(TA) via the Frobenius-reduced complexes, n >= 1."""
    ctx.fro  # Frobenius hypothesis; degrade to skipped when absent
    cap = min(ctx.n_max, 3)
    direct = ctx.hh_ta(cap)[1:cap + 1]
    hh = ctx.hh(cap)
    hhl = ctx.hh_low(cap)
    pred = []
    for n in range(1, cap + 1):
        parts = [hhl[n], hh[n], hh[n - 1], ctx.cyc_rotation(n + 1)]
        for p in range(2, n + 1):
            parts.append(ctx.y_dims(p, cap)[n])
        pred.append(None if any(x is None for x in parts)
                    else sum(parts))
    return _compare("cor3.5",
                    {"HH(TA) n>=1 vs reduced-complex sum":
                     (direct, pred)})


def check_rmk_3_6(ctx: CheckContext) -> CheckOutcome:
    """The linear-system description of the cyclic functionals; the
    printed index and the index consistent with the rest of the theory
    differ by one, so both are tested and the supported one recorded."""
    fro = ctx.fro
    cap = max(1, min(ctx.n_max, 3))
    ns = list(range(1, cap + 1))
    hx = [ctx.x_dims(n + 1, n)[n] for n in ns]
    linear = [remark_cyc_dim(ctx.a, fro, n + 1) for n in ns]
    rotation = [ctx.cyc_rotation(n + 1) for n in ns]
    printed_ok = all(ctx.cyc_rotation(n) == h
                     for n, h in zip(ns, hx) if n >= 2)
    notes = [
        "supported indexing: the linear system at parameter n computes "
        "the cyclic space of arity n+1",
        "same-index reading (arity n equals H^n(X_(n+1))) "
        + ("also holds here" if printed_ok else "fails, as expected"),
    ]
    return _compare("rmk3.6", {
        "linear system vs H^n(X_(n+1))": (linear, hx),
        "linear system vs rotation definition": (linear, rotation)},
        notes)


def check_thm_3_8(ctx: CheckContext) -> CheckOutcome:
    """The periodicity formula predicts HH(TA) from small data."""
    cap = min(ctx.n_max, 4 if ctx.a.dim <= 2 else 3)
    pred = predict_hh_TA(ctx.a, ctx.fro, cap, route="periodicity",
                         size_limit=ctx.size_limit)
    direct = ctx.hh_ta(cap)[:cap + 1]
    return _compare("thm3.8",
                    {"predicted vs direct HH(TA)": (pred, direct)})


def check_prop_3_9(ctx: CheckContext) -> CheckOutcome:
    """The connecting map acts on each weight piece as the stated scalar;
    weight pieces with nonzero scalar contribute nothing, the others
    contribute the sum of the two column cohomologies."""
    gs = ctx.grading
    fro = ctx.fro
    cap = min(ctx.n_max, 3)
    scalar_flags = []
    pairs = {}
    for p in (1, 2, 3):
        for n in range(p - 1, cap + 1):
            for l in range(gs.order):
                scalar_flags.append(delta_scalar_check(gs, fro, p, n, l))
    f = ctx.a.field
    for p in (2, 3):
        for l in range(gs.order):
            total = graded_total_Y_dims(gs, fro, p, l, cap,
                                        ctx.size_limit)
            wl = f.pow(gs.w, l)
            sign = f.one if (p - 1) % 2 == 0 else f.neg(f.one)
            if wl != sign:   # scalar nonzero: the piece must vanish
                pred = [0] * (cap + 1)
                tag = "vanishing"
            else:            # scalar zero: two-column sum
                col = graded_column_cohomology(gs, fro, p, l, cap,
                                               ctx.size_limit)
                pred = []
                for n in range(cap + 1):
                    hi = col[n - p + 1] if n - p + 1 >= 0 else 0
                    lo = col[n - p] if n - p >= 0 else 0
                    pred.append(None if hi is None or lo is None
                                else hi + lo)
                tag = "two-column sum"
            pairs[f"p={p} l={l} weight piece vs {tag}"] = (total, pred)
    pairs["scalar formula"] = ([1 if x else 0 for x in scalar_flags],
                               [1] * len(scalar_flags))
    return _compare("prop3.9", pairs)


def check_thm_3_10(ctx: CheckContext) -> CheckOutcome:
    """The eigenspace-refined prediction agrees with the direct
    computation and with the periodicity route."""
    cap = min(ctx.n_max, 4 if ctx.a.dim <= 2 else 3)
    eig = predict_hh_TA(ctx.a, ctx.fro, cap, route="eigenspace",
                        size_limit=ctx.size_limit)
    per = predict_hh_TA(ctx.a, ctx.fro, cap, route="periodicity",
                        size_limit=ctx.size_limit)
    direct = ctx.hh_ta(cap)[:cap + 1]
    return _compare("thm3.10", {
        "eigenspace route vs direct HH(TA)": (eig, direct),
        "eigenspace vs periodicity route": (eig, per)})


def check_thm_3_15(ctx: CheckContext) -> CheckOutcome:
    """HH^n(A) equals the weight-0 piece of the untwisted graded column."""
    cap = min(ctx.n_max, 3)
    gs = ctx.grading
    hh = ctx.hh(cap)[:cap + 1]
    w0 = graded_column_cohomology(gs, ctx.fro, 1, 0, cap, ctx.size_limit)
    return _compare("thm3.15",
                    {"HH(A) vs weight-0 piece": (hh, w0)})


def check_ex_3_16(ctx: CheckContext) -> CheckOutcome:
    """For the quantum-plane family taft:N: the Nakayama automorphism
    scales the grouplike by a primitive root w and the skew generator by
    its inverse, has order N, and HH agrees with the invariant
    subcomplex of the truncated polynomial subalgebra."""
    a = ctx.a
    if not a.name.startswith("taft:"):
        return CheckOutcome("ex3.16", "hypothesis-violated", {}, {},
                            [f"only applicable to taft:N, got {a.name}"])
    n_taft = int(a.name.split(":")[1])
    f = a.field
    fro = ctx.fro
    notes = []
    flags = []
    flags.append(fro.order == n_taft)
    notes.append(f"automorphism order = {fro.order}, expected {n_taft}")
    # The automorphism depends on the form only up to twisting by an
    # invertible element; normalize over the grouplike orbit g^j (basis
    # order is x^i g^j with index i*N + j, so g is index 1, x is N).
    diag_ok = False
    w = None
    for j in range(n_taft):
        cand = fro if j == 0 else change_form(fro, {j: f.one})
        g_col = cand.rho.matrix.col_dict(1)
        x_col = cand.rho.matrix.col_dict(n_taft)
        wc = g_col.get(1)
        if (set(g_col) == {1} and set(x_col) == {n_taft}
                and wc is not None
                and f.is_primitive_root_of_unity(wc, n_taft)
                and x_col[n_taft] == f.inv(wc)
                and cand.order == n_taft):
            diag_ok = True
            w = wc
            notes.append(f"claimed diagonal form realized by the found "
                         f"form twisted by g^{j}")
            break
    flags.append(diag_ok)
    notes.append("rho scales g by a primitive root and x by its inverse: "
                 + ("yes" if diag_ok else "no"))
    # invariant subcomplex of the truncated subalgebra
    cap = min(ctx.n_max, 2)
    a0 = zoo(f"trunc:{n_taft}", f)
    w_root = w if diag_ok else f.primitive_root_of_unity(n_taft)
    gs0 = grading_of_weights(a0, tuple(range(n_taft)), n_taft, w_root)
    inv = weighted_cochain_complex(
        gs0, regular_bimodule(a0), 0, cap,
        ctx.size_limit).cohomology_dims(cap)
    hh = ctx.hh(cap)[:cap + 1]
    return _compare("ex3.16", {
        "structure facts": ([1 if x else 0 for x in flags],
                            [1] * len(flags)),
        "HH(A) vs invariant subcomplex": (hh, inv)}, notes)


_CHECKS = {
    "thm1.1": check_thm_1_1,
    "thm1.3": check_thm_1_3,
    "thm2.2": check_thm_2_2,
    "lem2.3": check_lem_2_3,
    "cor2.5": check_cor_2_5,
    "thm2.7": check_thm_2_7,
    "prop3.1": check_prop_3_1,
    "thm3.2": check_thm_3_2,
    "prop3.4": check_prop_3_4,
    "cor3.5": check_cor_3_5,
    "rmk3.6": check_rmk_3_6,
    "thm3.8": check_thm_3_8,
    "prop3.9": check_prop_3_9,
    "thm3.10": check_thm_3_10,
    "thm3.15": check_thm_3_15,
    "ex3.16": check_ex_3_16,
}

assert set(_CHECKS) == set(CHECK_IDS)


def run_checks(a: Algebra, check_ids, n_max: int, seed: int = 0,
               size_limit: int = DEFAULT_SIZE_LIMIT,
               inject_corruption: bool = False) -> VerificationReport:
    """Run the requested checks (canonical order) and assemble a report.
    'all' expands to every check id."""
    ids = list(check_ids)
    if "all" in ids:
        ids = list(CHECK_IDS)
    unknown = [i for i in ids if i not in _CHECKS]
    if unknown:
        raise ValueError(f"unknown check ids: {unknown}")
    ids = sorted(set(ids), key=CHECK_IDS.index)
    ctx = CheckContext(a, n_max, seed, size_limit)
    outcomes = []
    for cid in ids:
        try:
            outcomes.append(_CHECKS[cid](ctx))
        except _SKIP_EXC as exc:
            outcomes.append(CheckOutcome(
                cid, "skipped", {}, {},
                [f"{type(exc).__name__}: {exc}"]))
    if inject_corruption:
        outcomes.append(_corruption_check(a))
    field_desc = ("Q" if a.field.characteristic == 0
                  else f"F{a.field.characteristic}")
    return VerificationReport(a.name, field_desc, n_max, outcomes)


def _corruption_check(a: Algebra) -> CheckOutcome:
    """Synthetic failure path: corrupt one entry of a genuine cochain
    differential and confirm the square-zero verification catches it."""
    from .hochschild import hochschild_differential
    from .sparse import SparseMatrix
    f = a.field
    reg = regular_bimodule(a)
    # find the first degree with a nonzero differential, then corrupt the
    # next one on a row that the product actually touches
    for n in range(4):
        d_lo = hochschild_differential(a, reg, n)
        row = next((i for j in range(d_lo.ncols)
                    for i in d_lo.col_dict(j)), None)
        if row is not None:
            break
    else:
        raise AssertionError("no nonzero differential found")
    d_hi = hochschild_differential(a, reg, n + 1)
    bump = SparseMatrix.from_entries(d_hi.nrows, d_hi.ncols, f,
                                     [(0, row, f.one)])
    corrupted = d_hi + bump
    still_zero = corrupted.is_zero_product_with(d_lo)
    return _compare(
        "synthetic-corruption",
        {"square-zero after corruption": ([1 if still_zero else 0], [1])},
        ["deliberately corrupted differential; this check is expected "
         "to fail"])
