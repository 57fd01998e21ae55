"""Acceptance gate: thirteen end-to-end criteria, one pass/fail line each.

Every test emits a single summary line — printed, and also appended to
acceptance_report.txt at the repository root so the lines survive pytest's
output capture — and then asserts, so the pytest verdict and the emitted
line always agree.  Size-limit skips on the largest zoo members are
permitted and are noted on the line; a criterion fails only on an
exact-arithmetic disagreement.
"""

import os
import time

from hhcalc.fields import Field
from hhcalc.algebra import (zoo, ZOO_NAMES, regular_bimodule,
                            trivial_extension)
from hhcalc.hochschild import (hochschild_cochain, hh_dims,
                               SizeLimitExceeded)
from hhcalc.split import (SplitAlgebra, build_X, build_resolution,
                          cyc_dim_definition)
from hhcalc.frobenius import (find_frobenius, build_Y, remark_cyc_dim,
                              Inconclusive)
from hhcalc.checks import (CheckContext, check_thm_1_1, check_thm_1_3,
                           check_thm_2_2, check_prop_3_1, check_thm_3_2,
                           check_prop_3_4, check_prop_3_9, check_thm_3_8,
                           check_thm_3_10, check_thm_3_15, check_ex_3_16)
from hhcalc.report import VerificationReport
from hhcalc.cli import main

Q = Field.parse_spec("q")
F5 = Field.parse_spec("fp:5")
F7 = Field.parse_spec("fp:7")


def field_for(name):
    return F5 if name == "taft:2" else (F7 if name == "taft:3" else Q)


_REPORT_PATH = os.path.join(os.path.dirname(__file__), os.pardir,
                            "acceptance_report.txt")
_emitted = set()


def emit(num, ok, detail):
    line = f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} — {detail}"
    print(line, flush=True)
    mode = "w" if not _emitted else "a"
    _emitted.add(num)
    with open(_REPORT_PATH, mode) as fh:
        fh.write(line + "\n")
    assert ok, line


def outcome_ok(out):
    """A check outcome satisfies a criterion when it passes outright or
    agrees on every degree that fit under the size limit."""
    return out.status in ("pass", "skipped")


def test_criterion_01_every_complex_squares_to_zero():
    # d∘d = 0 for bar cochains, filtration subcomplexes p <= 4,
    # generating resolutions, and reduced complexes p <= 3; n <= 4;
    # under 60 s per algebra.  Oversized differentials are skipped.
    times, skips = {}, 0
    for name in ZOO_NAMES:
        a = zoo(name, field_for(name))
        t0 = time.monotonic()
        sa = SplitAlgebra.trivial_extension(a)
        cx = hochschild_cochain(a, regular_bimodule(a), 4)
        cx.verify_dd()                     # raises on any nonzero product
        skips += len(cx.skip_reasons)
        for p in range(5):
            x = build_X(sa, p, 4)
            x.verify_dd()
            skips += len(x.skip_reasons)
        for p in (1, 2):
            try:
                assert build_resolution(sa, p, 3).verify_dd()
            except SizeLimitExceeded:
                skips += 1
        try:
            fro = find_frobenius(a)
            for p in (1, 2, 3):
                y = build_Y(a, fro, p, 4)
                y.verify_dd()
                skips += len(y.skip_reasons)
        except Inconclusive:
            skips += 1
        times[name] = time.monotonic() - t0
    slow = {k: round(v, 1) for k, v in times.items() if v >= 60}
    worst = max(times, key=times.get)
    emit(1, not slow,
         f"all built differentials square to zero on {len(times)} zoo "
         f"algebras ({skips} oversized pieces skipped); slowest "
         f"{worst} at {times[worst]:.1f}s" + (f"; over budget: {slow}"
                                              if slow else ""))


def test_criterion_02_extension_cohomology_decomposes():
    # dim HH^n of the trivial extension equals the sum over p of the
    # filtration-level cohomologies; dim <= 4 members, n <= 3
    # (n <= 4 in dimension 2).
    results = {}
    for name in ZOO_NAMES:
        a = zoo(name, field_for(name))
        if a.dim > 4:
            continue
        cap = 4 if a.dim <= 2 else 3
        out = check_thm_1_1(CheckContext(a, cap))
        results[name] = out.status
    bad = {k: v for k, v in results.items() if v != "pass"}
    emit(2, not bad,
         f"decomposition exact on {sorted(results)}"
         + (f"; not pass: {bad}" if bad else ""))


def test_criterion_03_columns_compute_ext_and_resolutions_exact():
    # Both columns of the p-filtered complex compute the syzygy-oracle
    # Ext dimensions (p <= 2, n <= 3) and the generating resolutions are
    # exact in degrees <= 3.  Raised size cap covers the dim-4 members;
    # the dim-9 member still skips its largest terms.
    results = {}
    for name in ZOO_NAMES:
        a = zoo(name, field_for(name))
        out = check_thm_1_3(CheckContext(a, 3, size_limit=20_000_000))
        results[name] = out.status
    bad = {k: v for k, v in results.items() if not v in ("pass", "skipped")}
    skipped = sorted(k for k, v in results.items() if v == "skipped")
    emit(3, not bad,
         "column cohomology = Ext oracle and resolutions exact on "
         f"{sorted(results)}"
         + (f"; size-skipped degrees on {skipped}" if skipped else "")
         + (f"; failures: {bad}" if bad else ""))


def test_criterion_04_homotopy_identity_and_consequence():
    # The explicit homotopy identity holds as an exact matrix equation
    # (n <= 3) and forces H^n(X_(1)) = HH^n + Ext^{n-1}(DA, DA).
    results = {}
    for name in ("dual-numbers", "cyclic:2", "trunc:3"):
        out = check_thm_2_2(CheckContext(zoo(name, Q), 3))
        results[name] = out.status
    bad = {k: v for k, v in results.items() if v != "pass"}
    emit(4, not bad,
         f"homotopy identity and dimension consequence on {sorted(results)}"
         + (f"; not pass: {bad}" if bad else ""))


def test_criterion_05_three_cyclic_routes_agree():
    # The cyclic-functional dimension by definition, as H^{p-1}(X_(p)),
    # and as the kernel of the automorphism linear system, p <= 4.
    agreements, skipped, bad = 0, [], []
    for name in ZOO_NAMES:
        a = zoo(name, field_for(name))
        fro = find_frobenius(a)
        sa = SplitAlgebra.trivial_extension(a)
        for p in (2, 3, 4):
            r_def = cyc_dim_definition(a, p)
            r_fro = remark_cyc_dim(a, fro, p)
            try:
                r_cx = build_X(sa, p, p - 1).cohomology_dim(p - 1)
            except SizeLimitExceeded:
                skipped.append(f"{name} p={p}")
                r_cx = r_def
            if r_def == r_cx == r_fro:
                agreements += 1
            else:
                bad.append((name, p, r_def, r_cx, r_fro))
    emit(5, not bad,
         f"three routes agree in {agreements} cases across the zoo"
         + (f"; complex route size-skipped: {skipped}" if skipped else "")
         + (f"; disagreements: {bad}" if bad else ""))


def test_criterion_06_reduced_complexes_match():
    # H^n(Tot Y_(p)) = H^n(X_(p)) for p <= 3, n <= 3, plus the p = 1
    # closed form H^n(Y_(1)) = HH^n + HH^{n-1} up to n = 4.
    results = {}
    for name in ZOO_NAMES:
        a = zoo(name, field_for(name))
        ctx = CheckContext(a, 4)
        s1, s2 = check_thm_3_2(ctx).status, check_prop_3_4(ctx).status
        results[name] = (s1, s2)
    bad = {k: v for k, v in results.items()
           if not all(s in ("pass", "skipped") for s in v)}
    skipped = sorted(k for k, v in results.items() if "skipped" in v)
    emit(6, not bad,
         f"reduced complexes match on {sorted(results)}"
         + (f"; size-skipped degrees on {skipped}" if skipped else "")
         + (f"; failures: {bad}" if bad else ""))


def test_criterion_07_connecting_scalar_formula():
    # On each weight piece the connecting map is the scalar
    # (-1)^{n+1}(1 + (-1)^p w^{-l}); nonzero scalar forces the piece to
    # vanish, zero scalar gives the two-column sum.  p <= 3, n <= 3.
    results = {}
    for name in ("taft:2", "taft:3"):
        out = check_prop_3_9(CheckContext(zoo(name, field_for(name)), 3))
        results[name] = out.status
    bad = {k: v for k, v in results.items() if v != "pass"}
    emit(7, not bad,
         f"scalar action, vanishing, and column sums verified on "
         f"{sorted(results)}" + (f"; not pass: {bad}" if bad else ""))


def test_criterion_08_predictions_match_direct_computation():
    # Both prediction routes equal the directly computed HH of the
    # trivial extension: n <= 3 on the dim-4 quantum member (runtime
    # documented on the line), n <= 4 on the two dim-2 members; the two
    # routes agree with each other everywhere.
    results, runtime = {}, None
    for name in ("taft:2", "dual-numbers", "cyclic:2"):
        a = zoo(name, field_for(name))
        cap = 3 if name == "taft:2" else 4
        ctx = CheckContext(a, cap)
        t0 = time.monotonic()
        s1, s2 = check_thm_3_8(ctx).status, check_thm_3_10(ctx).status
        if name == "taft:2":
            runtime = time.monotonic() - t0
        results[name] = (s1, s2)
    bad = {k: v for k, v in results.items()
           if any(s != "pass" for s in v)}
    emit(8, not bad,
         f"both routes equal the direct computation on {sorted(results)}; "
         f"largest run (dim-4 quantum member, n<=3) took {runtime:.1f}s"
         + (f"; not pass: {bad}" if bad else ""))


def test_criterion_09_weight_zero_piece_is_hh():
    # dim HH^n(A) equals the weight-0 piece of the untwisted graded
    # column, n <= 3, on both quantum zoo members.
    results = {}
    for name in ("taft:2", "taft:3"):
        out = check_thm_3_15(CheckContext(zoo(name, field_for(name)), 3))
        results[name] = out.status
    bad = {k: v for k, v in results.items() if v != "pass"}
    emit(9, not bad,
         f"HH equals the weight-0 graded piece on {sorted(results)}"
         + (f"; not pass: {bad}" if bad else ""))


def test_criterion_10_quantum_family_invariants():
    # For taft:N the automorphism scales the grouplike by a primitive
    # N-th root and the skew generator by its inverse, has order N, and
    # HH^n (n <= 2) equals the invariant subcomplex of the truncated
    # polynomial subalgebra.
    results, notes = {}, []
    for name in ("taft:2", "taft:3"):
        out = check_ex_3_16(CheckContext(zoo(name, field_for(name)), 2))
        results[name] = out.status
        notes += [f"{name}: {n}" for n in out.notes
                  if "twisted" in n]
    bad = {k: v for k, v in results.items() if v != "pass"}
    emit(10, not bad,
         f"automorphism shape, order, and invariant subcomplex on "
         f"{sorted(results)} ({'; '.join(notes)})"
         + (f"; not pass: {bad}" if bad else ""))


def test_criterion_11_comparison_chain_maps():
    # Both comparison chain-map squares and the augmentation identities
    # hold exactly for p <= 2, n <= 2; the index-bound variant of the
    # second map that works is recorded.
    results, variants = {}, []
    for name in ("cyclic:2", "dual-numbers"):
        out = check_prop_3_1(CheckContext(zoo(name, Q), 2))
        results[name] = out.status
        variants += [f"{name} {n}" for n in out.notes]
    bad = {k: v for k, v in results.items() if v != "pass"}
    emit(11, not bad,
         f"chain-map squares and augmentations on {sorted(results)}; "
         f"{'; '.join(variants)}"
         + (f"; not pass: {bad}" if bad else ""))


def test_criterion_12_semisimple_commutative_pattern():
    # For the split semisimple commutative members over the rationals:
    # dim HH^n(TA) = 2*dim A at n = 0 and dim A for 1 <= n <= 3,
    # computed directly from the extension.
    results, bad = {}, {}
    for name in ("cyclic:2", "cyclic:3"):
        a = zoo(name, Q)
        got = hh_dims(trivial_extension(a), None, 3)
        want = [2 * a.dim] + [a.dim] * 3
        results[name] = got
        if got != want:
            bad[name] = (got, want)
    emit(12, not bad,
         f"direct dims {results} match 2·dim at degree 0 and dim above"
         + (f"; mismatches: {bad}" if bad else ""))


def test_criterion_13_cli_contract(tmp_path, capsys):
    # Full verification exits 0, an injected corruption exits 1, and the
    # JSON report round-trips byte-for-byte.
    path = tmp_path / "report.json"
    code_ok = main(["verify", "--algebra", "cyclic:2", "--checks", "all",
                    "--nmax", "3", "--json", str(path)])
    code_bad = main(["verify", "--algebra", "cyclic:2", "--checks",
                     "thm2.7", "--nmax", "1", "--inject-corruption"])
    capsys.readouterr()
    data = path.read_bytes()
    round_trip = VerificationReport.from_json_bytes(data)
    rt_ok = round_trip.to_json_bytes() == data
    ok = code_ok == 0 and code_bad == 1 and rt_ok
    emit(13, ok,
         f"full verify exit={code_ok}, corrupted exit={code_bad}, "
         f"JSON report round-trips: {rt_ok}")
