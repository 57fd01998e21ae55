#!/usr/bin/env python3
"""Benchmark the compiled elimination kernel against the pure-Python path.

Runs each workload twice: once in this process (compiled kernel, when
available) and once in a subprocess with HHCALC_PURE=1 (pure path).  The
workloads are the operations the compiled kernel accelerates — exact ranks
of prime-field matrices — on actual Hochschild differentials plus a random
matrix with heavy elimination fill-in.

Usage: python3 benchmarks/bench_rank.py [--repeat N]
The --inner flag is used by the subprocess re-invocation.
"""

import argparse
import json
import os
import subprocess
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))


def build_workloads():
    from hhcalc.fields import Field
    from hhcalc.algebra import zoo, regular_bimodule
    from hhcalc.hochschild import hochschild_differential
    from hhcalc.sparse import SparseMatrix
    import random

    f5 = Field.parse_spec("fp:5")
    f7 = Field.parse_spec("fp:7")
    loads = []
    a = zoo("taft:2", f5)
    reg = regular_bimodule(a)
    for n in (3, 4):
        loads.append((f"differential d{n} of the dim-4 quantum algebra",
                      hochschild_differential(a, reg, n)))
    b = zoo("taft:3", f7)
    loads.append(("differential d2 of the dim-9 quantum algebra",
                  hochschild_differential(b, regular_bimodule(b), 2)))
    # dense fill-in stress case: a random full-rank square matrix
    rng = random.Random(0)
    entries = {}
    for _ in range(6000):
        entries[(rng.randrange(600), rng.randrange(600))] = \
            f5.parse(rng.randrange(1, 5))
    loads.append(("random 600x600, 6k entries, F5",
                  SparseMatrix.from_entries(
                      600, 600, f5,
                      [(i, j, v) for (i, j), v in entries.items()])))
    return loads


def run_once(repeat):
    from hhcalc.sparse import HAVE_FAST_KERNEL

    results = []
    for label, m in build_workloads():
        t0 = time.perf_counter()
        for _ in range(repeat):
            r = m.rank()
        dt = (time.perf_counter() - t0) / repeat
        results.append({"workload": label, "shape": [m.nrows, m.ncols],
                        "nnz": m.nnz, "rank": r, "seconds": dt})
    return {"fast_kernel": HAVE_FAST_KERNEL, "results": results}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--inner", action="store_true")
    args = ap.parse_args()

    if args.inner:
        json.dump(run_once(args.repeat), sys.stdout)
        return

    compiled = run_once(args.repeat)
    env = dict(os.environ, HHCALC_PURE="1")
    out = subprocess.run([sys.executable, __file__, "--inner",
                          "--repeat", str(args.repeat)],
                         capture_output=True, text=True, env=env)
    if out.returncode != 0:
        sys.stderr.write(out.stderr)
        sys.exit(1)
    pure = json.loads(out.stdout)

    print(f"compiled kernel active in main process: "
          f"{compiled['fast_kernel']}")
    print(f"pure path active in subprocess:         "
          f"{not pure['fast_kernel']}")
    print()
    hdr = (f"{'workload':<45} {'shape':>12} {'nnz':>7} "
           f"{'compiled':>10} {'pure':>10} {'speedup':>8}")
    print(hdr)
    print("-" * len(hdr))
    for c, p in zip(compiled["results"], pure["results"]):
        assert c["rank"] == p["rank"], "rank mismatch between kernels"
        shape = "x".join(map(str, c["shape"]))
        speed = p["seconds"] / c["seconds"] if c["seconds"] else float("inf")
        print(f"{c['workload']:<45} {shape:>12} {c['nnz']:>7} "
              f"{c['seconds']:>9.4f}s {p['seconds']:>9.4f}s "
              f"{speed:>7.1f}x")


if __name__ == "__main__":
    main()
