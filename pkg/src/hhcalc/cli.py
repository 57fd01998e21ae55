"""Command-line interface: dimension tables, Frobenius structure reports,
and the theorem-check verifier.

    hh table     --algebra <spec> --field <q|fp:P> --nmax N
                 [--coefficients self|dual]
    hh frobenius --algebra <spec> --field <q|fp:P> [--seed S]
    hh verify    --algebra <spec> --field <q|fp:P> --checks <ids> --nmax N
                 [--root W] [--seed S] [--json <path>] [--size-limit E]

Algebra specs are zoo names (dual-numbers, trunc:n, cyclic:n, mat:n,
taft:N) or file:<path> pointing at the JSON interchange format.
Exit codes: 0 all pass, 1 any check failed, 2 usage or load error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .fields import Field, FieldError, NoPrimitiveRoot
from .algebra import (Algebra, AlgebraError, zoo, taft_algebra,
                      algebra_from_json, trivial_extension)
from .hochschild import hh_dims, DEFAULT_SIZE_LIMIT
from .frobenius import find_frobenius, Inconclusive
from .checks import run_checks, CHECK_IDS


class LoadError(ValueError):
    pass


def load_algebra(spec: str, field: Field, root=None) -> Algebra:
    """Load a zoo algebra or a JSON file (`file:<path>`); `root`
    optionally overrides the root of unity for taft:N."""
    if spec.startswith("file:"):
        path = spec[len("file:"):]
        try:
            with open(path, "rb") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise LoadError(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise LoadError(
                f"{path}: invalid JSON at line {exc.lineno}, "
                f"column {exc.colno}: {exc.msg}") from exc
        return algebra_from_json(data, field)
    if spec.startswith("taft:") and root is not None:
        n = int(spec.split(":")[1])
        return taft_algebra(n, field, field.parse(root))
    return zoo(spec, field)


def _common_args(sub):
    sub.add_argument("--algebra", required=True,
                     help="zoo name or file:<path>")
    sub.add_argument("--field", default="q", help="q or fp:P")
    sub.add_argument("--root", default=None,
                     help="root of unity override for taft:N")
    sub.add_argument("--size-limit", type=int, default=DEFAULT_SIZE_LIMIT,
                     help="max estimated matrix entries per differential")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hh",
        description="Exact Hochschild cohomology of finite-dimensional "
                    "algebras and their trivial extensions.")
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="dimension table of HH^n")
    _common_args(t)
    t.add_argument("--nmax", type=int, default=3)
    t.add_argument("--coefficients", choices=("self", "dual"),
                   default="self")
    t.add_argument("--trivial-extension", action="store_true",
                   help="compute for the trivial extension instead")

    fr = sub.add_parser("frobenius",
                        help="search for a Frobenius form and report the "
                             "induced automorphism")
    _common_args(fr)
    fr.add_argument("--seed", type=int, default=0)

    v = sub.add_parser("verify", help="run structural identity checks")
    _common_args(v)
    v.add_argument("--checks", default="all",
                   help="comma-separated ids from: "
                        + ", ".join(CHECK_IDS) + ", all")
    v.add_argument("--nmax", type=int, default=3)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", dest="json_path", default=None,
                   help="also write the JSON report here ('-' = stdout)")
    v.add_argument("--inject-corruption", action="store_true",
                   help="test hook: append a synthetic corrupted-"
                        "differential check that must fail")
    return ap


def cmd_table(args) -> int:
    field = Field.parse_spec(args.field)
    a = load_algebra(args.algebra, field, args.root)
    if args.trivial_extension:
        a = trivial_extension(a)
    if args.coefficients == "dual":
        from .algebra import dual_bimodule
        coeff = dual_bimodule(a)
    else:
        coeff = None
    dims = hh_dims(a, coeff, args.nmax, args.size_limit)
    print(f"algebra: {a.name}  dim {a.dim}  coefficients: "
          f"{args.coefficients}")
    print(f"{'n':>3}  dim HH^n")
    for n, d in enumerate(dims):
        print(f"{n:>3}  {'skipped (size limit)' if d is None else d}")
    return 0


def cmd_frobenius(args) -> int:
    field = Field.parse_spec(args.field)
    a = load_algebra(args.algebra, field, args.root)
    try:
        fro = find_frobenius(a, seed=args.seed)
    except Inconclusive as exc:
        print(f"no Frobenius form found for {a.name}:")
        for line in exc.attempts:
            print(f"  {line}")
        return 1
    print(f"algebra: {a.name}  dim {a.dim}")
    print("form (coordinates in the dual basis):")
    for i in range(a.dim):
        v = fro.phi.get(i)
        if v is not None:
            print(f"  {a.basis_labels[i]} -> {field.fmt(v)}")
    print("automorphism matrix columns (basis image):")
    for j in range(a.dim):
        col = fro.rho.matrix.col_dict(j)
        img = " + ".join(f"{field.fmt(c)}*{a.basis_labels[i]}"
                         for i, c in sorted(col.items()))
        print(f"  {a.basis_labels[j]} -> {img or '0'}")
    order = (str(fro.order) if fro.order is not None
             else "not established (cap exceeded)")
    print(f"order: {order}")
    print("search log:")
    for line in fro.attempts:
        print(f"  {line}")
    return 0


def cmd_verify(args) -> int:
    field = Field.parse_spec(args.field)
    a = load_algebra(args.algebra, field, args.root)
    ids = [s.strip() for s in args.checks.split(",") if s.strip()]
    report = run_checks(a, ids, args.nmax, seed=args.seed,
                        size_limit=args.size_limit,
                        inject_corruption=args.inject_corruption)
    payload = report.to_json_bytes()
    if args.json_path == "-":
        sys.stdout.buffer.write(payload)
    else:
        print(report.to_table(), end="")
        if args.json_path:
            with open(args.json_path, "wb") as fh:
                fh.write(payload)
    return report.exit_code


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "table":
            return cmd_table(args)
        if args.command == "frobenius":
            return cmd_frobenius(args)
        return cmd_verify(args)
    except (LoadError, AlgebraError, FieldError, NoPrimitiveRoot,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
