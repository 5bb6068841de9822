"""Command line entry point ``ginv``.

Exit codes: 0 success, 1 a theorem check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .classes import ClassLabel, classify_all
from .decomposition import NonsingularMatrixError, core_ep_decompose, rank_sequence
from .generate import GeneratorSpec, generate
from .ginverse import GInverseKind, GroupInverseError, compute_inverse
from .io import MatrixFileError, dumps, parse_matrix
from .numeric import DEFAULT_TOL, ExactMatrix, Tolerance, is_exact
from .verify import SUITES, run_suites

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _tol(args) -> Tolerance:
    if args.tol is None:
        return DEFAULT_TOL
    if args.tol < 0:
        raise _UsageError("--tol must be nonnegative")
    return Tolerance(rank_rel_tol=DEFAULT_TOL.rank_rel_tol, eq_abs_tol=args.tol)


def _load(path, exact: bool = False):
    try:
        A = parse_matrix(path)
    except OSError as exc:
        raise _UsageError(f"{path}: {exc.strerror or exc}") from exc
    except MatrixFileError as exc:
        raise _UsageError(f"{path}: {exc}") from exc
    if exact and not is_exact(A):
        A = ExactMatrix.from_float(A)
    return A


def _write(M, out) -> None:
    text = dumps(M)
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fmt(M) -> str:
    if is_exact(M):
        rows = [[str(z) for z in r] for r in M.entries()]
    else:
        a = np.asarray(M)
        real = not np.any(np.abs(a.imag) > 0)
        rows = [[f"{z.real:.6g}" if real else f"{z:.6g}" for z in r] for r in a]
    if not rows or not rows[0]:
        return "    (empty)"
    width = max(len(x) for r in rows for x in r)
    return "\n".join("    [" + "  ".join(x.rjust(width) for x in r) + "]" for r in rows)


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    tol = _tol(args)
    A = _load(args.file)
    seq = rank_sequence(A, tol)
    k = len(seq) - 2  # the sequence starts at A^0 and ends with the first repeat
    print(f"n = {A.shape[0]}  backend = {'exact' if is_exact(A) else 'float'}")
    print(f"index k = {k}")
    print("rank sequence (A^0, A^1, ...) = " + ", ".join(map(str, seq)))
    try:
        D = core_ep_decompose(A, tol)
    except NonsingularMatrixError:
        print("nonsingular: no nilpotent part")
        return EXIT_OK
    print(f"t = rank(A^k) = {D.t}")
    for name in ("U", "T", "S", "N"):
        print(f"{name} =")
        print(_fmt(getattr(D, name)))
    return EXIT_OK


def cmd_classify(args) -> int:
    tol = _tol(args)
    A = _load(args.file, exact=args.exact)
    rep = classify_all(A, tol)
    d = rep.to_dict()
    out = {"index": d["index"], **d["memberships"], "aux": d["aux"],
           "witnesses": d["witnesses"], "structural_backend": d["structural_backend"]}
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_inverse(args) -> int:
    tol = _tol(args)
    A = _load(args.file, exact=args.exact)
    try:
        X = compute_inverse(A, GInverseKind(args.kind), tol)
    except GroupInverseError as exc:
        raise _UsageError(str(exc)) from exc
    _write(X, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = _tol(args)
    status = EXIT_OK
    docs = []
    for path in args.files:
        A = _load(path, exact=args.exact)
        for rep in run_suites(A, args.suite, tol, matrix_id=path):
            fails = rep.failures()
            if fails:
                status = EXIT_FAIL
            if args.json:
                docs.append(rep.to_dict())
                continue
            verdict = "pass" if not fails else "FAIL"
            note = f"  ({rep.note})" if rep.note else ""
            print(f"{path}  {rep.theorem.value:<26} {verdict}  {len(rep.clauses)} clauses{note}")
            for f in fails:
                print(f"    {f}")
    if args.json:
        print(json.dumps(docs, indent=2))
    return status


def cmd_generate(args) -> int:
    try:
        spec = GeneratorSpec(args.n, args.t, args.k, args.target_class, args.seed,
                             backend="exact" if args.exact else "float")
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    _write(generate(spec), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="absolute equality tolerance for float input (default 1e-10)")

    p = argparse.ArgumentParser(prog="ginv", description="Generalized inverses and matrix classes.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="index, rank sequence, core-EP blocks")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("classify", parents=[common], help="class memberships as JSON")
    c.add_argument("file")
    c.add_argument("--exact", action="store_true", help="convert float input to exact rationals")
    c.set_defaults(func=cmd_classify)

    i = sub.add_parser("inverse", parents=[common], help="write a generalized inverse")
    i.add_argument("file")
    i.add_argument("--kind", required=True, choices=[k.value for k in GInverseKind])
    i.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    i.add_argument("--exact", action="store_true", help="convert float input to exact rationals")
    i.set_defaults(func=cmd_inverse)

    v = sub.add_parser("verify", parents=[common], help="run theorem checks",
                       description="s3: outer inverses and commutation; "
                                   "s4: DMP, k-EP, WG and WC characterizations; "
                                   "s5: k-index EP and EP; all: everything")
    v.add_argument("files", nargs="+")
    v.add_argument("--suite", default="all", choices=SUITES)
    v.add_argument("--exact", action="store_true", help="convert float input to exact rationals")
    v.add_argument("--json", action="store_true", help="print full reports as JSON")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("generate", help="random matrix with prescribed core-EP structure")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--t", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--class", dest="target_class", default=None,
                   choices=[c.value for c in ClassLabel])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--exact", action="store_true", help="exact backend (U = I, Gaussian integers)")
    g.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    g.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"ginv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
