"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import report as rp
from .decompose import (
    block_matrix,
    decompose_matrix,
    iterate_flow,
    randomized_summand_check,
)
from .field_core import GF2, GFElement
from .polyring import minor, symbolic_matrix
from .symbolic import build_C, verify_frobenius

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class MatrixFileError(ValueError):
    pass


def parse_matrix_text(text: str) -> tuple[tuple[int, ...], ...]:
    """Four lines of four whitespace-separated 0/1 tokens; blank lines are ignored."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if len(rows) != 4:
        raise MatrixFileError(f"expected 4 rows, found {len(rows)}")
    out = []
    for n, toks in enumerate(rows, start=1):
        if len(toks) != 4:
            raise MatrixFileError(f"row {n}: expected 4 entries, found {len(toks)}")
        if any(t not in ("0", "1") for t in toks):
            raise MatrixFileError(f"row {n}: entries must be 0 or 1")
        out.append(tuple(int(t) for t in toks))
    return tuple(out)


def read_matrix_file(path: str) -> tuple[tuple[int, ...], ...]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_matrix_text(text)


def cmd_verify_symbolic(matrix=None, transpose_check: bool = False) -> tuple[int, dict]:
    if matrix is None:
        rep = rp.new_report("verify-symbolic", "symbolic")
        A = symbolic_matrix()
    else:
        rep = rp.new_report("verify-symbolic", rp.matrix_text(matrix))
        A = [[GFElement(GF2, x) for x in row] for row in matrix]
    fr = verify_frobenius(A)
    for j in range(1, 5):
        for k in range(1, 5):
            bad = (j, k) in fr.failures
            detail = ""
            if bad:
                detail = "; ".join(f"e_{i}: " + ", ".join(str(d) for d in diff)
                                   for i, diff in fr.differences[(j, k)])
            rp.add_check(rep, f"e^({j}) b_{j}{k} = a_{j}{k}^2 e^({k})", not bad, detail)
    if transpose_check:
        S = symbolic_matrix()
        C = build_C(S)
        Ct = build_C([list(c) for c in zip(*S)])
        for i in range(1, 5):
            for j in range(1, 5):
                d = minor(Ct, i, j) + minor(C, j, i)
                rp.add_check(rep, f"minor(C(A^T),{i},{j}) = minor(C(A),{j},{i})", d.is_zero(),
                             "" if d.is_zero() else str(d))
    rep["passed"] = all(c["passed"] for c in rep["checks"])
    return (EXIT_OK if rep["passed"] else EXIT_FAIL), rep


def cmd_verify_summand(trials: int, ext_degree: int, seed: int) -> tuple[int, dict]:
    if trials < 1:
        raise MatrixFileError("--trials must be at least 1")
    if not 1 <= ext_degree <= 64:
        raise MatrixFileError("--ext-degree must be in 1..64")
    rep = rp.new_report("verify-summand", f"trials={trials} ext_degree={ext_degree}", seed)
    res = randomized_summand_check(trials, ext_degree, seed)
    rp.add_check(rep, "field modulus", True, f"{res.modulus:#x}")
    rp.add_check(rep, "passing trials", res.passes == trials, f"{res.passes}/{trials}")
    degen = ", ".join(f"{k}: {v}" for k, v in sorted(res.degenerate_checks.items()))
    rp.add_check(rep, "degenerate draws (redrawn)", True, f"{res.degenerate}" + (f" [{degen}]" if degen else ""))
    if res.unresolved:
        rp.add_check(rep, "unresolved trials", True, str(res.unresolved))
    rp.add_check(rep, "no invariant violations", not res.failures,
                 "; ".join(f"trial {t}: {m}" for t, m in res.failures))
    rep["passed"] = res.ok
    return (EXIT_OK if res.ok else EXIT_FAIL), rep


def cmd_decompose(matrix) -> tuple[int, dict]:
    rep = rp.new_report("decompose", rp.matrix_text(matrix))
    dec = decompose_matrix(matrix)
    rep["summands"], rep["remainder"] = rp.decomposition_entries(dec)
    total = dec.dimension_accounting()
    rp.add_check(rep, "dimension accounting", total == (8, 8, 8, 8), str(total))
    rep["passed"] = all(c["passed"] for c in rep["checks"])
    return EXIT_OK, rep


def cmd_iterate(matrix, steps: int) -> tuple[int, dict]:
    if steps < 1:
        raise MatrixFileError("--steps must be at least 1")
    rep = rp.new_report("iterate", rp.matrix_text(matrix))
    states = iterate_flow(matrix, steps)
    rep["steps"] = []
    ok = True
    for st in states:
        blocks = []
        for name, dec in st.blocks:
            summands, rem = rp.decomposition_entries(dec)
            ok &= dec.dimension_accounting() == (8, 8, 8, 8)
            blocks.append({
                "matrix_name": name,
                "matrix": ["".join(map(str, r)) for r in dec.matrix],
                "derived_from_transpose": dec.derived_from_transpose,
                "summands": summands,
                "remainder": rem,
            })
        rep["steps"].append({"step": st.step, "blocks": blocks})
    rp.add_check(rep, "dimension accounting at every step", ok)
    rep["passed"] = ok
    return EXIT_OK, rep


def cmd_block(matrix) -> tuple[int, dict]:
    rep = rp.new_report("block", rp.matrix_text(matrix))
    rep["block"] = block_matrix(matrix).bitstrings()
    rep["passed"] = True
    return EXIT_OK, rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="selfsim4d", description="Block operators of a 4d vertex model over GF(2).")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-symbolic", help="check the Frobenius relation of the cofactor vectors")
    s.add_argument("--matrix", help="binary 4x4 matrix file instead of the symbolic matrix")
    s.add_argument("--transpose-check", action="store_true", help="also check the minor/transpose identity")
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("verify-summand", help="randomised check that W has an invariant complement")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--ext-degree", type=int, default=16)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("decompose", help="search for a graded direct-sum decomposition of the block")
    s.add_argument("--matrix", required=True)
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("iterate", help="decompose blocks of discovered summand matrices")
    s.add_argument("--matrix", required=True)
    s.add_argument("--steps", type=int, default=1)
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("block", help="build the 32x32 block over GF(2)")
    s.add_argument("--matrix", required=True)
    s.add_argument("--print", action="store_true", dest="print_block")
    s.add_argument("--json", action="store_true")
    return p


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Parse ``argv``, run the command and return ``(exit code, rendered output)``."""
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify-symbolic":
            matrix = read_matrix_file(args.matrix) if args.matrix else None
            code, rep = cmd_verify_symbolic(matrix, args.transpose_check)
        elif args.command == "verify-summand":
            code, rep = cmd_verify_summand(args.trials, args.ext_degree, args.seed)
        elif args.command == "decompose":
            code, rep = cmd_decompose(read_matrix_file(args.matrix))
        elif args.command == "iterate":
            code, rep = cmd_iterate(read_matrix_file(args.matrix), args.steps)
        else:
            code, rep = cmd_block(read_matrix_file(args.matrix))
            if not args.print_block:
                rep["block"] = None
            elif args.json:
                return code, rp.to_json(rep["block"])
    except MatrixFileError as exc:
        return EXIT_INPUT, f"error: {exc}\n"
    return code, rp.to_json(rep) if args.json else rp.to_text(rep)


def main(argv: Sequence[str] | None = None) -> int:
    code, out = run(argv)
    stream = sys.stderr if code == EXIT_INPUT else sys.stdout
    stream.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
