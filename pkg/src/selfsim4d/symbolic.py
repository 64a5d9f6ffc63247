"""Cofactor vectors of ``C = A + diag(u)`` and the Frobenius relation of the block.

For each direction ``j`` the minor of ``C`` obtained by deleting row ``i`` and
column ``j`` is a multilinear polynomial in the three ``u`` variables other
than ``u_j``.  Its eight coefficients, read in the order

    v1*v2*v3, v1*v2, v1*v3, v1, v2*v3, v2, v3, 1

(``v1 < v2 < v3`` the remaining ``u``'s), form the 8-row ``e_i^(j)`` in the
thick space of direction ``j``.  The block then satisfies

    e_i^(j) @ b_jk == a_jk**2 * e_i^(k)

for every ``i, j, k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .lattice import BlockOperator, block_product, thick_entry
from .polyring import Poly, VarId, coeff_extract, minor, substitute, symbolic_matrix, u

__all__ = [
    "DECODE_ORDER",
    "build_C",
    "decode_variables",
    "decode",
    "encode",
    "evec",
    "evec_rows",
    "symbolic_evec",
    "frobenius_map",
    "verify_frobenius",
    "FrobeniusReport",
]

# exponent pattern (v1, v2, v3) of coefficient x1..x8
DECODE_ORDER = (
    (1, 1, 1),
    (1, 1, 0),
    (1, 0, 1),
    (1, 0, 0),
    (0, 1, 1),
    (0, 1, 0),
    (0, 0, 1),
    (0, 0, 0),
)


def build_C(A: Sequence[Sequence[Poly]]) -> list[list[Poly]]:
    """``A + diag(u1, u2, u3, u4)``."""
    return [[A[i][j] + u(i + 1) if i == j else A[i][j] for j in range(4)] for i in range(4)]


def decode_variables(j: int) -> tuple[VarId, VarId, VarId]:
    return tuple(VarId.u(k) for k in range(1, 5) if k != j)


def decode(p: Poly, j: int) -> tuple[Poly, ...]:
    """The eight coefficients of ``p`` as a representing polynomial for direction ``j``."""
    vs = decode_variables(j)
    out = []
    for pattern in DECODE_ORDER:
        present = [v for v, bit in zip(vs, pattern) if bit]
        out.append(coeff_extract(p, present, vs))
    return tuple(out)


def encode(xs: Sequence[Poly], j: int) -> Poly:
    """Inverse of :func:`decode`: the representing polynomial of an 8-row."""
    vs = [Poly.var(v) for v in decode_variables(j)]
    total = Poly()
    for x, pattern in zip(xs, DECODE_ORDER):
        term = x
        for v, bit in zip(vs, pattern):
            if bit:
                term = term * v
        total = total + term
    return total


def evec(A: Sequence[Sequence[Poly]], i: int, j: int) -> tuple[Poly, ...]:
    """``e_i^(j)`` for a matrix of polynomials (symbolic or GF(2) constants)."""
    return decode(minor(build_C(A), i, j), j)


@lru_cache(maxsize=None)
def symbolic_evec(i: int, j: int) -> tuple[Poly, ...]:
    return evec(symbolic_matrix(), i, j)


def _is_poly_matrix(A) -> bool:
    return isinstance(A[0][0], Poly)


def _assignment(A) -> dict:
    return {VarId.a(r + 1, c + 1): A[r][c] for r in range(4) for c in range(4)}


def evec_rows(A: Sequence[Sequence], j: int) -> list[list]:
    """The four rows ``e_1^(j) .. e_4^(j)`` with entries in the ring of ``A``.

    Concrete field matrices are handled by specialising the symbolic cofactor
    vectors, so GF(2^k) entries work as well as GF(2) ones.
    """
    if _is_poly_matrix(A):
        return [list(evec(A, i, j)) for i in range(1, 5)]
    assignment = _assignment(A)
    return [[substitute(p, assignment) for p in symbolic_evec(i, j)] for i in range(1, 5)]


def frobenius_map(A: Sequence[Sequence]) -> list[list]:
    """Entrywise squaring."""
    return [[x * x for x in row] for row in A]


def _vecmat(v: Sequence, M: Sequence[Sequence]):
    out = []
    for c in range(len(M[0])):
        acc = v[0].zero()
        for x, row in zip(v, M):
            if not x.is_zero() and not row[c].is_zero():
                acc = acc + x * row[c]
        out.append(acc)
    return out


@dataclass
class FrobeniusReport:
    passed: bool
    failures: list[tuple[int, int]] = field(default_factory=list)
    # (j, k) -> rows of mat(j) @ b_jk - a_jk^2 * mat(k) that are nonzero
    differences: dict = field(default_factory=dict)

    def render(self) -> str:
        lines = []
        for j in range(1, 5):
            for k in range(1, 5):
                ok = (j, k) not in self.failures
                lines.append(f"({j},{k}) {'PASS' if ok else 'FAIL'}")
                if not ok:
                    for i, diff in self.differences[(j, k)]:
                        lines.append(f"    row e_{i}: " + ", ".join(str(d) for d in diff))
        return "\n".join(lines)


def verify_frobenius(A: Sequence[Sequence], B: BlockOperator | None = None) -> FrobeniusReport:
    """Check ``mat(j) @ b_jk == a_jk**2 * mat(k)`` for all sixteen ``(j, k)``."""
    if B is None:
        B = block_product(A)
    mats = {j: evec_rows(A, j) for j in range(1, 5)}
    Asq = frobenius_map(A)
    failures = []
    diffs = {}
    for j in range(1, 5):
        for k in range(1, 5):
            b = thick_entry(B, j, k)
            bad = []
            for i, (row_j, row_k) in enumerate(zip(mats[j], mats[k]), start=1):
                lhs = _vecmat(row_j, b)
                rhs = [Asq[j - 1][k - 1] * x for x in row_k]
                diff = [x + y for x, y in zip(lhs, rhs)]
                if any(not d.is_zero() for d in diff):
                    bad.append((i, diff))
            if bad:
                failures.append((j, k))
                diffs[(j, k)] = bad
    return FrobeniusReport(not failures, failures, diffs)
