"""Exact linear algebra over GF(2) and its extensions GF(2^k).

Two matrix types share one set of operations:

* :class:`BitMatrix` packs each GF(2) row into a Python int.  Column ``c`` of
  an ``ncols``-wide row lives at bit ``ncols - 1 - c``, so the integer value
  of a row orders rows the same way as their bitstrings ``"0101..."`` do.
* :class:`ExtMatrix` stores rows of GF(2^k) elements as tuples of ints in the
  polynomial basis of a :class:`GF2k` field.

Everything uses the row-vector convention: ``v @ M`` multiplies a row from the
left, and subspaces are given by a matrix whose rows span them.
"""

from __future__ import annotations

from functools import lru_cache
import random
from typing import Iterable, Sequence, Union

__all__ = [
    "GF2k",
    "GFElement",
    "BitMatrix",
    "ExtMatrix",
    "rref",
    "rank",
    "left_kernel",
    "subspace_sum",
    "subspace_intersect",
    "orth_complement",
    "row_space_equal",
    "lex_least_irreducible",
    "is_irreducible_gf2",
]


# ---------------------------------------------------------------------------
# GF(2)[x] helpers on int-encoded polynomials (bit i = coefficient of x^i)
# ---------------------------------------------------------------------------

def _clmul(a: int, b: int) -> int:
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def _pmod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def is_irreducible_gf2(poly: int) -> bool:
    """Ben-Or test for irreducibility of an int-encoded polynomial over GF(2)."""
    k = poly.bit_length() - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x_pow = 2  # x
    for _ in range(k // 2):
        x_pow = _pmod(_clmul(x_pow, x_pow), poly)
        if _pgcd(poly, x_pow ^ 2) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def lex_least_irreducible(k: int) -> int:
    """Smallest-valued irreducible polynomial of degree ``k`` over GF(2).

    The value is read as a binary number with the leading coefficient first,
    so this is the lexicographically least irreducible, e.g. ``0x11B`` for
    ``k = 8`` and ``0x1002B`` for ``k = 16``.
    """
    if not 1 <= k <= 64:
        raise ValueError(f"extension degree must be in 1..64, got {k}")
    for low in range(1 << k):
        cand = (1 << k) | low
        if is_irreducible_gf2(cand):
            return cand
    raise AssertionError("unreachable: irreducibles exist in every degree")


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------

class GF2k:
    """The field GF(2^k) in polynomial basis, elements encoded as ints < 2^k."""

    def __init__(self, degree: int, modulus: int | None = None):
        if modulus is None:
            modulus = lex_least_irreducible(degree)
        if modulus.bit_length() - 1 != degree or not is_irreducible_gf2(modulus):
            raise ValueError(f"modulus {modulus:#x} is not irreducible of degree {degree}")
        self.degree = degree
        self.modulus = modulus
        self.order = 1 << degree

    def __repr__(self):
        return f"GF2k({self.degree}, modulus={self.modulus:#x})"

    def __eq__(self, other):
        return isinstance(other, GF2k) and (self.degree, self.modulus) == (other.degree, other.modulus)

    def __hash__(self):
        return hash((self.degree, self.modulus))

    def mul(self, a: int, b: int) -> int:
        if self.degree == 1:
            return a & b
        return _pmod(_clmul(a, b), self.modulus)

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^k)")
        # extended Euclid in GF(2)[x]
        r0, r1 = self.modulus, a
        s0, s1 = 0, 1
        while r1 != 1:
            shift = r0.bit_length() - r1.bit_length()
            if shift < 0:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            r0 ^= r1 << shift
            s0 ^= s1 << shift
            if r0.bit_length() < r1.bit_length():
                r0, r1, s0, s1 = r1, r0, s1, s0
        return _pmod(s1, self.modulus)

    def pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def random(self, rng: random.Random) -> int:
        return rng.getrandbits(self.degree)

    def __call__(self, value: int) -> "GFElement":
        return GFElement(self, value)

    @property
    def zero(self) -> "GFElement":
        return GFElement(self, 0)

    @property
    def one(self) -> "GFElement":
        return GFElement(self, 1)


GF2 = GF2k(1)


class GFElement:
    """A field element usable as a generic ring entry (``+``, ``*``, ``zero()``, ``one()``)."""

    __slots__ = ("field", "value")

    def __init__(self, field: GF2k, value: int):
        if not 0 <= value < field.order:
            raise ValueError(f"{value} is not an element of {field}")
        self.field = field
        self.value = value

    def __add__(self, other):
        if isinstance(other, int):
            other = self._lift(other)
        return GFElement(self.field, self.value ^ other.value)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other):
        if isinstance(other, int):
            other = self._lift(other)
        return GFElement(self.field, self.field.mul(self.value, other.value))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return GFElement(self.field, self.field.pow(self.value, e))

    def _lift(self, n: int) -> "GFElement":
        return GFElement(self.field, n & 1)

    def inverse(self) -> "GFElement":
        return GFElement(self.field, self.field.inv(self.value))

    def frobenius(self) -> "GFElement":
        return GFElement(self.field, self.field.square(self.value))

    def zero(self) -> "GFElement":
        return GFElement(self.field, 0)

    def one(self) -> "GFElement":
        return GFElement(self.field, 1)

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other
        return isinstance(other, GFElement) and self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field.degree, self.value))

    def __repr__(self):
        return f"GF(2^{self.field.degree})({self.value:#x})"


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

class BitMatrix:
    """Dense GF(2) matrix with each row packed into one int."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[int], ncols: int):
        self.rows = tuple(rows)
        self.ncols = ncols
        limit = 1 << ncols
        for r in self.rows:
            if not 0 <= r < limit:
                raise ValueError(f"row {r:#x} does not fit in {ncols} columns")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "BitMatrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            packed.append(int("".join(str(int(x) & 1) for x in row) or "0", 2))
        return cls(packed, ncols)

    @classmethod
    def from_bitstrings(cls, rows: Sequence[str]) -> "BitMatrix":
        ncols = len(rows[0]) if rows else 0
        return cls((int(r, 2) for r in rows), ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls((1 << (n - 1 - i) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls([0] * nrows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> (self.ncols - 1 - j)) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> (self.ncols - 1 - j)) & 1 for j in range(self.ncols)] for r in self.rows]

    def bitstrings(self) -> list[str]:
        return [format(r, f"0{self.ncols}b") if self.ncols else "" for r in self.rows]

    def transpose(self) -> "BitMatrix":
        n = self.nrows
        cols = []
        for c in range(self.ncols):
            bit = 1 << (self.ncols - 1 - c)
            cols.append(sum(1 << (n - 1 - i) for i, r in enumerate(self.rows) if r & bit))
        return BitMatrix(cols, n)

    def vec_mul(self, v: int) -> int:
        """Row vector ``v`` (packed, length ``nrows``) times this matrix."""
        out = 0
        n = self.nrows
        for i, r in enumerate(self.rows):
            if (v >> (n - 1 - i)) & 1:
                out ^= r
        return out

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return BitMatrix((other.vec_mul(r) for r in self.rows), other.ncols)

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return BitMatrix((a ^ b for a, b in zip(self.rows, other.rows)), self.ncols)

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.ncols:
            raise ValueError(f"ambient dimension mismatch: {self.ncols} vs {other.ncols}")
        return BitMatrix(self.rows + other.rows, self.ncols)

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return BitMatrix(((a << other.ncols) | b for a, b in zip(self.rows, other.rows)),
                         self.ncols + other.ncols)

    def columns(self, start: int, stop: int) -> "BitMatrix":
        width = stop - start
        mask = (1 << width) - 1
        shift = self.ncols - stop
        return BitMatrix(((r >> shift) & mask for r in self.rows), width)

    def select_rows(self, idx: Iterable[int]) -> "BitMatrix":
        return BitMatrix((self.rows[i] for i in idx), self.ncols)

    def row_is_zero(self, i: int) -> bool:
        return self.rows[i] == 0

    def _rref(self):
        rows = list(self.rows)
        pivots = []
        r = 0
        for c in range(self.ncols):
            bit = 1 << (self.ncols - 1 - c)
            p = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            for i in range(len(rows)):
                if i != r and rows[i] & bit:
                    rows[i] ^= rows[r]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return BitMatrix(rows, self.ncols), r, pivots

    def __eq__(self, other):
        return isinstance(other, BitMatrix) and self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        return hash((self.rows, self.ncols))

    def __repr__(self):
        return f"BitMatrix({self.bitstrings()!r})"


class ExtMatrix:
    """Dense matrix over a :class:`GF2k` field; entries are ints in polynomial basis."""

    __slots__ = ("field", "rows", "ncols")

    def __init__(self, field: GF2k, rows: Iterable[Sequence[int]], ncols: int | None = None):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def from_elements(cls, rows: Sequence[Sequence[GFElement]], field: GF2k | None = None) -> "ExtMatrix":
        if field is None:
            field = rows[0][0].field
        return cls(field, [[x.value for x in r] for r in rows])

    @classmethod
    def identity(cls, field: GF2k, n: int) -> "ExtMatrix":
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field: GF2k, nrows: int, ncols: int) -> "ExtMatrix":
        return cls(field, [[0] * ncols for _ in range(nrows)], ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def transpose(self) -> "ExtMatrix":
        return ExtMatrix(self.field, [list(c) for c in zip(*self.rows)] if self.rows else [], self.nrows)

    def vec_mul(self, v: Sequence[int]) -> tuple[int, ...]:
        mul = self.field.mul
        out = [0] * self.ncols
        for coef, row in zip(v, self.rows):
            if coef:
                for c, x in enumerate(row):
                    if x:
                        out[c] ^= mul(coef, x)
        return tuple(out)

    def __matmul__(self, other: "ExtMatrix") -> "ExtMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return ExtMatrix(self.field, [other.vec_mul(r) for r in self.rows], other.ncols)

    def __add__(self, other: "ExtMatrix") -> "ExtMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExtMatrix(self.field, [[a ^ b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                         self.ncols)

    def vstack(self, other: "ExtMatrix") -> "ExtMatrix":
        if self.ncols != other.ncols:
            raise ValueError(f"ambient dimension mismatch: {self.ncols} vs {other.ncols}")
        return ExtMatrix(self.field, self.rows + other.rows, self.ncols)

    def hstack(self, other: "ExtMatrix") -> "ExtMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return ExtMatrix(self.field, [a + b for a, b in zip(self.rows, other.rows)], self.ncols + other.ncols)

    def columns(self, start: int, stop: int) -> "ExtMatrix":
        return ExtMatrix(self.field, [r[start:stop] for r in self.rows], stop - start)

    def select_rows(self, idx: Iterable[int]) -> "ExtMatrix":
        return ExtMatrix(self.field, [self.rows[i] for i in idx], self.ncols)

    def row_is_zero(self, i: int) -> bool:
        return not any(self.rows[i])

    def _rref(self):
        f = self.field
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            inv = f.inv(rows[r][c])
            if inv != 1:
                rows[r] = [f.mul(inv, x) for x in rows[r]]
            pivot_row = rows[r]
            for i in range(len(rows)):
                factor = rows[i][c]
                if i != r and factor:
                    rows[i] = [x ^ f.mul(factor, y) for x, y in zip(rows[i], pivot_row)]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return ExtMatrix(f, rows, self.ncols), r, pivots

    def __eq__(self, other):
        return (isinstance(other, ExtMatrix) and self.field == other.field
                and self.ncols == other.ncols and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.rows, self.ncols))

    def __repr__(self):
        return f"ExtMatrix(GF(2^{self.field.degree}), {self.to_lists()!r})"


Matrix = Union[BitMatrix, ExtMatrix]


def _identity_like(M: Matrix, n: int) -> Matrix:
    if isinstance(M, BitMatrix):
        return BitMatrix.identity(n)
    return ExtMatrix.identity(M.field, n)


def _zeros_like(M: Matrix, nrows: int, ncols: int) -> Matrix:
    if isinstance(M, BitMatrix):
        return BitMatrix.zeros(nrows, ncols)
    return ExtMatrix.zeros(M.field, nrows, ncols)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def rref(M: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form.

    Returns ``(R, rank, pivots)`` where ``R`` has the same shape as ``M`` (zero
    rows at the bottom) and ``pivots`` lists the 0-based pivot columns.
    """
    return M._rref()


def rank(M: Matrix) -> int:
    return M._rref()[1]


def basis(M: Matrix) -> Matrix:
    """The nonzero rows of ``rref(M)``: a canonical basis of the row space."""
    R, r, _ = M._rref()
    return R.select_rows(range(r))


def row_space_equal(S1: Matrix, S2: Matrix) -> bool:
    return basis(S1) == basis(S2)


def left_kernel(M: Matrix) -> Matrix:
    """Basis of ``{v : v @ M = 0}``, as rows of length ``M.nrows``."""
    n, m = M.shape
    aug = M.hstack(_identity_like(M, n))
    R, r, pivots = rref(aug)
    # rows of R past the last pivot in the M-part have a zero M-part
    k = sum(1 for p in pivots if p < m)
    return R.columns(m, m + n).select_rows(range(k, n))


def subspace_sum(S1: Matrix, S2: Matrix) -> Matrix:
    return basis(S1.vstack(S2))


def subspace_intersect(S1: Matrix, S2: Matrix) -> Matrix:
    """Basis of the intersection of two row spaces (Zassenhaus)."""
    if S1.ncols != S2.ncols:
        raise ValueError(f"ambient dimension mismatch: {S1.ncols} vs {S2.ncols}")
    n = S1.ncols
    top = S1.hstack(S1)
    bottom = S2.hstack(_zeros_like(S2, S2.nrows, n))
    R, r, pivots = rref(top.vstack(bottom))
    k = sum(1 for p in pivots if p < n)
    return basis(R.columns(n, 2 * n).select_rows(range(k, r)))


def orth_complement(S: Matrix, n: int | None = None) -> Matrix:
    """Rows ``v`` of length ``n`` with ``sum_c v[c] * s[c] = 0`` for every row ``s`` of ``S``."""
    if n is None:
        n = S.ncols
    if S.ncols != n:
        raise ValueError(f"rows of S have length {S.ncols}, expected {n}")
    if S.nrows == 0:
        return _identity_like(S, n)
    return left_kernel(S.transpose())


def coordinates(basis_rows: Matrix, v: Matrix) -> Matrix | None:
    """Solve ``X @ basis_rows = v`` for ``X``; ``None`` when some row of ``v`` is outside the span.

    ``basis_rows`` must have independent rows.
    """
    d = basis_rows.nrows
    stacked = basis_rows.transpose()
    out = []
    for i in range(v.nrows):
        col = v.select_rows([i]).transpose()
        sol = _solve_right(stacked, col)
        if sol is None:
            return None
        out.append(sol)
    if isinstance(v, BitMatrix):
        return BitMatrix(out, d)
    return ExtMatrix(v.field, out, d)


def _solve_right(M: Matrix, col: Matrix):
    """Solve ``M x = col`` (``col`` an n x 1 column); returns x packed like a row, or None."""
    n, d = M.shape
    aug = M.hstack(col)
    R, r, pivots = rref(aug)
    if d in pivots:
        return None
    if isinstance(M, BitMatrix):
        x = 0
        for row_i, c in enumerate(pivots):
            if R.rows[row_i] & 1:
                x |= 1 << (d - 1 - c)
        return x
    x = [0] * d
    for row_i, c in enumerate(pivots):
        x[c] = R.rows[row_i][d]
    return x
