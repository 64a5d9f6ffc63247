"""Sparse polynomials over GF(2) in the twenty variables a11..a44, u1..u4.

A monomial is packed into one int: each variable owns a 16-bit exponent
field, with ``a11`` in the most significant field and ``u4`` in the least.
Multiplying monomials is then integer addition, and comparing the packed ints
compares exponent vectors lexicographically in the fixed variable order.

A :class:`Poly` is a frozenset of packed monomials; the GF(2) coefficient is
presence, so addition is symmetric difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Mapping, Sequence

__all__ = [
    "VarId",
    "VARIABLES",
    "Poly",
    "a",
    "u",
    "poly_add",
    "poly_mul",
    "determinant",
    "permanent",
    "minor",
    "coeff_extract",
    "substitute",
    "symbolic_matrix",
]

_BITS = 16
_FIELD = (1 << _BITS) - 1
_GUARD = 1 << (_BITS - 1)
NVARS = 20


@dataclass(frozen=True, order=True)
class VarId:
    """Either an entry variable ``a(i, j)`` or a diagonal variable ``u(k)``; indices are 1-based."""

    index: int

    @classmethod
    def a(cls, i: int, j: int) -> "VarId":
        if not (1 <= i <= 4 and 1 <= j <= 4):
            raise ValueError(f"a({i},{j}) out of range")
        return cls(4 * (i - 1) + (j - 1))

    @classmethod
    def u(cls, k: int) -> "VarId":
        if not 1 <= k <= 4:
            raise ValueError(f"u({k}) out of range")
        return cls(16 + k - 1)

    @property
    def kind(self) -> str:
        return "a" if self.index < 16 else "u"

    @property
    def indices(self) -> tuple[int, ...]:
        if self.index < 16:
            return (self.index // 4 + 1, self.index % 4 + 1)
        return (self.index - 15,)

    @property
    def name(self) -> str:
        return self.kind + "".join(map(str, self.indices))

    @property
    def _shift(self) -> int:
        return _BITS * (NVARS - 1 - self.index)

    def __repr__(self):
        return self.name


VARIABLES = tuple(VarId(k) for k in range(NVARS))
_A_VARS = frozenset(VARIABLES[:16])
_U_VARS = frozenset(VARIABLES[16:])

# every guard bit set; a monomial product overflowing into a guard bit is an error
_GUARD_MASK = sum(_GUARD << (_BITS * k) for k in range(NVARS))


def _exponent(mono: int, var: VarId) -> int:
    return (mono >> var._shift) & _FIELD


def _mono_mul(m1: int, m2: int) -> int:
    m = m1 + m2
    if m & _GUARD_MASK:
        raise OverflowError("monomial exponent exceeds supported range")
    return m


class Poly:
    """Immutable polynomial over GF(2)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[int] = ()):
        self.terms = terms if isinstance(terms, frozenset) else frozenset(terms)

    @classmethod
    def var(cls, v: VarId) -> "Poly":
        return cls(frozenset((1 << v._shift,)))

    @classmethod
    def const(cls, c: int) -> "Poly":
        return _ONE if c & 1 else _ZERO

    @classmethod
    def from_exponents(cls, monomials: Iterable[Mapping[VarId, int]]) -> "Poly":
        acc: set[int] = set()
        for expmap in monomials:
            m = 0
            for v, e in expmap.items():
                if not 0 <= e < _GUARD:
                    raise ValueError(f"exponent {e} out of range")
                m += e << v._shift
            acc ^= {m}
        return cls(frozenset(acc))

    # ring contract
    def zero(self) -> "Poly":
        return _ZERO

    def one(self) -> "Poly":
        return _ONE

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if isinstance(other, int):
            other = Poly.const(other)
        return Poly(self.terms ^ other.terms)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other):
        if isinstance(other, int):
            return self if other & 1 else _ZERO
        if not self.terms or not other.terms:
            return _ZERO
        if other.terms == _ONE.terms:
            return self
        if self.terms == _ONE.terms:
            return other
        acc: set[int] = set()
        for m1 in self.terms:
            for m2 in other.terms:
                acc ^= {_mono_mul(m1, m2)}
        return Poly(frozenset(acc))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        result = _ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def monomials(self) -> list[dict[VarId, int]]:
        """Exponent maps of the terms, in descending canonical order."""
        out = []
        for m in sorted(self.terms, reverse=True):
            out.append({v: e for v in VARIABLES if (e := _exponent(m, v))})
        return out

    def variables(self) -> frozenset[VarId]:
        return frozenset(v for m in self.terms for v in VARIABLES if _exponent(m, v))

    def degree_in(self, v: VarId) -> int:
        return max((_exponent(m, v) for m in self.terms), default=0)

    def frobenius(self) -> "Poly":
        # squaring is additive in characteristic 2
        return Poly(frozenset(_mono_mul(m, m) for m in self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for expmap in self.monomials():
            if not expmap:
                parts.append("1")
                continue
            parts.append("*".join(v.name if e == 1 else f"{v.name}^{e}" for v, e in expmap.items()))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({str(self)!r})"


_ZERO = Poly(frozenset())
_ONE = Poly(frozenset((0,)))


def a(i: int, j: int) -> Poly:
    return Poly.var(VarId.a(i, j))


def u(k: int) -> Poly:
    return Poly.var(VarId.u(k))


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def symbolic_matrix() -> list[list[Poly]]:
    """The 4x4 matrix whose (i, j) entry is the indeterminate ``a_ij``."""
    return [[a(i, j) for j in range(1, 5)] for i in range(1, 5)]


def determinant(M: Sequence[Sequence]):
    """Determinant by cofactor expansion along the first row.

    Works for any commutative ring of characteristic 2 whose elements support
    ``+``, ``*`` and ``one()``; signs are dropped since ``-1 = 1``.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        raise ValueError("determinant of an empty matrix needs a ring; pass a 1x1 or larger matrix")
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] + M[0][1] * M[1][0]
    total = None
    for c in range(n):
        entry = M[0][c]
        if isinstance(entry, Poly) and entry.is_zero():
            continue
        sub = [row[:c] + row[c + 1:] for row in M[1:]]
        term = entry * determinant(sub)
        total = term if total is None else total + term
    if total is None:
        return M[0][0].zero()
    return total


def permanent(M: Sequence[Sequence]):
    """Permanent by summing over all permutations; equals the determinant in characteristic 2."""
    n = len(M)
    total = M[0][0].zero()
    for perm in permutations(range(n)):
        term = M[0][0].one()
        for r, c in enumerate(perm):
            term = term * M[r][c]
        total = total + term
    return total


def minor(C: Sequence[Sequence], i: int, j: int):
    """Determinant of ``C`` with row ``i`` and column ``j`` deleted (1-based)."""
    n = len(C)
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"minor index ({i},{j}) out of range for {n}x{n}")
    sub = [list(row[:j - 1]) + list(row[j:]) for r, row in enumerate(C, start=1) if r != i]
    return determinant(sub)


def coeff_extract(p: Poly, present: Iterable[VarId], scope: Iterable[VarId]) -> Poly:
    """Coefficient of ``prod(present)`` in ``p`` viewed as a polynomial in the ``scope`` variables.

    ``p`` must have degree at most 1 in every scope variable; a violation
    raises ``ValueError``.  The result contains no scope variables.
    """
    present = frozenset(present)
    scope = frozenset(scope)
    if not present <= scope:
        raise ValueError("present variables must be a subset of scope")
    scope_mask = 0
    want = 0
    for v in scope:
        scope_mask |= _FIELD << v._shift
        if v in present:
            want |= 1 << v._shift
    out = set()
    for m in p.terms:
        part = m & scope_mask
        for v in scope:
            if _exponent(part, v) > 1:
                raise ValueError(f"polynomial is not multilinear in {v.name}")
        if part == want:
            out.add(m - part)
    return Poly(frozenset(out))


def substitute(p: Poly, assignment: Mapping[VarId, object]):
    """Evaluate ``p`` at the given variable values.

    Values may be field elements (anything with ``+``, ``*``, ``**``, ``one()``)
    or :class:`Poly`.  If every variable of ``p`` is assigned and the values
    are field elements, a field element is returned; otherwise the unassigned
    variables stay symbolic and a :class:`Poly` is returned (which then
    requires the assigned values to be GF(2) constants or polynomials).
    """
    vars_in_p = p.variables()
    full = vars_in_p <= set(assignment)
    sample = next(iter(assignment.values()), None)
    if full and sample is not None and not isinstance(sample, Poly):
        zero = sample.zero()
        one = sample.one()
        total = zero
        for expmap in p.monomials():
            term = one
            for v, e in expmap.items():
                term = term * (assignment[v] ** e)
            total = total + term
        return total
    total = _ZERO
    for expmap in p.monomials():
        term = _ONE
        for v, e in expmap.items():
            if v in assignment:
                val = assignment[v]
                term = term * _as_poly(val) ** e
            else:
                term = term * Poly.var(v) ** e
        total = total + term
    return total


def _as_poly(val) -> Poly:
    if isinstance(val, Poly):
        return val
    if isinstance(val, int):
        return Poly.const(val)
    # GF(2) field element
    field = getattr(val, "field", None)
    if field is not None and field.degree == 1:
        return Poly.const(val.value)
    raise TypeError(f"cannot mix {val!r} into a GF(2) polynomial")
