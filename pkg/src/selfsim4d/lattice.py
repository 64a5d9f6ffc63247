"""The 2x2x2x2 block transfer operator built from sixteen copies of a vertex matrix.

Edges parallel to axis ``j`` are identified by the coordinates of the edge
with the j-th one dropped, and numbered lexicographically inside their
direction.  Linear edge indices are 1-based: direction ``j`` occupies indices
``(j-1)*8 + 1 .. j*8``.

The builder only needs ``+``, ``*``, ``zero()`` and ``one()`` from the matrix
entries, so the same code produces the symbolic block (entries
:class:`~selfsim4d.polyring.Poly`), the GF(2) block and GF(2^k) blocks.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .field_core import GF2, BitMatrix, ExtMatrix, GFElement

__all__ = [
    "edge_index",
    "vertices_in_order",
    "big_embed",
    "block_product",
    "thick_entry",
    "reversed_block_map",
    "BlockOperator",
    "bit_block",
]


def _check_coords(coords, length, q):
    if len(coords) != length or any(not 0 <= c < q for c in coords):
        raise ValueError(f"coordinates {coords!r} are not in {{0..{q - 1}}}^{length}")


def edge_index(direction: int, coords: Sequence[int], n: int = 4, q: int = 2) -> int:
    """1-based linear index of the edge along ``direction`` with edge coordinates ``coords``."""
    if not 1 <= direction <= n:
        raise ValueError(f"direction {direction} out of range 1..{n}")
    _check_coords(coords, n - 1, q)
    pos = 0
    for c in coords:
        pos = pos * q + c
    return (direction - 1) * q ** (n - 1) + pos + 1


def vertices_in_order(n: int = 4, q: int = 2) -> list[tuple[int, ...]]:
    """Vertices sorted by coordinate sum, lexicographic inside each layer."""
    allv = list(product(range(q), repeat=n))
    return [v for s in range(n * (q - 1) + 1) for v in allv if sum(v) == s]


def _edge_slots(v: Sequence[int], n: int, q: int) -> list[int]:
    # 0-based storage positions of the n edges through vertex v
    return [edge_index(i + 1, tuple(v[:i]) + tuple(v[i + 1:]), n, q) - 1 for i in range(n)]


def big_embed(A: Sequence[Sequence], v: Sequence[int], n: int = 4, q: int = 2) -> list[list]:
    """``A`` placed at vertex ``v``: the identity with the edges through ``v`` carrying ``A``."""
    _check_coords(v, n, q)
    if len(A) != n or any(len(r) != n for r in A):
        raise ValueError(f"vertex matrix must be {n}x{n}")
    zero, one = A[0][0].zero(), A[0][0].one()
    size = n * q ** (n - 1)
    M = [[one if r == c else zero for c in range(size)] for r in range(size)]
    m = _edge_slots(v, n, q)
    for i in range(n):
        for j in range(n):
            M[m[i]][m[j]] = A[i][j]
    return M


def _apply_vertex(M: list[list], A: Sequence[Sequence], slots: Sequence[int]) -> None:
    # M <- M @ big_embed(A, v): only the columns of the vertex's edges change
    n = len(slots)
    for row in M:
        old = [row[s] for s in slots]
        for j in range(n):
            acc = None
            for i in range(n):
                if old[i].is_zero():
                    continue
                term = old[i] * A[i][j]
                acc = term if acc is None else acc + term
            row[slots[j]] = acc if acc is not None else A[0][0].zero()


class BlockOperator:
    """The block matrix with thick-entry access; ``entries`` is a square list of lists."""

    def __init__(self, entries: list[list], n: int = 4, q: int = 2):
        self.entries = entries
        self.n = n
        self.q = q
        self.thick = q ** (n - 1)

    @property
    def size(self) -> int:
        return len(self.entries)

    def thick_entry(self, j: int, k: int) -> list[list]:
        return thick_entry(self, j, k)

    def transpose(self) -> "BlockOperator":
        return BlockOperator([list(c) for c in zip(*self.entries)], self.n, self.q)

    def __eq__(self, other):
        return isinstance(other, BlockOperator) and self.entries == other.entries

    def to_bitmatrix(self) -> BitMatrix:
        return BitMatrix.from_lists([[x.value for x in row] for row in self.entries])

    def to_extmatrix(self) -> ExtMatrix:
        return ExtMatrix.from_elements(self.entries)


def block_product(A: Sequence[Sequence], n: int = 4, q: int = 2, order=None) -> BlockOperator:
    """Product of ``big_embed(A, v)`` over all vertices, leftmost factor at the origin.

    ``order`` overrides the vertex sequence (used to test that reordering
    vertices inside a layer leaves the product unchanged).
    """
    zero, one = A[0][0].zero(), A[0][0].one()
    size = n * q ** (n - 1)
    M = [[one if r == c else zero for c in range(size)] for r in range(size)]
    for v in (order if order is not None else vertices_in_order(n, q)):
        _check_coords(v, n, q)
        _apply_vertex(M, A, _edge_slots(v, n, q))
    return BlockOperator(M, n, q)


def thick_entry(B: BlockOperator, j: int, k: int) -> list[list]:
    """The (j, k) thick matrix entry: rows of direction ``j``, columns of direction ``k``."""
    if not (1 <= j <= B.n and 1 <= k <= B.n):
        raise IndexError(f"thick entry ({j},{k}) out of range")
    r = B.thick
    return [row[(k - 1) * r:k * r] for row in B.entries[(j - 1) * r:j * r]]


def reversed_block_map(v: Sequence, thick: int = 8) -> list:
    """Reverse each ``thick``-long segment of a row (complements every edge coordinate)."""
    if len(v) % thick:
        raise ValueError(f"row length {len(v)} is not a multiple of {thick}")
    out = []
    for s in range(0, len(v), thick):
        out.extend(reversed(v[s:s + thick]))
    return out


def bit_block(A: Sequence[Sequence[int]]) -> BitMatrix:
    """Block of a 0/1 matrix as a 32x32 :class:`BitMatrix`."""
    Ag = [[GFElement(GF2, int(x) & 1) for x in row] for row in A]
    return block_product(Ag).to_bitmatrix()
