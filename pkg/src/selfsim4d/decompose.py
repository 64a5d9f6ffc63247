"""Invariant graded subspaces of a concrete block and their action matrices.

A graded subspace is a tuple of four row spaces, one inside each thick space.
It is invariant when every thick entry ``b_jk`` maps its ``j`` component into
its ``k`` component; the action on it is then a 4x4 grid of cells ``M_jk``
with ``basis_j @ b_jk == M_jk @ basis_k``.

Over GF(2) the search engine closes single seed vectors under the block
("spin closures") and assembles a direct-sum decomposition of the 32-dim
space from them.  Over GF(2^k) the module builds the cofactor space ``W``
and its invariant complement ``W'`` for randomised checks.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
import random
from typing import Iterable, Sequence

from . import catalog
from .field_core import (
    GF2,
    BitMatrix,
    ExtMatrix,
    GF2k,
    GFElement,
    basis,
    coordinates,
    orth_complement,
    rank,
    rref,
    subspace_intersect,
)
from .lattice import block_product
from .symbolic import evec_rows

__all__ = [
    "DegenerateSpecialization",
    "InvariantViolation",
    "GradedSubspace",
    "CellActionMatrix",
    "SummandReport",
    "Decomposition",
    "FlowState",
    "as_field_matrix",
    "block_matrix",
    "thick",
    "is_invariant",
    "build_W",
    "build_WT",
    "build_Wprime",
    "verify_worked_example",
    "graded_spin",
    "spin_closures",
    "find_decomposition",
    "action_matrix",
    "classify_summand",
    "default_dictionary",
    "decompose_matrix",
    "transpose_decomposition",
    "iterate_flow",
    "randomized_summand_check",
]

THICK = 8
NDIR = 4


class DegenerateSpecialization(ValueError):
    """A generic-position property fails at this particular matrix."""

    def __init__(self, check: str, detail: str = ""):
        super().__init__(f"{check}: {detail}" if detail else check)
        self.check = check
        self.detail = detail


class InvariantViolation(RuntimeError):
    """A property that holds identically failed; this indicates a bug."""


# ---------------------------------------------------------------------------
# Small helpers
# ---------------------------------------------------------------------------

def as_field_matrix(A) -> list[list[GFElement]]:
    """Lift a 4x4 matrix of 0/1 ints to GF(2) elements; field elements pass through."""
    if isinstance(A[0][0], GFElement):
        return [list(r) for r in A]
    return [[GFElement(GF2, int(x) & 1) for x in row] for row in A]


def _to_matrix(rows: Sequence[Sequence[GFElement]], field: GF2k, ncols: int = THICK):
    if field.degree == 1:
        return BitMatrix.from_lists([[x.value for x in r] for r in rows], ncols) if rows else BitMatrix([], ncols)
    return ExtMatrix(field, [[x.value for x in r] for r in rows], ncols)


def _empty(field: GF2k, ncols: int = THICK):
    return BitMatrix([], ncols) if field.degree == 1 else ExtMatrix(field, [], ncols)


def block_matrix(A) -> BitMatrix | ExtMatrix:
    """The 32x32 block of a concrete matrix as a :class:`BitMatrix` (GF(2)) or :class:`ExtMatrix`."""
    Af = as_field_matrix(A)
    B = block_product(Af)
    return B.to_bitmatrix() if Af[0][0].field.degree == 1 else B.to_extmatrix()


def thick(B, j: int, k: int):
    """Thick entry ``b_jk`` (1-based) of a 32x32 matrix."""
    return B.select_rows(range((j - 1) * THICK, j * THICK)).columns((k - 1) * THICK, k * THICK)


def _independent_prefix(M):
    # rows of M kept in order, skipping any that depend on earlier ones
    keep = []
    for i in range(M.nrows):
        if rank(M.select_rows(keep + [i])) == len(keep) + 1:
            keep.append(i)
    return M.select_rows(keep)


# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedSubspace:
    """Four bases ``S_1..S_4``; each is a matrix with 8 columns and independent rows."""

    components: tuple

    def __post_init__(self):
        if len(self.components) != NDIR:
            raise ValueError("a graded subspace has exactly four components")
        for S in self.components:
            if S.ncols != THICK:
                raise ValueError("components must have 8 columns")
            if rank(S) != S.nrows:
                raise ValueError("component rows must be independent")

    @classmethod
    def from_bitstrings(cls, comps: Sequence[Sequence[str]]) -> "GradedSubspace":
        return cls(tuple(BitMatrix.from_bitstrings(list(c)) if c else BitMatrix([], THICK) for c in comps))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(S.nrows for S in self.components)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def canonical(self) -> "GradedSubspace":
        return GradedSubspace(tuple(basis(S) for S in self.components))

    def same_space(self, other: "GradedSubspace") -> bool:
        return self.canonical() == other.canonical()

    def bitstrings(self) -> list[list[str]]:
        return [S.bitstrings() for S in self.components]

    def __add__(self, other: "GradedSubspace") -> "GradedSubspace":
        return GradedSubspace(tuple(basis(S.vstack(T)) for S, T in zip(self.components, other.components)))


@dataclass(frozen=True)
class CellActionMatrix:
    """``cells[j][k]`` is the ``d_j x d_k`` matrix ``M_jk`` as nested tuples of ints."""

    dims: tuple[int, ...]
    cells: tuple

    def cell(self, j: int, k: int):
        """1-based cell access."""
        return self.cells[j - 1][k - 1]

    def full(self) -> tuple[tuple[int, ...], ...]:
        """The assembled square matrix, directions in order."""
        rows = []
        for j in range(NDIR):
            for r in range(self.dims[j]):
                row = []
                for k in range(NDIR):
                    row.extend(self.cells[j][k][r])
                rows.append(tuple(row))
        return tuple(rows)

    def uniform_size(self) -> int | None:
        d = self.dims[0]
        return d if all(x == d for x in self.dims) else None

    def scalar_matrix(self) -> tuple | None:
        """If every cell is ``c * identity``, the 4x4 matrix of the scalars ``c``."""
        d = self.uniform_size()
        if not d:
            return None
        out = []
        for j in range(NDIR):
            row = []
            for k in range(NDIR):
                cell = self.cells[j][k]
                c = cell[0][0]
                if any(cell[r][s] != (c if r == s else 0) for r in range(d) for s in range(d)):
                    return None
                row.append(c)
            out.append(tuple(row))
        return tuple(out)

    def block_transpose(self) -> "CellActionMatrix":
        """Cells ``M'_jk = transpose(M_kj)``: the action on the dual summand of the transposed block."""
        cells = tuple(
            tuple(tuple(zip(*self.cells[k][j])) if self.dims[j] and self.dims[k]
                  else tuple(() for _ in range(self.dims[j])) for k in range(NDIR))
            for j in range(NDIR))
        return CellActionMatrix(self.dims, cells)

    @classmethod
    def from_full(cls, M: Sequence[Sequence[int]], d: int) -> "CellActionMatrix":
        cells = tuple(
            tuple(tuple(tuple(M[j * d + r][k * d + s] for s in range(d)) for r in range(d)) for k in range(NDIR))
            for j in range(NDIR))
        return cls((d,) * NDIR, cells)


@dataclass
class SummandReport:
    subspace: GradedSubspace
    action: CellActionMatrix
    label: str
    multiplicity: int = 1
    origin: str = "search"

    @property
    def dims(self) -> tuple[int, ...]:
        return self.subspace.dims


@dataclass
class Decomposition:
    """Summands found for one block plus the per-direction dimension left unresolved."""

    matrix: tuple
    summands: list[SummandReport]
    remainder: tuple[int, ...]
    derived_from_transpose: bool = False

    @property
    def remainder_dim(self) -> int:
        return sum(self.remainder)

    def label_multiset(self) -> Counter:
        c = Counter()
        for s in self.summands:
            c[s.label] += s.multiplicity
        return c

    def dimension_accounting(self) -> tuple[int, ...]:
        tot = list(self.remainder)
        for s in self.summands:
            for j, d in enumerate(s.dims):
                tot[j] += d
        return tuple(tot)


@dataclass
class FlowState:
    step: int
    blocks: list[tuple[str, Decomposition]]

    def label_multiset(self) -> Counter:
        c = Counter()
        for _, dec in self.blocks:
            c.update(dec.label_multiset())
        return c

    @property
    def remainder_dim(self) -> int:
        return sum(dec.remainder_dim for _, dec in self.blocks)


# ---------------------------------------------------------------------------
# Invariance and actions
# ---------------------------------------------------------------------------

def is_invariant(B, S: GradedSubspace) -> bool:
    for j in range(1, NDIR + 1):
        Sj = S.components[j - 1]
        if Sj.nrows == 0:
            continue
        for k in range(1, NDIR + 1):
            Sk = S.components[k - 1]
            img = Sj @ thick(B, j, k)
            if rank(Sk.vstack(img)) != Sk.nrows:
                return False
    return True


def _matrix_rows(M) -> tuple:
    if isinstance(M, BitMatrix):
        return tuple(tuple(r) for r in M.to_lists())
    return tuple(tuple(r) for r in M.rows)


def action_matrix(B, S: GradedSubspace) -> CellActionMatrix:
    """Solve ``basis(S_j) @ b_jk == M_jk @ basis(S_k)`` cell by cell.

    Raises :class:`InvariantViolation` if ``S`` is not invariant.
    """
    cells = []
    for j in range(1, NDIR + 1):
        Sj = S.components[j - 1]
        row = []
        for k in range(1, NDIR + 1):
            Sk = S.components[k - 1]
            if Sj.nrows == 0:
                row.append(())
                continue
            img = Sj @ thick(B, j, k)
            if Sk.nrows == 0:
                if any(not img.row_is_zero(i) for i in range(img.nrows)):
                    raise InvariantViolation(f"subspace not invariant at ({j},{k})")
                row.append(tuple(() for _ in range(Sj.nrows)))
                continue
            X = coordinates(Sk, img)
            if X is None:
                raise InvariantViolation(f"subspace not invariant at ({j},{k})")
            row.append(_matrix_rows(X))
        cells.append(tuple(row))
    return CellActionMatrix(S.dims, tuple(cells))


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def _gl2():
    out = []
    for a, b, c, d in product((0, 1), repeat=4):
        if (a * d + b * c) % 2:
            out.append(((a, b), (c, d)))
    return out


_GL2 = _gl2()


def _mm2(X, Y):
    return tuple(tuple((X[i][0] * Y[0][j] + X[i][1] * Y[1][j]) % 2 for j in range(2)) for i in range(2))


_GL2_INV = {P: next(Q for Q in _GL2 if _mm2(P, Q) == ((1, 0), (0, 1))) for P in _GL2}


def _equivalent_d2(M: CellActionMatrix, D: CellActionMatrix) -> bool:
    # M_jk == P_j D_jk P_k^-1 for some P in GL(2, F2)^4
    for Ps in product(_GL2, repeat=NDIR):
        if all(M.cells[j][k] == _mm2(_mm2(Ps[j], D.cells[j][k]), _GL2_INV[Ps[k]])
               for j in range(NDIR) for k in range(NDIR)):
            return True
    return False


def _tuple_matrix(M) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in M)


def default_dictionary() -> list[tuple[str, tuple]]:
    """Named reference actions: 4x4 matrices for 1-dim cells, 8x8 for 2-dim cells."""
    return [
        ("A", _tuple_matrix(catalog.A_EXAMPLE)),
        ("A1", _tuple_matrix(catalog.A1)),
        ("R", _tuple_matrix(catalog.R_MATRIX)),
    ]


def classify_summand(M: CellActionMatrix, dictionary: Sequence[tuple[str, tuple]]) -> tuple[str, int]:
    """Return ``(label, multiplicity)`` for a GF(2) cell action.

    Cells that are all scalar multiples of the identity reduce to a 4x4
    matrix, compared exactly (``name`` or ``name-transpose``) with multiplicity
    equal to the cell size.  Otherwise 2x2 cells are compared up to a change
    of basis in each direction (``name-class`` / ``name-transpose-class``).
    """
    scalar = M.scalar_matrix()
    if scalar is not None:
        for name, D in dictionary:
            if len(D) != NDIR:
                continue
            if scalar == D:
                return name, M.dims[0]
            if scalar == tuple(zip(*D)):
                return f"{name}-transpose", M.dims[0]
        return "unknown", M.dims[0]
    if M.uniform_size() == 2:
        for name, D in dictionary:
            if len(D) != 2 * NDIR:
                continue
            Dc = CellActionMatrix.from_full(D, 2)
            if _equivalent_d2(M, Dc):
                return f"{name}-class", 1
            if _equivalent_d2(M, Dc.block_transpose()):
                return f"{name}-transpose-class", 1
    return "unknown", 1


# ---------------------------------------------------------------------------
# The cofactor space W and its invariant complement
# ---------------------------------------------------------------------------

def _field_of(Af) -> GF2k:
    return Af[0][0].field


def build_W(A) -> GradedSubspace:
    """Span of the specialised cofactor vectors, keeping the ``e_1..e_4`` order where independent."""
    Af = as_field_matrix(A)
    f = _field_of(Af)
    comps = []
    for j in range(1, NDIR + 1):
        comps.append(_independent_prefix(_to_matrix(evec_rows(Af, j), f)))
    return GradedSubspace(tuple(comps))


def _reverse_rows(M):
    if isinstance(M, BitMatrix):
        return BitMatrix.from_lists([r[::-1] for r in M.to_lists()], M.ncols)
    return ExtMatrix(M.field, [r[::-1] for r in M.rows], M.ncols)


def build_WT(A) -> GradedSubspace:
    """Cofactor space of the transposed matrix with each thick row reversed (invariant under ``B^T``)."""
    Af = as_field_matrix(A)
    At = [list(c) for c in zip(*Af)]
    W_At = build_W(At)
    return GradedSubspace(tuple(_reverse_rows(S) for S in W_At.components))


def build_Wprime(A, B=None) -> GradedSubspace:
    """Invariant complement of ``W``: the orthogonal complement of :func:`build_WT`, direction by direction.

    Raises :class:`DegenerateSpecialization` naming the failed check when the
    matrix is special (collapsed cofactor vectors, or ``W`` meeting ``W'``);
    raises :class:`InvariantViolation` if an identity that must hold fails.
    """
    Af = as_field_matrix(A)
    if B is None:
        B = block_matrix(Af)
    W = build_W(Af)
    if W.dim != 16:
        raise DegenerateSpecialization("rank(W)", f"dims {W.dims}")
    if not is_invariant(B, W):
        raise InvariantViolation("W is not invariant under B")
    WT = build_WT(Af)
    if WT.dim != 16:
        raise DegenerateSpecialization("rank(W_T)", f"dims {WT.dims}")
    if not is_invariant(B.transpose(), WT):
        raise InvariantViolation("W_T is not invariant under B^T")
    Wp = GradedSubspace(tuple(orth_complement(S, THICK) for S in WT.components))
    if Wp.dim != 16:
        raise DegenerateSpecialization("rank(W')", f"dims {Wp.dims}")
    for j, (S, T) in enumerate(zip(W.components, Wp.components), start=1):
        if subspace_intersect(S, T).nrows:
            raise DegenerateSpecialization("W∩W'", f"nonzero intersection in direction {j}")
        if rank(S.vstack(T)) != THICK:
            raise DegenerateSpecialization("W⊕W'", f"sum is not V_{j}")
    if not is_invariant(B, Wp):
        raise InvariantViolation("W' is not invariant under B")
    return Wp


@dataclass
class SummandCheckReport:
    trials: int
    ext_degree: int
    modulus: int
    seed: int
    passes: int = 0
    failures: list = field(default_factory=list)
    degenerate: int = 0
    degenerate_checks: Counter = field(default_factory=Counter)
    unresolved: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def randomized_summand_check(trials: int, ext_degree: int, seed: int,
                             max_redraws: int = 1000) -> SummandCheckReport:
    """Draw matrices with uniform GF(2^k) entries and run the complement construction on each.

    Degenerate draws are counted and redrawn; a trial whose redraw budget runs
    out is counted as unresolved.  Any :class:`InvariantViolation` is a failure.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    fld = GF2k(ext_degree)
    rng = random.Random(seed)
    rep = SummandCheckReport(trials, ext_degree, fld.modulus, seed)
    for t in range(trials):
        for _ in range(max_redraws):
            A = [[GFElement(fld, fld.random(rng)) for _ in range(4)] for _ in range(4)]
            try:
                build_Wprime(A)
            except DegenerateSpecialization as exc:
                rep.degenerate += 1
                rep.degenerate_checks[exc.check] += 1
                continue
            except InvariantViolation as exc:
                rep.failures.append((t, str(exc)))
            else:
                rep.passes += 1
            break
        else:
            rep.unresolved += 1
    return rep


# ---------------------------------------------------------------------------
# The worked example
# ---------------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def verify_worked_example(A=catalog.A_EXAMPLE) -> list[CheckResult]:
    """Exact checks of the four-summand splitting of the example block."""
    B = block_matrix(A)
    results = []
    A1 = catalog.A1
    A2 = catalog.A2
    F = [BitMatrix.from_bitstrings([s]) for s in catalog.F_VECTORS]
    G = [BitMatrix.from_bitstrings([s]) for s in catalog.G_VECTORS]
    H = [BitMatrix.from_bitstrings(list(p)) for p in catalog.H_PAIRS]
    Rc = CellActionMatrix.from_full(catalog.R_MATRIX, 2)

    W = build_W(A)
    results.append(CheckResult("W dims", W.dims == (4, 4, 4, 4), str(W.dims)))
    scal = action_matrix(B, W).scalar_matrix()
    results.append(CheckResult("W action = A", scal == _tuple_matrix(A), str(scal)))

    def one_dim(name, vecs, M):
        bad = []
        for j in range(1, 5):
            for k in range(1, 5):
                lhs = vecs[j - 1] @ thick(B, j, k)
                rhs = vecs[k - 1] if M[j - 1][k - 1] else BitMatrix.zeros(1, THICK)
                if lhs != rhs:
                    bad.append((j, k))
        results.append(CheckResult(name, not bad, f"failing cells {bad}" if bad else ""))

    one_dim("f relations (A1)", F, A1)
    one_dim("g relations (A2 = A1^T)", G, A2)
    results.append(CheckResult("A2 is transpose of A1", A2 == tuple(zip(*A1))))

    bad = []
    for j in range(1, 5):
        for k in range(1, 5):
            lhs = H[j - 1] @ thick(B, j, k)
            rhs = BitMatrix.from_lists([list(r) for r in Rc.cell(j, k)]) @ H[k - 1]
            if lhs != rhs:
                bad.append((j, k))
    results.append(CheckResult("h relations (R)", not bad, f"failing cells {bad}" if bad else ""))
    results.append(CheckResult("R_34 cell", Rc.cell(3, 4) == ((0, 0), (1, 1)), str(Rc.cell(3, 4))))

    dims_ok = True
    for j in range(4):
        stack = W.components[j].vstack(F[j]).vstack(G[j]).vstack(H[j])
        if stack.nrows != THICK or rank(stack) != THICK:
            dims_ok = False
    results.append(CheckResult("V_j = W_j + F_j + G_j + H_j direct, dims (4,1,1,2)", dims_ok))
    return results


# ---------------------------------------------------------------------------
# Search engine over GF(2)
# ---------------------------------------------------------------------------

class _Tables:
    """For each thick entry, the image of all 256 rows of V_j."""

    def __init__(self, B: BitMatrix):
        self.tab = {}
        for j in range(NDIR):
            for k in range(NDIR):
                rows = thick(B, j + 1, k + 1).rows
                t = [0] * 256
                for v in range(1, 256):
                    low = v & -v
                    i = 7 - (low.bit_length() - 1)
                    t[v] = t[v ^ low] ^ rows[i]
                self.tab[j, k] = t

    def image(self, j: int, k: int, v: int) -> int:
        return self.tab[j, k][v]


def _reduce(ech: list[int], v: int) -> int:
    # ech sorted descending with distinct leading bits
    for b in ech:
        if v ^ b < v:
            v ^= b
    return v


def _insert(ech: list[int], v: int) -> int:
    v = _reduce(ech, v)
    if v:
        ech.append(v)
        ech.sort(reverse=True)
    return v


def _canon_rows(rows: Iterable[int]) -> tuple[int, ...]:
    R, r, _ = rref(BitMatrix(list(rows), THICK))
    return R.rows[:r]


def _closure_rows(tables: _Tables, j: int, seed: int, rng: random.Random | None = None):
    ech = [[] for _ in range(NDIR)]
    _insert(ech[j], seed)
    queue = [(j, seed)]
    while queue:
        idx = rng.randrange(len(queue)) if rng is not None else len(queue) - 1
        jj, v = queue.pop(idx)
        ks = list(range(NDIR))
        if rng is not None:
            rng.shuffle(ks)
        for k in ks:
            img = tables.image(jj, k, v)
            if img and _insert(ech[k], img):
                queue.append((k, img))
    return tuple(_canon_rows(e) for e in ech)


def _as_seed(seed) -> int:
    if isinstance(seed, str):
        return int(seed, 2)
    if isinstance(seed, BitMatrix):
        return seed.rows[0]
    return int(seed)


def graded_spin(B: BitMatrix, direction: int, seed, rng: random.Random | None = None) -> GradedSubspace:
    """Smallest graded invariant subspace containing ``seed`` placed in ``V_direction``.

    ``rng`` randomises the order in which images are processed; the result
    does not depend on it.
    """
    s = _as_seed(seed)
    if not 0 < s < 256:
        raise ValueError("seed must be a nonzero 8-bit row")
    rows = _closure_rows(_Tables(B), direction - 1, s, rng)
    return GradedSubspace(tuple(BitMatrix(r, THICK) for r in rows))


def spin_closures(B: BitMatrix) -> list[tuple[tuple[int, ...], ...]]:
    """Distinct closures of all 1020 nonzero single-direction seeds, canonical and sorted.

    Sort key: total dimension, then the per-direction reduced rows.
    """
    tables = _Tables(B)
    seen = set()
    for j in range(NDIR):
        for s in range(1, 256):
            seen.add(_closure_rows(tables, j, s))
    return sorted(seen, key=lambda c: (sum(len(x) for x in c), c))


def _try_add(ech, cand) -> list | None:
    new = [list(e) for e in ech]
    for j in range(NDIR):
        for v in cand[j]:
            if not _insert(new[j], v):
                return None
    return new


def find_decomposition(B: BitMatrix, known: Sequence[GradedSubspace] = (), dictionary=None,
                       node_budget: int = 200_000) -> Decomposition:
    """Direct-sum decomposition of the block into ``known`` plus spin closures.

    Closures are tried smallest first; the depth-first search returns as soon
    as the chosen closures and ``known`` span all 32 dimensions, otherwise the
    largest independent family seen within ``node_budget`` candidate tests.
    Spans already shown not to extend to all of V are remembered and skipped.
    """
    if dictionary is None:
        dictionary = default_dictionary()
    ech = [[] for _ in range(NDIR)]
    for S in known:
        for j, comp in enumerate(S.components):
            for v in comp.rows:
                if not _insert(ech[j], v):
                    raise ValueError("known subspaces are not independent")
    start_dim = sum(len(e) for e in ech)
    cands = [c for c in spin_closures(B) if _try_add(ech, c) is not None]

    best = {"dim": start_dim, "chosen": []}
    work = 0
    dead = set()
    full = NDIR * THICK

    def key(cur):
        return tuple(_canon_rows(e) for e in cur)

    def dfs(pool, cur, dim, chosen):
        # pool: indices of candidates still independent of cur
        nonlocal work
        if dim > best["dim"]:
            best["dim"], best["chosen"] = dim, list(chosen)
        if dim == full:
            return True
        k = key(cur)
        if k in dead or work >= node_budget:
            return False
        reach = [list(e) for e in cur]
        for t in pool:
            for j in range(NDIR):
                for v in cands[t][j]:
                    _insert(reach[j], v)
        if sum(len(e) for e in reach) < full:
            dead.add(k)
            return False
        for n, t in enumerate(pool):
            new = _try_add(cur, cands[t])
            rest = []
            for t2 in pool[n + 1:]:
                work += 1
                if work >= node_budget:
                    return False
                if _try_add(new, cands[t2]) is not None:
                    rest.append(t2)
            chosen.append(t)
            if dfs(rest, new, dim + sum(len(x) for x in cands[t]), chosen):
                return True
            chosen.pop()
        dead.add(k)
        return False

    dfs(list(range(len(cands))), ech, start_dim, [])

    summands = []
    for S in known:
        summands.append(_report(B, S, dictionary, "known"))
    for t in best["chosen"]:
        S = GradedSubspace(tuple(BitMatrix(r, THICK) for r in cands[t]))
        summands.append(_report(B, S, dictionary, "search"))
    used = [0] * NDIR
    for s in summands:
        for j, d in enumerate(s.dims):
            used[j] += d
    remainder = tuple(THICK - x for x in used)
    return Decomposition((), summands, remainder)


def _report(B, S: GradedSubspace, dictionary, origin: str) -> SummandReport:
    if not is_invariant(B, S):
        raise InvariantViolation("reported summand is not invariant")
    act = action_matrix(B, S)
    label, mult = classify_summand(act, dictionary)
    return SummandReport(S, act, label, mult, origin)


def decompose_matrix(A, dictionary=None, node_budget: int = 200_000) -> Decomposition:
    """Block of a binary matrix, its cofactor space ``W`` as known summand, then the closure search.

    When the cofactor vectors collapse, ``W`` enters with its true smaller dimension.
    """
    Mx = _tuple_matrix(A)
    if dictionary is None:
        dictionary = default_dictionary()
        if not any(D == Mx or D == tuple(zip(*Mx)) for _, D in dictionary if len(D) == NDIR):
            dictionary.append(("input", Mx))
    B = block_matrix(Mx)
    W = build_W(Mx)
    known = [W] if W.dim else []
    dec = find_decomposition(B, known, dictionary, node_budget)
    dec.matrix = Mx
    return dec


# ---------------------------------------------------------------------------
# Transpose symmetry
# ---------------------------------------------------------------------------

def _inverse_bits(G: BitMatrix) -> BitMatrix:
    n = G.nrows
    R, r, piv = rref(G.hstack(BitMatrix.identity(n)))
    if r < n or piv[:n] != list(range(n)):
        raise InvariantViolation("pairing between a summand and its dual is singular")
    return R.columns(n, 2 * n)


def transpose_decomposition(dec: Decomposition, dictionary=None) -> Decomposition:
    """Decomposition of the transposed matrix's block derived from ``dec`` without a new search.

    For a complete decomposition ``V = S_1 + ... + S_m`` of ``B``, the spaces
    ``T_i = (sum of S_l, l != i)^perp`` are invariant under ``B^T`` with
    block-transposed cell actions in the dual basis; reversing every thick row
    carries them to invariant summands of the transposed matrix's block.
    Summands are re-verified against that block.
    """
    if dec.remainder_dim:
        raise ValueError("only complete decompositions can be transposed")
    if dictionary is None:
        dictionary = default_dictionary()
    Mt = tuple(zip(*dec.matrix))
    Bt = block_matrix(Mt)
    new = []
    for i, s in enumerate(dec.summands):
        comps = []
        for j in range(NDIR):
            others = BitMatrix([], THICK)
            for l, o in enumerate(dec.summands):
                if l != i:
                    others = others.vstack(o.subspace.components[j])
            T = orth_complement(others, THICK)
            S = s.subspace.components[j]
            if T.nrows != S.nrows:
                raise InvariantViolation("dual summand has the wrong dimension")
            if S.nrows:
                gram = T @ S.transpose()
                T = _inverse_bits(gram) @ T
            comps.append(_reverse_rows(T))
        sub = GradedSubspace(tuple(comps))
        act = s.action.block_transpose()
        if not is_invariant(Bt, sub) or action_matrix(Bt, sub) != act:
            raise InvariantViolation("transposed summand does not carry the transposed action")
        label, mult = classify_summand(act, dictionary)
        new.append(SummandReport(sub, act, label, mult, "transpose"))
    return Decomposition(Mt, new, (0,) * NDIR, derived_from_transpose=True)


# ---------------------------------------------------------------------------
# Flow
# ---------------------------------------------------------------------------

def _summand_matrices(dec: Decomposition) -> list[tuple]:
    out = []
    for s in dec.summands:
        m = s.action.scalar_matrix()
        if m is not None:
            out.append(m)
    return out


def iterate_flow(A0, steps: int, dictionary=None, node_budget: int = 200_000) -> list[FlowState]:
    """Decompose the block of ``A0``, then the blocks of newly found 4x4 summand actions, step by step.

    Summand actions enter the flow when all their cells are scalar (this
    covers 1-dim summands and multiples of them).  A matrix whose transpose
    was already decomposed is derived via :func:`transpose_decomposition`
    when that decomposition is complete.  Named references grow as new
    matrices appear: unnamed actions are called ``X1``, ``X2``, ...
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    A0 = _tuple_matrix(A0)
    if dictionary is None:
        dictionary = default_dictionary()
        if not any(D == A0 or D == tuple(zip(*A0)) for _, D in dictionary if len(D) == NDIR):
            dictionary.append(("input", A0))
    done: dict[tuple, Decomposition] = {}
    states = []
    frontier = [A0]
    fresh = 0
    for step in range(1, steps + 1):
        blocks = []
        next_frontier = []
        for M in frontier:
            if M in done:
                continue
            Mt = tuple(zip(*M))
            if Mt in done and not done[Mt].remainder_dim:
                dec = transpose_decomposition(done[Mt], dictionary)
            else:
                dec = decompose_matrix(M, dictionary, node_budget)
            done[M] = dec
            blocks.append((_name_of(M, dictionary), dec))
            for X in _summand_matrices(dec):
                if not _named(X, dictionary):
                    fresh += 1
                    dictionary.append((f"X{fresh}", X))
                    _relabel(dec, dictionary)
                if X not in done and X not in next_frontier and X not in frontier:
                    next_frontier.append(X)
        states.append(FlowState(step, blocks))
        frontier = next_frontier
    return states


def _named(X, dictionary) -> bool:
    Xt = tuple(zip(*X))
    return any(D == X or D == Xt for _, D in dictionary if len(D) == NDIR)


def _name_of(M, dictionary) -> str:
    for name, D in dictionary:
        if len(D) != NDIR:
            continue
        if D == M:
            return name
        if D == tuple(zip(*M)):
            return f"{name}-transpose"
    return "unknown"


def _relabel(dec: Decomposition, dictionary) -> None:
    for s in dec.summands:
        s.label, s.multiplicity = classify_summand(s.action, dictionary)
