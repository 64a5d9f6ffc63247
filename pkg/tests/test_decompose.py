import random
from collections import Counter
from itertools import product

import pytest

from selfsim4d import catalog
from selfsim4d.decompose import (
    CellActionMatrix,
    DegenerateSpecialization,
    GradedSubspace,
    InvariantViolation,
    action_matrix,
    block_matrix,
    build_W,
    build_WT,
    build_Wprime,
    classify_summand,
    decompose_matrix,
    default_dictionary,
    find_decomposition,
    graded_spin,
    is_invariant,
    iterate_flow,
    randomized_summand_check,
    transpose_decomposition,
    verify_worked_example,
)
from selfsim4d.field_core import BitMatrix, GF2k, GFElement, left_kernel, rank
from selfsim4d.lattice import reversed_block_map

A = catalog.A_EXAMPLE
A1 = catalog.A1
EYE = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
T = lambda M: tuple(zip(*M))  # noqa: E731

F_SPACE = GradedSubspace.from_bitstrings([[s] for s in catalog.F_VECTORS])
G_SPACE = GradedSubspace.from_bitstrings([[s] for s in catalog.G_VECTORS])
H_SPACE = GradedSubspace.from_bitstrings([list(p) for p in catalog.H_PAIRS])


@pytest.fixture(scope="module")
def block_A():
    return block_matrix(A)


def random_ext_matrix(rng, k=16):
    F = GF2k(k)
    return [[GFElement(F, F.random(rng)) for _ in range(4)] for _ in range(4)]


# --- W and W' ---------------------------------------------------------------

def test_build_W_example():
    assert build_W(A).dims == (4, 4, 4, 4)


def test_build_W_identity():
    W = build_W(EYE)
    assert W.dims == (1, 1, 1, 1)
    assert all(W.components[j].bitstrings() == ["11111111"] for j in range(4))


def test_build_W_random_extension():
    rng = random.Random(3)
    assert build_W(random_ext_matrix(rng)).dims == (4, 4, 4, 4)


def test_W_invariant(block_A):
    assert is_invariant(block_A, build_W(A))


def test_WT_invariant_under_transpose(block_A):
    assert is_invariant(block_A.transpose(), build_WT(A))


def test_build_Wprime_example(block_A):
    W, Wp = build_W(A), build_Wprime(A)
    assert Wp.dims == (4, 4, 4, 4)
    assert is_invariant(block_A, Wp)
    for S, Tp in zip(W.components, Wp.components):
        assert rank(S.vstack(Tp)) == 8


def test_pairing_with_transposed_space_is_nondegenerate():
    # W ∩ W' = 0 exactly when the Gram matrix between W_j and (W_T)_j has trivial left kernel
    W, WT = build_W(A), build_WT(A)
    for S, R in zip(W.components, WT.components):
        gram = S @ R.transpose()
        assert left_kernel(gram).nrows == 0


def test_build_Wprime_random_extension():
    rng = random.Random(17)
    for _ in range(3):
        M = random_ext_matrix(rng)
        Wp = build_Wprime(M)
        assert Wp.dims == (4, 4, 4, 4)
        assert is_invariant(block_matrix(M), Wp)


def test_build_Wprime_zero_matrix_is_degenerate():
    Z = ((0,) * 4,) * 4
    with pytest.raises(DegenerateSpecialization) as exc:
        build_Wprime(Z)
    assert exc.value.check == "rank(W)"


def test_WT_construction_uses_reversed_rows():
    W_At = build_W(T(A))
    WT = build_WT(A)
    for S, R in zip(W_At.components, WT.components):
        assert R.to_lists() == [reversed_block_map(r) for r in S.to_lists()]


# --- the worked example ------------------------------------------------------

def test_verify_worked_example_all_pass():
    results = verify_worked_example()
    assert all(r.passed for r in results), [r for r in results if not r.passed]
    assert len(results) == 8


def test_spaces_are_invariant(block_A):
    for S in (F_SPACE, G_SPACE, H_SPACE):
        assert is_invariant(block_A, S)


def test_action_on_W_is_A(block_A):
    act = action_matrix(block_A, build_W(A))
    assert act.scalar_matrix() == A


def test_action_on_F_G_H(block_A):
    assert action_matrix(block_A, F_SPACE).full() == A1
    assert action_matrix(block_A, G_SPACE).full() == T(A1)
    act = action_matrix(block_A, H_SPACE)
    assert act.full() == catalog.R_MATRIX
    assert act.cell(3, 4) == ((0, 0), (1, 1))


def test_action_matrix_rejects_non_invariant(block_A):
    S = GradedSubspace.from_bitstrings([["10000000"], [], [], []])
    with pytest.raises(InvariantViolation):
        action_matrix(block_A, S)


# --- spin closures -----------------------------------------------------------

def test_graded_spin_identity():
    B = BitMatrix.identity(32)
    S = graded_spin(B, 2, "00110000")
    assert S.dims == (0, 1, 0, 0)
    assert S.components[1].bitstrings() == ["00110000"]


def test_graded_spin_rediscovers_F_and_H(block_A):
    assert graded_spin(block_A, 1, catalog.F_VECTORS[0]).same_space(F_SPACE)
    S = graded_spin(block_A, 1, catalog.H_PAIRS[0][0])
    assert S.dims == (2, 2, 2, 2) and S.same_space(H_SPACE)


def test_graded_spin_insertion_order_irrelevant(block_A):
    rng = random.Random(4)
    for _ in range(30):
        j = rng.randint(1, 4)
        seed = rng.randint(1, 255)
        base = graded_spin(block_A, j, seed)
        assert graded_spin(block_A, j, seed, rng=random.Random(rng.random())) == base


def test_graded_spin_rejects_zero_seed(block_A):
    with pytest.raises(ValueError):
        graded_spin(block_A, 1, 0)


# --- decomposition -----------------------------------------------------------

def test_decompose_example():
    dec = decompose_matrix(A)
    got = [(s.dims, s.label, s.multiplicity) for s in dec.summands]
    assert got == [((4, 4, 4, 4), "A", 4), ((1, 1, 1, 1), "A1", 1),
                   ((1, 1, 1, 1), "A1-transpose", 1), ((2, 2, 2, 2), "R-class", 1)]
    assert dec.remainder == (0, 0, 0, 0)
    assert dec.summands[1].subspace.same_space(F_SPACE)
    assert dec.summands[2].subspace.same_space(G_SPACE)


def test_decompose_identity():
    dec = decompose_matrix(EYE)
    assert dec.remainder_dim == 0
    assert dec.dimension_accounting() == (8, 8, 8, 8)
    # W carries the identity action on one line per direction; the other 28 lines split off alone
    assert dec.summands[0].dims == (1, 1, 1, 1)
    assert dec.summands[0].action.scalar_matrix() == EYE
    rest = dec.summands[1:]
    assert len(rest) == 28 and all(s.subspace.dim == 1 for s in rest)
    assert sum(s.subspace.dim for s in dec.summands) == 32


def test_decompose_A1():
    dec = decompose_matrix(A1)
    ones = Counter(s.label for s in dec.summands if s.action.uniform_size() == 1)
    assert dec.summands[0].label == "A1" and dec.summands[0].multiplicity == 4
    assert ones == Counter({"A": 1, "A-transpose": 1})
    rest = [s for s in dec.summands[1:] if s.action.uniform_size() != 1]
    assert sum(s.subspace.dim for s in rest) + dec.remainder_dim == 8


def test_find_decomposition_without_known_part(block_A):
    dec = find_decomposition(block_A)
    assert dec.dimension_accounting() == (8, 8, 8, 8)
    for s in dec.summands:
        assert is_invariant(block_A, s.subspace)


def test_find_decomposition_rejects_dependent_known(block_A):
    with pytest.raises(ValueError):
        find_decomposition(block_A, [F_SPACE, F_SPACE])


def test_random_matrices_account_for_every_dimension():
    rng = random.Random(99)
    for _ in range(10):
        M = tuple(tuple(rng.randint(0, 1) for _ in range(4)) for _ in range(4))
        dec = decompose_matrix(M)
        B = block_matrix(M)
        assert dec.dimension_accounting() == (8, 8, 8, 8)
        for s in dec.summands:
            assert is_invariant(B, s.subspace)


# --- classification ----------------------------------------------------------

def test_classify_one_dimensional():
    d = default_dictionary()
    assert classify_summand(CellActionMatrix.from_full(A1, 1), d) == ("A1", 1)
    assert classify_summand(CellActionMatrix.from_full(T(A1), 1), d) == ("A1-transpose", 1)
    assert classify_summand(CellActionMatrix.from_full(EYE, 1), d) == ("unknown", 1)


def _mm(X, Y):
    return tuple(tuple(sum(X[i][t] * Y[t][j] for t in range(2)) % 2 for j in range(2)) for i in range(2))


GL2 = [((a, b), (c, d)) for a, b, c, d in product((0, 1), repeat=4) if (a * d + b * c) % 2]


def _inv(P):
    return next(Q for Q in GL2 if _mm(P, Q) == ((1, 0), (0, 1)))


def test_classify_conjugated_R():
    rng = random.Random(12)
    R = CellActionMatrix.from_full(catalog.R_MATRIX, 2)
    for _ in range(5):
        Ps = [rng.choice(GL2) for _ in range(4)]
        cells = tuple(tuple(_mm(_mm(Ps[j], R.cells[j][k]), _inv(Ps[k])) for k in range(4)) for j in range(4))
        M = CellActionMatrix((2,) * 4, cells)
        assert classify_summand(M, default_dictionary()) == ("R-class", 1)


def test_classify_unknown_two_dimensional():
    Z = CellActionMatrix.from_full([[0] * 8 for _ in range(8)], 2)
    assert classify_summand(Z, default_dictionary())[0] == "unknown"


def test_scalar_cells_give_multiplicity():
    act = action_matrix(block_matrix(A), build_W(A))
    assert classify_summand(act, default_dictionary()) == ("A", 4)


# --- transpose symmetry and flow ---------------------------------------------

def _transposed_label(label):
    if label.endswith("-transpose"):
        return label[: -len("-transpose")]
    if label.endswith("-class"):
        return label
    return label + "-transpose"


def test_transpose_symmetry_by_direct_computation():
    dec = decompose_matrix(A)
    dec_t = decompose_matrix(T(A))
    expected = Counter()
    for s in dec.summands:
        expected[(s.dims, _transposed_label(s.label))] += s.multiplicity
    got = Counter()
    for s in dec_t.summands:
        got[(s.dims, s.label)] += s.multiplicity
    assert got == expected


def test_transpose_decomposition_matches_direct():
    dec = decompose_matrix(A)
    derived = transpose_decomposition(dec)
    direct = decompose_matrix(T(A))
    assert derived.derived_from_transpose
    assert derived.label_multiset() == direct.label_multiset()
    Bt = block_matrix(T(A))
    for s, orig in zip(derived.summands, dec.summands):
        assert is_invariant(Bt, s.subspace)
        assert s.action == orig.action.block_transpose()


def test_transpose_decomposition_needs_complete_input():
    dec = decompose_matrix(A)
    dec.remainder = (1, 0, 0, 0)
    with pytest.raises(ValueError):
        transpose_decomposition(dec)


def test_flow_one_step_example():
    (state,) = iterate_flow(A, 1)
    assert state.label_multiset() == Counter({"A": 4, "A1": 1, "A1-transpose": 1, "R-class": 1})


def test_flow_one_step_A1():
    (state,) = iterate_flow(A1, 1)
    ms = state.label_multiset()
    assert ms["A1"] == 4 and ms["A"] == 1 and ms["A-transpose"] == 1


def test_flow_two_steps_example():
    s1, s2 = iterate_flow(A, 2)
    names = [n for n, _ in s2.blocks]
    assert names == ["A1", "A1-transpose"]
    a1_dec = s2.blocks[0][1]
    assert a1_dec.label_multiset()["A"] == 1
    assert s2.blocks[1][1].derived_from_transpose


def test_flow_identity_is_stationary():
    states = iterate_flow(EYE, 3)
    assert len(states[0].blocks) == 1
    assert all(not st.blocks for st in states[1:])


def test_flow_dimension_accounting():
    for st in iterate_flow(A, 3):
        for _, dec in st.blocks:
            assert dec.dimension_accounting() == (8, 8, 8, 8)


def test_flow_rejects_zero_steps():
    with pytest.raises(ValueError):
        iterate_flow(A, 0)


# --- randomized complement check ---------------------------------------------

def test_randomized_check_small():
    rep = randomized_summand_check(5, 16, seed=7)
    assert rep.passes == 5 and not rep.failures and rep.ok


def test_randomized_check_deterministic():
    r1 = randomized_summand_check(3, 8, seed=42)
    r2 = randomized_summand_check(3, 8, seed=42)
    assert r1 == r2


def test_randomized_check_over_gf2_reports_degeneracies():
    rep = randomized_summand_check(5, 1, seed=7)
    assert rep.ok
    assert rep.degenerate > 0
    assert rep.passes + rep.unresolved == 5
    assert set(rep.degenerate_checks) <= {"rank(W)", "rank(W_T)", "rank(W')", "W∩W'", "W⊕W'"}
