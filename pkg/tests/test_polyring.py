import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from selfsim4d.field_core import GF2k, GFElement
from selfsim4d.polyring import (
    VARIABLES,
    Poly,
    VarId,
    a,
    coeff_extract,
    determinant,
    minor,
    permanent,
    substitute,
    symbolic_matrix,
    u,
)
from selfsim4d.symbolic import build_C

U = [VarId.u(k) for k in range(1, 5)]


def test_variable_order_and_names():
    names = [v.name for v in VARIABLES]
    assert names[:4] == ["a11", "a12", "a13", "a14"]
    assert names[15] == "a44" and names[16:] == ["u1", "u2", "u3", "u4"]
    assert VarId.a(2, 3).indices == (2, 3) and VarId.u(4).kind == "u"
    assert sorted(VARIABLES) == list(VARIABLES)


def test_characteristic_two():
    p = a(1, 2) * u(3) + a(4, 4) + 1
    assert (p + p).is_zero()


def test_freshmans_dream():
    x = a(1, 1) + u(1)
    assert x * x == a(1, 1) ** 2 + u(1) ** 2
    assert x.frobenius() == x * x


def test_rendering():
    p = a(1, 1) ** 2 * u(2) + u(1) * u(3) + 1
    assert str(p) == "a11^2*u2 + u1*u3 + 1"
    assert str(Poly()) == "0"


def test_determinant_diagonal():
    M = [[1 + u(1), Poly(), Poly()], [Poly(), 1 + u(2), Poly()], [Poly(), Poly(), 1 + u(3)]]
    expected = (1 + u(1)) * (1 + u(2)) * (1 + u(3))
    assert determinant(M) == expected


def test_determinant_zero_row():
    M = [[a(1, 1), a(1, 2)], [Poly(), Poly()]]
    assert determinant(M).is_zero()


def test_determinant_non_square():
    with pytest.raises(ValueError):
        determinant([[a(1, 1), a(1, 2)]])


def random_poly(rng, nterms=3, maxdeg=2):
    mons = []
    for _ in range(nterms):
        mons.append({v: rng.randint(0, maxdeg) for v in rng.sample(VARIABLES, 3)})
    return Poly.from_exponents(mons)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 4))
def test_determinant_equals_permanent(seed, n):
    rng = random.Random(seed)
    M = [[random_poly(rng) for _ in range(n)] for _ in range(n)]
    assert determinant(M) == permanent(M)


def test_minor_of_identity_C():
    eye = [[Poly.const(int(i == j)) for j in range(4)] for i in range(4)]
    C = build_C(eye)
    for i, j in product(range(1, 5), repeat=2):
        m = minor(C, i, j)
        if i != j:
            assert m.is_zero()
        else:
            expected = Poly.const(1)
            for k in range(1, 5):
                if k != i:
                    expected = expected * (1 + u(k))
            assert m == expected


def test_minor_range():
    with pytest.raises(IndexError):
        minor(build_C(symbolic_matrix()), 0, 2)


def test_minor_transpose_identity():
    A = symbolic_matrix()
    C = build_C(A)
    Ct = build_C([list(c) for c in zip(*A)])
    for i, j in product(range(1, 5), repeat=2):
        assert minor(Ct, i, j) == minor(C, j, i)


def test_minors_multilinear_and_vanishing_pattern():
    C = build_C(symbolic_matrix())
    for i, j in product(range(1, 5), repeat=2):
        m = minor(C, i, j)
        assert all(m.degree_in(v) <= 1 for v in U)
        if i != j:
            assert VarId.u(i) not in m.variables()
            assert VarId.u(j) not in m.variables()
            scope = [v for v in U if v != U[j - 1]]
            assert coeff_extract(m, [U[i - 1]], scope).is_zero()


def test_coeff_extract_examples():
    u2, u3, u4 = U[1:]
    p = u(2) * u(3) * u(4) + u(2) + 1
    scope = [u2, u3, u4]
    assert coeff_extract(p, [u2, u3, u4], scope) == Poly.const(1)
    assert coeff_extract(p, [u2], scope) == Poly.const(1)
    assert coeff_extract(p, [u3], scope).is_zero()
    assert coeff_extract(p, [], scope) == Poly.const(1)


def test_coeff_extract_keeps_other_variables():
    p = a(1, 1) * u(2) + a(2, 2) * a(3, 3) * u(2) + a(4, 4)
    assert coeff_extract(p, [U[1]], [U[1]]) == a(1, 1) + a(2, 2) * a(3, 3)


def test_coeff_extract_rejects_squares():
    with pytest.raises(ValueError):
        coeff_extract(u(2) ** 2 + 1, [], [U[1]])


def test_substitute_full_and_partial():
    F2 = GF2k(1)
    one = GFElement(F2, 1)
    assert substitute(a(1, 1) + u(1), {VarId.a(1, 1): one, VarId.u(1): one}) == 0
    part = substitute(a(1, 1) * u(1) + u(2), {VarId.a(1, 1): one})
    assert part == u(1) + u(2)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**9))
def test_substitute_is_ring_homomorphism(seed):
    rng = random.Random(seed)
    F = GF2k(16)
    p, q = random_poly(rng), random_poly(rng)
    point = {v: GFElement(F, F.random(rng)) for v in VARIABLES}
    assert substitute(p * q, point) == substitute(p, point) * substitute(q, point)
    assert substitute(p + q, point) == substitute(p, point) + substitute(q, point)
