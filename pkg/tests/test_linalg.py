from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from ordsplit.linalg import (
    determinant,
    feasible_strict,
    identity_matrix,
    mat,
    mat_mul,
    mat_pow,
    mat_vec,
    matrix_inverse,
    solve,
)

small_int = st.integers(-4, 4)


def vec2():
    return st.tuples(small_int, small_int)


@settings(max_examples=80)
@given(st.lists(vec2(), min_size=1, max_size=4), vec2())
def test_feasible_strict_witness_separates(gens, x):
    y = feasible_strict(gens, [x])
    if y is not None:
        for g in gens:
            assert sum(c * v for c, v in zip(y, g)) >= 0
        assert sum(c * v for c, v in zip(y, x)) < 0


@settings(max_examples=60)
@given(st.lists(vec2(), min_size=1, max_size=3),
       st.lists(st.integers(0, 3), min_size=1, max_size=3))
def test_feasible_strict_never_separates_cone_members(gens, coeffs):
    # any N-combination of the generators cannot be cut off from them
    coeffs = (coeffs + [0, 0, 0])[: len(gens)]
    x = tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(2))
    assert feasible_strict(gens, [x]) is None


@settings(max_examples=60)
@given(st.lists(st.lists(small_int, min_size=2, max_size=2), min_size=2, max_size=2))
def test_matrix_inverse_round_trip(rows):
    m = mat(rows)
    inv = matrix_inverse(m)
    if determinant(m) == 0:
        assert inv is None
    else:
        assert mat_mul(m, inv) == identity_matrix(2)
        assert mat_mul(inv, m) == identity_matrix(2)


@settings(max_examples=60)
@given(st.lists(st.lists(small_int, min_size=2, max_size=2), min_size=2, max_size=2),
       vec2())
def test_solve_produces_solutions(rows, b):
    a = mat(rows)
    particular, basis = solve(a, b)
    if particular is not None:
        assert mat_vec(a, particular) == tuple(Fraction(c) for c in b)
        for v in basis:
            assert mat_vec(a, v) == (Fraction(0), Fraction(0))


def test_mat_pow_negative_exponent():
    m = mat([[1, 1], [0, 1]])
    assert mat_mul(mat_pow(m, 3), mat_pow(m, -3)) == identity_matrix(2)


def test_feasible_strict_known_certificate():
    y = feasible_strict([(1, 0), (1, 1)], [(1, 2)])
    assert y is not None
    assert y[0] * 1 + y[1] * 0 >= 0
    assert y[0] * 1 + y[1] * 1 >= 0
    assert y[0] * 1 + y[1] * 2 < 0
