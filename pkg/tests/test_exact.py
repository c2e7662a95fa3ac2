"""Unit and property tests for the exact-arithmetic core."""
from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homalg.exact import (
    DimensionMismatch,
    SingularMatrix,
    apply_cols,
    as_fraction,
    basis_vector,
    cols_to_matrix,
    grid_mul,
    mat_add,
    mat_apply,
    mat_cols,
    mat_identity,
    mat_inverse,
    mat_is_identity,
    mat_kernel_vector,
    mat_lincomb,
    mat_mul,
    mat_neg,
    mat_scale,
    mat_shape,
    mat_sub,
    mat_transpose,
    mat_zero,
    matrix,
    product_eval,
    push_product,
    conjugate_product,
    sv_add,
    sv_from_vector,
    sv_neg,
    sv_scale,
    sv_sub,
    sv_to_vector,
    tensor_add,
    tensor_commutator,
    tensor_entries,
    tensor_flip,
    tensor_from_entries,
    tensor_grid,
    tensor_neg,
    tensor_normalize,
    tensor_sub,
    validate_tensor,
    vec_add,
    vec_scale,
    vec_sub,
    vector,
)

F = Fraction

fractions_st = st.fractions(
    min_value=-6, max_value=6, max_denominator=4
)


def square_matrix_st(n: int):
    return st.lists(
        st.lists(fractions_st, min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    ).map(matrix)


def vector_st(n: int):
    return st.lists(fractions_st, min_size=n, max_size=n).map(vector)


# ---------------------------------------------------------------------------
# scalars and vectors
# ---------------------------------------------------------------------------

def test_as_fraction_exactness():
    assert as_fraction(3) == F(3)
    assert as_fraction("2/6") == F(1, 3)
    assert as_fraction(F(5, 7)) == F(5, 7)


def test_basis_vector():
    assert basis_vector(3, 1) == (F(0), F(1), F(0))


def test_vector_arithmetic():
    u = vector([1, 2])
    v = vector([F(1, 2), -3])
    assert vec_add(u, v) == (F(3, 2), F(-1))
    assert vec_sub(u, v) == (F(1, 2), F(5))
    assert vec_scale(F(2), v) == (F(1), F(-6))


def test_vector_dimension_guard():
    with pytest.raises(DimensionMismatch):
        vec_add(vector([1]), vector([1, 2]))


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def test_matrix_shape_and_identity():
    m = matrix([[1, 2, 3], [4, 5, 6]])
    assert mat_shape(m) == (2, 3)
    assert mat_is_identity(mat_identity(4))
    assert not mat_is_identity(mat_zero(2, 2))
    assert not mat_is_identity(matrix([[1, 0], [0, 2]]))


def test_matrix_arithmetic_small():
    a = matrix([[1, 2], [3, 4]])
    b = matrix([[0, 1], [1, 0]])
    assert mat_add(a, b) == matrix([[1, 3], [4, 4]])
    assert mat_sub(a, b) == matrix([[1, 1], [2, 4]])
    assert mat_neg(b) == matrix([[0, -1], [-1, 0]])
    assert mat_scale(F(1, 2), a) == matrix([["1/2", 1], ["3/2", 2]])
    assert mat_mul(a, b) == matrix([[2, 1], [4, 3]])
    assert mat_transpose(a) == matrix([[1, 3], [2, 4]])
    assert mat_apply(a, vector([1, -1])) == (F(-1), F(-1))


def test_matrix_mul_shape_guard():
    with pytest.raises(DimensionMismatch):
        mat_mul(matrix([[1, 2]]), matrix([[1, 2]]))


def test_mat_inverse_known():
    a = matrix([[1, 2], [3, 4]])
    inv = mat_inverse(a)
    assert inv == matrix([[-2, 1], ["3/2", "-1/2"]])
    assert mat_is_identity(mat_mul(a, inv))


def test_mat_inverse_singular():
    with pytest.raises(SingularMatrix):
        mat_inverse(matrix([[1, 2], [2, 4]]))


def test_mat_kernel_vector_cases():
    assert mat_kernel_vector(mat_identity(3)) is None
    k = mat_kernel_vector(matrix([[1, 2], [2, 4]]))
    assert k is not None and k
    # k really is in the kernel
    a = matrix([[1, 2], [2, 4]])
    v = sv_to_vector(k, 2)
    assert mat_apply(a, v) == (F(0), F(0))
    with pytest.raises(DimensionMismatch):
        mat_kernel_vector(matrix([[1, 2, 3]]))


def test_mat_lincomb():
    mats = [mat_identity(2), matrix([[0, 1], [0, 0]])]
    got = mat_lincomb({0: F(2), 1: F(-1)}, mats, 2, 2)
    assert got == matrix([[2, -1], [0, 2]])
    assert mat_lincomb({}, mats, 2, 2) == mat_zero(2, 2)


@settings(max_examples=60, deadline=None)
@given(square_matrix_st(3))
def test_mat_inverse_round_trip_property(a):
    """Either the matrix is singular with a genuine kernel witness, or the
    inverse is exact in both directions."""
    try:
        inv = mat_inverse(a)
    except SingularMatrix:
        k = mat_kernel_vector(a)
        assert k is not None
        v = sv_to_vector(k, 3)
        assert mat_apply(a, v) == (F(0),) * 3
        return
    assert mat_is_identity(mat_mul(a, inv))
    assert mat_is_identity(mat_mul(inv, a))
    assert mat_kernel_vector(a) is None


@settings(max_examples=40, deadline=None)
@given(square_matrix_st(3), square_matrix_st(3), vector_st(3))
def test_mat_mul_is_composition_property(a, b, v):
    assert mat_apply(mat_mul(a, b), v) == mat_apply(a, mat_apply(b, v))


@settings(max_examples=40, deadline=None)
@given(square_matrix_st(3))
def test_transpose_involution_property(a):
    assert mat_transpose(mat_transpose(a)) == a


# ---------------------------------------------------------------------------
# sparse vectors and column forms
# ---------------------------------------------------------------------------

def test_sparse_round_trip():
    v = vector([0, F(1, 3), -2])
    sv = sv_from_vector(v)
    assert sv == {1: F(1, 3), 2: F(-2)}
    assert sv_to_vector(sv, 3) == v


def test_sparse_arithmetic_drops_zeros():
    assert sv_add({0: F(1)}, {0: F(-1), 1: F(2)}) == {1: F(2)}
    assert sv_sub({1: F(2)}, {1: F(2)}) == {}
    assert sv_neg({0: F(3)}) == {0: F(-3)}
    assert sv_scale(F(0), {0: F(3)}) == {}


def test_cols_round_trip():
    m = matrix([[1, 0], [F(1, 2), -1]])
    cols = mat_cols(m)
    assert cols_to_matrix(cols, 2) == m
    assert apply_cols(cols, {0: F(2)}) == {0: F(2), 1: F(1)}


@settings(max_examples=40, deadline=None)
@given(square_matrix_st(3), vector_st(3))
def test_apply_cols_matches_mat_apply_property(a, v):
    got = apply_cols(mat_cols(a), sv_from_vector(v))
    assert sv_to_vector(got, 3) == mat_apply(a, v)


# ---------------------------------------------------------------------------
# product tensors
# ---------------------------------------------------------------------------

def small_tensor():
    return tensor_from_entries([(0, 1, 1, 1), (1, 0, 1, -1), (0, 0, 0, F(1, 2))])


def test_tensor_entry_round_trip():
    t = small_tensor()
    entries = tensor_entries(t)
    assert entries == [
        (0, 0, 0, F(1, 2)),
        (0, 1, 1, F(1)),
        (1, 0, 1, F(-1)),
    ]
    assert tensor_from_entries(entries) == t


def test_tensor_normalize_drops_zero_cells():
    raw = {(0, 0): {0: F(0)}, (0, 1): {1: F(2), 0: F(0)}}
    assert tensor_normalize(raw) == {(0, 1): {1: F(2)}}


def test_tensor_linear_ops():
    t = small_tensor()
    assert tensor_add(t, tensor_neg(t)) == {}
    assert tensor_sub(t, t) == {}
    flipped = tensor_flip(t)
    assert flipped[(1, 0)] == {1: F(1)}
    assert tensor_flip(flipped) == t
    comm = tensor_commutator(t)
    assert comm == {(0, 1): {1: F(2)}, (1, 0): {1: F(-2)}}


def test_validate_tensor_guards():
    validate_tensor(small_tensor(), 2)
    with pytest.raises(DimensionMismatch):
        validate_tensor({(0, 2): {0: F(1)}}, 2)
    with pytest.raises(DimensionMismatch):
        validate_tensor({(0, 0): {5: F(1)}}, 2)


def test_grid_mul_and_product_eval():
    t = small_tensor()
    grid = tensor_grid(t, 2)
    assert grid_mul(grid, {0: F(1)}, {1: F(1)}) == {1: F(1)}
    assert grid_mul(grid, {1: F(1)}, {1: F(1)}) == {}
    assert product_eval(t, vector([1, 0]), vector([0, 2])) == (F(0), F(2))
    # bilinearity on a mixed input
    assert product_eval(t, vector([1, 1]), vector([1, 1])) == (F(1, 2), F(0))


def test_push_and_conjugate_product():
    t = tensor_from_entries([(0, 1, 1, 1)])
    doubling = matrix([[2, 0], [0, 2]])
    assert push_product(t, doubling) == tensor_from_entries([(0, 1, 1, 2)])
    assert conjugate_product(t, doubling) == tensor_from_entries([(0, 1, 1, 4)])
    swap = matrix([[0, 1], [1, 0]])
    assert conjugate_product(t, swap) == tensor_from_entries([(1, 0, 1, 1)])


@settings(max_examples=30, deadline=None)
@given(vector_st(2), vector_st(2), vector_st(2), fractions_st)
def test_product_eval_bilinear_property(x, y, z, c):
    t = small_tensor()
    left = product_eval(t, vec_add(x, vec_scale(c, y)), z)
    split = vec_add(product_eval(t, x, z), vec_scale(c, product_eval(t, y, z)))
    assert left == split
    right = product_eval(t, z, vec_add(x, vec_scale(c, y)))
    split_r = vec_add(product_eval(t, z, x), vec_scale(c, product_eval(t, z, y)))
    assert right == split_r
