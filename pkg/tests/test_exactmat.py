from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cyc_matrix, small_fraction
from npk.cyclofield import CycNum, zeta
from npk.errors import DimensionError, FieldError, SingularMatrixError
from npk.exactmat import (
    CycMatrix,
    block,
    block_diag,
    column_basis,
    companion,
    det,
    frobenius_norm,
    inverse,
    is_npotent,
    mat_mul,
    mat_pow,
    poly_eval,
    rank,
    rref,
    trace,
)


def to_sympy(A: CycMatrix):
    """Entries as sympy algebraic numbers via zeta_m = exp(2 pi i / m)."""
    z = sympy.exp(2 * sympy.pi * sympy.I / A.order)
    return sympy.Matrix(
        A.rows, A.cols, [sum(sympy.Rational(c.numerator, c.denominator) * z**j for j, c in enumerate(x.coeffs)) for x in A.entries]
    )


rational_matrix = st.integers(1, 4).flatmap(
    lambda k: st.lists(st.lists(small_fraction, min_size=k, max_size=k), min_size=k, max_size=k)
)


@settings(max_examples=60, deadline=None)
@given(rational_matrix)
def test_rational_det_rank_inverse_match_sympy(rows):
    A = CycMatrix(rows)
    S = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    assert det(A).to_fraction() == Fraction(str(S.det()))
    assert rank(A) == S.rank()
    if S.det() != 0:
        inv = inverse(A)
        assert inv @ A == CycMatrix.identity(A.rows)
        assert [[Fraction(str(v)) for v in r] for r in S.inv().tolist()] == [
            [x.to_fraction() for x in inv.row(i)] for i in range(A.rows)
        ]
    else:
        with pytest.raises(SingularMatrixError):
            inverse(A)


@settings(max_examples=30, deadline=None)
@given(cyc_matrix(order=4, size=3))
def test_gaussian_det_matches_sympy(A):
    assert sympy.simplify(to_sympy(A).det() - to_sympy(CycMatrix([[det(A)]]))[0, 0]) == 0


def test_hand_products():
    i = zeta(4)
    A = CycMatrix([[1, i], [0, 2]])
    B = CycMatrix([[i, 0], [1, -1]])
    # [[1*i + i*1, -i], [2, -2]]
    assert A @ B == CycMatrix([[2 * i, -i], [2, -2]])
    assert trace(A @ B) == 2 * i - 2
    assert inverse(CycMatrix([[0, -1], [1, -1]])) == CycMatrix([[-1, 1], [-1, 0]])
    assert det(CycMatrix([[zeta(3), 1], [1, zeta(3) ** 2]])) == 0


@settings(max_examples=40, deadline=None)
@given(cyc_matrix(size=3, order=3), cyc_matrix(size=3, order=3), cyc_matrix(size=3, order=3))
def test_ring_laws(A, B, C):
    assert (A @ B) @ C == A @ (B @ C)
    assert A @ (B + C) == A @ B + A @ C
    assert det(A @ B) == det(A) * det(B)
    assert trace(A @ B) == trace(B @ A)


@settings(max_examples=40, deadline=None)
@given(cyc_matrix(order=4))
def test_rank_nullity_and_rref(A):
    R, pivots = rref(A)
    assert rank(A) == len(pivots)
    basis = column_basis(A)
    if rank(A):
        assert basis.cols == rank(A)
        assert rank(basis) == rank(A)
    assert rref(R)[0] == R


def test_mixed_orders_lift_to_lcm():
    A = CycMatrix([[zeta(3), 0], [0, 1]])
    B = CycMatrix([[zeta(4), 0], [0, 1]])
    C = A @ B
    assert C.order == 12
    assert C[0, 0] == zeta(12) ** 7
    assert A.lift(12).descend(3) == A
    with pytest.raises(FieldError):
        A.lift(4)
    with pytest.raises(FieldError):
        C.descend(4)


def test_dimension_errors():
    with pytest.raises(DimensionError):
        CycMatrix([[1, 2]]) @ CycMatrix([[1, 2]])
    with pytest.raises(DimensionError):
        CycMatrix([[1, 2]]) + CycMatrix([[1], [2]])


def test_blocks():
    A = CycMatrix([[1]])
    B = CycMatrix([[2, 3], [4, 5]])
    D = block_diag([A, B])
    assert D == CycMatrix([[1, 0, 0], [0, 2, 3], [0, 4, 5]])
    Z12 = CycMatrix.zeros(1, 2)
    Z21 = CycMatrix.zeros(2, 1)
    assert block([[A, Z12], [Z21, B]]) == D


@pytest.mark.parametrize("coeffs", [[1, 0, -1], [2, -3], [0, 0, 0, 5], [-1, 1, 1, 1]])
def test_companion_has_its_polynomial(coeffs):
    C = companion(coeffs + [1])
    assert poly_eval(coeffs + [1], C).is_zero()
    k = len(coeffs)
    S = sympy.Matrix(C.rows, C.cols, [int(x.to_fraction()) for x in C.entries])
    x = sympy.Symbol("x")
    assert sympy.Poly(S.charpoly(x).as_expr(), x).all_coeffs()[::-1] == coeffs + [1]
    assert C.rows == k


def test_is_npotent_examples():
    i = zeta(4)
    e = block_diag([CycMatrix([[1]]), CycMatrix([[0, i], [i, -1]])])
    assert is_npotent(e, 4)
    assert not is_npotent(e, 2)
    assert not is_npotent(e, 3)
    assert is_npotent(mat_pow(e, 3), 2)
    assert is_npotent(CycMatrix([[-1]]), 3)
    with pytest.raises(DimensionError):
        is_npotent(CycMatrix([[1, 2]]), 2)


def test_frobenius_norm():
    i = zeta(4)
    assert frobenius_norm(CycMatrix([[3, 4 * i]])) == pytest.approx(5.0)
    assert frobenius_norm(CycMatrix([[zeta(5)]])) == pytest.approx(1.0)


@settings(max_examples=40, deadline=None)
@given(cyc_matrix(order=4, size=2), st.integers(0, 6))
def test_power_matches_repeated_product(A, k):
    P = CycMatrix.identity(2, 4)
    for _ in range(k):
        P = mat_mul(P, A)
    assert mat_pow(A, k) == P


def test_cycnum_entries_accept_mixed_inputs():
    A = CycMatrix([[Fraction(1, 2), 3], [CycNum(4, [0, 1]), 0]])
    assert A.order == 4
    assert A[1, 0] == zeta(4)
