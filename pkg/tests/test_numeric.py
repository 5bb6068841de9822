from fractions import Fraction

import numpy as np
import pytest

from ginv.numeric import (
    DEFAULT_TOL, BackendMismatchError, ExactMatrix, GaussianRational, NotInvertibleError,
    Tolerance, adjoint, approx_equal, inverse_nonsingular, is_zero, mat_pow, max_abs, nullspace,
    pinv, range_subset, rank, same_range, to_float,
)

from matrices import A1, A1_N, E, I4


def test_gaussian_rational_arithmetic():
    z = GaussianRational(Fraction(1, 2), 3)
    w = GaussianRational(-1, Fraction(2, 3))
    assert z * w == GaussianRational(Fraction(-1, 2) - 2, Fraction(1, 3) - 3)
    assert (z / w) * w == z
    assert z.conjugate().conjugate() == z
    assert complex(z) == complex(0.5, 3)


def test_exact_matrix_is_normalized():
    a = ExactMatrix([[2, 4]], den=6)
    b = E([["1/3", "2/3"]])
    assert a == b and hash(a) == hash(b)
    assert a.denominator == 3


def test_adjoint_examples():
    assert adjoint(I4) == I4
    Z = E([[0, (0, 1)], [0, 0]])
    assert adjoint(Z) == E([[0, 0], [(0, -1), 0]])
    real = np.array(A1.to_numpy().real, dtype=int)
    assert adjoint(A1) == E(real.T.tolist())


def test_mat_pow_examples():
    assert mat_pow(A1, 0) == ExactMatrix.identity(4)
    assert mat_pow(A1_N, 3).is_zero()
    assert not mat_pow(A1_N, 2).is_zero()
    assert rank(mat_pow(A1, 3)) == rank(mat_pow(A1, 4)) == 1


def test_mat_pow_rejects_nonsquare():
    with pytest.raises(ValueError):
        mat_pow(E([[1, 2]]), 2)


def test_rank_examples():
    assert rank(I4) == 4
    assert rank(A1) == 3
    assert rank(A1.to_numpy()) == 3


def test_approx_equal():
    I2 = np.eye(2, dtype=complex)
    B = I2.copy()
    B[0, 0] += 1e-15
    assert approx_equal(I2, B, Tolerance(eq_abs_tol=1e-10))
    assert not approx_equal(I2, I2 + 1e-6, Tolerance(eq_abs_tol=1e-10))
    assert approx_equal(A1, A1)


def test_mixed_backends_rejected():
    with pytest.raises(BackendMismatchError):
        A1 @ A1.to_numpy()
    with pytest.raises((BackendMismatchError, ValueError)):
        approx_equal(A1, A1.to_numpy())


def test_inverse_nonsingular():
    assert inverse_nonsingular(ExactMatrix.identity(3)) == ExactMatrix.identity(3)
    assert inverse_nonsingular(E([[2]])) == E([["1/2"]])
    with pytest.raises(NotInvertibleError):
        inverse_nonsingular(A1)
    with pytest.raises(NotInvertibleError):
        inverse_nonsingular(A1.to_numpy())


def test_pinv_and_nullspace_exact():
    X = pinv(A1)
    assert A1 @ X @ A1 == A1
    assert X == E([[1, -1, -1, 0], [0, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0]])  # sympy oracle
    K = nullspace(A1)
    assert K.shape == (4, 1) and (A1 @ K).is_zero()


def test_range_helpers():
    P3 = mat_pow(A1, 3)
    assert range_subset(P3, A1)
    assert not range_subset(A1, P3)
    assert same_range(A1, A1 @ E([[2, 0, 0, 0], [0, 3, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))


def test_max_abs_and_is_zero():
    assert max_abs(E([["3/4", (0, -2)]])) == 2.0
    assert max_abs(E([[(3, 4)]])) == 5.0
    assert is_zero(np.full((2, 2), 1e-12), DEFAULT_TOL)
    assert not is_zero(np.full((2, 2), 1e-6), DEFAULT_TOL)


def test_to_float_roundtrip():
    M = E([["1/3", (1, -2)]])
    assert np.allclose(to_float(M), [[1 / 3, 1 - 2j]])
    assert ExactMatrix.from_float(np.array([[0.5, -0.25j]])) == E([["1/2", (0, "-1/4")]])


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(rank_rel_tol=-1)
