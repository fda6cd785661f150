"""Shift operators and their adjoint relation."""

import numpy as np
import pytest

from cnmf.core.shifts import shift_columns, shift_columns_left, shift_matrix
from cnmf.errors import InvalidInputError

A = np.array([[1.0, 2, 3, 4], [5, 6, 7, 8]])


class TestShiftColumns:

    def test_shift_by_one(self):
        np.testing.assert_array_equal(shift_columns(A, 1), [[0, 1, 2, 3], [0, 5, 6, 7]])

    def test_shift_by_two(self):
        np.testing.assert_array_equal(shift_columns(A, 2), [[0, 0, 1, 2], [0, 0, 5, 6]])

    def test_zero_shift_is_identity(self):
        np.testing.assert_array_equal(shift_columns(A, 0), A)

    @pytest.mark.parametrize("lag", [4, 5, 100])
    def test_shift_past_end_is_zero(self, lag):
        np.testing.assert_array_equal(shift_columns(A, lag), np.zeros_like(A))

    def test_negative_lag_rejected(self):
        with pytest.raises(InvalidInputError):
            shift_columns(A, -1)

    def test_matches_explicit_matrix(self, rng):
        B = rng.random((3, 7))
        for lag in range(8):
            np.testing.assert_array_equal(shift_columns(B, lag), B @ shift_matrix(7, lag))

    def test_input_untouched(self):
        before = A.copy()
        shift_columns(A, 2)
        np.testing.assert_array_equal(A, before)


class TestShiftColumnsLeft:

    def test_undoes_right_shift(self):
        np.testing.assert_array_equal(shift_columns_left([[0.0, 1, 2, 3]], 1), [[1, 2, 3, 0]])

    def test_zero_shift_is_identity(self):
        np.testing.assert_array_equal(shift_columns_left([[1.0, 2, 3, 4]], 0), [[1, 2, 3, 4]])

    def test_adjoint_identity(self, rng):
        """⟨A·S_l, B⟩ = ⟨A, B·S_{-l}⟩ for all 0 <= l <= T."""
        A_, B = rng.random((3, 5)), rng.random((3, 5))
        for lag in range(6):
            lhs = np.vdot(shift_columns(A_, lag), B)
            rhs = np.vdot(A_, shift_columns_left(B, lag))
            assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_matches_transposed_matrix(self, rng):
        B = rng.random((2, 6))
        for lag in range(6):
            np.testing.assert_array_equal(shift_columns_left(B, lag), B @ shift_matrix(6, lag).T)
