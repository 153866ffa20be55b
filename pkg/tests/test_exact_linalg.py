from fractions import Fraction

import pytest

from errors import ModeMismatchError, NonInvertibleTwoError, ParameterError
from exact_linalg import (
    Q,
    CoefficientMode,
    Matrix,
    independent_subset,
    kernel_basis,
    rank,
    rank_of_vectors,
    rref,
    stack,
)

F2 = CoefficientMode(2)
F3 = CoefficientMode(3)


class TestCoefficientMode:
    def test_labels(self):
        assert CoefficientMode.from_label("q") == Q
        assert CoefficientMode.from_label("F5").characteristic == 5
        assert CoefficientMode.from_label("z").integral
        assert CoefficientMode.from_label("z").label == "Z"

    def test_unknown_label(self):
        with pytest.raises(ParameterError):
            CoefficientMode.from_label("f4")

    def test_non_prime_characteristic(self):
        with pytest.raises(ParameterError):
            CoefficientMode(6)

    def test_fraction_without_value(self):
        with pytest.raises(ParameterError):
            F3.scalar(Fraction(1, 3))
        assert F3.to_fraction(F3.scalar(Fraction(1, 2))) == 2

    def test_two_must_be_invertible(self):
        Q.require_invertible_two("test")
        with pytest.raises(NonInvertibleTwoError):
            F2.require_invertible_two("test")
        with pytest.raises(NonInvertibleTwoError):
            CoefficientMode(0, integral=True).require_invertible_two("test")


class TestRref:
    def test_identity(self):
        reduced, pivots, r = rref(Matrix.identity(Q, 3))
        assert reduced == Matrix.identity(Q, 3)
        assert pivots == (0, 1, 2)
        assert r == 3
        assert rank(Matrix.identity(Q, 3)) == 3

    def test_zero(self):
        zero = Matrix.zeros(Q, 2, 4)
        reduced, pivots, r = rref(zero)
        assert reduced == zero
        assert pivots == ()
        assert r == 0
        assert rank(zero) == 0

    def test_hand_elimination(self):
        reduced, pivots, r = rref(Matrix.from_rows(Q, [[1, 2], [2, 4]]))
        assert reduced.entries() == [[1, 2], [0, 0]]
        assert pivots == (0,)
        assert r == 1

    def test_rank_depends_on_the_field(self):
        rows = [[1, 2], [2, 1]]
        assert rank(Matrix.from_rows(Q, rows)) == 2
        assert rank(Matrix.from_rows(F3, rows)) == 1


class TestKernel:
    def test_injective(self):
        assert kernel_basis(Matrix.identity(Q, 2)) == []

    def test_zero_map(self):
        assert len(kernel_basis(Matrix.zeros(Q, 1, 3))) == 3

    def test_no_rows(self):
        assert len(kernel_basis(Matrix.zeros(Q, 0, 2))) == 2

    def test_single_row(self):
        basis = kernel_basis(Matrix.from_rows(Q, [[1, 1]]))
        assert len(basis) == 1
        v = basis[0]
        assert v[0] != 0
        assert v[0] == -v[1]

    def test_kernel_vectors_are_annihilated(self):
        m = Matrix.from_rows(F3, [[1, 2, 0, 1], [0, 1, 1, 1]])
        for v in kernel_basis(m):
            assert all(c == 0 for c in m.apply(v))


class TestMatrixOps:
    def test_mode_mismatch(self):
        with pytest.raises(ModeMismatchError):
            Matrix.identity(Q, 2) @ Matrix.identity(F3, 2)

    def test_stack(self):
        stacked = stack([Matrix.identity(Q, 2), Matrix.from_rows(Q, [[1, 1]])])
        assert stacked.shape == (3, 2)
        assert rank(stacked) == 2

    def test_stack_column_mismatch(self):
        with pytest.raises(ParameterError):
            stack([Matrix.identity(Q, 2), Matrix.identity(Q, 3)])

    def test_ragged_rows(self):
        with pytest.raises(ParameterError):
            Matrix.from_rows(Q, [[1, 2], [3]])

    def test_from_columns(self):
        m = Matrix.from_columns(Q, [[1, 0, 0], [1, 1, 0]], 3)
        assert m.shape == (3, 2)
        assert m.apply([1, 1]) == [2, 1, 0]


class TestVectorHelpers:
    def test_independent_subset_is_greedy(self):
        vectors = [[1, 0], [2, 0], [0, 1], [1, 1]]
        assert independent_subset(Q, vectors, 2) == [0, 2]

    def test_rank_of_vectors(self):
        assert rank_of_vectors(Q, [], 3) == 0
        assert rank_of_vectors(Q, [[1, 1, 0], [2, 2, 0]], 3) == 1
