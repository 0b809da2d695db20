from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cycrep.linalg import (
    QMatrix,
    cokernel,
    column_space_basis,
    hstack,
    kernel_basis,
    kronecker,
    rank,
    rat,
    rat_to_str,
    right_inverse,
    rref,
    rref_with_transform,
    solve,
    solve_matrix,
    vstack,
)

small_entries = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=5, max_cols=7):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(small_entries, min_size=r * c, max_size=r * c).map(
                lambda e: QMatrix(r, c, e))))


class TestRref:
    def test_identity(self):
        r, piv = rref(QMatrix.identity(3))
        assert r == QMatrix.identity(3)
        assert piv == [0, 1, 2]

    def test_proportional_rows(self):
        r, piv = rref(QMatrix.from_rows([[2, 4], [1, 2]]))
        assert r == QMatrix.from_rows([[1, 2], [0, 0]])
        assert piv == [0]

    @settings(max_examples=60, deadline=None)
    @given(matrices())
    def test_reconstruction_from_recorded_row_operations(self, m):
        # the transform records the row operations; undoing them must give
        # back the original matrix exactly
        r, piv, u = rref_with_transform(m)
        assert u @ m == r
        u_inv = solve_matrix(u, QMatrix.identity(u.rows))
        assert u_inv is not None, "recorded row operations must be invertible"
        assert u_inv @ r == m

    @settings(max_examples=40, deadline=None)
    @given(matrices())
    def test_idempotent_exactly(self, m):
        r, piv = rref(m)
        r2, piv2 = rref(r)
        assert r == r2 and piv == piv2

    def test_pivot_entries_normalized(self):
        r, piv = rref(QMatrix.from_rows([[0, 3, 1], [0, 0, 5]]))
        for row_idx, col in enumerate(piv):
            assert r[row_idx, col] == 1


class TestKernel:
    def test_identity_has_trivial_kernel(self):
        k = kernel_basis(QMatrix.identity(2))
        assert k.shape() == (2, 0)

    def test_one_relation(self):
        k = kernel_basis(QMatrix.from_rows([[1, 1]]))
        assert k.cols == 1
        v = k.col(0)
        assert v[0] == -v[1] != 0

    @settings(max_examples=60, deadline=None)
    @given(matrices())
    def test_rank_nullity_and_annihilation(self, m):
        k = kernel_basis(m)
        assert (m @ k).is_zero()
        assert k.cols == m.cols - rank(m)
        assert rank(k) == k.cols  # columns independent


class TestSolve:
    def test_identity(self):
        x = solve(QMatrix.identity(2), [3, 5])
        assert x == QMatrix.column([3, 5])

    def test_underdetermined_witness(self):
        m = QMatrix.from_rows([[1, 1]])
        x = solve(m, [2])
        assert x is not None and (m @ x) == QMatrix.column([2])

    def test_inconsistent(self):
        assert solve(QMatrix.from_rows([[1], [0]]), [0, 1]) is None

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            solve(QMatrix.identity(2), [1, 2, 3])

    @settings(max_examples=40, deadline=None)
    @given(matrices(), st.lists(small_entries, min_size=7, max_size=7))
    def test_solutions_verify_by_substitution(self, m, coeffs):
        b = m @ QMatrix.column(coeffs[: m.cols])
        x = solve(m, b)
        assert x is not None and m @ x == b


class TestCokernel:
    def test_zero_matrix(self):
        p, d = cokernel(QMatrix.zeros(2, 2))
        assert p == QMatrix.identity(2) and d == 2

    def test_identity(self):
        p, d = cokernel(QMatrix.identity(2))
        assert d == 0 and p.shape() == (0, 2)

    def test_diagonal_inclusion(self):
        m = QMatrix.from_rows([[1], [1]])
        p, d = cokernel(m)
        assert d == 1 and (p @ m).is_zero() and rank(p) == 1

    @settings(max_examples=50, deadline=None)
    @given(matrices())
    def test_kernel_of_projection_is_image_by_double_inclusion(self, m):
        p, d = cokernel(m)
        assert d == m.rows - rank(m)
        assert (p @ m).is_zero()                      # image inside kernel
        ker_p = kernel_basis(p)
        for j in range(ker_p.cols):                    # kernel inside image
            assert solve(m, ker_p.column_vector(j)) is not None


class TestKronecker:
    def test_identities(self):
        assert kronecker(QMatrix.identity(2), QMatrix.identity(3)) == QMatrix.identity(6)

    def test_scalar_factor(self):
        b = QMatrix.from_rows([[1, 2], [3, 4]])
        assert kronecker(QMatrix.from_rows([[2]]), b) == b.scale(2)

    @settings(max_examples=30, deadline=None)
    @given(matrices(3, 3), matrices(3, 3))
    def test_bilinearity_on_basis_pairs(self, a, b):
        # (A kron B)(e_i kron e_j) == A e_i kron B e_j, lexicographic pairing
        k = kronecker(a, b)
        for i in range(a.cols):
            for j in range(b.cols):
                av, bv = a.col(i), b.col(j)
                tensor = [x * y for x in av for y in bv]
                assert k.col(i * b.cols + j) == tensor


class TestZeroDimensional:
    def test_empty_shapes_compose(self):
        a = QMatrix.zeros(3, 0)
        b = QMatrix.zeros(0, 2)
        assert (a @ b) == QMatrix.zeros(3, 2)
        assert rank(a) == 0
        assert kernel_basis(b).shape() == (2, 2)

    def test_rref_of_empty(self):
        r, piv = rref(QMatrix.zeros(0, 3))
        assert r.shape() == (0, 3) and piv == []


class TestHelpers:
    def test_column_space_basis(self):
        m = QMatrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 0, 1]])
        basis, cols = column_space_basis(m)
        assert cols == [0, 2] and rank(basis) == 2

    def test_right_inverse(self):
        p = QMatrix.from_rows([[1, 1, 0], [0, 1, 1]])
        s = right_inverse(p)
        assert p @ s == QMatrix.identity(2)

    def test_stacking(self):
        a = QMatrix.identity(2)
        assert hstack(a, a).shape() == (2, 4)
        assert vstack(a, a).shape() == (4, 2)


class TestRationalStrings:
    def test_canonical_forms(self):
        assert rat_to_str(Fraction(3)) == "3"
        assert rat_to_str(Fraction(-4, 6)) == "-2/3"
        assert rat("7/2") == Fraction(7, 2)
        assert rat("-5") == Fraction(-5)

    @settings(max_examples=50, deadline=None)
    @given(st.fractions())
    def test_round_trip(self, q):
        assert rat(rat_to_str(q)) == q
