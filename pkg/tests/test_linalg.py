from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinaltri.linalg import (
    DimensionError,
    QMatrix,
    QVector,
    det,
    format_rational,
    gram_sq_volume,
    inverse,
    kernel_basis,
    parse_rational,
    rank,
    sqrt_rational,
)

rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


def square_matrix(n):
    return st.lists(
        st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n
    ).map(QMatrix)


class TestDet:
    def test_identity(self):
        assert det(QMatrix.identity(3)) == 1

    def test_j3_from_block_structure(self):
        # J_n = I_{n-1} + all-ones has determinant n; here n = 3.
        j3 = QMatrix([[2, 1], [1, 2]])
        assert det(j3) == 3

    def test_permutation_sign(self):
        assert det(QMatrix([[0, 1], [1, 0]])) == -1

    def test_rational_entries(self):
        m = QMatrix([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), Fraction(1, 7)]])
        assert det(m) == Fraction(1, 14) - Fraction(1, 15)

    def test_non_square_rejected(self):
        with pytest.raises(DimensionError):
            det(QMatrix([[1, 2, 3], [4, 5, 6]]))

    @given(square_matrix(3), square_matrix(3))
    def test_multiplicative(self, a, b):
        assert det(a @ b) == det(a) * det(b)

    def test_empty(self):
        assert det(QMatrix([], cols=0)) == 1


class TestRank:
    def test_zero_matrix(self):
        assert rank(QMatrix.zeros(2, 3)) == 0

    def test_identity(self):
        assert rank(QMatrix.identity(4)) == 4

    def test_se_transformation_1_2(self):
        # (I_2 | -I_2) row-reduces to two independent rows.
        m = QMatrix([[1, 0, -1, 0], [0, 1, 0, -1]])
        assert rank(m) == 2

    def test_dependent_rows(self):
        assert rank(QMatrix([[1, 2], [2, 4], [3, 6]])) == 1


class TestKernel:
    def test_identity_trivial_kernel(self):
        assert kernel_basis(QMatrix.identity(3)) == []

    def test_one_by_two(self):
        (v,) = kernel_basis(QMatrix([[1, 1]]))
        assert v[0] * 1 + v[1] * 1 == 0
        assert v[0] != 0  # proportional to (1, -1)
        assert v[1] / v[0] == -1

    @given(
        st.lists(
            st.lists(rationals, min_size=4, max_size=4), min_size=2, max_size=3
        ).map(QMatrix)
    )
    def test_rank_nullity_and_membership(self, m):
        basis = kernel_basis(m)
        assert rank(m) + len(basis) == m.cols
        for v in basis:
            assert (m @ v).is_zero()


class TestGramSqVolume:
    def test_cube_diagonal_segment(self):
        # Segment from the origin to (1,1,1): squared length 3.
        pts = [QVector([0, 0, 0]), QVector([1, 1, 1])]
        assert gram_sq_volume(pts, 1) == 3

    def test_standard_triangle(self):
        pts = [QVector([0, 0]), QVector([1, 0]), QVector([0, 1])]
        assert gram_sq_volume(pts, 2) == Fraction(1, 4)

    def test_collinear_degenerate(self):
        pts = [QVector([0, 0]), QVector([1, 1]), QVector([2, 2])]
        assert gram_sq_volume(pts, 2) == 0

    def test_point(self):
        assert gram_sq_volume([QVector([5, 7])], 0) == 1

    def test_wrong_count(self):
        with pytest.raises(DimensionError):
            gram_sq_volume([QVector([0]), QVector([1])], 2)

    @given(st.permutations(range(4)))
    def test_permutation_invariant(self, perm):
        pts = [
            QVector([0, 0, 0]),
            QVector([1, 0, 0]),
            QVector([Fraction(1, 2), 1, 0]),
            QVector([Fraction(1, 3), Fraction(1, 5), 2]),
        ]
        base = gram_sq_volume(pts, 3)
        assert gram_sq_volume([pts[i] for i in perm], 3) == base

    def test_isometry_invariant(self):
        # Coordinate swaps and sign flips are exactly representable isometries.
        pts = [QVector([0, 0, 0]), QVector([1, 2, 0]), QVector([0, 1, 5])]
        swapped = [QVector([p[2], p[0], -p[1]]) for p in pts]
        assert gram_sq_volume(pts, 2) == gram_sq_volume(swapped, 2)


def assemble_block_matrix(a: QMatrix, t: int) -> QMatrix:
    """Block grid with 2A on the diagonal and A elsewhere, t block rows."""
    m = a.rows
    rows = []
    for bi in range(t):
        for i in range(m):
            row = []
            for bj in range(t):
                f = 2 if bi == bj else 1
                row.extend(f * x for x in a.entries[i])
            rows.append(row)
    return QMatrix(rows, cols=m * t)


class TestBlockDeterminantIdentity:
    @given(st.integers(1, 3).flatmap(square_matrix), st.integers(2, 4))
    def test_identity_holds(self, a, t):
        b = assemble_block_matrix(a, t)
        assert det(b) == (t + 1) ** a.rows * det(a) ** t


class TestInverse:
    @given(square_matrix(3))
    def test_roundtrip(self, m):
        if det(m) == 0:
            return
        assert m @ inverse(m) == QMatrix.identity(3)

    def test_singular_raises(self):
        with pytest.raises(DimensionError):
            inverse(QMatrix([[1, 2], [2, 4]]))


class TestSerialization:
    def test_format(self):
        assert format_rational(Fraction(-3, 4)) == "-3/4"
        assert format_rational(Fraction(6, 3)) == "2"

    def test_parse_roundtrip(self):
        for s in ["-3/4", "2", "0", "7/5"]:
            assert format_rational(parse_rational(s)) == s


class TestSqrtRational:
    def test_perfect(self):
        assert sqrt_rational(Fraction(9, 4)) == Fraction(3, 2)

    def test_irrational(self):
        assert sqrt_rational(3) is None

    def test_negative(self):
        assert sqrt_rational(-1) is None
