"""
精确有理线性代数测试
"""
import random
from fractions import Fraction

import pytest

from app.core.exactla import (
    RationalMatrix,
    SolveTag,
    Subspace,
    inverse,
    kernel,
    kronecker,
    rank,
    rank_rational,
    solve,
)
from app.core.exceptions import DimensionError


class TestRationalMatrix:
    """稀疏矩阵的构造与运算"""

    def test_zero_entries_are_not_stored(self):
        """零元素不存储"""
        m = RationalMatrix.from_rows([[0, 1], [0, 0]])
        assert m.nnz == 1
        assert m.get(0, 0) == 0

    def test_entries_in_lowest_terms(self):
        """有理数约分且分母为正"""
        m = RationalMatrix(1, 1, {(0, 0): Fraction(4, -6)})
        value = m.get(0, 0)
        assert value == Fraction(-2, 3)
        assert value.denominator == 3

    def test_entry_outside_shape(self):
        """越界元素抛 DimensionError"""
        with pytest.raises(DimensionError):
            RationalMatrix(2, 2, {(2, 0): 1})

    def test_ragged_rows(self):
        with pytest.raises(DimensionError):
            RationalMatrix.from_rows([[1, 2], [3]])

    def test_matmul_and_apply(self):
        """乘法与作用在向量上一致"""
        a = RationalMatrix.from_rows([[1, 2], [3, 4]])
        b = RationalMatrix.from_rows([[0, 1], [1, 0]])
        assert (a @ b).to_rows() == [[2, 1], [4, 3]]
        assert a.apply([1, Fraction(1, 2)]) == (Fraction(2), Fraction(5))

    def test_kronecker_shape(self):
        a = RationalMatrix.identity(2)
        b = RationalMatrix.from_rows([[1, 2, 3]])
        assert kronecker(a, b).shape == (2, 6)


class TestKernel:
    """零空间"""

    def test_rank_one_matrix(self):
        """[[1,2],[2,4]] 的零空间由 (−2,1) 张成"""
        m = RationalMatrix.from_rows([[1, 2], [2, 4]])
        assert kernel(m) == [(Fraction(-2), Fraction(1))]

    def test_identity_has_trivial_kernel(self):
        assert kernel(RationalMatrix.identity(3)) == []

    def test_zero_map(self):
        """1×2 零矩阵的零空间是整个空间"""
        m = RationalMatrix.from_rows([[0, 0]])
        assert kernel(m) == [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]

    def test_kernel_vectors_are_annihilated(self):
        """随机矩阵：m·v = 0 且秩 + 零化度 = 列数"""
        rng = random.Random(7)
        for _ in range(20):
            rows = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(3)]
            m = RationalMatrix.from_rows(rows)
            basis = kernel(m)
            for v in basis:
                assert all(x == 0 for x in m.apply(v))
            assert rank(m) + len(basis) == m.cols


class TestRank:
    """秩"""

    def test_examples(self):
        assert rank(RationalMatrix.from_rows([[1, 2], [2, 4]])) == 1
        assert rank(RationalMatrix.identity(3)) == 3

    def test_nilpotent_jordan_block(self):
        """J₄(0) 的秩为 3"""
        jordan = RationalMatrix(4, 4, {(i, i + 1): 1 for i in range(3)})
        assert rank(jordan) == 3

    def test_fraction_free_matches_naive(self):
        """Bareiss 消元与朴素有理消元的秩一致"""
        rng = random.Random(11)
        for _ in range(30):
            rows = [
                [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)]
                for _ in range(4)
            ]
            m = RationalMatrix.from_rows(rows)
            assert rank(m) == rank_rational(m)


class TestSolve:
    """线性方程组与不相容证书"""

    def test_inconsistent_system(self):
        """0·x = 1：证书选中第二行"""
        a = RationalMatrix.from_rows([[1], [0]])
        outcome = solve(a, [0, 1])
        assert outcome.tag == SolveTag.INCONSISTENT
        assert outcome.witness[0] == 0
        assert outcome.witness[1] != 0
        assert outcome.verify(a, [0, 1])

    def test_unique_solution(self):
        a = RationalMatrix.identity(2)
        outcome = solve(a, [3, Fraction(-1, 2)])
        assert outcome.is_solution
        assert outcome.solution == (Fraction(3), Fraction(-1, 2))

    def test_free_variables_are_zero(self):
        """x + y = 5 的解取 (5, 0)"""
        outcome = solve(RationalMatrix.from_rows([[1, 1]]), [5])
        assert outcome.solution == (Fraction(5), Fraction(0))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            solve(RationalMatrix.identity(2), [1])

    def test_tampered_solution_fails_verification(self):
        """篡改过的解通不过复核"""
        a = RationalMatrix.identity(2)
        outcome = solve(a, [1, 2])
        assert not outcome.verify(a, [1, 3])

    def test_inverse(self):
        m = RationalMatrix.from_rows([[2, 1], [1, 1]])
        assert (m @ inverse(m)) == RationalMatrix.identity(2)

    def test_inverse_of_singular_matrix(self):
        with pytest.raises(DimensionError):
            inverse(RationalMatrix.from_rows([[1, 2], [2, 4]]))


class TestSubspace:
    """RREF 子空间与商坐标"""

    def test_span_is_canonical(self):
        """同一子空间的不同生成组给出相同的基"""
        s1 = Subspace.span(3, [(1, 1, 0), (0, 1, 1)])
        s2 = Subspace.span(3, [(1, 2, 1), (1, 0, -1)])
        assert s1.basis == s2.basis

    def test_contains_and_reduce(self):
        s = Subspace.span(3, [(1, 0, 0)])
        assert s.contains((5, 0, 0))
        assert not s.contains((0, 1, 0))
        assert s.codim == 2

    def test_intersection(self):
        s1 = Subspace.span(3, [(1, 0, 0), (0, 1, 0)])
        s2 = Subspace.span(3, [(0, 1, 0), (0, 0, 1)])
        assert s1.intersect(s2).dim == 1
