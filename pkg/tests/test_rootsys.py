"""
根系组合测试：正根、ρ、Weyl 群、点作用、强连接、Kostant 分拆
"""
from fractions import Fraction

import pytest

from app.core.exceptions import DimensionError, FiniteTypeError, InvalidRootError, NonIntegralError, SpecError
from app.core.rootsys import (
    Weight,
    build_root_system,
    dot_action,
    dot_orbit,
    kostant_partition,
    linear_action,
    parse_cartan,
    strongly_linked,
)


class TestBuildRootSystem:
    """由 Cartan 矩阵构造根系"""

    def test_a1(self, a1):
        assert a1.positive_roots == ((1,),)
        assert a1.rho == Weight.of(1)

    def test_a2(self, a2):
        """|Φ⁺| = 3，|W| = 6，Φ⁺ 按 (高度, 字典序) 排列"""
        assert a2.positive_roots == ((0, 1), (1, 0), (1, 1))
        assert len(a2.weyl_elements) == 6

    def test_g2(self):
        g2 = build_root_system([[2, -1], [-3, 2]])
        assert g2.num_positive == 6
        assert len(g2.weyl_elements) == 12

    @pytest.mark.parametrize("name,expected", [("B2", 4), ("C3", 9), ("A3", 6)])
    def test_named_types(self, name, expected):
        assert build_root_system(name).num_positive == expected

    def test_rho_pairs_to_one(self, a2):
        """⟨ρ, αᵢ∨⟩ = 1"""
        for i in range(a2.rank):
            assert a2.pairing(a2.rho, a2.simple_root(i)) == 1

    def test_reflections_match_positive_roots(self, a2):
        """W 中反射的个数等于 |Φ⁺|"""
        assert sum(w.is_reflection() for w in a2.weyl_elements) == a2.num_positive

    def test_affine_type_rejected(self):
        """仿射型 A1^(1) 的反射闭包不终止"""
        with pytest.raises(FiniteTypeError):
            build_root_system([[2, -2], [-2, 2]])

    def test_bad_diagonal(self):
        with pytest.raises(FiniteTypeError):
            parse_cartan([[3, -1], [-1, 2]])

    def test_unknown_name(self):
        with pytest.raises(SpecError):
            parse_cartan("E9")


class TestDotAction:
    """点作用 w·λ = w(λ+ρ) − ρ"""

    def test_a1_reflection(self, a1):
        assert dot_action(a1, (1,), Weight.of(2)) == Weight.of(-4)

    def test_minus_rho_is_fixed(self, a1):
        assert dot_action(a1, (1,), Weight.of(-1)) == Weight.of(-1)

    def test_a2_simple_reflection(self, a2):
        assert dot_action(a2, (1, 0), Weight.of(0, 0)) == Weight.of(-2, 1)

    def test_not_a_positive_root(self, a2):
        with pytest.raises(InvalidRootError):
            dot_action(a2, (1, -1), Weight.of(0, 0))

    def test_involution(self, a2):
        """s_β·(s_β·λ) = λ"""
        lam = Weight.of(Fraction(1, 2), 3)
        for beta in a2.positive_roots:
            assert dot_action(a2, beta, dot_action(a2, beta, lam)) == lam

    def test_matches_linear_action(self, a2):
        """w·λ = w(λ+ρ) − ρ 对全部 Weyl 群元素成立"""
        lam = Weight.of(2, -1)
        for w in a2.weyl_elements:
            expected = linear_action(a2, w, lam + a2.rho) - a2.rho
            assert dot_action(a2, w, lam) == expected


class TestStrongLinkage:
    """强连接的广度优先搜索"""

    def test_a1_chain(self, a1):
        chain = strongly_linked(a1, Weight.of(-4), Weight.of(2))
        assert chain.to_json(a1) == [["a1", [-4]]]

    def test_reflexive(self, a1):
        chain = strongly_linked(a1, Weight.of(2), Weight.of(2))
        assert chain is not None
        assert chain.length == 0

    def test_a2_chain(self, a2):
        """(0,0) → (1,−2) → (−3,0)"""
        chain = strongly_linked(a2, Weight.of(-3, 0), Weight.of(0, 0))
        assert chain.to_json(a2) == [["a2", [1, -2]], ["a1", [-3, 0]]]
        assert chain.verify(a2)

    def test_not_linked_upwards(self, a1):
        assert strongly_linked(a1, Weight.of(2), Weight.of(-4)) is None

    def test_nonintegral_difference(self, a1):
        with pytest.raises(NonIntegralError):
            strongly_linked(a1, Weight.of(Fraction(1, 2)), Weight.of(2))

    def test_orbit_exhaustive(self, a2):
        """轨道内：有链 ⇔ μ ≤ λ 且可达；链的每一步都不升高"""
        lam = Weight.of(1, 1)
        orbit = dot_orbit(a2, lam)
        assert len(orbit) == 6
        for mu in orbit:
            chain = strongly_linked(a2, mu, lam)
            assert chain is not None
            assert chain.verify(a2)
            assert a2.dominance_leq(mu, lam)


class TestKostantPartition:
    """Kostant 分拆函数"""

    def test_a1(self, a1):
        assert kostant_partition(a1, (3,)) == 1

    def test_a2(self, a2):
        assert kostant_partition(a2, (1, 1)) == 2
        assert kostant_partition(a2, (2, 2)) == 3

    def test_zero(self, a2):
        assert kostant_partition(a2, (0, 0)) == 1

    def test_negative_entries(self, a2):
        with pytest.raises(DimensionError):
            kostant_partition(a2, (-1, 0))
