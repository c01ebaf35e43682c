"""
范畴 O' 算法测试：极大向量、奇异向量公式、嵌入、合成重数、幂零度、公理、滤过
"""
import dataclasses
from fractions import Fraction

import pytest

from app.core.category_o import (
    FiltrationReport,
    check_oprime_axioms,
    composition_multiplicities_sl2,
    embed_verma,
    find_maximal_vectors,
    highest_weight_filtration,
    irreducibility_check,
    irreducible_quotient,
    j2_nilpotency_degree,
    jordan_tower,
    linkage_completeness,
    maximal_submodule,
    shifted_nilpotency_degree,
    singular_vector_formula_check,
    standard_filtration,
    verma_maximal_vectors,
)
from app.core.entities import FiltrationKind
from app.core.exceptions import NotApplicable, TruncationError, UnsupportedRank
from app.core.glie import build_algebra, from_summands, g0_algebra, realize_simple
from app.core.pbwmod import build_verma, direct_sum, tensor_with_simple
from app.core.rootsys import Weight


class TestMaximalVectors:
    """极大向量与奇异向量公式"""

    def test_singular_vector_of_m2(self, gl2):
        """M(2, g) 在权 −4 处的极大向量是 f³w"""
        m = build_verma(gl2, Weight.of(2), [3], 6)
        found = find_maximal_vectors(m, Weight.of(-4))
        assert found.dim == 1
        assert found.labels == ["f^3 w"]

    def test_no_maximal_vector_between(self, gl2):
        m = build_verma(gl2, Weight.of(2), [3], 6)
        assert find_maximal_vectors(m, Weight.of(-2)).dim == 0

    def test_no_headroom(self, gl2):
        """窗口底部无法判定"""
        m = build_verma(gl2, Weight.of(2), [3], 2)
        with pytest.raises(TruncationError):
            find_maximal_vectors(m, Weight.of(-4))

    def test_records_g(self, gl2):
        m = build_verma(gl2, Weight.of(2), [3], 6)
        found = find_maximal_vectors(m, Weight.of(-4))
        assert found.g_observed is not None
        assert found.g_observed(gl2.u(0)) == 3
        assert find_maximal_vectors(m, Weight.of(-4), include_radical=False).g_observed is None

    def test_window_bottom_with_j2(self, sl2_adjoint):
        """u3 从最底层的权出界；Verma 模上只需检查 e 与 J₁"""
        m = build_verma(sl2_adjoint, Weight.of(2), None, 3)
        with pytest.raises(TruncationError):
            find_maximal_vectors(m, Weight.of(-4))
        found = verma_maximal_vectors(m, Weight.of(-4))
        assert found.labels == ["f^3 w"]

    def test_formula_gl2(self, gl2):
        check = singular_vector_formula_check(gl2, Weight.of(2), [3], 0)
        assert check.n == 3
        assert check.vector == "f^3 w"
        assert check.passed

    def test_formula_mixed_radical(self, sl2_mixed):
        """J 同时含 J₁ 与 J₂ 时逐项验证二项式恒等式"""
        g = from_summands(sl2_mixed, [5, [0, 0, 0]])
        check = singular_vector_formula_check(sl2_mixed, Weight.of(1), g, 0)
        assert check.passed
        names = [c["name"] for c in check.checks]
        assert "u1 acts by g on f^n w" in names
        assert "u2 f^n w = 0" in names

    def test_formula_rank2(self, a2):
        a = build_algebra(a2, [Weight.of(0, 0)])
        for i in range(2):
            assert singular_vector_formula_check(a, Weight.of(1, 0), [Fraction(1, 2)], i).passed

    def test_formula_not_applicable(self, gl2):
        """⟨λ+ρ, α∨⟩ 不是正整数"""
        with pytest.raises(NotApplicable):
            singular_vector_formula_check(gl2, Weight.of(-2), [3], 0)


class TestEmbeddingsAndQuotients:
    """Verma 嵌入、极大子模与不可约商"""

    def test_embedding(self, gl2):
        phi = embed_verma(gl2, Weight.of(-4), Weight.of(2), [3], 6)
        assert phi is not None
        assert phi.is_injective()
        assert not phi.intertwining_failures()
        assert phi.target.describe_vector(Weight.of(-4), phi.apply(Weight.of(-4), (1,))) == "f^3 w"

    def test_embedding_rank2_two_steps(self, a2):
        """A2：(−3,0) ↑ (0,0) 需要经过两步"""
        g0 = g0_algebra(a2)
        phi = embed_verma(g0, Weight.of(-3, 0), Weight.of(0, 0), None, 4)
        assert phi is not None
        assert phi.is_injective()

    def test_embedding_at_window_bottom_with_j2(self, a2):
        """A2 ⋉ L(1,1)：M(−2,−2) ↪ M(0,0) 经 a1+a2 一步，μ 正好在窗口底部"""
        a = build_algebra(a2, [Weight.of(1, 1)])
        phi = embed_verma(a, Weight.of(-2, -2), Weight.of(0, 0), None, 4)
        assert phi is not None
        assert phi.is_injective()

    def test_not_linked(self, gl2):
        assert embed_verma(gl2, Weight.of(0), Weight.of(2), [3], 6) is None

    def test_maximal_submodule(self, gl2):
        m = build_verma(gl2, Weight.of(2), [3], 6)
        sub = maximal_submodule(m)
        assert sorted(sub.components) == [Weight.of(n) for n in (-10, -8, -6, -4)]

    def test_irreducible_quotient(self, gl2):
        simple = irreducible_quotient(gl2, Weight.of(2), [3], 6)
        assert simple.character() == {Weight.of(2): 1, Weight.of(0): 1, Weight.of(-2): 1}

    def test_irreducibility(self, sl2_mixed):
        g = from_summands(sl2_mixed, [-1, [0, 0, 0]])
        report = irreducibility_check(sl2_mixed, Weight.of(1), g, 6)
        assert report.irreducible

    def test_linkage_completeness(self, gl2):
        report = linkage_completeness(gl2, Weight.of(2), [3], 8)
        assert report.passed
        assert report.maximal_weights == [Weight.of(-4)]

    def test_linkage_completeness_reaches_window_bottom(self, sl2_adjoint):
        report = linkage_completeness(sl2_adjoint, Weight.of(2), None, 3)
        assert report.unchecked == []
        assert report.maximal_weights == [Weight.of(-4)]
        assert report.passed


class TestCompositionMultiplicities:
    """秩 1 的 [M(λ, g) : L(μ, g)]"""

    def test_dominant(self, gl2):
        result = composition_multiplicities_sl2(gl2, Weight.of(2), [3], 8)
        assert result == {Weight.of(2): 1, Weight.of(-4): 1}

    @pytest.mark.parametrize("n", [-1, -4])
    def test_simple_vermas(self, gl2, n):
        assert composition_multiplicities_sl2(gl2, Weight.of(n), [3], 8) == {Weight.of(n): 1}

    @pytest.mark.parametrize("depth", [3, 4, 6])
    def test_adjoint_radical(self, sl2_adjoint, depth):
        """L(−4) 的奇异向量在深度 3 时正好落在窗口底部"""
        result = composition_multiplicities_sl2(sl2_adjoint, Weight.of(2), None, depth)
        assert result == {Weight.of(2): 1, Weight.of(-4): 1}

    def test_mixed_radical(self, sl2_mixed):
        g = from_summands(sl2_mixed, [3, [0, 0, 0]])
        assert composition_multiplicities_sl2(sl2_mixed, Weight.of(2), g, 3) == {
            Weight.of(2): 1,
            Weight.of(-4): 1,
        }

    def test_rank2_unsupported(self, a2):
        with pytest.raises(UnsupportedRank):
            composition_multiplicities_sl2(g0_algebra(a2), Weight.of(0, 0), None, 4)


class TestNilpotency:
    """J₂ 与 (u − c) 的幂零度"""

    def test_empty_j2(self, gl2):
        assert j2_nilpotency_degree(build_verma(gl2, Weight.of(2), [3], 4)) == 0

    def test_verma_over_adjoint_radical(self, sl2_adjoint):
        assert j2_nilpotency_degree(build_verma(sl2_adjoint, Weight.of(2), None, 6)) == 1

    def test_witness_pair(self, sl2_adjoint):
        pair = jordan_tower(sl2_adjoint, Weight.of(2), None, 2, "u3")
        assert j2_nilpotency_degree(pair) == 2

    def test_central_element_on_verma(self, gl2):
        m = build_verma(gl2, Weight.of(2), [3], 4)
        assert shifted_nilpotency_degree(m, gl2.u(0), Fraction(3)) == 1


class TestAxioms:
    """O'1–O'4"""

    def test_verma_passes(self, gl2):
        report = check_oprime_axioms(build_verma(gl2, Weight.of(2), [3], 6))
        assert report.passed
        assert [r.name for r in report.results] == ["O'1", "O'2", "O'3", "O'4"]

    def test_jordan_tower_passes(self, gl2):
        assert check_oprime_axioms(jordan_tower(gl2, Weight.of(1), [3], 3)).passed

    def test_missing_generators(self, gl2):
        """没有记录生成元的模不满足 O'1"""
        m = dataclasses.replace(build_verma(gl2, Weight.of(2), [3], 4), generators=())
        report = check_oprime_axioms(m)
        assert not report.passed
        assert not report.results[0].passed

    def test_weight_space_bound(self, gl2):
        """只记录 f³w 为生成元时，权 2 的一维分量超出 PBW 上界 0"""
        m = build_verma(gl2, Weight.of(2), [3], 6)
        m = dataclasses.replace(m, generators=((Weight.of(-4), (Fraction(1),)),))
        result = check_oprime_axioms(m).results[3]
        assert result.name == "O'4"
        assert not result.passed
        assert {"weight": Weight.of(2).to_json(), "dim": 1, "bound": 0} in result.detail["exceeded"]

    def test_weight_space_bound_with_j2(self, sl2_adjoint):
        """f 与 u3 同权：界是 k + 1，Verma 模的一维分量都在界内"""
        result = check_oprime_axioms(build_verma(sl2_adjoint, Weight.of(2), None, 4)).results[3]
        assert result.passed
        assert result.detail["exceeded"] == []


class TestFiltrations:
    """最高权滤过与标准滤过"""

    def test_verma_has_one_step(self, gl2):
        m = build_verma(gl2, Weight.of(2), [3], 6)
        assert highest_weight_filtration(m).steps == [(Weight.of(2), m.g_label)]
        assert standard_filtration(m).length == 1

    def test_tensor_standard_filtration(self, gl2, a1):
        """M(−1) ⊗ L(1) 有 Verma 因子 M(0), M(−2)"""
        m = tensor_with_simple(build_verma(gl2, Weight.of(-1), [3], 6), realize_simple(a1, Weight.of(1)))
        report = standard_filtration(m)
        assert [w for w, _ in report.steps] == [Weight.of(0), Weight.of(-2)]
        assert report.g0_length == 2
        assert report.lengths_agree

    def test_direct_sum(self, gl2):
        m = direct_sum([build_verma(gl2, Weight.of(2), [3], 6), build_verma(gl2, Weight.of(-1), [3], 6)])
        report = standard_filtration(m)
        assert report.length == 2
        assert report.multiplicity(Weight.of(-1)) == 1

    def test_witness_pair(self, sl2_adjoint):
        """u3 的像 v₂ ∈ L(0) 先被分出，商是 L(2)"""
        pair = jordan_tower(sl2_adjoint, Weight.of(2), None, 2, "u3")
        report = highest_weight_filtration(pair)
        assert [w for w, _ in report.steps] == [Weight.of(0), Weight.of(2)]

    def test_tower_steps(self, gl2):
        """T₃ 的三个因子都是 L(γ)"""
        report = highest_weight_filtration(jordan_tower(gl2, Weight.of(1), [3], 3))
        assert [w for w, _ in report.steps] == [Weight.of(1)] * 3

    def test_stalled_g0_level_disagrees(self, gl2):
        """g₀ 层面剥离停滞时长度不算一致"""
        m = build_verma(gl2, Weight.of(2), [3], 6)
        report = FiltrationReport(
            kind=FiltrationKind.STANDARD, steps=[(Weight.of(2), m.g_label)], window={}, g0_length=None
        )
        assert report.lengths_agree is False
        assert report.to_dict()["lengths_agree"] is False

    def test_highest_weight_does_not_compare(self, gl2):
        report = highest_weight_filtration(build_verma(gl2, Weight.of(2), [3], 6))
        assert report.g0_length is None
        assert report.lengths_agree is None
