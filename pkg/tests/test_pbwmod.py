"""
PBW 截断模测试：Verma 模、子模与商、直和、张量积、Jordan 型扩张
"""
from fractions import Fraction

import pytest

from app.core.category_o import j2_nilpotency_degree, jordan_tower, shifted_nilpotency_degree
from app.core.entities import WindowStatus
from app.core.exceptions import (
    DepthLimitError,
    DimensionError,
    InvalidFunctional,
    NotApplicable,
    TruncationError,
    UnsupportedTensor,
)
from app.core.glie import realize_simple
from app.core.pbwmod import (
    apply,
    build_verma,
    direct_sum,
    jordan_sum,
    quotient_with_projection,
    submodule_generated,
    tensor_with_simple,
)
from app.core.rootsys import Weight, kostant_partition


class TestVerma:
    """截断 Verma 模 M(λ, g)"""

    def test_rank1_components(self, gl2):
        m = build_verma(gl2, Weight.of(2), [3], 6)
        assert m.name == "M((2),g=(3))"
        assert m.sorted_weights()[:3] == [Weight.of(2), Weight.of(0), Weight.of(-2)]
        assert m.components[Weight.of(-4)] == ("f^3 w",)
        assert m.total_dimension() == 7

    def test_e_action(self, gl2):
        """e·f^k w = k(λ − k + 1) f^{k−1} w"""
        lam = 5
        m = build_verma(gl2, Weight.of(lam), [0], 6)
        for k in range(1, 6):
            mu = Weight.of(lam - 2 * k)
            block = m.action_block(gl2.e(0), mu)
            assert block.get(0, 0) == k * (lam - k + 1)

    def test_central_element_acts_by_g(self, gl2):
        m = build_verma(gl2, Weight.of(1), [Fraction(-5, 2)], 4)
        assert not m.radical_action_defect(m.g_label)
        block = m.action_block(gl2.u(0), Weight.of(-3))
        assert block.get(0, 0) == Fraction(-5, 2)

    def test_character_matches_kostant(self, a2):
        """A2：dim M(λ)_{λ−ν} = P(ν)"""
        from app.core.glie import g0_algebra

        g0 = g0_algebra(a2)
        lam = Weight.of(1, 0)
        m = build_verma(g0, lam, None, 4)
        for p in range(5):
            for q in range(5 - p):
                mu = a2.weight_of_drop(lam, (p, q))
                assert m.dim(mu) == kostant_partition(a2, (p, q))

    def test_rank2_labels(self, a2):
        from app.core.glie import g0_algebra

        m = build_verma(g0_algebra(a2), Weight.of(0, 0), None, 2)
        mu = a2.weight_of_drop(Weight.of(0, 0), (1, 1))
        assert set(m.components[mu]) == {"f[a2] f[a1] w", "f[a1+a2] w"}

    def test_window_status(self, gl2):
        m = build_verma(gl2, Weight.of(2), [3], 2)
        assert m.window_status(Weight.of(-2)) == WindowStatus.INSIDE
        assert m.window_status(Weight.of(4)) == WindowStatus.ZERO
        assert m.window_status(Weight.of(-4)) == WindowStatus.OUTSIDE

    def test_leaving_window_is_an_error(self, gl2):
        """截断边界不能当作零"""
        m = build_verma(gl2, Weight.of(2), [3], 2)
        with pytest.raises(TruncationError):
            apply(m, ["f", "f", "f"], (Weight.of(2), (1,)))

    def test_invalid_functional(self, sl2_adjoint):
        with pytest.raises(InvalidFunctional):
            build_verma(sl2_adjoint, Weight.of(0), [1, 0, 0], 4)

    def test_depth_limit_from_environment(self, gl2, monkeypatch):
        monkeypatch.setenv("OPRIME_DEPTH_LIMIT", "4")
        with pytest.raises(DepthLimitError):
            build_verma(gl2, Weight.of(0), [0], 5)

    def test_radical_acts_by_zero_for_zero_g(self, sl2_adjoint):
        """g = 0 时 J₂ 在 Verma 模上作用为零"""
        m = build_verma(sl2_adjoint, Weight.of(3), None, 6)
        assert j2_nilpotency_degree(m) == 1


class TestSubmodulesAndQuotients:
    """子模生成与商"""

    def test_singular_vector_submodule(self, gl2):
        """f^3 w 生成 M(−4) 的截断"""
        m = build_verma(gl2, Weight.of(2), [3], 6)
        mu, v = apply(m, ["f", "f", "f"], (Weight.of(2), (1,)))
        sub = submodule_generated(m, [(mu, v)])
        assert sorted(sub.components) == [Weight.of(n) for n in (-10, -8, -6, -4)]

    def test_quotient_is_finite_dimensional(self, gl2):
        m = build_verma(gl2, Weight.of(2), [3], 6)
        mu, v = apply(m, ["f", "f", "f"], (Weight.of(2), (1,)))
        q, projection = quotient_with_projection(m, submodule_generated(m, [(mu, v)]))
        assert q.total_dimension() == 3
        assert q.components[Weight.of(-2)] == ("f^2 w",)
        assert projection.is_surjective()
        assert not projection.intertwining_failures()

    def test_foreign_submodule_rejected(self, gl2):
        m1 = build_verma(gl2, Weight.of(2), [3], 6)
        m2 = build_verma(gl2, Weight.of(2), [3], 6)
        sub = submodule_generated(m2, [(Weight.of(2), (1,))])
        with pytest.raises(DimensionError):
            quotient_with_projection(m1, sub)


class TestDirectSumAndTensor:
    """直和与张量积"""

    def test_direct_sum_dimensions(self, gl2):
        m = direct_sum([build_verma(gl2, Weight.of(2), [3], 4), build_verma(gl2, Weight.of(0), [3], 4)])
        assert m.top_weights == (Weight.of(2), Weight.of(0))
        assert m.dim(Weight.of(0)) == 2
        assert not m.bracket_failures()

    def test_direct_sum_needs_common_g(self, gl2):
        with pytest.raises(DimensionError):
            direct_sum([build_verma(gl2, Weight.of(2), [3], 4), build_verma(gl2, Weight.of(2), [1], 4)])

    def test_tensor_with_simple(self, gl2, a1):
        """M(−1) ⊗ L(1)：顶权 0，权 −2 处二维"""
        m = tensor_with_simple(build_verma(gl2, Weight.of(-1), [3], 6), realize_simple(a1, Weight.of(1)))
        assert m.top_weights == (Weight.of(0),)
        assert m.dim(Weight.of(0)) == 1
        assert m.dim(Weight.of(-2)) == 2
        assert not m.bracket_failures()
        assert not m.radical_action_defect(m.g_label)

    def test_tensor_needs_j2_zero(self, sl2_adjoint, a1):
        pair = jordan_tower(sl2_adjoint, Weight.of(2), None, 2, "u3")
        with pytest.raises(UnsupportedTensor):
            tensor_with_simple(pair, realize_simple(a1, Weight.of(1)))


class TestJordanSum:
    """J 带扭曲作用的有限维直和"""

    def test_central_twist(self, gl2, a1):
        """u·v₁ = g(u)v₁ + v₂：(u − g(u)) 的幂零度为 2"""
        simple = realize_simple(a1, Weight.of(2))
        n = jordan_sum(gl2, [simple, simple], [3], [[0, 0], [1, 0]], "u1")
        assert n.total_dimension() == 6
        assert n.components[Weight.of(2)] == ("[0] w", "[1] w")
        assert shifted_nilpotency_degree(n, gl2.u(0), Fraction(3)) == 2
        assert n.metadata["summands"][1]["offset"] == 3

    def test_radical_twist(self, sl2_adjoint):
        """L(2) ⊕ L(0)，最低权向量 u3 把第一项的顶送到第二项的顶"""
        pair = jordan_tower(sl2_adjoint, Weight.of(2), None, 2, "u3")
        assert pair.top_weights == (Weight.of(2), Weight.of(0))
        _, image = apply(pair, ["u3"], pair.generators[0])
        assert image == pair.generators[1][1]
        assert j2_nilpotency_degree(pair) == 2

    def test_twist_must_be_lowest_weight(self, sl2_adjoint, a1):
        simple2, simple0 = realize_simple(a1, Weight.of(2)), realize_simple(a1, Weight.of(0))
        with pytest.raises(NotApplicable):
            jordan_sum(sl2_adjoint, [simple2, simple0], None, [[0, 0], [1, 0]], "u1")

    def test_twist_must_be_triangular(self, gl2, a1):
        simple = realize_simple(a1, Weight.of(1))
        with pytest.raises(NotApplicable):
            jordan_sum(gl2, [simple, simple], [0], [[1, 0], [0, 0]], "u1")

    def test_twist_weights_must_match(self, sl2_adjoint, a1):
        simple = realize_simple(a1, Weight.of(2))
        with pytest.raises(NotApplicable):
            jordan_sum(sl2_adjoint, [simple, simple], None, [[0, 0], [1, 0]], "u3")

    def test_twist_shape(self, gl2, a1):
        simple = realize_simple(a1, Weight.of(1))
        with pytest.raises(DimensionError):
            jordan_sum(gl2, [simple, simple], [0], [[0, 0]], "u1")
