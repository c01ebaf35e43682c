"""
广义约化 Lie 代数测试：结构常数、J₁/J₂ 分解、泛函 g 的合法性
"""
from fractions import Fraction

import pytest

from app.core.exceptions import DimensionError, InvalidFunctional, InvalidRadicalError, SpecError
from app.core.glie import (
    borel_character,
    build_algebra,
    from_summands,
    g0_algebra,
    realize_simple,
    require_g,
    split_radical,
    validate_g,
)
from app.core.rootsys import Weight


class TestAlgebraConstruction:
    """g = g₀ ⊕ J 的构造"""

    def test_sl2_basis(self, a1):
        g0 = g0_algebra(a1)
        assert g0.labels == ("e", "f", "h")
        assert g0.bracket(g0.e(0), g0.f(0)) == {g0.h(0): Fraction(1)}
        assert g0.bracket(g0.h(0), g0.e(0)) == {g0.e(0): Fraction(2)}

    def test_sl3_dimension(self, a2):
        g0 = g0_algebra(a2)
        assert g0.dim == 8
        assert g0.labels[:3] == ("e[a2]", "e[a1]", "e[a1+a2]")
        assert not g0.jacobi_failures(limit=1)

    def test_sl3_sign_convention(self, a2):
        """Φ⁺ 顺序中的第一对 (a2, a1)：[e[a2], e[a1]] = +e[a1+a2]"""
        g0 = g0_algebra(a2)
        e_a2, e_a1, e_top = g0.index("e[a2]"), g0.index("e[a1]"), g0.index("e[a1+a2]")
        assert g0.bracket(e_a2, e_a1) == {e_top: Fraction(1)}
        assert g0.bracket(e_a1, e_a2) == {e_top: Fraction(-1)}

    def test_central_radical(self, gl2):
        """L(0) 给出中心元：J₁ = {u1}，J₂ = ∅"""
        assert gl2.labels == ("e", "f", "h", "u1")
        assert gl2.j1 == (gl2.u(0),)
        assert gl2.j2 == ()
        for x in range(gl2.g0_dim):
            assert not gl2.bracket(x, gl2.u(0))

    def test_adjoint_radical(self, sl2_adjoint):
        """L(2)：三个根基元素都在 J₂，u3 是最低权向量"""
        a = sl2_adjoint
        assert a.radical_dim == 3
        assert len(a.j2) == 3
        assert [a.weight(u) for u in a.radical_indices] == [Weight.of(2), Weight.of(0), Weight.of(-2)]
        assert a.summands[0].lowest == a.index("u3")

    def test_radical_is_abelian(self, sl2_mixed):
        """[J, J] = 0"""
        a = sl2_mixed
        for u in a.radical_indices:
            for w in a.radical_indices:
                assert not a.bracket(u, w)

    def test_h_acts_by_weight(self, sl2_mixed):
        a = sl2_mixed
        for u in a.radical_indices:
            c = a.weight(u)[0]
            assert dict(a.bracket(a.h(0), u)) == ({u: c} if c else {})

    def test_jacobi(self, sl2_mixed):
        assert sl2_mixed.jacobi_failures() == []

    def test_split_matches_summands(self, sl2_mixed):
        """J₁ 是 L(0) 直和项，J₂ 是 L(2) 直和项"""
        j1, j2 = split_radical(sl2_mixed)
        assert [sl2_mixed.labels[u] for u in j1] == ["u1"]
        assert [sl2_mixed.labels[u] for u in j2] == ["u2", "u3", "u4"]

    def test_rank2_radical(self, a2):
        """sl3 ⋉ L(1,0)：dim J = 3，Jacobi 恒等式成立"""
        a = build_algebra(a2, [Weight.of(1, 0)])
        assert a.radical_dim == 3
        assert len(a.j2) == 3
        assert not a.jacobi_failures(limit=1)

    def test_non_dominant_radical(self, a1):
        with pytest.raises(InvalidRadicalError):
            build_algebra(a1, [Weight.of(-1)])

    def test_lookup_by_label(self, gl2):
        assert gl2.index("u1") == 3
        with pytest.raises(SpecError):
            gl2.index("u9")


class TestSimpleRealization:
    """有限维单模 L(λ)"""

    @pytest.mark.parametrize("coords,dim", [((0, 0), 1), ((1, 0), 3), ((1, 1), 8), ((2, 0), 6)])
    def test_weyl_dimension(self, a2, coords, dim):
        simple = realize_simple(a2, Weight.of(*coords))
        assert simple.dim == dim
        assert simple.is_irreducible()

    def test_highest_weight_first(self, a1):
        simple = realize_simple(a1, Weight.of(3))
        assert list(simple.weights) == [Weight.of(3), Weight.of(1), Weight.of(-1), Weight.of(-3)]


class TestGFunctional:
    """g ∈ G 的检查"""

    def test_central_values_accepted(self, gl2):
        """J = J₁ 时任意取值都合法"""
        result = validate_g(gl2, [Fraction(7, 3)])
        assert result.is_valid
        assert result.functional(gl2.u(0)) == Fraction(7, 3)

    def test_nonzero_on_j2_rejected(self, sl2_adjoint):
        """g 在 J₂ 上必须为零"""
        for values in ([1, 0, 0], [0, 1, 0], [0, 0, -2]):
            result = validate_g(sl2_adjoint, values)
            assert not result.is_valid
            assert any(v.constraint == "vanishes on J2" for v in result.violations)

    def test_mixed_radical(self, sl2_mixed):
        """L(0) 上取 5、L(2) 上取 0 合法"""
        values = from_summands(sl2_mixed, [5, [0, 0, 0]])
        assert values == (Fraction(5), Fraction(0), Fraction(0), Fraction(0))
        assert validate_g(sl2_mixed, values).is_valid

    def test_wrong_length(self, gl2):
        with pytest.raises(DimensionError):
            validate_g(gl2, [1, 2])

    def test_require_g_raises(self, sl2_adjoint):
        with pytest.raises(InvalidFunctional):
            require_g(sl2_adjoint, [0, 1, 0])

    def test_none_means_zero(self, sl2_adjoint):
        assert require_g(sl2_adjoint, None).is_zero()

    def test_functional_from_other_algebra(self, gl2, a1):
        """不同代数的泛函不能混用"""
        other = build_algebra(a1, [Weight.of(0), Weight.of(0)])
        g = require_g(other, [1, 2])
        with pytest.raises(InvalidFunctional):
            validate_g(gl2, g)

    def test_borel_character_agrees(self, sl2_mixed):
        """C_(λ,g) 是 b-模 ⇔ g ∈ G"""
        good = from_summands(sl2_mixed, [2, [0, 0, 0]])
        bad = from_summands(sl2_mixed, [2, [0, 1, 0]])
        assert borel_character(sl2_mixed, Weight.of(3), good).is_module
        assert not borel_character(sl2_mixed, Weight.of(3), bad).is_module
