"""有限维不可约 g₀-模 L(λ) 的显式实现

L(λ) = M(λ) / Σᵢ U(n₀⁻) fᵢ^{λᵢ+1} v，在深度 ht(λ − w₀λ) 的截断 Verma 模上计算。
基向量就是商空间里保留下来的 PBW 单项式（非主元坐标）。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from app.core.exactla import RationalMatrix, Subspace, Vector, unit_vector
from app.core.exceptions import InternalConsistencyError, InvalidRadicalError
from app.core.rootsys import RootSystem, Weight
from app.core.utils.logger import setup_logger

from .algebra import GenReductiveAlgebra

logger = setup_logger("glie")


@dataclass(frozen=True, eq=False)
class SimpleRealization:
    """L(λ) 在整体基下的 g₀ 作用矩阵

    actions[x] 是 g₀ 基元素 x（下标与任何同根系代数的 g₀ 部分一致）的 dim×dim 矩阵。
    """

    root_system: RootSystem
    highest_weight: Weight
    labels: tuple[str, ...]
    weights: tuple[Weight, ...]
    monomials: tuple[tuple[int, ...], ...]
    actions: tuple[RationalMatrix, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def lowest_index(self) -> int:
        return self.dim - 1

    def action(self, x: int) -> RationalMatrix:
        return self.actions[x]

    def weight_space(self, mu: Weight) -> list[int]:
        return [k for k, w in enumerate(self.weights) if w == mu]

    def f_word(self, index: int, algebra: GenReductiveAlgebra) -> list[int]:
        """基向量 index 对应的 PBW 单项式，写成 f 的字（最右边的先作用）"""
        word: list[int] = []
        for k, power in enumerate(self.monomials[index]):
            word.extend([algebra.f(k)] * power)
        return word

    def apply_word(self, word: Sequence[int], v: Vector) -> Vector:
        current = tuple(v)
        for x in reversed(word):
            current = self.actions[x].apply(current)
        return current

    def is_irreducible(self) -> bool:
        """从每个基向量出发的 g₀-闭包都是全空间"""
        for start in range(self.dim):
            span = Subspace(self.dim).with_vector(unit_vector(self.dim, start))
            queue = [unit_vector(self.dim, start)]
            while queue:
                v = queue.pop()
                for matrix in self.actions:
                    image = matrix.apply(v)
                    grown = span.with_vector(image)
                    if grown is not None:
                        span = grown
                        queue.append(image)
            if span.dim != self.dim:
                return False
        return True


def realize_simple(r: RootSystem, lam: Weight) -> SimpleRealization:
    """构造 L(λ)（λ 支配整）

    Raises:
        InvalidRadicalError: λ 不是支配整权
        InternalConsistencyError: 维数与 Weyl 维数公式不符
    """
    # pbwmod 依赖本包的代数类型，这里延迟导入
    from app.core.pbwmod import apply, build_verma, quotient, submodule_generated

    from .construction import g0_algebra
    from .functional import zero_functional

    r.check_weight(lam)
    if not lam.is_dominant_integral():
        raise InvalidRadicalError(f"{lam} is not dominant integral", {"weight": lam.to_json()})

    g0 = g0_algebra(r)
    depth = r.depth_of_simple(lam)
    verma = build_verma(g0, lam, zero_functional(g0), depth)
    top = (lam, unit_vector(1, 0))
    vectors = []
    for i in range(r.rank):
        n = int(lam[i]) + 1
        if n <= depth:
            vectors.append(apply(verma, [g0.f_simple(i)] * n, top))
    simple = quotient(verma, submodule_generated(verma, vectors)) if vectors else verma

    def order_key(mu: Weight):
        return (sum(r.lattice_drop(lam, mu)), tuple(-c for c in mu.coords))

    order = sorted(simple.components, key=order_key)
    offset: dict[Weight, int] = {}
    labels: list[str] = []
    weights: list[Weight] = []
    monomials: list[tuple[int, ...]] = []
    for mu in order:
        offset[mu] = len(labels)
        labels.extend(simple.components[mu])
        weights.extend([mu] * len(simple.components[mu]))
        monomials.extend(simple.monomials[mu])

    d = len(labels)
    expected = r.weyl_dimension(lam)
    if d != expected:
        raise InternalConsistencyError(
            f"L{lam} came out with dimension {d}, Weyl dimension is {expected}"
        )

    actions = []
    for x in range(g0.dim):
        entries: dict[tuple[int, int], Fraction] = {}
        shift = g0.weight(x)
        for mu in order:
            target = mu + shift
            if target not in offset:
                continue
            for (i, j), c in simple.action_block(x, mu).items():
                entries[(offset[target] + i, offset[mu] + j)] = c
        actions.append(RationalMatrix(d, d, entries))

    logger.debug(f"L{lam}: dim {d}, weights {len(order)}")
    return SimpleRealization(
        root_system=r,
        highest_weight=lam,
        labels=tuple(labels),
        weights=tuple(weights),
        monomials=tuple(monomials),
        actions=tuple(actions),
    )
