"""截断权模与模映射

一个 TruncatedModule 只记录窗口内的权分量：窗口由若干顶权和深度给出。
权 μ 相对窗口有三种状态（见 WindowStatus）：
INSIDE 的分量是完整已知的（dim 可以是 0），ZERO 的分量必为零，
OUTSIDE 的分量未知，任何落到那里的作用都是边界，不能当作零。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Optional, Sequence

from app.core.entities import WindowStatus
from app.core.exactla import RationalMatrix, Vector, rank
from app.core.exceptions import DimensionError, InconsistentAction, TruncationError
from app.core.rootsys import RootSystem, Weight
from app.core.utils.rational import format_coord

if TYPE_CHECKING:
    from app.core.glie import GenReductiveAlgebra, GFunctional

WeightVector = tuple[Weight, Vector]


@dataclass(frozen=True, eq=False)
class TruncatedModule:
    algebra: "GenReductiveAlgebra"
    top_weights: tuple[Weight, ...]
    depth: int
    # 只存 dim > 0 的分量：权 → 基向量标签
    components: dict[Weight, tuple[str, ...]]
    # 基元素下标 → 源权 → 作用矩阵（目标分量 × 源分量）；缺省为零
    actions: dict[int, dict[Weight, RationalMatrix]] = field(repr=False)
    g_label: Optional["GFunctional"] = None
    generators: tuple[WeightVector, ...] = ()
    # Verma 模及其商保留每个基向量对应的 PBW 单项式
    monomials: Optional[dict[Weight, tuple[tuple[int, ...], ...]]] = field(default=None, repr=False)
    name: str = ""
    metadata: dict[str, Any] = field(default_factory=dict, repr=False)
    _status: dict[Weight, WindowStatus] = field(default_factory=dict, repr=False)

    @property
    def root_system(self) -> RootSystem:
        return self.algebra.root_system

    # ---- 窗口 ----

    def window_status(self, mu: Weight) -> WindowStatus:
        cached = self._status.get(mu)
        if cached is not None:
            return cached
        r = self.root_system
        r.check_weight(mu)
        status = WindowStatus.ZERO
        for top in self.top_weights:
            drop = r.lattice_drop(top, mu)
            if drop is None:
                continue
            if sum(drop) > self.depth:
                status = WindowStatus.OUTSIDE
                break
            status = WindowStatus.INSIDE
        self._status[mu] = status
        return status

    def height_below_tops(self, mu: Weight) -> int:
        """μ 到它上方最近顶权的高度差"""
        heights = [
            sum(drop)
            for top in self.top_weights
            if (drop := self.root_system.lattice_drop(top, mu)) is not None
        ]
        if not heights:
            raise DimensionError(f"{mu} is not below any top weight")
        return min(heights)

    def sorted_weights(self) -> list[Weight]:
        """非零分量，从高到低（先按离顶的高度，再按坐标降序）"""
        return sorted(
            self.components,
            key=lambda mu: (self.height_below_tops(mu), tuple(-c for c in mu.coords)),
        )

    # ---- 维数与作用 ----

    def dim(self, mu: Weight) -> int:
        return len(self.components.get(mu, ()))

    def total_dimension(self) -> int:
        return sum(len(labels) for labels in self.components.values())

    def character(self) -> dict[Weight, int]:
        return {mu: len(labels) for mu, labels in self.components.items()}

    def action_block(self, x: int, mu: Weight) -> RationalMatrix:
        """x: M_μ → M_{μ+wt x}

        Raises:
            TruncationError: 源或目标在窗口外
        """
        target = mu + self.algebra.weight(x)
        if self.window_status(mu) == WindowStatus.OUTSIDE:
            raise TruncationError(f"source weight {mu} lies outside the window", {"weight": mu.to_json()})
        if self.window_status(target) == WindowStatus.OUTSIDE:
            raise TruncationError(
                f"{self.algebra.labels[x]} maps weight {mu} outside the window",
                {"source": mu.to_json(), "target": target.to_json()},
            )
        block = self.actions.get(x, {}).get(mu)
        if block is None:
            return RationalMatrix.zeros(self.dim(target), self.dim(mu))
        return block

    def act(self, x: int, mu: Weight, v: Sequence[Fraction]) -> WeightVector:
        if len(v) != self.dim(mu):
            raise DimensionError(f"vector of length {len(v)} at weight {mu} of dimension {self.dim(mu)}")
        return mu + self.algebra.weight(x), self.action_block(x, mu).apply(v)

    def computable(self, mu: Weight, *shifts: Weight) -> bool:
        """μ 以及 μ 加上各个平移都不在 OUTSIDE"""
        if self.window_status(mu) == WindowStatus.OUTSIDE:
            return False
        return all(self.window_status(mu + s) != WindowStatus.OUTSIDE for s in shifts)

    # ---- 检查 ----

    def bracket_failures(self, limit: Optional[int] = None) -> list[dict]:
        """在内部权上检查 x·y − y·x = [x, y]"""
        a = self.algebra
        failures: list[dict] = []
        for mu in self.sorted_weights():
            for x in range(a.dim):
                wx = a.weight(x)
                for y in range(x + 1, a.dim):
                    wy = a.weight(y)
                    target = mu + wx + wy
                    if self.dim(target) == 0 and self.window_status(target) != WindowStatus.OUTSIDE:
                        continue
                    if not self.computable(mu, wx, wy, wx + wy):
                        continue
                    lhs = self.action_block(x, mu + wy) @ self.action_block(y, mu) - (
                        self.action_block(y, mu + wx) @ self.action_block(x, mu)
                    )
                    rhs = RationalMatrix.zeros(*lhs.shape)
                    for z, c in a.bracket(x, y).items():
                        rhs = rhs + self.action_block(z, mu).scale(c)
                    if lhs != rhs:
                        failures.append(
                            {"pair": [a.labels[x], a.labels[y]], "weight": mu.to_json()}
                        )
                        if limit is not None and len(failures) >= limit:
                            return failures
        return failures

    def validate(self) -> None:
        """Raises: InconsistentAction（附第一个失败的括号对）"""
        failures = self.bracket_failures(limit=1)
        if failures:
            raise InconsistentAction(
                f"bracket compatibility fails for {failures[0]['pair']} at weight {failures[0]['weight']}",
                failures[0],
            )

    def radical_action_defect(self, g: Optional["GFunctional"] = None) -> list[dict]:
        """J 不按 g(u)·id 作用的地方（零权 u 比较 g(u)·id，非零权 u 比较 0）"""
        a = self.algebra
        g = g or self.g_label
        defects = []
        for mu in self.sorted_weights():
            for u in a.radical_indices:
                shift = a.weight(u)
                if not self.computable(mu, shift):
                    continue
                block = self.action_block(u, mu)
                if shift.is_zero():
                    value = g(u) if g is not None else Fraction(0)
                    if block != RationalMatrix.scalar(self.dim(mu), value):
                        defects.append({"element": a.labels[u], "weight": mu.to_json()})
                elif not block.is_zero():
                    defects.append({"element": a.labels[u], "weight": mu.to_json()})
        return defects

    # ---- 输出 ----

    def describe_vector(self, mu: Weight, v: Sequence[Fraction]) -> str:
        from app.core.glie import format_linear

        return format_linear(self.components.get(mu, ()), list(v))

    def dump(self) -> dict:
        a = self.algebra
        weights = self.sorted_weights()
        actions = []
        for x in range(a.dim):
            for mu in weights:
                block = self.actions.get(x, {}).get(mu)
                if block is None or block.is_zero():
                    continue
                actions.append(
                    {
                        "element": a.labels[x],
                        "source": mu.to_json(),
                        "target": (mu + a.weight(x)).to_json(),
                        "entries": [[i, j, format_coord(c)] for (i, j), c in block.items()],
                    }
                )
        return {
            "name": self.name,
            "top_weights": [t.to_json() for t in self.top_weights],
            "depth": self.depth,
            "g": self.g_label.to_json() if self.g_label is not None else None,
            "components": [
                {"weight": mu.to_json(), "dim": self.dim(mu), "basis": list(self.components[mu])}
                for mu in weights
            ],
            "generators": [
                {"weight": mu.to_json(), "vector": self.describe_vector(mu, v)}
                for mu, v in self.generators
            ],
            "actions": actions,
        }


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """逐权分量给出的线性映射 source → target"""

    source: TruncatedModule
    target: TruncatedModule
    blocks: dict[Weight, RationalMatrix] = field(repr=False)

    def block(self, mu: Weight) -> RationalMatrix:
        found = self.blocks.get(mu)
        if found is None:
            return RationalMatrix.zeros(self.target.dim(mu), self.source.dim(mu))
        return found

    def apply(self, mu: Weight, v: Sequence[Fraction]) -> Vector:
        return self.block(mu).apply(v)

    def compose(self, inner: "ModuleMap") -> "ModuleMap":
        """self ∘ inner"""
        if inner.target is not self.source:
            raise DimensionError("cannot compose maps whose modules do not match")
        blocks = {}
        for mu in inner.source.components:
            product = self.block(mu) @ inner.block(mu)
            if not product.is_zero():
                blocks[mu] = product
        return ModuleMap(inner.source, self.target, blocks)

    def intertwining_failures(
        self, elements: Optional[Sequence[int]] = None, limit: Optional[int] = None
    ) -> list[dict]:
        """检查 φ(x·v) = x·φ(v)，跳过任何涉及窗口外的权"""
        a = self.source.algebra
        elements = list(range(a.dim)) if elements is None else list(elements)
        failures: list[dict] = []
        for mu in self.source.sorted_weights():
            for x in elements:
                t = mu + a.weight(x)
                if not self.source.computable(mu, a.weight(x)):
                    continue
                if not self.target.computable(mu, a.weight(x)):
                    continue
                lhs = self.block(t) @ self.source.action_block(x, mu)
                rhs = self.target.action_block(x, mu) @ self.block(mu)
                if lhs != rhs:
                    failures.append({"element": a.labels[x], "weight": mu.to_json()})
                    if limit is not None and len(failures) >= limit:
                        return failures
        return failures

    def rank_at(self, mu: Weight) -> int:
        block = self.block(mu)
        return rank(block) if block.rows and block.cols else 0

    def is_injective(self) -> bool:
        return all(self.rank_at(mu) == self.source.dim(mu) for mu in self.source.components)

    def is_surjective(self) -> bool:
        """在源窗口内的每个目标分量上满秩"""
        for mu in self.target.components:
            if self.source.window_status(mu) == WindowStatus.OUTSIDE:
                continue
            if self.rank_at(mu) != self.target.dim(mu):
                return False
        return True

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())
