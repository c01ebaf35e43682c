"""有限型根系

正根用单根坐标的非负整数元组表示；权用基本权坐标（见 weights.Weight）。
Φ⁺ 的全序固定为：高度升序，其次单根坐标的字典序升序。
下游的 PBW 单项式顺序、Chevalley 符号约定都以这个顺序为准。
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from app.config import MAX_POSITIVE_ROOTS, WEYL_MAX_RANK
from app.core.exactla import RationalMatrix, inverse
from app.core.exceptions import (
    DimensionError,
    FiniteTypeError,
    InternalConsistencyError,
    InvalidRootError,
)
from app.core.utils.logger import setup_logger

from .cartan import CartanMatrix, parse_cartan
from .weights import Weight
from .weyl import WeylElement, enumerate_weyl_group

logger = setup_logger("rootsys")

Root = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class RootSystem:
    rank: int
    cartan: CartanMatrix
    positive_roots: tuple[Root, ...]
    rho: Weight
    weyl_elements: tuple[WeylElement, ...]
    # 对称化系数 εᵢ = (αᵢ, αᵢ)/2
    symmetrizer: tuple[Fraction, ...]
    _index: dict[Root, int] = field(repr=False)
    _root_coords_map: RationalMatrix = field(repr=False)

    # ---- 根 ----

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    @property
    def key(self) -> CartanMatrix:
        return self.cartan

    def simple_root(self, i: int) -> Root:
        return tuple(int(k == i) for k in range(self.rank))

    def simple_root_indices(self) -> list[int]:
        return [self.root_index(self.simple_root(i)) for i in range(self.rank)]

    def root_index(self, beta: Sequence[int]) -> int:
        key = tuple(beta)
        if key not in self._index:
            raise InvalidRootError(f"{list(key)} is not a positive root")
        return self._index[key]

    def is_positive_root(self, beta: Sequence[int]) -> bool:
        return tuple(beta) in self._index

    def require_positive_root(self, beta: Sequence[int]) -> Root:
        key = tuple(int(x) for x in beta)
        if len(key) != self.rank or key not in self._index:
            raise InvalidRootError(f"{list(key)} is not a positive root of this system")
        return key

    @staticmethod
    def height(beta: Sequence[int]) -> int:
        return sum(beta)

    def root_weight(self, beta: Sequence[int]) -> Weight:
        """根在基本权坐标下的表示：⟨β, αᵢ∨⟩ = Σⱼ cⱼ a_ji"""
        return Weight(
            tuple(
                Fraction(sum(beta[j] * self.cartan[j][i] for j in range(self.rank)))
                for i in range(self.rank)
            )
        )

    def root_label(self, beta: Sequence[int]) -> str:
        parts = []
        for i, c in enumerate(beta):
            if c == 1:
                parts.append(f"a{i + 1}")
            elif c > 1:
                parts.append(f"{c}a{i + 1}")
        return "+".join(parts)

    def inner(self, beta: Sequence[int], gamma: Sequence[int]) -> Fraction:
        """(β, γ)，由 (αᵢ, αⱼ) = a_ij εⱼ 给出"""
        total = Fraction(0)
        for i in range(self.rank):
            if not beta[i]:
                continue
            for j in range(self.rank):
                if gamma[j]:
                    total += beta[i] * gamma[j] * self.cartan[i][j] * self.symmetrizer[j]
        return total

    def coroot(self, beta: Sequence[int]) -> tuple[Fraction, ...]:
        """β∨ 在单余根下的系数 dⱼ = cⱼ εⱼ / ε_β"""
        eps_beta = self.inner(beta, beta) / 2
        return tuple(Fraction(beta[j]) * self.symmetrizer[j] / eps_beta for j in range(self.rank))

    # ---- 权 ----

    def check_weight(self, lam: Weight) -> None:
        if lam.rank != self.rank:
            raise DimensionError(f"weight {lam} has rank {lam.rank}, expected {self.rank}")

    def pairing(self, lam: Weight, beta: Sequence[int]) -> Fraction:
        """⟨λ, β∨⟩"""
        return sum((d * x for d, x in zip(self.coroot(beta), lam.coords)), Fraction(0))

    def reflect(self, lam: Weight, beta: Sequence[int]) -> Weight:
        return lam - self.root_weight(beta).scale(self.pairing(lam, beta))

    def dot_reflect(self, lam: Weight, beta: Sequence[int]) -> Weight:
        return self.reflect(lam + self.rho, beta) - self.rho

    def root_coordinates(self, lam: Weight) -> tuple[Fraction, ...]:
        """权在单根坐标下的（有理）坐标"""
        self.check_weight(lam)
        return self._root_coords_map.apply(lam.coords)

    def lattice_drop(self, top: Weight, mu: Weight) -> Optional[Root]:
        """top − μ ∈ ℤ≥0Δ 时返回其单根坐标，否则返回 None"""
        coords = self.root_coordinates(top - mu)
        if all(c.denominator == 1 and c >= 0 for c in coords):
            return tuple(int(c) for c in coords)
        return None

    def in_root_lattice(self, lam: Weight) -> bool:
        return all(c.denominator == 1 for c in self.root_coordinates(lam))

    def dominance_leq(self, mu: Weight, lam: Weight) -> bool:
        """μ ≤ λ 当且仅当 λ − μ ∈ ℤ≥0Δ"""
        return self.lattice_drop(lam, mu) is not None

    def weight_of_drop(self, top: Weight, nu: Sequence[int]) -> Weight:
        return top - self.root_weight(nu)

    def is_dominant_integral(self, lam: Weight) -> bool:
        self.check_weight(lam)
        return lam.is_dominant_integral()

    def weyl_dimension(self, lam: Weight) -> int:
        """Weyl 维数公式 Π ⟨λ+ρ, β∨⟩ / ⟨ρ, β∨⟩"""
        value = Fraction(1)
        shifted = lam + self.rho
        for beta in self.positive_roots:
            value *= self.pairing(shifted, beta) / self.pairing(self.rho, beta)
        if value.denominator != 1:
            raise InternalConsistencyError(f"non-integral Weyl dimension for {lam}")
        return int(value)

    def antidominant_conjugate(self, lam: Weight) -> Weight:
        """W·λ 中的反支配元；对支配 λ 就是 w₀λ"""
        current = lam
        for _ in range(10_000):
            i = next((k for k, c in enumerate(current.coords) if c > 0), None)
            if i is None:
                return current
            current = self.reflect(current, self.simple_root(i))
        raise InternalConsistencyError(f"no antidominant conjugate reached from {lam}")

    def depth_of_simple(self, lam: Weight) -> int:
        """ht(λ − w₀λ)：L(λ) 的全部权都落在这个深度之内"""
        drop = self.lattice_drop(lam, self.antidominant_conjugate(lam))
        if drop is None:
            raise InternalConsistencyError(f"w0 conjugate of {lam} is not below it")
        return sum(drop)

    def describe(self) -> dict:
        return {
            "rank": self.rank,
            "cartan": [list(row) for row in self.cartan],
            "positive_roots": [
                {"label": self.root_label(b), "coords": list(b), "height": sum(b)}
                for b in self.positive_roots
            ],
            "rho": self.rho.to_json(),
            "weyl_order": len(self.weyl_elements) or None,
        }


def _symmetrizer(cartan: CartanMatrix) -> tuple[Fraction, ...]:
    """求 εⱼ 使 a_ij εⱼ = a_ji εᵢ（每个连通分支从 ε = 1 出发）"""
    n = len(cartan)
    eps: list[Optional[Fraction]] = [None] * n
    for start in range(n):
        if eps[start] is not None:
            continue
        eps[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j == i or cartan[i][j] == 0:
                    continue
                value = Fraction(cartan[j][i]) * eps[i] / cartan[i][j]
                if eps[j] is None:
                    eps[j] = value
                    stack.append(j)
                elif eps[j] != value:
                    raise FiniteTypeError("Cartan matrix is not symmetrizable")
    return tuple(eps)


def _positive_roots(cartan: CartanMatrix) -> list[Root]:
    """单根在单反射下的闭包（只保留正根）"""
    n = len(cartan)
    simple = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(n):
                # sᵢβ = β − ⟨β, αᵢ∨⟩ αᵢ
                p = sum(beta[j] * cartan[j][i] for j in range(n))
                if p == 0:
                    continue
                gamma = tuple(b - (p if k == i else 0) for k, b in enumerate(beta))
                if min(gamma) < 0 or gamma in found:
                    continue
                found.add(gamma)
                new.append(gamma)
                if len(found) > MAX_POSITIVE_ROOTS:
                    raise FiniteTypeError(
                        "reflection closure exceeds the safety bound; Cartan matrix is not of finite type",
                        {"bound": MAX_POSITIVE_ROOTS},
                    )
        frontier = new
    return sorted(found, key=lambda b: (sum(b), b))


def build_root_system(cartan: Union[str, Sequence[Sequence[int]]]) -> RootSystem:
    """由 Cartan 矩阵（或类型名）构造根系

    Raises:
        FiniteTypeError: 反射闭包超过安全界
    """
    start = time.time()
    matrix = parse_cartan(cartan)
    n = len(matrix)
    eps = _symmetrizer(matrix)
    roots = _positive_roots(matrix)

    transpose = RationalMatrix.from_rows([[matrix[j][i] for j in range(n)] for i in range(n)])
    try:
        root_coords_map = inverse(transpose)
    except DimensionError as e:
        raise FiniteTypeError(f"singular Cartan matrix: {e}") from e

    rho = Weight((Fraction(1),) * n)
    partial = RootSystem(
        rank=n,
        cartan=matrix,
        positive_roots=tuple(roots),
        rho=rho,
        weyl_elements=(),
        symmetrizer=eps,
        _index={b: k for k, b in enumerate(roots)},
        _root_coords_map=root_coords_map,
    )

    # ρ = ½ Σ_{β>0} β
    half_sum = Weight.zero(n)
    for beta in roots:
        half_sum = half_sum + partial.root_weight(beta)
    if half_sum.scale(Fraction(1, 2)) != rho:
        raise InternalConsistencyError(f"half-sum of positive roots is {half_sum}, not 2ρ")

    weyl: tuple[WeylElement, ...] = ()
    if n <= WEYL_MAX_RANK:
        weyl = enumerate_weyl_group(matrix, [partial.root_weight(b) for b in roots])
        reflections = sum(1 for w in weyl if w.is_reflection())
        if reflections != len(roots):
            raise InternalConsistencyError(
                f"{reflections} reflections in W but {len(roots)} positive roots"
            )

    system = RootSystem(
        rank=n,
        cartan=matrix,
        positive_roots=tuple(roots),
        rho=rho,
        weyl_elements=weyl,
        symmetrizer=eps,
        _index=partial._index,
        _root_coords_map=root_coords_map,
    )
    logger.debug(
        f"根系 rank={n} |Φ⁺|={len(roots)} |W|={len(weyl) or '-'}，耗时 {time.time() - start:.3f}s"
    )
    return system
