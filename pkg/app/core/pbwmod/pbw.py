"""U(n₀⁻) 的 PBW 单项式与 U(g) 在诱导模上的作用

单项式 f_{β₁}^{a₁} … f_{β_N}^{a_N} v（Φ⁺ 顺序）记为指数元组 (a₁, …, a_N)。
作用通过两条交换规则递归计算：

    f_k · f_first · rest = f_first · (f_k · rest) + [f_k, f_first] · rest   (k > first)
    x   · f_first · rest = f_first · (x · rest)   + [x, f_first]   · rest

底层情形：h 按权作用，e 把 v 送到 0，u ∈ J 把 v 送到 g(u)v。
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Iterator, Optional

from app.core.entities import BasisKind
from app.core.exceptions import InternalConsistencyError
from app.core.rootsys import RootSystem, Weight

if TYPE_CHECKING:
    from app.core.glie import GenReductiveAlgebra, GFunctional

FMonomial = tuple[int, ...]
Expansion = dict[FMonomial, Fraction]


def monomial_drop(r: RootSystem, mono: FMonomial) -> tuple[int, ...]:
    """单项式降低的权（单根坐标）"""
    drop = [0] * r.rank
    for beta, power in zip(r.positive_roots, mono):
        if power:
            for i, c in enumerate(beta):
                drop[i] += power * c
    return tuple(drop)


def monomial_label(r: RootSystem, mono: FMonomial) -> str:
    """秩 1 写成 "f^3 w"，一般写成 "f[a1+a2] f[a2]^2 w"；空单项式是 "w" """
    parts = []
    for beta, power in zip(r.positive_roots, mono):
        if not power:
            continue
        name = "f" if r.rank == 1 else f"f[{r.root_label(beta)}]"
        parts.append(name if power == 1 else f"{name}^{power}")
    parts.append("w")
    return " ".join(parts)


def monomials_up_to(r: RootSystem, depth: int) -> Iterator[FMonomial]:
    """所有高度不超过 depth 的单项式"""
    heights = [sum(beta) for beta in r.positive_roots]
    N = len(heights)
    current: list[int] = []

    def walk(k: int, remaining: int) -> Iterator[FMonomial]:
        if k == N:
            yield tuple(current)
            return
        m = 0
        while m * heights[k] <= remaining:
            current.append(m)
            yield from walk(k + 1, remaining - m * heights[k])
            current.pop()
            m += 1

    yield from walk(0, depth)


def _bump(mono: FMonomial, k: int, delta: int) -> FMonomial:
    return mono[:k] + (mono[k] + delta,) + mono[k + 1 :]


def _first(mono: FMonomial) -> Optional[int]:
    for k, power in enumerate(mono):
        if power:
            return k
    return None


def _accumulate(target: Expansion, source: Expansion, scale: Fraction) -> None:
    for mono, c in source.items():
        total = target.get(mono, 0) + scale * c
        if total:
            target[mono] = total
        else:
            target.pop(mono, None)


class PBWEngine:
    """固定 (λ, g) 的诱导模 U(g) ⊗_{U(b)} C_(λ,g) 上的作用，带记忆化"""

    def __init__(self, algebra: "GenReductiveAlgebra", lam: Weight, g: "GFunctional"):
        self.algebra = algebra
        self.root_system = algebra.root_system
        self.lam = lam
        self.g = g
        self._fmul_cache: dict[tuple[int, FMonomial], Expansion] = {}
        self._act_cache: dict[tuple[int, FMonomial], Expansion] = {}

    def weight_of(self, mono: FMonomial) -> Weight:
        return self.lam - self.root_system.root_weight(monomial_drop(self.root_system, mono))

    def fmul(self, k: int, mono: FMonomial) -> Expansion:
        """f_{β_k} · mono 的 PBW 展开"""
        key = (k, mono)
        cached = self._fmul_cache.get(key)
        if cached is not None:
            return cached

        a = self.algebra
        first = _first(mono)
        if first is None or k <= first:
            result: Expansion = {_bump(mono, k, 1): Fraction(1)}
        else:
            rest = _bump(mono, first, -1)
            result = {}
            for m, c in self.fmul(k, rest).items():
                _accumulate(result, self.fmul(first, m), c)
            for y, c in a.bracket(a.f(k), a.f(first)).items():
                if a.kind(y) != BasisKind.F:
                    raise InternalConsistencyError("[f, f] left the negative nilradical")
                _accumulate(result, self.fmul(a.kinds[y][1], rest), c)
        self._fmul_cache[key] = result
        return result

    def act(self, x: int, mono: FMonomial) -> Expansion:
        """基元素 x 作用在 mono·v 上"""
        a = self.algebra
        kind, idx = a.kinds[x]
        if kind == BasisKind.F:
            return self.fmul(idx, mono)
        if kind == BasisKind.H:
            value = self.weight_of(mono)[idx]
            return {mono: value} if value else {}

        key = (x, mono)
        cached = self._act_cache.get(key)
        if cached is not None:
            return cached

        first = _first(mono)
        if first is None:
            value = self.g(x) if kind == BasisKind.U else Fraction(0)
            result: Expansion = {mono: value} if value else {}
        else:
            rest = _bump(mono, first, -1)
            result = {}
            for m, c in self.act(x, rest).items():
                _accumulate(result, self.fmul(first, m), c)
            for y, c in a.bracket(x, a.f(first)).items():
                _accumulate(result, self.act(y, rest), c)
        self._act_cache[key] = result
        return result
