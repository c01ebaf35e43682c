"""强连接：沿点反射向下的链"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from app.core.exceptions import NonIntegralError

from .root_system import Root, RootSystem
from .weights import Weight


@dataclass(frozen=True)
class LinkageChain:
    """λ = start → … → end = μ，每一步 (β, s_β·前一个权)"""

    start: Weight
    end: Weight
    steps: tuple[tuple[Root, Weight], ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    def uses_only_simple_roots(self) -> bool:
        return all(sum(beta) == 1 for beta, _ in self.steps)

    def verify(self, r: RootSystem) -> bool:
        """逐步复核：点反射正确且每一步都不升高"""
        current = self.start
        for beta, result in self.steps:
            if not r.is_positive_root(beta):
                return False
            if r.dot_reflect(current, beta) != result:
                return False
            if not r.dominance_leq(result, current):
                return False
            current = result
        return current == self.end

    def to_json(self, r: RootSystem) -> list:
        return [[r.root_label(beta), weight.to_json()] for beta, weight in self.steps]


def downward_neighbours(r: RootSystem, nu: Weight) -> list[tuple[Root, Weight]]:
    """ν 的所有向下点反射 s_β·ν < ν（按 Φ⁺ 顺序）"""
    shifted = nu + r.rho
    out = []
    for beta in r.positive_roots:
        n = r.pairing(shifted, beta)
        if n.denominator == 1 and n > 0:
            out.append((beta, nu - r.root_weight(beta).scale(n)))
    return out


def strongly_linked(r: RootSystem, mu: Weight, lam: Weight) -> Optional[LinkageChain]:
    """从 λ 向下广度优先搜索到 μ 的最短链

    边 ν → s_β·ν 只在 s_β·ν ≤ ν 时存在；邻居按 Φ⁺ 顺序展开，
    所以同长度的链里先到达的那条就是按 (高度, 字典序) 决胜的结果。

    Returns:
        LinkageChain；不可达时返回 None（NotLinked）

    Raises:
        NonIntegralError: λ − μ 不在整根格中
    """
    r.check_weight(mu)
    r.check_weight(lam)
    if not r.in_root_lattice(lam - mu):
        raise NonIntegralError(
            f"{lam} - {mu} is not in the integral root lattice",
            {"mu": mu.to_json(), "lam": lam.to_json()},
        )
    if mu == lam:
        return LinkageChain(start=lam, end=lam, steps=())

    parent: dict[Weight, Optional[tuple[Weight, Root]]] = {lam: None}
    queue = deque([lam])
    while queue:
        nu = queue.popleft()
        for beta, nxt in downward_neighbours(r, nu):
            if nxt in parent:
                continue
            parent[nxt] = (nu, beta)
            if nxt == mu:
                steps = []
                cursor = nxt
                while parent[cursor] is not None:
                    prev, step_root = parent[cursor]
                    steps.append((step_root, cursor))
                    cursor = prev
                return LinkageChain(start=lam, end=mu, steps=tuple(reversed(steps)))
            queue.append(nxt)
    return None


def dot_orbit(r: RootSystem, lam: Weight) -> list[Weight]:
    """点轨道 W·λ（对所有正根反射取闭包，秩不受枚举上限限制）"""
    seen = {lam}
    frontier = [lam]
    while frontier:
        new = []
        for nu in frontier:
            for beta in r.positive_roots:
                image = r.dot_reflect(nu, beta)
                if image not in seen:
                    seen.add(image)
                    new.append(image)
        frontier = new
    return sorted(seen, reverse=True)
