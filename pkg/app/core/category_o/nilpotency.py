"""J₂ 的幂零度与 (u − c) 的幂零度"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from app.core.entities import WindowStatus
from app.core.exactla import RationalMatrix, Subspace
from app.core.exceptions import NotNilpotentWithinBound
from app.core.pbwmod import TruncatedModule
from app.core.rootsys import Weight

Operator = tuple[Weight, Callable[[Weight], RationalMatrix]]


def _degree(m: TruncatedModule, operators: Sequence[Operator]) -> int:
    """最小的 k 使任意 k 个算子之积在 m 的内部分量上为零

    V₀ = M，V_{j+1} = Σ op(V_j)；第一个 V_k = 0 的 k 即所求。
    """
    spaces: dict[Weight, Subspace] = {mu: Subspace.whole(m.dim(mu)) for mu in m.components}
    bound = m.total_dimension() + 1
    k = 0
    while any(s.dim for s in spaces.values()):
        if k >= bound:
            raise NotNilpotentWithinBound(
                f"operators are not nilpotent within {bound} steps", {"bound": bound}
            )
        images: dict[Weight, list] = {}
        for mu, space in spaces.items():
            if not space.dim:
                continue
            for shift, block_at in operators:
                target = mu + shift
                if m.dim(target) == 0 or m.window_status(target) != WindowStatus.INSIDE:
                    continue
                block = block_at(mu)
                images.setdefault(target, []).extend(block.apply(v) for v in space.basis)
        spaces = {mu: Subspace.span(m.dim(mu), vectors) for mu, vectors in images.items()}
        k += 1
    return k


def j2_nilpotency_degree(m: TruncatedModule) -> int:
    """J₂ 在 m 上的幂零度；J₂ 为空时返回 0

    Raises:
        NotNilpotentWithinBound: 超过 dim(窗口) + 1 步仍不为零
    """
    a = m.algebra
    if not a.j2:
        return 0
    operators = [
        (a.weight(u), (lambda mu, u=u: m.action_block(u, mu))) for u in a.j2
    ]
    return _degree(m, operators)


def shifted_nilpotency_degree(m: TruncatedModule, u: int, c: Fraction) -> int:
    """(u − c) 的幂零度（零权 u 才减去 c）"""
    a = m.algebra
    shift = a.weight(u)

    def block_at(mu: Weight) -> RationalMatrix:
        block = m.action_block(u, mu)
        if shift.is_zero() and c:
            block = block - RationalMatrix.scalar(m.dim(mu), c)
        return block

    return _degree(m, [(shift, block_at)])
