"""截断广义 Verma 模 M(λ, g)"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import TYPE_CHECKING, Optional, Sequence, Union

from app.config import effective_depth_limit
from app.core.exactla import RationalMatrix, unit_vector
from app.core.exceptions import DepthLimitError, InternalConsistencyError
from app.core.rootsys import Weight
from app.core.utils.logger import setup_logger

from .module import TruncatedModule
from .pbw import PBWEngine, monomial_drop, monomial_label, monomials_up_to

if TYPE_CHECKING:
    from app.core.glie import GenReductiveAlgebra, GFunctional

logger = setup_logger("pbwmod")


def check_depth(depth: int) -> int:
    limit = effective_depth_limit()
    if not isinstance(depth, int) or depth < 0 or depth > limit:
        raise DepthLimitError(f"depth {depth} must lie in 0..{limit}", {"limit": limit})
    return depth


def build_verma(
    a: "GenReductiveAlgebra",
    lam: Union[Weight, Sequence],
    g: Union["GFunctional", Sequence, None],
    depth: int,
    validate: bool = True,
) -> TruncatedModule:
    """M(λ, g) 在深度 depth 以内的全部权分量与作用矩阵

    每个分量的基是按指数元组升序排列的 PBW 单项式。

    Raises:
        DepthLimitError: depth 超出 [0, 上限]
        InvalidFunctional: g ∉ G
        InternalConsistencyError: J 不按 g(u)·id 作用
    """
    from app.core.glie import require_g

    start = time.time()
    r = a.root_system
    lam = lam if isinstance(lam, Weight) else Weight.parse(lam)
    r.check_weight(lam)
    check_depth(depth)
    g = require_g(a, g)

    grouped: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for mono in monomials_up_to(r, depth):
        grouped.setdefault(monomial_drop(r, mono), []).append(mono)
    components: dict[Weight, tuple[str, ...]] = {}
    monomials: dict[Weight, tuple[tuple[int, ...], ...]] = {}
    position: dict[tuple[int, ...], tuple[Weight, int]] = {}
    for drop in sorted(grouped, key=lambda d: (sum(d), tuple(-c for c in d))):
        mu = lam - r.root_weight(drop)
        monos = tuple(sorted(grouped[drop]))
        monomials[mu] = monos
        components[mu] = tuple(monomial_label(r, m) for m in monos)
        for k, m in enumerate(monos):
            position[m] = (mu, k)

    engine = PBWEngine(a, lam, g)
    actions: dict[int, dict] = {}
    for x in range(a.dim):
        shift = a.weight(x)
        per_weight = {}
        for mu, monos in monomials.items():
            target = mu + shift
            if target not in components:
                continue
            entries: dict[tuple[int, int], Fraction] = {}
            for j, mono in enumerate(monos):
                for image, c in engine.act(x, mono).items():
                    entries[(position[image][1], j)] = c
            if entries:
                per_weight[mu] = RationalMatrix(len(components[target]), len(monos), entries)
        if per_weight:
            actions[x] = per_weight

    module = TruncatedModule(
        algebra=a,
        top_weights=(lam,),
        depth=depth,
        components=components,
        actions=actions,
        g_label=g,
        generators=((lam, unit_vector(1, 0)),),
        monomials=monomials,
        name=f"M({lam},g={g})",
    )
    if module.radical_action_defect(g):
        raise InternalConsistencyError(
            "the radical does not act by g(u)·id on the Verma module",
            {"defects": module.radical_action_defect(g)[:5]},
        )
    if validate:
        module.validate()
    logger.debug(
        f"{module.name}: depth {depth}, dim {module.total_dimension()}，耗时 {time.time() - start:.2f}s"
    )
    return module


def verma_image(
    target: TruncatedModule,
    source: TruncatedModule,
    vector: Sequence[Fraction],
):
    """泛性质映射 M(μ, g) → target，把 source 的最高权向量送到 vector

    source 必须是 Verma 模（带单项式）；vector 位于 target 的 μ 分量。
    """
    from .constructions import apply
    from .module import ModuleMap

    if source.monomials is None:
        raise InternalConsistencyError("universal map needs a Verma module as its source")
    a = source.algebra
    mu = source.top_weights[0]
    blocks = {}
    for kappa, monos in source.monomials.items():
        columns = []
        for mono in monos:
            word: list[int] = []
            for k, power in enumerate(mono):
                word.extend([a.f(k)] * power)
            _, image = apply(target, word, (mu, tuple(vector)))
            columns.append(image)
        block = RationalMatrix.from_columns(columns, target.dim(kappa))
        if not block.is_zero():
            blocks[kappa] = block
    return ModuleMap(source, target, blocks)


def verma_to(
    target: TruncatedModule,
    mu: Weight,
    vector: Sequence[Fraction],
    g: Optional["GFunctional"] = None,
    depth: Optional[int] = None,
):
    """构造 M(μ, g) 并返回它到 target 的泛性质映射

    depth 缺省时取 target 窗口里 μ 以下还能容纳的深度。

    Raises:
        InternalConsistencyError: 得到的映射不与作用交换（vector 不是极大向量）
    """
    if depth is None:
        depth = target.depth - target.height_below_tops(mu)
    source = build_verma(target.algebra, mu, g if g is not None else target.g_label, depth)
    phi = verma_image(target, source, vector)
    failures = phi.intertwining_failures(limit=1)
    if failures:
        raise InternalConsistencyError("universal map is not a module map", failures[0])
    return phi
