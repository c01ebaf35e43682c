"""按命令行参数构造被检查的模"""

import argparse

from app.core.category_o import irreducible_quotient, jordan_tower
from app.core.exceptions import SpecError
from app.core.glie import realize_simple
from app.core.pbwmod import TruncatedModule, build_verma, direct_sum, tensor_with_simple
from app.core.utils.logger import setup_logger
from app.services.algebra_service import AlgebraContext

logger = setup_logger("module_service")


def build_module(ctx: AlgebraContext, args: argparse.Namespace) -> TruncatedModule:
    """--module 选择的模（深度取上下文的深度）

    Raises:
        SpecError: 缺少该种类需要的权参数
    """
    a, g, depth = ctx.algebra, ctx.g, ctx.depth
    kind = getattr(args, "module", "verma")
    if kind == "verma":
        m = build_verma(a, ctx.weight(args.lam, "lam"), g, depth)
    elif kind == "simple":
        m = irreducible_quotient(a, ctx.weight(args.lam, "lam"), g, depth)
    elif kind == "sum":
        m = direct_sum(
            [
                build_verma(a, ctx.weight(args.lam, "lam"), g, depth),
                build_verma(a, ctx.weight(args.mu, "mu"), g, depth),
            ]
        )
    elif kind == "tensor":
        factor = realize_simple(ctx.root_system, ctx.weight(args.tensor_weight, "tensor-weight"))
        m = tensor_with_simple(build_verma(a, ctx.weight(args.lam, "lam"), g, depth), factor)
    elif kind == "tower":
        m = jordan_tower(a, ctx.weight(args.gamma, "gamma"), g, args.k, args.u)
    else:
        raise SpecError(f"unknown module kind {kind!r}")
    logger.info(f"{m.name}: 窗口内总维数 {m.total_dimension()}")
    return m
