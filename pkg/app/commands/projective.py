"""
投射对象相关的子命令：witness、tower、reciprocity
"""

import argparse

from app.commands import CommandResult, add_algebra_args, command
from app.core.category_o import jordan_tower_growth, jordan_witness, reciprocity_check_sl2
from app.core.exceptions import SpecError
from app.services.algebra_service import context_from_args


def register(subparsers) -> None:
    witness = subparsers.add_parser("witness", help="φ: M(λ,g) → L(λ,g) 不能经 L ⊕ L 的 Jordan 扩张提升")
    add_algebra_args(witness)
    witness.add_argument("--lam", required=True)
    witness.add_argument("--u", help="带扭曲的根基元素（默认第一个中心元）")

    tower = subparsers.add_parser("tower", help="Jordan 塔 T_1 … T_k 的公理、连接映射与幂零度")
    add_algebra_args(tower)
    tower.add_argument("--gamma", required=True)
    tower.add_argument("--k-max", type=int, default=6)
    tower.add_argument("--u", help="带扭曲的根基元素（默认第一个中心元）")

    reciprocity = subparsers.add_parser("reciprocity", help="sl₂ 块上的 BGG 互反律")
    add_algebra_args(reciprocity)
    reciprocity.add_argument("--lam", required=True, help="块内任一整权（不能是 -1）")


@command("witness")
def witness(args: argparse.Namespace) -> CommandResult:
    ctx = context_from_args(args)
    certificate = jordan_witness(ctx.algebra, ctx.weight(args.lam, "lam"), ctx.g, ctx.depth, args.u)
    payload = certificate.to_dict()
    payload["certifies_nonprojective"] = certificate.certifies_nonprojective
    failures = []
    if not certificate.certifies_nonprojective:
        failures.append("expected an inconsistent full system and a liftable g0 system")
    return CommandResult(payload=payload, failures=failures)


@command("tower")
def tower(args: argparse.Namespace) -> CommandResult:
    if args.k_max < 1:
        raise SpecError("--k-max must be at least 1")
    ctx = context_from_args(args)
    levels = jordan_tower_growth(ctx.algebra, ctx.weight(args.gamma, "gamma"), ctx.g, args.k_max, args.u)
    failures = [f"T_{level.k} failed" for level in levels if not level.passed]
    return CommandResult(payload={"levels": [level.to_dict() for level in levels]}, failures=failures)


@command("reciprocity")
def reciprocity(args: argparse.Namespace) -> CommandResult:
    ctx = context_from_args(args)
    report = reciprocity_check_sl2(ctx.algebra, ctx.g, ctx.weight(args.lam, "lam"), ctx.depth)
    failures = []
    if not report.holds:
        failures.append("filtration multiplicities differ from composition multiplicities")
    if not report.generator_independence:
        failures.append("a radical element does not act by g on the projective realization")
    return CommandResult(payload=report.to_dict(), failures=failures)
