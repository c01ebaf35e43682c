"""
Verma 模与模构造相关的子命令：verma-dim、dump、singular、embed、nilpotency、axioms、filtration
"""

import argparse

from app.commands import CommandResult, add_algebra_args, add_module_args, command
from app.core.category_o import (
    check_oprime_axioms,
    embed_verma,
    highest_weight_filtration,
    j2_nilpotency_degree,
    singular_vector_formula_check,
    standard_filtration,
    verma_maximal_vectors,
)
from app.core.entities import WindowStatus
from app.core.exceptions import SpecError
from app.core.pbwmod import build_verma
from app.core.rootsys import kostant_partition, strongly_linked
from app.services.algebra_service import context_from_args
from app.services.module_service import build_module


def register(subparsers) -> None:
    verma_dim = subparsers.add_parser("verma-dim", help="M(λ,g) 各权分量的维数，对照 Kostant 分拆数")
    add_algebra_args(verma_dim)
    verma_dim.add_argument("--lam", required=True)

    dump = subparsers.add_parser("dump", help="输出模的权分量、基标签和稀疏作用矩阵")
    add_algebra_args(dump)
    add_module_args(dump)

    singular = subparsers.add_parser("singular", help="M(λ,g) 在权 μ 处的极大向量")
    add_algebra_args(singular)
    singular.add_argument("--lam", required=True)
    singular.add_argument("--mu", required=True)
    singular.add_argument("--simple", type=int, help="同时检查 fᵢⁿw 的公式（i 从 1 开始）")

    embed = subparsers.add_parser("embed", help="构造嵌入 M(μ,g) → M(λ,g)")
    add_algebra_args(embed)
    embed.add_argument("--lam", required=True)
    embed.add_argument("--mu", required=True)

    nilpotency = subparsers.add_parser("nilpotency", help="J₂ 在模上的幂零度")
    add_algebra_args(nilpotency)
    add_module_args(nilpotency)

    axioms = subparsers.add_parser("axioms", help="逐条检查 O' 公理")
    add_algebra_args(axioms)
    add_module_args(axioms)

    filtration = subparsers.add_parser("filtration", help="最高权滤过或标准滤过")
    add_algebra_args(filtration)
    add_module_args(filtration)
    filtration.add_argument("--kind", choices=["standard", "highest-weight"], default="standard")


@command("verma-dim")
def verma_dim(args: argparse.Namespace) -> CommandResult:
    ctx = context_from_args(args)
    r = ctx.root_system
    lam = ctx.weight(args.lam, "lam")
    m = build_verma(ctx.algebra, lam, ctx.g, ctx.depth)
    rows = []
    failures = []
    for mu in m.sorted_weights():
        if m.window_status(mu) != WindowStatus.INSIDE:
            continue
        drop = r.lattice_drop(lam, mu)
        expected = kostant_partition(r, drop)
        rows.append({"weight": mu.to_json(), "drop": list(drop), "dim": m.dim(mu), "kostant": expected})
        if m.dim(mu) != expected:
            failures.append(f"dim M_{mu} = {m.dim(mu)} but the Kostant partition count is {expected}")
    return CommandResult(
        payload={"module": m.name, "depth": m.depth, "components": rows, "total": m.total_dimension()},
        failures=failures,
    )


@command("dump")
def dump(args: argparse.Namespace) -> CommandResult:
    ctx = context_from_args(args)
    m = build_module(ctx, args)
    return CommandResult(payload=m.dump())


@command("singular")
def singular(args: argparse.Namespace) -> CommandResult:
    ctx = context_from_args(args)
    lam, mu = ctx.weight(args.lam, "lam"), ctx.weight(args.mu, "mu")
    m = build_verma(ctx.algebra, lam, ctx.g, ctx.depth)
    found = verma_maximal_vectors(m, mu)
    payload = {
        "module": m.name,
        "weight": mu.to_json(),
        "g": found.g_observed.to_json() if found.g_observed is not None else None,
        "dim": found.dim,
        "vectors": [m.describe_vector(mu, v) for v in found.basis],
    }
    failures = []
    if args.simple is not None:
        if not 1 <= args.simple <= ctx.root_system.rank:
            raise SpecError(f"--simple must lie in 1..{ctx.root_system.rank}")
        check = singular_vector_formula_check(ctx.algebra, lam, ctx.g, args.simple - 1)
        payload["formula"] = {"n": check.n, "vector": check.vector, "checks": check.checks}
        failures.extend(c["name"] for c in check.checks if not c["passed"])
    return CommandResult(payload=payload, failures=failures)


@command("embed")
def embed(args: argparse.Namespace) -> CommandResult:
    ctx = context_from_args(args)
    r = ctx.root_system
    lam, mu = ctx.weight(args.lam, "lam"), ctx.weight(args.mu, "mu")
    chain = strongly_linked(r, mu, lam)
    phi = embed_verma(ctx.algebra, mu, lam, ctx.g, ctx.depth)
    payload = {
        "mu": mu.to_json(),
        "lam": lam.to_json(),
        "linked": phi is not None,
        "chain": chain.to_json(r) if chain is not None else None,
    }
    failures = []
    if phi is not None:
        image = phi.apply(mu, (1,))
        payload["generator_image"] = phi.target.describe_vector(mu, image)
        payload["injective"] = phi.is_injective()
        intertwining = phi.intertwining_failures(limit=5)
        payload["intertwining_failures"] = intertwining
        if intertwining:
            failures.append("embedding is not a module map")
    return CommandResult(payload=payload, failures=failures)


@command("nilpotency")
def nilpotency(args: argparse.Namespace) -> CommandResult:
    ctx = context_from_args(args)
    m = build_module(ctx, args)
    return CommandResult(
        payload={
            "module": m.name,
            "j2": [ctx.algebra.labels[u] for u in ctx.algebra.j2],
            "degree": j2_nilpotency_degree(m),
        }
    )


@command("axioms")
def axioms(args: argparse.Namespace) -> CommandResult:
    ctx = context_from_args(args)
    report = check_oprime_axioms(build_module(ctx, args))
    failures = [r.name for r in report.results if not r.passed]
    return CommandResult(payload=report.to_dict(), failures=failures)


@command("filtration")
def filtration(args: argparse.Namespace) -> CommandResult:
    ctx = context_from_args(args)
    m = build_module(ctx, args)
    if args.kind == "standard":
        report = standard_filtration(m)
    else:
        report = highest_weight_filtration(m)
    failures = []
    if report.lengths_agree is False:
        if report.g0_length is None:
            failures.append("g0-level peeling stalled, so the filtration length cannot be compared")
        else:
            failures.append(f"filtration length {report.length} differs from the g0 length {report.g0_length}")
    bracket = m.bracket_failures(limit=5)
    if bracket:
        failures.append("bracket compatibility fails on an interior component")
    return CommandResult(payload={"module": m.name, **report.to_dict()}, failures=failures)
