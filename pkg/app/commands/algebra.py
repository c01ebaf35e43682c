"""
根系与强连接相关的子命令：roots、linkage
"""

import argparse

from app.commands import CommandResult, add_algebra_args, command
from app.core.rootsys import build_root_system, dot_orbit, parse_cartan, strongly_linked
from app.services.algebra_service import context_from_args, load_spec, parse_weight


def register(subparsers) -> None:
    roots = subparsers.add_parser("roots", help="正根、ρ 与 Weyl 群阶；给了 --radical 时同时列出代数")
    add_algebra_args(roots)
    roots.add_argument("--lam", help="可选：同时列出 λ 的点轨道")

    linkage = subparsers.add_parser("linkage", help="μ 是否强连接到 λ，给出向下的反射链")
    add_algebra_args(linkage, with_radical=False)
    linkage.add_argument("--mu", required=True)
    linkage.add_argument("--lam", required=True)


def _root_system(args: argparse.Namespace):
    spec = load_spec(path=args.spec, cartan=args.cartan)
    return build_root_system(parse_cartan(spec.cartan))


@command("roots")
def roots(args: argparse.Namespace) -> CommandResult:
    if args.radical is not None or args.g is not None:
        ctx = context_from_args(args)
        r = ctx.root_system
        payload = {"root_system": r.describe(), "algebra": ctx.algebra.describe(), "g": ctx.g.to_json()}
    else:
        r = _root_system(args)
        payload = {"root_system": r.describe()}
    if args.lam is not None:
        lam = parse_weight(args.lam, r.rank, "lam")
        payload["dot_orbit"] = [w.to_json() for w in dot_orbit(r, lam)]
    return CommandResult(payload=payload)


@command("linkage")
def linkage(args: argparse.Namespace) -> CommandResult:
    r = _root_system(args)
    mu = parse_weight(args.mu, r.rank, "mu")
    lam = parse_weight(args.lam, r.rank, "lam")
    chain = strongly_linked(r, mu, lam)
    payload = {
        "mu": mu.to_json(),
        "lam": lam.to_json(),
        "linked": chain is not None,
        "chain": chain.to_json(r) if chain is not None else None,
    }
    failures = []
    if chain is not None and not chain.verify(r):
        failures.append("linkage chain failed re-verification")
    return CommandResult(payload=payload, failures=failures)
