"""
verify-all：运行全部验收检查
"""

import argparse

from app.commands import CommandResult, command
from app.config import VERIFY_WORKERS
from app.services.verification import CHECKS, run_suite


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify-all", help="运行验收检查套件")
    parser.add_argument(
        "--checks",
        help=f"只运行指定编号（逗号分隔，可选 {','.join(sorted(CHECKS))}）",
    )
    parser.add_argument("--workers", type=int, default=VERIFY_WORKERS, help="并发线程数")


@command("verify-all")
def verify_all(args: argparse.Namespace) -> CommandResult:
    only = [c.strip() for c in args.checks.split(",") if c.strip()] if args.checks else None
    results = run_suite(only, workers=args.workers)
    return CommandResult(
        payload={
            "checks": [r.to_dict() for r in results],
            "passed": sum(r.passed for r in results),
            "total": len(results),
        },
        failures=[r.name for r in results if not r.passed],
    )
