"""
命令行主入口

    oprime witness --cartan A1 --radical "[[0]]" --g "[3]" --lam "[2]"

报告写 stdout（JSON 或表格），诊断写 stderr。退出码：0 全部断言通过，
1 断言失败或计算无法得出可信结论，2 输入错误。
"""

import argparse
import sys
from typing import Optional, Sequence

from app.commands import COMMANDS, algebra, modules, projective, request_echo, verify
from app.core.exceptions import OPrimeError
from app.core.utils.cache import enable_cache
from app.core.utils.logger import set_log_level, setup_logger
from app.schemas.common import ReportEnvelope
from app.services.recheck import recheck
from app.services.report import error_report, make_report, to_json, to_table

logger = setup_logger("main")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oprime",
        description="Exact computations in category O' of generalized reductive Lie algebras",
    )
    parser.add_argument("--output", choices=["json", "table"], default="json", help="输出格式")
    parser.add_argument("--log-level", help="日志级别（默认取 LOG_LEVEL）")
    parser.add_argument("--recheck", metavar="FILE", help="重放并复核保存的 JSON 报告")
    parser.add_argument("--cache", action="store_true", help="启用磁盘缓存（结构常数）")

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    for group in (algebra, modules, projective, verify):
        group.register(subparsers)
    return parser


def execute(args: argparse.Namespace) -> ReportEnvelope:
    """运行一个子命令；领域异常转成错误报告"""
    if args.recheck:
        try:
            return recheck(args.recheck)
        except OPrimeError as e:
            logger.error(f"复核失败: {e}")
            return error_report("recheck", {"file": args.recheck}, e)

    request = request_echo(args)
    try:
        result = COMMANDS[args.command](args)
    except OPrimeError as e:
        logger.error(f"{args.command} 失败: {e.kind}: {e}")
        return error_report(args.command, request, e)
    if result.failures:
        logger.warning(f"{args.command}: {len(result.failures)} 项断言未通过")
    return make_report(args.command, request, result.payload, result.failures)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        set_log_level(args.log_level)
    if args.cache:
        enable_cache()
    if args.command is None and not args.recheck:
        parser.print_usage(sys.stderr)
        return 2

    report = execute(args)
    if args.output == "table":
        sys.stdout.write(to_table(report))
    else:
        sys.stdout.write(to_json(report).decode("utf-8"))
    sys.stdout.flush()
    return report.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
