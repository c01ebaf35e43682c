"""
子命令注册表

每个子命令模块提供 register(subparsers)，处理函数用 @command 注册，
返回 CommandResult（payload + 未通过的断言）。
"""

import argparse
from dataclasses import dataclass, field
from typing import Any, Callable

from app.config import settings


@dataclass
class CommandResult:
    payload: dict[str, Any]
    failures: list[str] = field(default_factory=list)


Handler = Callable[[argparse.Namespace], CommandResult]

COMMANDS: dict[str, Handler] = {}

# 不参与请求回显（也不影响计算结果）的参数
GLOBAL_ARGS = frozenset({"command", "output", "recheck", "log_level", "cache"})


def command(name: str) -> Callable[[Handler], Handler]:
    def decorator(func: Handler) -> Handler:
        COMMANDS[name] = func
        return func

    return decorator


def request_echo(args: argparse.Namespace) -> dict[str, Any]:
    return {k: v for k, v in sorted(vars(args).items()) if k not in GLOBAL_ARGS}


def add_algebra_args(parser: argparse.ArgumentParser, with_radical: bool = True) -> None:
    group = parser.add_argument_group("algebra")
    group.add_argument("--spec", help="代数描述 JSON 文件")
    group.add_argument("--cartan", help='命名类型（A1、A2 …）或 JSON 矩阵 "[[2,-1],[-1,2]]"')
    if with_radical:
        group.add_argument("--radical", help='根基直和项的最高权，如 "[[0],[2]]"')
        group.add_argument("--g", help='按直和项给出的 g，如 "[3]" 或 "[5, [0,0,0]]"')
        group.add_argument(
            "--depth",
            type=int,
            help=f"截断深度（默认：秩 1 为 {settings.default_depth_rank1}，秩 2 为 {settings.default_depth_rank2}）",
        )


def add_module_args(parser: argparse.ArgumentParser) -> None:
    """选择被检查的模：Verma、不可约商、两个 Verma 的直和、与单模的张量积或 Jordan 塔"""
    group = parser.add_argument_group("module")
    group.add_argument(
        "--module",
        choices=["verma", "simple", "sum", "tensor", "tower"],
        default="verma",
        help="模的种类",
    )
    group.add_argument("--lam", help="最高权（verma/simple/sum/tensor）")
    group.add_argument("--mu", help="第二个最高权（sum）")
    group.add_argument("--tensor-weight", help="张量因子 L(ν) 的最高权（tensor）")
    group.add_argument("--gamma", help="Jordan 塔第一个直和项的最高权（tower）")
    group.add_argument("--k", type=int, default=2, help="Jordan 块的大小（tower）")
    group.add_argument("--u", help="带扭曲的根基元素，如 u1 或 u3（tower；默认第一个中心元）")
