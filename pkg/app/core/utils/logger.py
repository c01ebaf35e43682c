"""
使用 loguru 的日志配置模块

报告写 stdout，日志一律写 stderr（可选再写一份轮转文件）。
"""

import sys
from pathlib import Path
from typing import Optional, TextIO

from loguru import logger

from ...config import LOG_LEVEL, LOG_PATH, LOG_TO_FILE

_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")

_CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss}</green> | <level>{level: <7}</level> | "
    "<cyan>{extra[name]}</cyan> | {message}\n"
)
_FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level} | {extra[name]} | {message}\n"


class AutoFlushStream:
    """自动刷新的 stderr 包装器，保证诊断信息与 stdout 报告交错时顺序可读"""

    def __init__(self, stream: TextIO):
        self.stream = stream

    def write(self, message: str) -> int:
        result = self.stream.write(message)
        self.stream.flush()
        return result

    def flush(self) -> None:
        self.stream.flush()

    def __getattr__(self, name: str):
        # isatty / fileno 等属性交给原始流
        return getattr(self.stream, name)


def _get_log_level(level: str) -> str:
    """将日志级别转换为 loguru 格式，未知级别回落到 INFO"""
    name = str(level).upper()
    return name if name in _LEVELS else "INFO"


# 全局日志配置标志
_logger_configured = False


def setup_logger(
    name: str,
    level: Optional[str] = None,
    log_file: Optional[str] = None,
    console_output: bool = True,
):
    """
    创建并配置一个 loguru 日志记录器。

    参数：
    - name: 日志来源标识（绑定到 extra["name"]）
    - level: 日志级别，默认取配置 LOG_LEVEL
    - log_file: 日志文件路径；为空且 LOG_TO_FILE 开启时使用 LOG_PATH/oprime.log
    - console_output: 是否输出到 stderr

    返回：
    - loguru.Logger: 绑定了名称的日志记录器
    """
    global _logger_configured

    if not _logger_configured:
        logger.remove()
        # 未绑定名称的记录也要能渲染 extra[name]
        logger.configure(extra={"name": "-"})
        log_level = _get_log_level(level or LOG_LEVEL)

        if console_output:
            logger.add(
                AutoFlushStream(sys.stderr),
                format=_CONSOLE_FORMAT,
                level=log_level,
                colorize=True,
                backtrace=False,
                diagnose=False,
            )

        if log_file is None and LOG_TO_FILE:
            log_file = str(LOG_PATH / "oprime.log")

        if log_file is not None:
            Path(log_file).parent.mkdir(parents=True, exist_ok=True)
            logger.add(
                log_file,
                format=_FILE_FORMAT,
                level=log_level,
                rotation="10 MB",  # 文件大小达到 10MB 时轮转
                retention="5 days",
                compression="zip",
                encoding="utf-8",
                colorize=False,
            )

        _logger_configured = True

    return logger.bind(name=name) if name else logger


def set_log_level(level: str) -> None:
    """CLI --log-level：按新级别重新安装 sink"""
    global _logger_configured
    _logger_configured = False
    setup_logger("main", level=level)
