"""
应用配置模块
"""

import os
from pathlib import Path

from pydantic import ConfigDict
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """应用配置"""

    model_config = ConfigDict(
        env_file=".env",
        case_sensitive=False,
        extra="ignore",  # 忽略未定义的额外字段
    )

    # 日志配置
    log_level: str = "INFO"
    log_dir: Path = Path("./logs")
    log_to_file: bool = False  # CLI 默认只写 stderr

    # 截断深度
    oprime_depth_limit: int = 64  # 所有截断深度的安全上限
    default_depth_rank1: int = 12
    default_depth_rank2: int = 6
    default_depth_higher: int = 4

    # 根系构造
    max_positive_roots: int = 200  # 反射闭包的有限型安全界
    weyl_enumeration_max_rank: int = 3

    # 缓存配置
    cache_enabled: bool = False
    cache_dir: Path = Path("./workspace/cache")

    # 验证套件
    verify_workers: int = 4
    sample_seed: int = 20240601


settings = Settings()

# 导出常量（供 core 模块使用）
LOG_LEVEL = settings.log_level
LOG_PATH = settings.log_dir
LOG_TO_FILE = settings.log_to_file

DEPTH_LIMIT = settings.oprime_depth_limit
DEFAULT_DEPTHS = {
    1: settings.default_depth_rank1,
    2: settings.default_depth_rank2,
}
DEFAULT_DEPTH_HIGHER = settings.default_depth_higher

MAX_POSITIVE_ROOTS = settings.max_positive_roots
WEYL_MAX_RANK = settings.weyl_enumeration_max_rank

CACHE_ENABLED = settings.cache_enabled
CACHE_PATH = settings.cache_dir

VERIFY_WORKERS = settings.verify_workers
SAMPLE_SEED = settings.sample_seed


def effective_depth_limit() -> int:
    """当前进程的深度上限（OPRIME_DEPTH_LIMIT 可在运行时覆盖）"""
    raw = os.getenv("OPRIME_DEPTH_LIMIT")
    if raw is None or not raw.strip():
        return DEPTH_LIMIT
    try:
        return int(raw)
    except ValueError:
        return DEPTH_LIMIT


def default_depth(rank: int) -> int:
    """按秩选择默认截断深度"""
    return DEFAULT_DEPTHS.get(rank, DEFAULT_DEPTH_HIGHER)
