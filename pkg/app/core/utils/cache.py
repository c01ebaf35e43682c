"""磁盘缓存工具

用 diskcache 缓存与输入一一对应的昂贵计算结果（例如 g₀ 的结构常数）。
缓存默认关闭（CACHE_ENABLED），关闭时被装饰函数直接执行。
"""

import functools
import hashlib
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

import diskcache
import orjson

from app.config import CACHE_ENABLED, CACHE_PATH
from app.core.utils.logger import setup_logger

logger = setup_logger("cache")

# Global cache switch
_cache_enabled = CACHE_ENABLED
_cache: Optional[diskcache.Cache] = None

# 符号约定改变时换前缀，旧表不再命中
CACHE_PREFIX_STRUCTURE = "structure.v2:"


def _get_cache() -> diskcache.Cache:
    """获取缓存实例（单例）"""
    global _cache
    if _cache is None:
        path = Path(CACHE_PATH)
        path.mkdir(parents=True, exist_ok=True)
        _cache = diskcache.Cache(str(path))
        logger.debug(f"磁盘缓存目录: {path}")
    return _cache


def enable_cache() -> None:
    global _cache_enabled
    _cache_enabled = True


def disable_cache() -> None:
    global _cache_enabled
    _cache_enabled = False


def is_cache_enabled() -> bool:
    return _cache_enabled


def close_cache() -> None:
    global _cache
    if _cache is not None:
        _cache.close()
        _cache = None


def _serialize_for_key(obj: Any) -> Any:
    """把参数转成 orjson 可序列化的规范形式（Fraction 写成 "p/q"）"""
    if is_dataclass(obj) and not isinstance(obj, type):
        return _serialize_for_key(asdict(obj))
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (list, tuple)):
        return [_serialize_for_key(item) for item in obj]
    if isinstance(obj, dict):
        return {str(k): _serialize_for_key(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    return obj


def generate_cache_key(prefix: str, data: Any) -> str:
    """由任意（可规范化的）数据生成缓存键"""
    payload = orjson.dumps(_serialize_for_key(data), option=orjson.OPT_SORT_KEYS)
    return f"{prefix}{hashlib.sha256(payload).hexdigest()}"


def memoize(prefix: str):
    """按参数缓存函数结果，受全局开关控制

    缓存出错时只记 warning 并直接计算；异常结果不会被缓存。

    Examples:
        @memoize(CACHE_PREFIX_STRUCTURE)
        def chevalley_structure(cartan): ...
    """

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kw):
            if not _cache_enabled:
                return func(*args, **kw)

            key = generate_cache_key(
                prefix, [func.__module__, func.__name__, list(args), kw]
            )
            try:
                cache = _get_cache()
                hit = cache.get(key)
            except Exception as e:
                logger.warning(f"读取缓存失败，直接计算: {e}")
                return func(*args, **kw)
            if hit is not None:
                return hit

            result = func(*args, **kw)
            try:
                cache.set(key, result)
            except Exception as e:
                logger.warning(f"写入缓存失败: {key}, 错误: {e}")
            return result

        return wrapper

    return decorator
