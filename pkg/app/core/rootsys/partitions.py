"""Kostant 分拆函数"""

from typing import Sequence

from app.core.exceptions import DimensionError

from .root_system import RootSystem


def _check_drop(r: RootSystem, nu: Sequence[int]) -> tuple[int, ...]:
    if len(nu) != r.rank:
        raise DimensionError(f"drop {list(nu)} has length {len(nu)}, expected {r.rank}")
    values = tuple(int(x) for x in nu)
    if any(x < 0 for x in values) or any(int(x) != x for x in nu):
        raise DimensionError(f"drop {list(nu)} must have nonnegative integer entries")
    return values


def kostant_partition(r: RootSystem, nu: Sequence[int]) -> int:
    """把 ν 写成正根多重集之和的方法数

    按 Φ⁺ 的固定顺序逐个决定每个正根用几次，带记忆化穷举。
    """
    target = _check_drop(r, nu)
    roots = r.positive_roots
    memo: dict[tuple[tuple[int, ...], int], int] = {}

    def count(remaining: tuple[int, ...], k: int) -> int:
        if not any(remaining):
            return 1
        if k == len(roots):
            return 0
        key = (remaining, k)
        if key in memo:
            return memo[key]
        beta = roots[k]
        total = 0
        current = remaining
        while min(current) >= 0:
            total += count(current, k + 1)
            current = tuple(a - b for a, b in zip(current, beta))
        memo[key] = total
        return total

    return count(target, 0)


def enumerate_partitions(r: RootSystem, nu: Sequence[int]) -> list[tuple[int, ...]]:
    """所有分拆，每个分拆是按 Φ⁺ 顺序的重数向量"""
    target = _check_drop(r, nu)
    roots = r.positive_roots
    out: list[tuple[int, ...]] = []

    def walk(remaining: tuple[int, ...], k: int, chosen: list[int]) -> None:
        if k == len(roots):
            if not any(remaining):
                out.append(tuple(chosen))
            return
        beta = roots[k]
        m = 0
        current = remaining
        while min(current) >= 0:
            chosen.append(m)
            walk(current, k + 1, chosen)
            chosen.pop()
            m += 1
            current = tuple(a - b for a, b in zip(current, beta))

    walk(target, 0, [])
    return sorted(out)
