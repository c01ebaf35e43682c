"""O' 公理检查"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from app.core.entities import Axiom, CheckResult, WindowStatus
from app.core.exactla import RationalMatrix
from app.core.pbwmod import TruncatedModule, span_closure


@dataclass
class AxiomReport:
    module: str
    results: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "module": self.module,
            "passed": self.passed,
            "axioms": [r.to_dict() for r in self.results],
        }


def _finitely_generated(m: TruncatedModule) -> CheckResult:
    if not m.generators:
        return CheckResult(Axiom.FINITELY_GENERATED.code, False, {"reason": "no recorded generators"})
    spaces = span_closure(m, list(m.generators))
    missing = [
        mu.to_json()
        for mu in m.sorted_weights()
        if m.window_status(mu) == WindowStatus.INSIDE
        and (spaces[mu].dim if mu in spaces else 0) != m.dim(mu)
    ]
    return CheckResult(
        Axiom.FINITELY_GENERATED.code,
        not missing,
        {"generators": len(m.generators), "weights_not_reached": missing[:10]},
    )


def _h_semisimple(m: TruncatedModule) -> CheckResult:
    a = m.algebra
    bad = []
    for mu in m.sorted_weights():
        for i in range(a.rank):
            expected = RationalMatrix.scalar(m.dim(mu), mu[i])
            if m.action_block(a.h(i), mu) != expected:
                bad.append({"h": a.labels[a.h(i)], "weight": mu.to_json()})
    return CheckResult(Axiom.H0_SEMISIMPLE.code, not bad, {"violations": bad[:10]})


def _locally_n_finite(m: TruncatedModule) -> CheckResult:
    """U(n)·v 对每个生成元在窗口内张成（提升算子严格升高权或留在 J 的有限作用里）"""
    a = m.algebra
    raising = a.positive_indices()
    spans = []
    for mu, v in m.generators:
        spaces = span_closure(m, [(mu, v)], raising)
        # 闭包若要离开窗口就无法确认
        escaped = any(
            m.window_status(nu + a.weight(x)) == WindowStatus.OUTSIDE
            for nu, space in spaces.items()
            if space.dim
            for x in raising
        )
        spans.append(
            {
                "weight": mu.to_json(),
                "span_dim": sum(s.dim for s in spaces.values()),
                "escaped": escaped,
            }
        )
    passed = bool(spans) and not any(s["escaped"] for s in spans)
    return CheckResult(Axiom.LOCALLY_N_FINITE.code, passed, {"spans": spans})


def _monomial_counter(steps: list[tuple[Fraction, ...]]) -> Callable[[tuple[Fraction, ...], int], int]:
    """数 steps 的多重集中和为给定（单根坐标）向量的个数；steps 的高度都为负"""
    memo: dict[tuple[tuple[Fraction, ...], int], int] = {}

    def count(remaining: tuple[Fraction, ...], k: int) -> int:
        if not any(remaining):
            return 1
        if k == len(steps) or sum(remaining) >= 0:
            return 0
        key = (remaining, k)
        if key not in memo:
            total = 0
            current = remaining
            while True:
                total += count(current, k + 1)
                if not any(current) or sum(current) >= 0:
                    break
                current = tuple(c - s for c, s in zip(current, steps[k]))
            memo[key] = total
        return memo[key]

    return count


def _finite_weight_spaces(m: TruncatedModule) -> CheckResult:
    """dim M_ν 不超过 PBW 给出的上界

    按单根坐标之和把 g 分成 p（高度 ≥ 0）与 n（高度 < 0），U(g) = U(n)U(p)。
    W = U(p)·生成元，于是 dim M_ν ≤ Σ_λ dim W_λ · #{n 的 PBW 单项式，权为 ν − λ}。
    """
    a = m.algebra
    r = a.root_system
    if not m.generators:
        return CheckResult(Axiom.FINITE_WEIGHT_SPACES.code, False, {"reason": "no recorded generators"})
    coords_of = {x: r.root_coordinates(a.weight(x)) for x in range(a.dim)}
    raising = [x for x in range(a.dim) if sum(coords_of[x]) >= 0]
    count = _monomial_counter([coords_of[x] for x in range(a.dim) if sum(coords_of[x]) < 0])

    top_spaces = span_closure(m, list(m.generators), raising)
    tops = [(r.root_coordinates(lam), space.dim) for lam, space in top_spaces.items() if space.dim]
    exceeded = []
    dims = []
    for mu in m.sorted_weights():
        if m.window_status(mu) != WindowStatus.INSIDE:
            continue
        d = m.dim(mu)
        dims.append(d)
        coords = r.root_coordinates(mu)
        bound = sum(k * count(tuple(c - t for c, t in zip(coords, top)), 0) for top, k in tops)
        if d > bound:
            exceeded.append({"weight": mu.to_json(), "dim": d, "bound": bound})
    return CheckResult(
        Axiom.FINITE_WEIGHT_SPACES.code,
        not exceeded,
        {"components": len(dims), "max_dim": max(dims, default=0), "exceeded": exceeded[:10]},
    )


def check_oprime_axioms(m: TruncatedModule) -> AxiomReport:
    """逐条检查 O'1–O'4；失败写进报告而不是抛异常"""
    return AxiomReport(
        module=m.name,
        results=[
            _finitely_generated(m),
            _h_semisimple(m),
            _locally_n_finite(m),
            _finite_weight_spaces(m),
        ],
    )
