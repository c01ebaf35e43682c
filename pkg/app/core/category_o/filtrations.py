"""最高权滤过与标准滤过（逐层剥离）"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from app.core.entities import FiltrationKind, WindowStatus
from app.core.exactla import Subspace
from app.core.exceptions import InternalConsistencyError, NoStandardFiltration
from app.core.glie import GFunctional
from app.core.pbwmod import TruncatedModule, quotient, span_closure, submodule_generated
from app.core.rootsys import Weight, kostant_partition
from app.core.utils.logger import setup_logger

from .maximal import find_maximal_vectors, has_headroom

logger = setup_logger("category_o")


@dataclass
class FiltrationReport:
    kind: FiltrationKind
    steps: list[tuple[Weight, Optional[GFunctional]]]
    window: dict[str, Any]
    g0_length: Optional[int] = None
    details: list[dict[str, Any]] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def lengths_agree(self) -> Optional[bool]:
        """标准滤过与 g₀ 层面长度是否一致；g₀ 剥离停滞时为 False，最高权滤过不比较（None）"""
        if self.kind != FiltrationKind.STANDARD:
            return None
        return self.g0_length is not None and self.g0_length == self.length

    def multiplicity(self, mu: Weight) -> int:
        return sum(1 for w, _ in self.steps if w == mu)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "length": self.length,
            "steps": [
                {"weight": w.to_json(), "g": g.to_json() if g is not None else None}
                for w, g in self.steps
            ],
            "g0_length": self.g0_length,
            "lengths_agree": self.lengths_agree,
            "window": self.window,
            "details": self.details,
        }


def _window(m: TruncatedModule) -> dict[str, Any]:
    return {"top_weights": [t.to_json() for t in m.top_weights], "depth": m.depth}


def _guard(m: TruncatedModule) -> int:
    return m.total_dimension() + 1


def highest_weight_filtration(m: TruncatedModule) -> FiltrationReport:
    """在生成元的 U(n)-张成里找极大向量，分出它生成的子模，对商递归

    Raises:
        InternalConsistencyError: 非零模里找不到极大向量
    """
    a = m.algebra
    steps: list[tuple[Weight, Optional[GFunctional]]] = []
    details = []
    current = m
    for _ in range(_guard(m)):
        if current.total_dimension() == 0:
            break
        span = span_closure(current, list(current.generators), a.positive_indices())
        found = None
        for mu in sorted(span, key=lambda w: (current.height_below_tops(w), tuple(-c for c in w.coords))):
            if not span[mu].dim or not has_headroom(current, mu):
                continue
            maximal = find_maximal_vectors(current, mu)
            if not maximal.basis:
                continue
            common = span[mu].intersect(Subspace.span(current.dim(mu), maximal.basis))
            if common.dim:
                found = (mu, common.basis[0])
                break
        if found is None:
            raise InternalConsistencyError(
                f"no maximal vector in the generator span of {current.name}",
                {"dim": current.total_dimension()},
            )
        mu, v = found
        steps.append((mu, current.g_label))
        details.append({"weight": mu.to_json(), "vector": current.describe_vector(mu, v)})
        current = quotient(current, submodule_generated(current, [(mu, v)]))
    else:
        raise InternalConsistencyError("highest weight filtration did not terminate")
    return FiltrationReport(
        kind=FiltrationKind.HIGHEST_WEIGHT, steps=steps, window=_window(m), details=details
    )


def _maximal_weights(m: TruncatedModule) -> list[Weight]:
    """没有更高非零分量的权，按坐标字典序降序"""
    r = m.root_system
    weights = list(m.components)
    out = [
        mu
        for mu in weights
        if not any(nu != mu and r.dominance_leq(mu, nu) for nu in weights)
    ]
    return sorted(out, reverse=True)


def _peel(m: TruncatedModule, include_radical: bool) -> tuple[list[tuple[Weight, Any]], list[dict]]:
    r = m.root_system
    steps = []
    details = []
    current = m
    for _ in range(_guard(m)):
        if current.total_dimension() == 0:
            return steps, details
        candidates = [mu for mu in _maximal_weights(current) if has_headroom(current, mu, include_radical)]
        chosen = None
        for mu in candidates:
            maximal = find_maximal_vectors(current, mu, include_radical=include_radical)
            if maximal.basis:
                chosen = (mu, maximal.basis[0])
                break
        if chosen is None:
            raise NoStandardFiltration(
                f"no maximal vector of maximal weight in {current.name}",
                {"steps_so_far": [w.to_json() for w, _ in steps]},
            )
        mu, v = chosen
        sub = submodule_generated(current, [(mu, v)])
        for kappa in current.sorted_weights():
            drop = r.lattice_drop(mu, kappa)
            if drop is None or current.window_status(kappa) != WindowStatus.INSIDE:
                continue
            if sub.dim(kappa) != kostant_partition(r, drop):
                raise NoStandardFiltration(
                    f"submodule generated at {mu} is not a Verma module in the window",
                    {"weight": kappa.to_json(), "dim": sub.dim(kappa), "expected": kostant_partition(r, drop)},
                )
        steps.append((mu, current.g_label if include_radical else None))
        details.append({"weight": mu.to_json(), "vector": current.describe_vector(mu, v)})
        current = quotient(current, sub)
    raise NoStandardFiltration("peeling did not terminate")


def standard_filtration(m: TruncatedModule) -> FiltrationReport:
    """贪心剥离：每次取最高权分量里的极大向量，检查它生成的子模是 Verma 模，再取商

    同时在 g₀ 层面（只要求被 n₀ 零化）重复一遍，比较两者长度。

    Raises:
        NoStandardFiltration: 剥离卡住或子模的维数不是 Kostant 分拆数
    """
    steps, details = _peel(m, include_radical=True)
    try:
        g0_steps, _ = _peel(m, include_radical=False)
        g0_length: Optional[int] = len(g0_steps)
    except NoStandardFiltration:
        g0_length = None
    report = FiltrationReport(
        kind=FiltrationKind.STANDARD,
        steps=steps,
        window=_window(m),
        g0_length=g0_length,
        details=details,
    )
    if g0_length is None:
        report.details.append({"g0_level": "peeling stalled"})
    logger.debug(f"{m.name}: 标准滤过长度 {report.length}（g0 层面 {g0_length}）")
    return report
