"""没有投射对象的证书、Jordan 塔、Hom 空间与 sl₂ 块上的 BGG 互反律"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence, Union

from app.core.entities import LiftTag, WindowStatus
from app.core.exactla import RationalMatrix, SolveOutcome, SolveTag, Subspace, Vector, kernel, solve
from app.core.exceptions import (
    DepthLimitError,
    DimensionError,
    InternalConsistencyError,
    NonIntegralError,
    NotApplicable,
    SingularBlockUnsupported,
    UnsupportedRank,
)
from app.core.glie import GenReductiveAlgebra, realize_simple, require_g
from app.core.pbwmod import (
    ModuleMap,
    TruncatedModule,
    apply,
    build_verma,
    jordan_sum,
    quotient_with_projection,
    tensor_with_simple,
)
from app.core.rootsys import Weight
from app.core.utils.logger import setup_logger
from app.core.utils.rational import format_coord, format_rational, format_vector, parse_rational

from .axioms import check_oprime_axioms
from .filtrations import standard_filtration
from .maximal import composition_multiplicities_sl2, maximal_submodule
from .nilpotency import shifted_nilpotency_degree

logger = setup_logger("category_o")


# ---- 逐权未知量的线性系统 ----


class _MapSystem:
    """未知映射 ψ: source → target 的逐权矩阵块，展平成一个线性方程组"""

    def __init__(self, source: TruncatedModule, target: TruncatedModule):
        self.source = source
        self.target = target
        self.index: dict[tuple[Weight, int, int], int] = {}
        for mu in source.sorted_weights():
            rows, cols = target.dim(mu), source.dim(mu)
            if target.window_status(mu) != WindowStatus.INSIDE:
                continue
            for r in range(rows):
                for c in range(cols):
                    self.index[(mu, r, c)] = len(self.index)
        self.rows: list[dict[int, Fraction]] = []
        self.rhs: list[Fraction] = []
        self.labels: list[str] = []

    @property
    def unknowns(self) -> int:
        return len(self.index)

    def _push(self, row: dict[int, Fraction], value: Fraction, label: str) -> None:
        row = {k: v for k, v in row.items() if v}
        if not row and not value:
            return
        self.rows.append(row)
        self.rhs.append(Fraction(value))
        self.labels.append(label)

    def add_intertwining(self, elements: Sequence[int]) -> None:
        """ψ_t·A_src(x) − A_tgt(x)·ψ_μ = 0（只在内部权上）"""
        a = self.source.algebra
        for mu in self.source.sorted_weights():
            for x in elements:
                shift = a.weight(x)
                if not self.source.computable(mu, shift) or not self.target.computable(mu, shift):
                    continue
                t = mu + shift
                src = self.source.action_block(x, mu)
                tgt = self.target.action_block(x, mu)
                src_by_col: dict[int, list[tuple[int, Fraction]]] = {}
                for (k, c), value in src.items():
                    src_by_col.setdefault(c, []).append((k, value))
                tgt_by_row: dict[int, list[tuple[int, Fraction]]] = {}
                for (r, k), value in tgt.items():
                    tgt_by_row.setdefault(r, []).append((k, value))
                for r in range(self.target.dim(t)):
                    for c in range(self.source.dim(mu)):
                        row: dict[int, Fraction] = {}
                        for k, value in src_by_col.get(c, ()):
                            var = self.index.get((t, r, k))
                            if var is not None:
                                row[var] = row.get(var, 0) + value
                        for k, value in tgt_by_row.get(r, ()):
                            var = self.index.get((mu, k, c))
                            if var is not None:
                                row[var] = row.get(var, 0) - value
                        self._push(row, Fraction(0), f"{a.labels[x]} at {mu}")

    def add_factorization(self, pi: ModuleMap, phi: ModuleMap) -> None:
        """π_μ·ψ_μ = φ_μ"""
        lower = pi.target
        for mu in self.source.sorted_weights():
            if lower.window_status(mu) != WindowStatus.INSIDE or lower.dim(mu) == 0:
                continue
            p = pi.block(mu)
            f = phi.block(mu)
            p_by_row: dict[int, list[tuple[int, Fraction]]] = {}
            for (r, k), value in p.items():
                p_by_row.setdefault(r, []).append((k, value))
            for r in range(lower.dim(mu)):
                for c in range(self.source.dim(mu)):
                    row: dict[int, Fraction] = {}
                    for k, value in p_by_row.get(r, ()):
                        var = self.index.get((mu, k, c))
                        if var is not None:
                            row[var] = row.get(var, 0) + value
                    self._push(row, f.get(r, c), f"pi psi = phi at {mu}")

    def matrix(self) -> RationalMatrix:
        entries = {(i, j): v for i, row in enumerate(self.rows) for j, v in row.items()}
        return RationalMatrix(len(self.rows), self.unknowns, entries)

    def to_map(self, values: Sequence[Fraction]) -> ModuleMap:
        blocks: dict[Weight, dict[tuple[int, int], Fraction]] = {}
        for (mu, r, c), var in self.index.items():
            if values[var]:
                blocks.setdefault(mu, {})[(r, c)] = values[var]
        return ModuleMap(
            self.source,
            self.target,
            {
                mu: RationalMatrix(self.target.dim(mu), self.source.dim(mu), entries)
                for mu, entries in blocks.items()
            },
        )


# ---- 不可提升证书 ----


@dataclass
class LiftResult:
    tag: LiftTag
    outcome: SolveOutcome
    matrix: RationalMatrix
    rhs: tuple[Fraction, ...]
    verified: bool
    lift: Optional[ModuleMap] = None
    row_labels: list[str] = field(default_factory=list)

    @property
    def equations(self) -> int:
        return self.matrix.rows

    @property
    def unknowns(self) -> int:
        return self.matrix.cols

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "outcome": self.tag.value,
            "equations": self.equations,
            "unknowns": self.unknowns,
            "verified": self.verified,
            "system": {
                "entries": [[i, j, format_rational(v)] for (i, j), v in sorted(self.matrix.items())],
                "rhs": format_vector(self.rhs),
            },
        }
        if self.tag == LiftTag.INCONSISTENT:
            witness = self.outcome.witness or ()
            data["witness"] = format_vector(witness)
            data["witness_equations"] = [
                {"equation": label, "coefficient": format_coord(c)}
                for label, c in zip(self.row_labels, witness)
                if c
            ]
        else:
            data["solution"] = format_vector(self.outcome.solution or ())
        return data


def verify_serialized_lift(data: dict[str, Any]) -> bool:
    """只用报告里的数据复核解或不相容证书"""
    rows, cols = data["equations"], data["unknowns"]
    system = data["system"]
    matrix = RationalMatrix(
        rows, cols, {(i, j): parse_rational(v) for i, j, v in system["entries"]}
    )
    rhs = [parse_rational(v) for v in system["rhs"]]
    if data["outcome"] == LiftTag.INCONSISTENT.value:
        outcome = SolveOutcome(
            tag=SolveTag.INCONSISTENT, witness=tuple(parse_rational(v) for v in data["witness"])
        )
    else:
        outcome = SolveOutcome(
            tag=SolveTag.SOLUTION, solution=tuple(parse_rational(v) for v in data["solution"])
        )
    return outcome.verify(matrix, rhs)


@dataclass
class NonLiftabilityCertificate:
    full: LiftResult
    g0_restricted: LiftResult
    radical_failures: list[dict] = field(default_factory=list)

    @property
    def certifies_nonprojective(self) -> bool:
        return self.full.tag == LiftTag.INCONSISTENT and self.g0_restricted.tag == LiftTag.LIFTABLE

    def to_dict(self) -> dict[str, Any]:
        return {
            "full_system": self.full.tag.value,
            "g0_system": self.g0_restricted.tag.value,
            "full": self.full.to_dict(),
            "g0": self.g0_restricted.to_dict(),
            "radical_failures_of_g0_lift": self.radical_failures,
        }


def _solve_lift(
    p: TruncatedModule, n: TruncatedModule, pi: ModuleMap, phi: ModuleMap, elements: Sequence[int]
) -> LiftResult:
    system = _MapSystem(p, n)
    system.add_intertwining(elements)
    system.add_factorization(pi, phi)
    matrix = system.matrix()
    rhs = tuple(system.rhs)
    outcome = solve(matrix, rhs)
    verified = outcome.verify(matrix, rhs)
    if not verified:
        raise InternalConsistencyError("lift system outcome failed re-verification")
    logger.debug(f"lift system {matrix.rows}×{matrix.cols}: {outcome.tag.value}")
    if outcome.is_solution:
        return LiftResult(
            tag=LiftTag.LIFTABLE,
            outcome=outcome,
            matrix=matrix,
            rhs=rhs,
            verified=verified,
            lift=system.to_map(outcome.solution),
        )
    return LiftResult(
        tag=LiftTag.INCONSISTENT,
        outcome=outcome,
        matrix=matrix,
        rhs=rhs,
        verified=verified,
        row_labels=system.labels,
    )


def nonliftability_certificate(
    p: TruncatedModule, pi: ModuleMap, phi: ModuleMap
) -> NonLiftabilityCertificate:
    """能否把 φ: P → L 经 π: N → L 提升为 ψ: P → N？

    对全部生成元和只对 g₀ 各解一次；g₀ 层可提升时记录 ψ 在哪些 J 元素上失败。

    Raises:
        DimensionError: 图表不匹配（π 非逐分量满射或 φ 不是模映射）
    """
    n = pi.source
    if phi.source is not p or phi.target is not pi.target:
        raise DimensionError("phi must map P into the target of pi")
    if not pi.is_surjective():
        raise DimensionError("pi is not surjective on every component")
    if phi.intertwining_failures(limit=1):
        raise DimensionError("phi is not a module map")
    a = p.algebra
    full = _solve_lift(p, n, pi, phi, range(a.dim))
    g0 = _solve_lift(p, n, pi, phi, range(a.g0_dim))
    failures: list[dict] = []
    if g0.lift is not None:
        failures = g0.lift.intertwining_failures(elements=list(a.radical_indices))
        if full.tag == LiftTag.INCONSISTENT and not failures:
            raise InternalConsistencyError("g0 lift satisfies every radical constraint yet the full system is inconsistent")
    return NonLiftabilityCertificate(full=full, g0_restricted=g0, radical_failures=failures)


def _relabel(
    source: TruncatedModule, target: TruncatedModule, rename: Callable[[str], Optional[str]]
) -> ModuleMap:
    """按标签对应的坐标映射（rename 返回 None 的基向量映到 0）"""
    blocks = {}
    for mu, labels in source.components.items():
        target_labels = target.components.get(mu, ())
        position = {label: i for i, label in enumerate(target_labels)}
        entries = {}
        for j, label in enumerate(labels):
            new = rename(label)
            if new is None:
                continue
            if new not in position:
                raise DimensionError(f"basis vector {new!r} missing at weight {mu}")
            entries[(position[new], j)] = Fraction(1)
        if entries:
            blocks[mu] = RationalMatrix(len(target_labels), len(labels), entries)
    return ModuleMap(source, target, blocks)


def _copy_rename(keep: Callable[[int], Optional[int]]) -> Callable[[str], Optional[str]]:
    def rename(label: str) -> Optional[str]:
        head, _, rest = label.partition("] ")
        copy = keep(int(head.lstrip("[")))
        if copy is None:
            return None
        return rest if copy < 0 else f"[{copy}] {rest}"

    return rename


def default_central(a: GenReductiveAlgebra) -> int:
    if not a.j1:
        raise NotApplicable("the radical has no central element")
    return a.j1[0]


def jordan_witness(
    a: GenReductiveAlgebra, lam: Weight, g: Any, depth: int, u: Union[int, str, None] = None
) -> NonLiftabilityCertificate:
    """P = M(λ,g)，N = L₁ ⊕ L₂（u·v₁ = g(u)v₁ + v₂），L = L(λ,g) 的不可提升证书"""
    start = time.time()
    g = require_g(a, g)
    r = a.root_system
    if not lam.is_dominant_integral():
        raise NotApplicable(f"{lam} must be dominant integral for the witness")
    x_u = default_central(a) if u is None else a.index(u)
    simple = realize_simple(r, lam)
    n = jordan_sum(a, [simple, simple], g, [[0, 0], [1, 0]], x_u)
    p = build_verma(a, lam, g, depth)
    lower, phi = quotient_with_projection(p, maximal_submodule(p))
    pi = _relabel(n, lower, _copy_rename(lambda c: -1 if c == 0 else None))
    if pi.intertwining_failures(limit=1):
        raise InternalConsistencyError("projection of the Jordan module onto L is not a module map")
    certificate = nonliftability_certificate(p, pi, phi)
    logger.info(
        f"witness λ={lam}: full {certificate.full.tag.value}, g0 {certificate.g0_restricted.tag.value}，"
        f"耗时 {time.time() - start:.2f}s"
    )
    return certificate


# ---- Hom 空间 ----


def module_map_space(
    source: TruncatedModule, target: TruncatedModule, include_radical: bool = True
) -> list[ModuleMap]:
    """窗口内所有模映射 source → target 组成的空间的一组基"""
    a = source.algebra
    system = _MapSystem(source, target)
    system.add_intertwining(range(a.dim if include_radical else a.g0_dim))
    if not system.unknowns:
        return []
    return [system.to_map(v) for v in kernel(system.matrix())]


def hom_dimension(source: TruncatedModule, target: TruncatedModule, include_radical: bool = True) -> int:
    return len(module_map_space(source, target, include_radical))


# ---- Jordan 塔 ----


def tower_summand_weights(a: GenReductiveAlgebra, gamma: Weight, x_u: int, k: int) -> list[Weight]:
    shift = a.weight(x_u)
    weights = [gamma + shift.scale(i) for i in range(k)]
    for w in weights:
        if not w.is_dominant_integral():
            raise NotApplicable(f"tower summand {w} is not dominant integral")
    return weights


def jordan_tower(
    a: GenReductiveAlgebra, gamma: Weight, g: Any, k: int, u: Union[int, str, None] = None
) -> TruncatedModule:
    """T_k：k 个直和项，u 按大小为 k 的 Jordan 块扭曲"""
    x_u = default_central(a) if u is None else a.index(u)
    r = a.root_system
    summands = [realize_simple(r, w) for w in tower_summand_weights(a, gamma, x_u, k)]
    twist = [[int(i == j + 1) for j in range(k)] for i in range(k)]
    return jordan_sum(a, summands, g, twist, x_u)


@dataclass
class TowerLevel:
    k: int
    axioms_pass: bool
    connecting_ok: Optional[bool]
    degree: int
    span_dim: int

    @property
    def passed(self) -> bool:
        return (
            self.axioms_pass
            and self.connecting_ok is not False
            and self.degree == self.k
            and self.span_dim == self.k
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "axioms_pass": self.axioms_pass,
            "connecting_map_ok": self.connecting_ok,
            "nilpotency_degree": self.degree,
            "span_dim": self.span_dim,
            "passed": self.passed,
        }


def _w_chain(t: TruncatedModule, x_u: int, c: Fraction, k: int) -> int:
    """w₁ = 第一个直和项的顶向量，w_{j+1} = (u − c)·w_j；返回 span 的维数"""
    a = t.algebra
    mu, v = t.generators[0]
    vectors: list[tuple[Weight, Vector]] = [(mu, v)]
    for _ in range(k - 1):
        nu, image = apply(t, [x_u], vectors[-1])
        if a.weight(x_u).is_zero():
            image = tuple(p - c * q for p, q in zip(image, vectors[-1][1]))
        vectors.append((nu, image))
    spaces: dict[Weight, Subspace] = {}
    for nu, w in vectors:
        grown = (spaces.get(nu) or Subspace(t.dim(nu))).with_vector(w)
        if grown is not None:
            spaces[nu] = grown
    return sum(s.dim for s in spaces.values())


def jordan_tower_growth(
    a: GenReductiveAlgebra, gamma: Weight, g: Any, k_max: int, u: Union[int, str, None] = None
) -> list[TowerLevel]:
    """k = 1..k_max：T_k 满足 O' 公理、连接满射 T_k → T_{k−1} 是模映射、
    (u − g(u)) 的幂零度为 k、w₁…w_k 线性无关
    """
    g = require_g(a, g)
    x_u = default_central(a) if u is None else a.index(u)
    c = g(x_u)
    levels: list[TowerLevel] = []
    previous: Optional[TruncatedModule] = None
    for k in range(1, k_max + 1):
        tower = jordan_tower(a, gamma, g, k, x_u)
        connecting: Optional[bool] = None
        if previous is not None:
            last = k - 1
            epi = _relabel(tower, previous, _copy_rename(lambda copy: None if copy == last else copy))
            connecting = not epi.intertwining_failures(limit=1) and epi.is_surjective()
        levels.append(
            TowerLevel(
                k=k,
                axioms_pass=check_oprime_axioms(tower).passed,
                connecting_ok=connecting,
                degree=shifted_nilpotency_degree(tower, x_u, c),
                span_dim=_w_chain(tower, x_u, c, k),
            )
        )
        previous = tower
    return levels


# ---- sl₂ 块上的互反律 ----


@dataclass
class ReciprocityReport:
    block: list[Weight]
    left: list[list[int]]
    right: list[list[int]]
    generator_independence: bool
    window: dict[str, Any]

    @property
    def holds(self) -> bool:
        return self.left == self.right

    def to_dict(self) -> dict[str, Any]:
        return {
            "block": [w.to_json() for w in self.block],
            "rows": "mu",
            "columns": "lambda",
            "P_side": self.left,
            "L_side": self.right,
            "equal": self.holds,
            "generator_independence": self.generator_independence,
            "window": self.window,
        }


def reciprocity_check_sl2(
    a: GenReductiveAlgebra, g: Any, lam: Weight, depth: int
) -> ReciprocityReport:
    """(P(λ,g):M(μ,g)) = [M(μ,g):L(λ,g)] 对块 {λ⁺, s·λ⁺} 逐项比较

    P(λ⁺,g) = M(λ⁺,g)，P(s·λ⁺,g) 由 M(−1,g) ⊗ L(λ⁺+1) 实现，只统计块内的 Verma 因子。

    Raises:
        UnsupportedRank: 秩不是 1
        NotApplicable: J₂ ≠ 0
        SingularBlockUnsupported: λ = −1
    """
    r = a.root_system
    if r.rank != 1:
        raise UnsupportedRank("reciprocity is checked on sl2 blocks only")
    if a.j2:
        raise NotApplicable("reciprocity check needs J2 = 0 (central radical)")
    if not lam.is_integral():
        raise NonIntegralError(f"{lam} is not integral")
    if lam[0] == -1:
        raise SingularBlockUnsupported("the block of -rho is singular")
    g = require_g(a, g)
    n = int(lam[0]) if lam[0] >= 0 else int(-lam[0] - 2)
    if depth < n + 2:
        raise DepthLimitError(f"depth {depth} is too small for the block of {lam}; need at least {n + 2}")
    top, low = Weight.of(n), Weight.of(-n - 2)
    block = [top, low]

    projectives = {
        top: build_verma(a, top, g, depth),
        low: tensor_with_simple(build_verma(a, Weight.of(-1), g, depth), realize_simple(r, Weight.of(n + 1))),
    }
    filtrations = {w: standard_filtration(m) for w, m in projectives.items()}
    composition = {mu: composition_multiplicities_sl2(a, mu, g, depth) for mu in block}

    left = [[filtrations[col].multiplicity(row) for col in block] for row in block]
    right = [[composition[row].get(col, 0) for col in block] for row in block]
    independent = all(not m.radical_action_defect(g) for m in projectives.values())
    return ReciprocityReport(
        block=block,
        left=left,
        right=right,
        generator_independence=independent,
        window={"depth": depth},
    )
