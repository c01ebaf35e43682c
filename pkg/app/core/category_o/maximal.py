"""极大向量、奇异向量公式、Verma 嵌入、极大子模与秩 1 合成重数"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Optional

from app.core.entities import WindowStatus
from app.core.exactla import RationalMatrix, Subspace, Vector, kernel, vstack
from app.core.exceptions import (
    InternalConsistencyError,
    InvalidFunctional,
    NonIntegralError,
    NotApplicable,
    TruncationError,
    UnsupportedRank,
)
from app.core.glie import GenReductiveAlgebra, GFunctional, require_g
from app.core.pbwmod import (
    ModuleMap,
    TruncatedModule,
    apply,
    build_verma,
    quotient,
    submodule_from_spaces,
    submodule_generated,
    verma_to,
)
from app.core.pbwmod.verma import check_depth
from app.core.rootsys import Weight, strongly_linked
from app.core.utils.logger import setup_logger
from app.core.utils.rational import format_coord

logger = setup_logger("category_o")


@dataclass
class MaximalVectors:
    weight: Weight
    basis: list[Vector]
    labels: list[str] = field(default_factory=list)
    # 检查 u·v = g(u)v 时使用的 g；只要求 n₀ 零化时为 None
    g_observed: Optional[GFunctional] = None

    @property
    def dim(self) -> int:
        return len(self.basis)


def _conditions(a: GenReductiveAlgebra, include_radical: bool, central_only: bool) -> list[int]:
    elements = [a.e_simple(i) for i in range(a.rank)]
    if include_radical:
        elements += list(a.j1 if central_only else a.radical_indices)
    return elements


def has_headroom(
    m: TruncatedModule, mu: Weight, include_radical: bool = True, central_only: bool = False
) -> bool:
    """检查 μ 处极大向量所需的全部作用目标都在窗口内

    central_only=True 时根基部分只看 J₁。
    """
    a = m.algebra
    if m.window_status(mu) == WindowStatus.OUTSIDE:
        return False
    return all(
        m.window_status(mu + a.weight(x)) != WindowStatus.OUTSIDE
        for x in _conditions(a, include_radical, central_only)
    )


def find_maximal_vectors(
    m: TruncatedModule,
    mu: Weight,
    g: Optional[GFunctional] = None,
    include_radical: bool = True,
    central_only: bool = False,
) -> MaximalVectors:
    """{v ∈ M_μ : eᵢv = 0，u·v = g(u)v（u ∈ J）} 的一组基

    include_radical=False 时只要求被 n₀ 零化（g₀ 层面的极大向量）；
    central_only=True 时根基条件只取 J₁，J₂ 的条件由调用方保证。

    Raises:
        TruncationError: μ 或它上方需要的权不在窗口内
    """
    a = m.algebra
    if not has_headroom(m, mu, include_radical, central_only):
        raise TruncationError(
            f"no headroom above weight {mu} in the window", {"weight": mu.to_json()}
        )
    g = g or m.g_label
    if include_radical and g is None and a.radical_dim:
        raise InvalidFunctional("module carries no functional g")
    observed = g if include_radical else None
    d = m.dim(mu)
    if d == 0:
        return MaximalVectors(weight=mu, basis=[], g_observed=observed)

    blocks = [m.action_block(a.e_simple(i), mu) for i in range(a.rank)]
    if include_radical:
        for u in (a.j1 if central_only else a.radical_indices):
            block = m.action_block(u, mu)
            if a.weight(u).is_zero():
                block = block - RationalMatrix.scalar(d, g(u))
            blocks.append(block)
    basis = kernel(vstack(blocks, cols=d))
    return MaximalVectors(
        weight=mu,
        basis=basis,
        labels=[m.describe_vector(mu, v) for v in basis],
        g_observed=observed,
    )


def verma_maximal_vectors(
    verma: TruncatedModule, mu: Weight, g: Optional[GFunctional] = None
) -> MaximalVectors:
    """Verma 模 μ 处的极大向量

    g ∈ G 时 J₂ 在 M(λ, g) 上作用为零，J₂ 的条件自动成立。窗口底部 J₂ 的
    作用目标越界时只检查 eᵢ 与 J₁；这两者也越界才抛 TruncationError。
    """
    if has_headroom(verma, mu):
        return find_maximal_vectors(verma, mu, g)
    logger.debug(f"权 {mu} 处 J₂ 的目标越界，只检查 eᵢ 与 J₁")
    return find_maximal_vectors(verma, mu, g, central_only=True)


# ---- 奇异向量公式 ----


@dataclass
class SingularCheck:
    simple_index: int
    n: int
    vector: str
    checks: list[dict[str, Any]]

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)


def singular_vector_formula_check(
    a: GenReductiveAlgebra, lam: Weight, g: Any, i: int
) -> SingularCheck:
    """n = ⟨λ, αᵢ∨⟩ + 1 为正整数时验证 fᵢⁿ w 是极大向量，并逐项检查

        u fᵢⁿ w = Σⱼ C(n,j)(−1)ʲ g((ad fᵢ)ʲ u) fᵢ^{n−j} w

    Raises:
        NotApplicable: n 不是正整数
    """
    g = require_g(a, g)
    r = a.root_system
    r.check_weight(lam)
    n_value = lam[i] + 1
    if n_value.denominator != 1 or n_value <= 0:
        raise NotApplicable(
            f"<lambda, alpha_{i + 1}^vee> + 1 = {n_value} is not a positive integer"
        )
    n = int(n_value)
    zero = Weight.zero(r.rank)
    radical_drop = max(
        (sum(d) for u in a.radical_indices if (d := r.lattice_drop(zero, a.weight(u))) is not None),
        default=0,
    )
    verma = build_verma(a, lam, g, check_depth(n + radical_drop + 1))
    f_i = a.f_simple(i)
    top = (lam, (Fraction(1),))
    mu, fn_w = apply(verma, [f_i] * n, top)

    checks: list[dict[str, Any]] = []
    for k in range(r.rank):
        _, image = apply(verma, [a.e_simple(k)], (mu, fn_w))
        checks.append(
            {"name": f"e{k + 1} f^n w = 0", "passed": all(c == 0 for c in image)}
        )

    for u in a.radical_indices:
        target, lhs = apply(verma, [u], (mu, fn_w))
        expected = [Fraction(0)] * len(lhs)
        terms = []
        consistent = True
        for j in range(n + 1):
            coefficient = comb(n, j) * (-1) ** j * g.evaluate(a.ad_power(f_i, u, j))
            term_weight, term_vector = apply(verma, [f_i] * (n - j), top)
            terms.append({"j": j, "coefficient": format_coord(Fraction(coefficient))})
            if not coefficient:
                continue
            if term_weight != target:
                consistent = False
                continue
            expected = [x + coefficient * y for x, y in zip(expected, term_vector)]
        checks.append(
            {
                "name": f"binomial identity for {a.labels[u]}",
                "passed": consistent and list(lhs) == expected,
                "terms": terms,
            }
        )
        if a.weight(u).is_zero():
            checks.append(
                {
                    "name": f"{a.labels[u]} acts by g on f^n w",
                    "passed": list(lhs) == [g(u) * c for c in fn_w],
                }
            )
        else:
            checks.append(
                {"name": f"{a.labels[u]} f^n w = 0", "passed": all(c == 0 for c in lhs)}
            )

    return SingularCheck(
        simple_index=i,
        n=n,
        vector=verma.describe_vector(mu, fn_w),
        checks=checks,
    )


# ---- Verma 嵌入 ----


def embed_verma(
    a: GenReductiveAlgebra, mu: Weight, lam: Weight, g: Any, depth: int
) -> Optional[ModuleMap]:
    """若 μ ↑ λ，构造单射 M(μ, g) → M(λ, g)；不强连接时返回 None

    只用单根的链直接按 fᵢ 的幂构造像；否则在 M(λ, g)_μ 里找极大向量。

    Raises:
        NonIntegralError: λ − μ 不在整根格中
        TruncationError: λ − μ 的高度超过 depth
    """
    g = require_g(a, g)
    r = a.root_system
    chain = strongly_linked(r, mu, lam)
    if chain is None:
        return None
    drop = r.lattice_drop(lam, mu)
    height = sum(drop)
    if height > depth:
        raise TruncationError(
            f"ht(lambda - mu) = {height} exceeds depth {depth}", {"height": height, "depth": depth}
        )
    target = build_verma(a, lam, g, depth)
    if chain.length == 0:
        identity = {m: RationalMatrix.identity(target.dim(m)) for m in target.components}
        return ModuleMap(target, target, identity)

    if chain.uses_only_simple_roots():
        current: tuple[Weight, Vector] = (lam, (Fraction(1),))
        for beta, _ in chain.steps:
            i = beta.index(1)
            power = r.pairing(current[0] + r.rho, beta)
            current = apply(target, [a.f_simple(i)] * int(power), current)
        vector = current[1]
    else:
        found = verma_maximal_vectors(target, mu, g)
        if not found.basis:
            raise InternalConsistencyError(f"no maximal vector of weight {mu} in M({lam})")
        vector = found.basis[0]

    phi = verma_to(target, mu, vector, g, depth - height)
    if not phi.is_injective():
        raise InternalConsistencyError(f"map M({mu}) -> M({lam}) is not injective in the window")
    logger.debug(f"M{mu} ↪ M{lam}，像的生成元 {target.describe_vector(mu, vector)}")
    return phi


# ---- 极大子模与不可约商 ----


def maximal_submodule(m: TruncatedModule, include_radical: bool = True) -> TruncatedModule:
    """单顶权模里不含顶向量的最大子模 N

    N = {v : (U(n)·v) 在顶权处为零}，n = n₀ ⊕ J；取满足
    x·N_μ ⊆ N_{μ+wt x}（x ∈ {eᵢ} ∪ J）的最大空间族（从全空间向下迭代）。
    include_radical=False 时只用 eᵢ，得到 g₀ 层面的最大子模。
    """
    a = m.algebra
    if len(m.top_weights) != 1:
        raise NotApplicable("maximal submodule needs a single top weight")
    top = m.top_weights[0]
    elements = [a.e_simple(i) for i in range(a.rank)]
    if include_radical:
        elements += list(a.radical_indices)

    spaces: dict[Weight, Subspace] = {
        mu: (Subspace(m.dim(mu)) if mu == top else Subspace.whole(m.dim(mu))) for mu in m.components
    }
    changed = True
    while changed:
        changed = False
        for mu in m.sorted_weights():
            current = spaces[mu]
            if not current.dim:
                continue
            constraints = []
            for x in elements:
                target = mu + a.weight(x)
                if m.window_status(target) == WindowStatus.OUTSIDE or m.dim(target) == 0:
                    continue
                allowed = spaces[target]
                block = m.action_block(x, mu)
                images = [block.apply(v) for v in current.basis]
                rows = [allowed.quotient_coordinates(img) for img in images]
                if allowed.codim:
                    constraints.append(RationalMatrix.from_columns(rows, allowed.codim))
            if not constraints:
                continue
            coefficient_sets = kernel(vstack(constraints, cols=current.dim))
            if len(coefficient_sets) == current.dim:
                continue
            vectors = []
            for coeffs in coefficient_sets:
                v = [Fraction(0)] * m.dim(mu)
                for c, row in zip(coeffs, current.basis):
                    if c:
                        v = [p + c * q for p, q in zip(v, row)]
                vectors.append(tuple(v))
            spaces[mu] = Subspace.span(m.dim(mu), vectors)
            changed = True

    nonzero = {mu: s for mu, s in spaces.items() if s.dim}
    sub, _ = submodule_from_spaces(m, nonzero)
    return sub


def irreducible_quotient(
    a: GenReductiveAlgebra, lam: Weight, g: Any, depth: int
) -> TruncatedModule:
    """L(λ, g) = M(λ, g) / N 在窗口内的部分"""
    verma = build_verma(a, lam, g, depth)
    result = quotient(verma, maximal_submodule(verma))
    return result


@dataclass
class IrreducibilityReport:
    weight: Weight
    dims: dict[Weight, int]
    radical_over_g: int
    radical_over_g0: int

    @property
    def irreducible(self) -> bool:
        return self.radical_over_g == 0 and self.radical_over_g0 == 0


def irreducibility_check(
    a: GenReductiveAlgebra, lam: Weight, g: Any, depth: int
) -> IrreducibilityReport:
    """L(λ, g) 在窗口内的 g-根与 g₀-根都应为零"""
    simple = irreducible_quotient(a, lam, g, depth)
    over_g = maximal_submodule(simple, include_radical=True)
    over_g0 = maximal_submodule(simple, include_radical=False)
    return IrreducibilityReport(
        weight=lam,
        dims=simple.character(),
        radical_over_g=over_g.total_dimension(),
        radical_over_g0=over_g0.total_dimension(),
    )


# ---- 秩 1 合成重数 ----


def _simple_character(
    a: GenReductiveAlgebra, mu: Weight, g: GFunctional, depth: int
) -> dict[Weight, int]:
    """L(μ, g) 在深度 depth 内的特征：M(μ) 除以全部极大向量生成的子模"""
    verma = build_verma(a, mu, g, depth)
    vectors = []
    for nu in verma.sorted_weights():
        if nu == mu:
            continue
        for v in verma_maximal_vectors(verma, nu, g).basis:
            vectors.append((nu, v))
    if not vectors:
        return verma.character()
    return quotient(verma, submodule_generated(verma, vectors)).character()


def composition_multiplicities_sl2(
    a: GenReductiveAlgebra, lam: Weight, g: Any, depth: int
) -> dict[Weight, int]:
    """[M(λ, g) : L(μ, g)]，逐个剥去最高的剩余权（特征相减）

    Raises:
        UnsupportedRank: 秩不是 1
        NonIntegralError: λ 不是整权
    """
    r = a.root_system
    if r.rank != 1:
        raise UnsupportedRank("composition multiplicities are implemented for rank 1 only")
    if not lam.is_integral():
        raise NonIntegralError(f"{lam} is not integral")
    g = require_g(a, g)
    verma = build_verma(a, lam, g, depth)
    remaining = verma.character()
    alpha = r.root_weight(r.simple_root(0))
    result: dict[Weight, int] = {}
    for k in range(depth + 1):
        mu = lam - alpha.scale(k)
        c = remaining.get(mu, 0)
        if c == 0:
            continue
        if c < 0:
            raise InternalConsistencyError(f"negative remaining multiplicity at {mu}")
        result[mu] = c
        for nu, d in _simple_character(a, mu, g, depth - k).items():
            remaining[nu] = remaining.get(nu, 0) - c * d
    if any(v < 0 for v in remaining.values()):
        raise InternalConsistencyError("character subtraction went negative")
    return result


# ---- 强连接的完备性 ----


@dataclass
class LinkageCompleteness:
    weight: Weight
    depth: int
    maximal_weights: list[Weight]
    linked_weights: list[Weight]
    unchecked: list[Weight]
    failed_embeddings: list[Weight]

    @property
    def passed(self) -> bool:
        return self.maximal_weights == self.linked_weights and not self.failed_embeddings

    def to_dict(self) -> dict[str, Any]:
        return {
            "lambda": self.weight.to_json(),
            "depth": self.depth,
            "maximal_weights": [w.to_json() for w in self.maximal_weights],
            "strongly_linked_weights": [w.to_json() for w in self.linked_weights],
            "unchecked_weights": [w.to_json() for w in self.unchecked],
            "failed_embeddings": [w.to_json() for w in self.failed_embeddings],
            "passed": self.passed,
        }


def linkage_completeness(
    a: GenReductiveAlgebra, lam: Weight, g: Any, depth: int
) -> LinkageCompleteness:
    """在 M(λ, g) 的每个可检查的权上穷举极大向量，与强连接的权逐一比较；
    每个强连接的 μ 还要给出嵌入，且像的生成元是极大向量
    """
    g = require_g(a, g)
    r = a.root_system
    verma = build_verma(a, lam, g, depth)
    found: list[Weight] = []
    linked: list[Weight] = []
    unchecked: list[Weight] = []
    failed: list[Weight] = []
    for mu in verma.sorted_weights():
        if mu == lam:
            continue
        try:
            maximal = verma_maximal_vectors(verma, mu, g)
        except TruncationError:
            unchecked.append(mu)
            continue
        if maximal.basis:
            found.append(mu)
        if strongly_linked(r, mu, lam) is None:
            continue
        linked.append(mu)
        phi = embed_verma(a, mu, lam, g, depth)
        image = phi.apply(mu, (Fraction(1),)) if phi is not None else None
        if image is None or not Subspace.span(verma.dim(mu), maximal.basis).contains(image):
            failed.append(mu)
    report = LinkageCompleteness(
        weight=lam,
        depth=depth,
        maximal_weights=found,
        linked_weights=linked,
        unchecked=unchecked,
        failed_embeddings=failed,
    )
    if not report.passed:
        logger.warning(f"strong linkage and maximal vectors disagree below {lam}: {report.to_dict()}")
    return report
