"""模的构造：作用字、子模与商、与有限维单模的张量积、Jordan 型扩张、直和"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import TYPE_CHECKING, Optional, Sequence, Union

from app.core.entities import WindowStatus
from app.core.exactla import RationalMatrix, Subspace, Vector, is_zero_vector, solve
from app.core.exceptions import (
    DimensionError,
    InconsistentAction,
    NotApplicable,
    TruncationError,
    UnsupportedTensor,
)
from app.core.rootsys import Weight
from app.core.utils.logger import setup_logger

from .module import ModuleMap, TruncatedModule, WeightVector

if TYPE_CHECKING:
    from app.core.glie import GenReductiveAlgebra, GFunctional, SimpleRealization

logger = setup_logger("pbwmod")


def apply(
    m: TruncatedModule, word: Sequence[Union[int, str]], v: WeightVector
) -> WeightVector:
    """把字 x₁x₂…x_k 作用到 v 上（最右边的 x_k 先作用）

    Raises:
        TruncationError: 中间某一步落到窗口外
    """
    a = m.algebra
    mu, vector = v
    vector = tuple(Fraction(c) for c in vector)
    if len(vector) != m.dim(mu):
        raise DimensionError(f"vector of length {len(vector)} at weight {mu} of dimension {m.dim(mu)}")
    for ref in reversed(list(word)):
        x = a.index(ref)
        target = mu + a.weight(x)
        if m.window_status(target) == WindowStatus.OUTSIDE:
            raise TruncationError(
                f"applying {a.labels[x]} at weight {mu} leaves the window",
                {"source": mu.to_json(), "target": target.to_json()},
            )
        vector = m.action_block(x, mu).apply(vector) if m.dim(target) else ()
        mu = target
    return mu, vector


# ---- 子模与商 ----


def _closure(m: TruncatedModule, vectors: Sequence[WeightVector], elements: Sequence[int]) -> dict[Weight, Subspace]:
    """vectors 在 elements 生成的作用下的闭包（只在窗口内跟踪）"""
    a = m.algebra
    spaces: dict[Weight, Subspace] = {}
    queue: deque[WeightVector] = deque()

    def add(mu: Weight, v: Vector) -> None:
        if not v or is_zero_vector(v):
            return
        current = spaces.get(mu) or Subspace(m.dim(mu))
        grown = current.with_vector(v)
        if grown is not None:
            spaces[mu] = grown
            queue.append((mu, v))

    for mu, v in vectors:
        if m.window_status(mu) != WindowStatus.INSIDE:
            raise TruncationError(f"generator at weight {mu} is not inside the window")
        if len(v) != m.dim(mu):
            raise DimensionError(f"vector of length {len(v)} at weight {mu} of dimension {m.dim(mu)}")
        add(mu, tuple(Fraction(c) for c in v))

    while queue:
        mu, v = queue.popleft()
        for x in elements:
            target = mu + a.weight(x)
            if m.dim(target) == 0 or m.window_status(target) != WindowStatus.INSIDE:
                continue
            add(target, m.action_block(x, mu).apply(v))
    return spaces


def span_closure(
    m: TruncatedModule, vectors: Sequence[WeightVector], elements: Optional[Sequence[int]] = None
) -> dict[Weight, Subspace]:
    """按权给出 vectors 在 elements（缺省为全部基）作用下生成的子空间"""
    elements = list(range(m.algebra.dim)) if elements is None else list(elements)
    return _closure(m, vectors, elements)


def _submodule_from_spaces(
    m: TruncatedModule, spaces: dict[Weight, Subspace], generators: Sequence[WeightVector], name: str
) -> tuple[TruncatedModule, ModuleMap]:
    from app.core.glie import format_linear

    a = m.algebra
    components = {}
    for mu in m.sorted_weights():
        space = spaces.get(mu)
        if space is not None and space.dim:
            parent = m.components[mu]
            components[mu] = tuple(format_linear(parent, row) for row in space.basis)

    actions: dict[int, dict[Weight, RationalMatrix]] = {}
    for x in range(a.dim):
        per_weight = {}
        for mu in components:
            target = mu + a.weight(x)
            if target not in components or m.window_status(target) != WindowStatus.INSIDE:
                continue
            parent_block = m.action_block(x, mu)
            columns = [spaces[target].coordinates(parent_block.apply(row)) for row in spaces[mu].basis]
            block = RationalMatrix.from_columns(columns, len(components[target]))
            if not block.is_zero():
                per_weight[mu] = block
        if per_weight:
            actions[x] = per_weight

    gens = tuple(
        (mu, spaces[mu].coordinates(v))
        for mu, v in generators
        if mu in spaces and not is_zero_vector(v)
    )
    sub = TruncatedModule(
        algebra=a,
        top_weights=m.top_weights,
        depth=m.depth,
        components=components,
        actions=actions,
        g_label=m.g_label,
        generators=gens,
        name=name,
    )
    inclusion = ModuleMap(sub, m, {mu: spaces[mu].as_columns() for mu in components})
    sub.metadata["inclusion"] = inclusion
    return sub, inclusion


def submodule_with_inclusion(
    m: TruncatedModule, vectors: Sequence[WeightVector]
) -> tuple[TruncatedModule, ModuleMap]:
    """U(g)·vectors 在窗口内的部分，以及它到 m 的包含映射"""
    vectors = [(mu, tuple(Fraction(c) for c in v)) for mu, v in vectors]
    spaces = span_closure(m, vectors)
    return _submodule_from_spaces(m, spaces, vectors, name=f"<{len(vectors)} generators> in {m.name}")


def submodule_generated(m: TruncatedModule, vectors: Sequence[WeightVector]) -> TruncatedModule:
    return submodule_with_inclusion(m, vectors)[0]


def submodule_from_spaces(
    m: TruncatedModule, spaces: dict[Weight, Subspace]
) -> tuple[TruncatedModule, ModuleMap]:
    """已知按权给出的子模（调用方保证在作用下封闭）"""
    return _submodule_from_spaces(m, spaces, [], name=f"submodule of {m.name}")


def _spaces_of(m: TruncatedModule, sub: TruncatedModule) -> dict[Weight, Subspace]:
    inclusion = sub.metadata.get("inclusion")
    if not isinstance(inclusion, ModuleMap) or inclusion.target is not m:
        raise DimensionError("quotient needs a submodule constructed inside the same module")
    return {mu: Subspace.span(m.dim(mu), inclusion.block(mu).columns()) for mu in sub.components}


def quotient_with_projection(
    m: TruncatedModule, sub: TruncatedModule
) -> tuple[TruncatedModule, ModuleMap]:
    """m / sub，商的基是 RREF 的非主元坐标；结果重新做括号检查"""
    a = m.algebra
    spaces = _spaces_of(m, sub)
    kept: dict[Weight, tuple[int, ...]] = {}
    components = {}
    monomials = {} if m.monomials is not None else None
    for mu in m.sorted_weights():
        space = spaces.get(mu) or Subspace(m.dim(mu))
        keep = space.complement_indices()
        if not keep:
            continue
        kept[mu] = keep
        components[mu] = tuple(m.components[mu][j] for j in keep)
        if monomials is not None:
            monomials[mu] = tuple(m.monomials[mu][j] for j in keep)

    def project(mu: Weight, v: Sequence[Fraction]) -> Vector:
        space = spaces.get(mu)
        if space is None:
            return tuple(v[j] for j in kept[mu])
        return space.quotient_coordinates(v)

    actions: dict[int, dict[Weight, RationalMatrix]] = {}
    for x in range(a.dim):
        per_weight = {}
        for mu, keep in kept.items():
            target = mu + a.weight(x)
            if target not in kept or m.window_status(target) != WindowStatus.INSIDE:
                continue
            parent_block = m.action_block(x, mu)
            columns = [project(target, parent_block.column(j)) for j in keep]
            block = RationalMatrix.from_columns(columns, len(kept[target]))
            if not block.is_zero():
                per_weight[mu] = block
        if per_weight:
            actions[x] = per_weight

    gens = []
    for mu, v in m.generators:
        if mu in kept:
            image = project(mu, v)
            if not is_zero_vector(image):
                gens.append((mu, image))

    q = TruncatedModule(
        algebra=a,
        top_weights=m.top_weights,
        depth=m.depth,
        components=components,
        actions=actions,
        g_label=m.g_label,
        generators=tuple(gens),
        monomials=monomials,
        name=f"{m.name}/{sub.name}",
    )
    q.validate()
    blocks = {}
    for mu, keep in kept.items():
        n = m.dim(mu)
        columns = [project(mu, tuple(Fraction(int(i == j)) for i in range(n))) for j in range(n)]
        blocks[mu] = RationalMatrix.from_columns(columns, len(keep))
    return q, ModuleMap(m, q, blocks)


def quotient(m: TruncatedModule, sub: TruncatedModule) -> TruncatedModule:
    return quotient_with_projection(m, sub)[0]


# ---- 张量积 ----


def tensor_with_simple(m: TruncatedModule, s: "SimpleRealization") -> TruncatedModule:
    """m ⊗ L(ν)，L(ν) 是有限维 g₀-模，J 只作用在第一个因子上

    新窗口：顶权平移 ν 的最高权，深度沿用 m 的深度。

    Raises:
        UnsupportedTensor: J₂ 在 m 上有非零作用
    """
    a = m.algebra
    for u in a.j2:
        for mu, block in m.actions.get(u, {}).items():
            if not block.is_zero():
                raise UnsupportedTensor(
                    f"{a.labels[u]} acts nontrivially on {m.name}; tensoring needs J2 to act by zero",
                    {"element": a.labels[u], "weight": mu.to_json()},
                )

    nu_top = s.highest_weight
    tops = tuple(t + nu_top for t in m.top_weights)
    product = TruncatedModule(
        algebra=a, top_weights=tops, depth=m.depth, components={}, actions={}, g_label=m.g_label
    )

    # κ 的基：按 s 的基向量 b 分块，块内是 m 在 κ − wt(b) 的基
    layout: dict[Weight, list[tuple[int, int, int]]] = {}
    candidates = {mu + nu for mu in m.components for nu in set(s.weights)}
    for kappa in sorted(candidates):
        if product.window_status(kappa) != WindowStatus.INSIDE:
            continue
        blocks = []
        offset = 0
        for b, nu in enumerate(s.weights):
            d = m.dim(kappa - nu)
            if d:
                blocks.append((b, offset, d))
                offset += d
        if offset:
            layout[kappa] = blocks

    components = {
        kappa: tuple(
            f"{label} ⊗ {s.labels[b]}"
            for b, _, _ in blocks
            for label in m.components[kappa - s.weights[b]]
        )
        for kappa, blocks in layout.items()
    }
    block_at = {
        kappa: {b: (offset, d) for b, offset, d in blocks} for kappa, blocks in layout.items()
    }

    actions: dict[int, dict[Weight, RationalMatrix]] = {}
    for x in range(a.dim):
        shift = a.weight(x)
        per_weight = {}
        s_action = s.action(x) if not a.is_radical(x) else None
        for kappa, blocks in layout.items():
            target = kappa + shift
            if target not in layout:
                continue
            entries: dict[tuple[int, int], Fraction] = {}
            for b, offset, d in blocks:
                mu = kappa - s.weights[b]
                # (x·m_i) ⊗ s_b
                if m.dim(mu + shift):
                    t_offset, _ = block_at[target][b]
                    for (i, j), c in m.action_block(x, mu).items():
                        entries[(t_offset + i, offset + j)] = entries.get((t_offset + i, offset + j), 0) + c
                # m_i ⊗ (x·s_b)
                if s_action is not None:
                    for c_idx in range(s.dim):
                        coeff = s_action.get(c_idx, b)
                        if not coeff:
                            continue
                        t_offset, _ = block_at[target][c_idx]
                        for i in range(d):
                            key = (t_offset + i, offset + i)
                            entries[key] = entries.get(key, 0) + coeff
            block = RationalMatrix(len(components[target]), len(components[kappa]), entries)
            if not block.is_zero():
                per_weight[kappa] = block
        if per_weight:
            actions[x] = per_weight

    generators = []
    for mu, v in m.generators:
        for b, nu in enumerate(s.weights):
            kappa = mu + nu
            if kappa not in layout:
                continue
            offset, d = block_at[kappa][b]
            vector = [Fraction(0)] * len(components[kappa])
            vector[offset : offset + d] = v
            generators.append((kappa, tuple(vector)))

    result = TruncatedModule(
        algebra=a,
        top_weights=tops,
        depth=m.depth,
        components=components,
        actions=actions,
        g_label=m.g_label,
        generators=tuple(generators),
        name=f"{m.name} ⊗ L({nu_top})",
    )
    result.validate()
    return result


# ---- 直和 ----


def direct_sum(modules: Sequence[TruncatedModule]) -> TruncatedModule:
    """有限个模的直和；窗口取各顶权之并与最小深度"""
    if not modules:
        raise DimensionError("direct sum of no modules")
    a = modules[0].algebra
    g = modules[0].g_label
    for m in modules[1:]:
        if m.algebra is not a:
            raise DimensionError("direct summands live over different algebras")
        if m.g_label != g:
            raise DimensionError("direct summands carry different functionals")
    tops = tuple(sorted({t for m in modules for t in m.top_weights}, reverse=True))
    depth = min(m.depth for m in modules)
    shell = TruncatedModule(algebra=a, top_weights=tops, depth=depth, components={}, actions={})

    weights = sorted(
        {mu for m in modules for mu in m.components if shell.window_status(mu) == WindowStatus.INSIDE}
    )
    offsets: dict[Weight, list[int]] = {}
    components = {}
    for mu in weights:
        labels: list[str] = []
        offsets[mu] = []
        for k, m in enumerate(modules):
            offsets[mu].append(len(labels))
            labels.extend(f"[{k}] {label}" for label in m.components.get(mu, ()))
        components[mu] = tuple(labels)

    actions: dict[int, dict[Weight, RationalMatrix]] = {}
    for x in range(a.dim):
        per_weight = {}
        for mu in weights:
            target = mu + a.weight(x)
            if target not in components:
                continue
            entries = {}
            for k, m in enumerate(modules):
                if not m.dim(mu) or not m.dim(target):
                    continue
                for (i, j), c in m.action_block(x, mu).items():
                    entries[(offsets[target][k] + i, offsets[mu][k] + j)] = c
            if entries:
                per_weight[mu] = RationalMatrix(len(components[target]), len(components[mu]), entries)
        if per_weight:
            actions[x] = per_weight

    generators = []
    for k, m in enumerate(modules):
        for mu, v in m.generators:
            if mu not in components:
                continue
            vector = [Fraction(0)] * len(components[mu])
            vector[offsets[mu][k] : offsets[mu][k] + len(v)] = v
            generators.append((mu, tuple(vector)))

    result = TruncatedModule(
        algebra=a,
        top_weights=tops,
        depth=depth,
        components=components,
        actions=actions,
        g_label=g,
        generators=tuple(generators),
        name=" ⊕ ".join(m.name for m in modules),
    )
    result.metadata["summand_offsets"] = offsets
    result.validate()
    return result


# ---- Jordan 型扩张 ----


def _strictly_triangular(twist: Sequence[Sequence[Fraction]]) -> bool:
    k = len(twist)
    lower = all(not twist[i][j] for i in range(k) for j in range(k) if j >= i)
    upper = all(not twist[i][j] for i in range(k) for j in range(k) if j <= i)
    return lower or upper


def _transport(
    a: "GenReductiveAlgebra", source: "SimpleRealization", target: "SimpleRealization"
) -> RationalMatrix:
    """L(γ_j) → L(γ_i)：X·v_j ↦ X·v_i（X 取基向量对应的 PBW 单项式）"""
    columns = []
    top = tuple(Fraction(int(k == 0)) for k in range(target.dim))
    for index in range(source.dim):
        columns.append(target.apply_word(source.f_word(index, a), top))
    return RationalMatrix.from_columns(columns, target.dim)


def jordan_sum(
    a: "GenReductiveAlgebra",
    summands: Sequence["SimpleRealization"],
    g: Union["GFunctional", Sequence, None],
    twist: Sequence[Sequence],
    u: Union[int, str],
) -> TruncatedModule:
    """⊕ₖ L(γₖ)，g₀ 逐块作用，J 除 u 外按 g 作用，u 带扭曲

    u·v_j = g(u)·v_j + Σᵢ twist[i][j]·v_i（要求 γᵢ = γⱼ + wt(u)），
    并沿 X·v_j ↦ X·v_i 延拓到整个直和项。u 所在直和项的其他基元素通过
    与 eᵢ 的括号逐权求出。

    Raises:
        DimensionError: twist 的形状不对
        NotApplicable: twist 不是严格三角的，或 u 不是最低权向量，或权不匹配
        InconsistentAction: 延拓后的作用不满足括号关系
    """
    from app.core.glie import require_g

    g = require_g(a, g)
    r = a.root_system
    x_u = a.index(u)
    if not a.is_radical(x_u):
        raise NotApplicable(f"{a.labels[x_u]} is not a radical element")
    k = len(summands)
    if k == 0:
        raise DimensionError("jordan_sum needs at least one summand")
    twist = [[Fraction(c) for c in row] for row in twist]
    if len(twist) != k or any(len(row) != k for row in twist):
        raise DimensionError(f"twist must be {k}x{k}")
    if not _strictly_triangular(twist):
        raise NotApplicable("twist must be strictly triangular")
    if any(a.bracket(a.f(b), x_u) for b in range(r.num_positive)):
        raise NotApplicable(f"{a.labels[x_u]} is not killed by the negative nilradical")
    home = a.summand_of(x_u)
    if x_u != home.lowest:
        raise NotApplicable(f"{a.labels[x_u]} is not the lowest weight vector of its summand")
    wt_u = a.weight(x_u)
    for i in range(k):
        for j in range(k):
            if twist[i][j] and summands[i].highest_weight != summands[j].highest_weight + wt_u:
                raise NotApplicable(
                    f"twist entry ({i}, {j}) needs gamma_{i} = gamma_{j} + wt({a.labels[x_u]})"
                )

    offsets = []
    total = 0
    for s in summands:
        offsets.append(total)
        total += s.dim
    weights = [w for s in summands for w in s.weights]
    labels = [f"[{c}] {label}" for c, s in enumerate(summands) for label in s.labels]

    def embed(blocks: dict[tuple[int, int], RationalMatrix]) -> RationalMatrix:
        entries = {}
        for (i, j), block in blocks.items():
            for (p, q), c in block.items():
                entries[(offsets[i] + p, offsets[j] + q)] = c
        return RationalMatrix(total, total, entries)

    global_actions: dict[int, RationalMatrix] = {}
    for x in range(a.g0_dim):
        global_actions[x] = embed({(c, c): s.action(x) for c, s in enumerate(summands)})

    twisted = {
        (i, j): _transport(a, summands[j], summands[i]).scale(twist[i][j])
        for i in range(k)
        for j in range(k)
        if twist[i][j]
    }
    global_actions[x_u] = RationalMatrix.scalar(total, g(x_u)) + embed(twisted)

    for y in a.radical_indices:
        if y not in home:
            global_actions[y] = RationalMatrix.scalar(total, g(y))
    if home.dim > 1:
        _close_radical_summand(a, home, x_u, global_actions, total)

    # 深度取到让任意两步作用都落在窗口内（有限维模在窗口外确实为零）
    depth = 0
    tops = tuple(sorted({s.highest_weight for s in summands}, reverse=True))
    zero = Weight.zero(r.rank)
    lowering = max(
        (sum(d) for x in range(a.dim) if (d := r.lattice_drop(zero, a.weight(x))) is not None),
        default=0,
    )
    for mu in set(weights):
        for x in range(a.dim):
            image = mu + a.weight(x)
            for top in tops:
                drop = r.lattice_drop(top, image)
                if drop is not None:
                    depth = max(depth, sum(drop) + lowering)

    by_weight: dict[Weight, list[int]] = {}
    for idx, w in enumerate(weights):
        by_weight.setdefault(w, []).append(idx)
    components = {mu: tuple(labels[i] for i in idx) for mu, idx in by_weight.items()}
    actions: dict[int, dict[Weight, RationalMatrix]] = {}
    for x, matrix in global_actions.items():
        per_weight = {}
        for mu, cols in by_weight.items():
            rows = by_weight.get(mu + a.weight(x))
            if not rows:
                continue
            row_pos = {i: p for p, i in enumerate(rows)}
            col_pos = {j: q for q, j in enumerate(cols)}
            entries = {
                (row_pos[i], col_pos[j]): c
                for (i, j), c in matrix.items()
                if i in row_pos and j in col_pos
            }
            if entries:
                per_weight[mu] = RationalMatrix(len(rows), len(cols), entries)
        if per_weight:
            actions[x] = per_weight

    generators = []
    for c, s in enumerate(summands):
        mu = s.highest_weight
        vector = [Fraction(0)] * len(by_weight[mu])
        vector[by_weight[mu].index(offsets[c])] = Fraction(1)
        generators.append((mu, tuple(vector)))

    module = TruncatedModule(
        algebra=a,
        top_weights=tops,
        depth=depth,
        components=components,
        actions=actions,
        g_label=g,
        generators=tuple(generators),
        name=f"Jordan({', '.join(str(s.highest_weight) for s in summands)}; {a.labels[x_u]})",
    )
    module.metadata["summands"] = [
        {"highest_weight": s.highest_weight, "offset": offsets[c], "dim": s.dim}
        for c, s in enumerate(summands)
    ]
    module.metadata["positions"] = {
        idx: (w, by_weight[w].index(idx)) for idx, w in enumerate(weights)
    }
    module.validate()
    logger.debug(f"{module.name}: dim {total}, depth {depth}")
    return module


def _close_radical_summand(
    a: "GenReductiveAlgebra",
    home,
    x_u: int,
    global_actions: dict[int, RationalMatrix],
    total: int,
) -> None:
    """由最低权向量 u 的作用，借 [eᵢ, w] 逐权求出同一直和项里其余基元素的作用"""
    r = a.root_system
    members = list(range(home.start, home.stop))
    lowest_weight = a.weight(home.lowest)

    def height(y: int) -> int:
        return sum(r.lattice_drop(a.weight(y), lowest_weight))

    by_weight: dict[Weight, list[int]] = {}
    for y in members:
        by_weight.setdefault(a.weight(y), []).append(y)
    solved: dict[int, RationalMatrix] = {x_u: global_actions[x_u]}
    for nu in sorted(by_weight, key=lambda w: height(by_weight[w][0])):
        targets = by_weight[nu]
        if targets == [x_u]:
            continue
        # 每条推导：[eᵢ, w] = Σ c_t t，作用 = [A(eᵢ), A(w)]
        rows: list[tuple[Vector, RationalMatrix]] = []
        for w, action in solved.items():
            for i in range(r.rank):
                e_i = a.e_simple(i)
                if a.weight(w) + a.weight(e_i) != nu:
                    continue
                bracket = a.bracket(e_i, w)
                coeffs = tuple(bracket.get(t, Fraction(0)) for t in targets)
                if is_zero_vector(coeffs):
                    continue
                commutator = global_actions[e_i] @ action - action @ global_actions[e_i]
                rows.append((coeffs, commutator))
        coefficient_matrix = RationalMatrix.from_rows([c for c, _ in rows], len(targets))
        for p, t in enumerate(targets):
            unit = tuple(Fraction(int(q == p)) for q in range(len(targets)))
            outcome = solve(coefficient_matrix.transpose(), unit)
            if not outcome.is_solution:
                raise InconsistentAction(
                    f"cannot reach {a.labels[t]} from the lowest weight vector",
                    {"element": a.labels[t]},
                )
            action = RationalMatrix.zeros(total, total)
            for y_coeff, (_, commutator) in zip(outcome.solution, rows):
                if y_coeff:
                    action = action + commutator.scale(y_coeff)
            solved[t] = action
        for coeffs, commutator in rows:
            rebuilt = RationalMatrix.zeros(total, total)
            for c, t in zip(coeffs, targets):
                if c:
                    rebuilt = rebuilt + solved[t].scale(c)
            if rebuilt != commutator:
                raise InconsistentAction(
                    f"radical actions at weight {nu} are overdetermined and disagree",
                    {"weight": nu.to_json()},
                )
    for y, action in solved.items():
        global_actions[y] = action
