"""只由 Cartan 数据构造 g₀ 的 Chevalley 基与结构常数

做法：
1. 逐层构造每个基本表示 L(ωᵢ)：第 k 层的候选向量是 fⱼb（b 在第 k−1 层），
   用 eᵢ(fⱼb) = fⱼ(eᵢb) + δᵢⱼ⟨wt b, αᵢ∨⟩ b 计算候选的 e-像；
   非顶层上 e 的联合作用是单射，所以 e-像线性无关的候选就是一组基。
2. V = ⊕ L(ωᵢ) 是 g₀ 的忠实表示。非单根 β 取 Φ⁺ 顺序中第一个使 γ = β − α
   仍为正根的单根 α，令 E_β = [E_α, E_γ]/(p+1)，p 为使 γ − pα 是根的最大整数；
   F_β 同理，再缩放使 [E_β, F_β] = H_β。
3. 所有括号直接由矩阵交换子读出。
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from app.core.exactla import RationalMatrix, Subspace, block_diagonal, solve
from app.core.exceptions import InternalConsistencyError
from app.core.utils.cache import CACHE_PREFIX_STRUCTURE, memoize
from app.core.utils.logger import setup_logger

logger = setup_logger("glie")

IntWeight = tuple[int, ...]
# (a, b) → {c: 系数}，只存 a < b
BracketTable = dict[tuple[int, int], dict[int, Fraction]]


class HighestWeightRepresentation:
    """有限维不可约表示的显式矩阵（只保留 Chevalley 生成元）"""

    def __init__(self, weights: list[IntWeight], e: list[RationalMatrix], f: list[RationalMatrix]):
        self.weights = weights
        self.e = e
        self.f = f

    @property
    def dim(self) -> int:
        return len(self.weights)

    def h(self, i: int) -> RationalMatrix:
        return RationalMatrix(self.dim, self.dim, {(k, k): w[i] for k, w in enumerate(self.weights)})


def _add(target: dict, key, value: Fraction) -> None:
    total = target.get(key, 0) + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


def irreducible_representation(cartan: Sequence[Sequence[int]], top: IntWeight) -> HighestWeightRepresentation:
    """按层构造 L(top)（top 支配整）"""
    n = len(cartan)
    weights: list[IntWeight] = [tuple(top)]
    # e_cols[i][b] = eᵢ·b 的展开；f_cols[j][b] = fⱼ·b 的展开
    e_cols: list[dict[int, dict[int, Fraction]]] = [{} for _ in range(n)]
    f_cols: list[dict[int, dict[int, Fraction]]] = [{} for _ in range(n)]
    level = [0]

    while level:
        groups: dict[IntWeight, list[tuple[int, int]]] = {}
        for b in level:
            for j in range(n):
                w = tuple(weights[b][k] - cartan[j][k] for k in range(n))
                groups.setdefault(w, []).append((j, b))

        next_level: list[int] = []
        for w in sorted(groups, reverse=True):
            candidates = groups[w]
            images: list[dict[tuple[int, int], Fraction]] = []
            for j, b in candidates:
                image: dict[tuple[int, int], Fraction] = {}
                for i in range(n):
                    for t, c in e_cols[i].get(b, {}).items():
                        for s, d in f_cols[j].get(t, {}).items():
                            _add(image, (i, s), c * d)
                    if i == j and weights[b][i]:
                        _add(image, (i, b), Fraction(weights[b][i]))
                images.append(image)

            keys = sorted({key for image in images for key in image})
            position = {key: k for k, key in enumerate(keys)}
            dense = []
            for image in images:
                v = [Fraction(0)] * len(keys)
                for key, c in image.items():
                    v[position[key]] = c
                dense.append(tuple(v))

            span = Subspace(len(keys))
            chosen: list[int] = []
            for idx, v in enumerate(dense):
                grown = span.with_vector(v)
                if grown is not None:
                    span = grown
                    chosen.append(idx)
            if not chosen:
                continue

            new_ids = []
            for idx in chosen:
                vid = len(weights)
                weights.append(w)
                new_ids.append(vid)
                for (i, s), c in images[idx].items():
                    e_cols[i].setdefault(vid, {})[s] = c
            next_level.extend(new_ids)

            basis = RationalMatrix.from_columns([dense[idx] for idx in chosen], len(keys))
            for idx, (j, b) in enumerate(candidates):
                outcome = solve(basis, dense[idx])
                if not outcome.is_solution:
                    raise InternalConsistencyError(f"candidate f{j + 1}·v{b} escapes the level basis")
                column = f_cols[j].setdefault(b, {})
                for vid, c in zip(new_ids, outcome.solution):
                    if c:
                        column[vid] = c
        level = next_level

    d = len(weights)

    def to_matrix(cols: dict[int, dict[int, Fraction]]) -> RationalMatrix:
        return RationalMatrix(d, d, {(t, b): c for b, col in cols.items() for t, c in col.items()})

    return HighestWeightRepresentation(
        weights, [to_matrix(c) for c in e_cols], [to_matrix(c) for c in f_cols]
    )


def _commutator(x: RationalMatrix, y: RationalMatrix) -> RationalMatrix:
    return x @ y - y @ x


def _proportionality(m: RationalMatrix, base: RationalMatrix) -> Fraction:
    """m = c·base 时返回 c，否则抛 InternalConsistencyError"""
    (i, j), value = next(base.items())
    c = m.get(i, j) / value
    if m != base.scale(c):
        raise InternalConsistencyError("bracket is not proportional to the expected root vector")
    return c


@memoize(CACHE_PREFIX_STRUCTURE)
def chevalley_structure(
    cartan: tuple[tuple[int, ...], ...],
    positive_roots: tuple[tuple[int, ...], ...],
    coroots: tuple[tuple[Fraction, ...], ...],
) -> BracketTable:
    """g₀ 在基 (e_β…, f_β…, h_i…) 下的结构常数

    Args:
        cartan: Cartan 矩阵
        positive_roots: Φ⁺（按固定顺序）
        coroots: 每个正根的余根在单余根下的系数
    """
    n = len(cartan)
    N = len(positive_roots)
    index_of = {beta: k for k, beta in enumerate(positive_roots)}

    reps = [irreducible_representation(cartan, tuple(int(k == i) for k in range(n))) for i in range(n)]
    E_simple = [block_diagonal([rep.e[i] for rep in reps]) for i in range(n)]
    F_simple = [block_diagonal([rep.f[i] for rep in reps]) for i in range(n)]
    H_simple = [block_diagonal([rep.h(i) for rep in reps]) for i in range(n)]
    logger.debug(f"忠实表示维数 {E_simple[0].rows}（基本表示 {[rep.dim for rep in reps]}）")

    for i in range(n):
        if _commutator(E_simple[i], F_simple[i]) != H_simple[i]:
            raise InternalConsistencyError(f"[e{i + 1}, f{i + 1}] != h{i + 1} in the faithful module")

    def coroot_matrix(k: int) -> RationalMatrix:
        total = RationalMatrix.zeros(*H_simple[0].shape)
        for d, h in zip(coroots[k], H_simple):
            if d:
                total = total + h.scale(d)
        return total

    E: list[RationalMatrix] = [None] * N  # type: ignore[list-item]
    F: list[RationalMatrix] = [None] * N  # type: ignore[list-item]
    for k, beta in enumerate(positive_roots):
        if sum(beta) == 1:
            i = beta.index(1)
            E[k], F[k] = E_simple[i], F_simple[i]
            continue
        for a, alpha in enumerate(positive_roots):
            if sum(alpha) != 1:
                continue
            i = alpha.index(1)
            gamma = tuple(b - int(t == i) for t, b in enumerate(beta))
            if gamma in index_of:
                break
        else:
            raise InternalConsistencyError(f"root {beta} has no simple predecessor")
        g = index_of[gamma]
        p = 0
        while tuple(c - (p + 1) * int(t == i) for t, c in enumerate(gamma)) in index_of:
            p += 1
        E[k] = _commutator(E[a], E[g]).scale(Fraction(1, p + 1))
        raw_f = _commutator(F[a], F[g]).scale(Fraction(1, p + 1))
        h_beta = coroot_matrix(k)
        c = _proportionality(_commutator(E[k], raw_f), h_beta)
        if c == 0:
            raise InternalConsistencyError(f"[E, F] vanishes for root {beta}")
        F[k] = raw_f.scale(1 / c)

    basis = E + F + H_simple
    weights: list[tuple[int, ...]] = (
        [tuple(beta) for beta in positive_roots]
        + [tuple(-b for b in beta) for beta in positive_roots]
        + [(0,) * n] * n
    )
    diagonals = RationalMatrix.from_columns(
        [tuple(h.get(t, t) for t in range(h.rows)) for h in H_simple]
    )

    table: BracketTable = {}
    for x in range(len(basis)):
        for y in range(x + 1, len(basis)):
            bracket = _commutator(basis[x], basis[y])
            if bracket.is_zero():
                continue
            w = tuple(a + b for a, b in zip(weights[x], weights[y]))
            if not any(w):
                outcome = solve(diagonals, tuple(bracket.get(t, t) for t in range(bracket.rows)))
                coeffs = {2 * N + i: c for i, c in enumerate(outcome.solution or ()) if c}
                rebuilt = RationalMatrix.zeros(*bracket.shape)
                for z, c in coeffs.items():
                    rebuilt = rebuilt + basis[z].scale(c)
                if not outcome.is_solution or rebuilt != bracket:
                    raise InternalConsistencyError(f"[{x}, {y}] is not in the Cartan subalgebra")
                table[(x, y)] = coeffs
            elif w in index_of:
                z = index_of[w]
                table[(x, y)] = {z: _proportionality(bracket, E[z])}
            elif tuple(-c for c in w) in index_of:
                z = index_of[tuple(-c for c in w)]
                table[(x, y)] = {N + z: _proportionality(bracket, F[z])}
            else:
                raise InternalConsistencyError(f"nonzero bracket of weight {w} which is not a root")
    return table
