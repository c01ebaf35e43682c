"""组装 g = g₀ ⊕ J 并做一致性检查"""

from __future__ import annotations

import time
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from app.core.entities import BasisKind
from app.core.exceptions import DimensionError, InternalConsistencyError, InvalidRadicalError
from app.core.exactla import RationalMatrix, rank
from app.core.rootsys import CartanMatrix, RootSystem, Weight, build_root_system
from app.core.utils.logger import setup_logger

from .algebra import Combination, GenReductiveAlgebra, RadicalSummand, basis_labels
from .chevalley import chevalley_structure
from .simple import SimpleRealization, realize_simple

logger = setup_logger("glie")


def _g0_table(r: RootSystem) -> dict[tuple[int, int], Combination]:
    return chevalley_structure(
        r.cartan,
        r.positive_roots,
        tuple(r.coroot(beta) for beta in r.positive_roots),
    )


def _assemble(
    r: RootSystem,
    g0_table: dict[tuple[int, int], Combination],
    realizations: Sequence[SimpleRealization],
) -> GenReductiveAlgebra:
    N, n = r.num_positive, r.rank
    g0_dim = 2 * N + n
    radical_dim = sum(s.dim for s in realizations)
    labels = basis_labels(r, radical_dim)

    kinds: list[tuple[BasisKind, int]] = (
        [(BasisKind.E, k) for k in range(N)]
        + [(BasisKind.F, k) for k in range(N)]
        + [(BasisKind.H, i) for i in range(n)]
        + [(BasisKind.U, j) for j in range(radical_dim)]
    )
    weights: list[Weight] = (
        [r.root_weight(b) for b in r.positive_roots]
        + [-r.root_weight(b) for b in r.positive_roots]
        + [Weight.zero(n)] * n
    )

    table: dict[tuple[int, int], Combination] = {k: dict(v) for k, v in g0_table.items()}
    summands = []
    start = g0_dim
    for s in realizations:
        summands.append(RadicalSummand(s.highest_weight, start, start + s.dim))
        weights.extend(s.weights)
        for x in range(g0_dim):
            for (t, b), c in s.action(x).items():
                table.setdefault((x, start + b), {})[start + t] = c
        start += s.dim

    full: dict[tuple[int, int], Combination] = {}
    for (x, y), value in table.items():
        if value:
            full[(x, y)] = value
            full[(y, x)] = {z: -c for z, c in value.items()}

    j1, j2 = _split(g0_dim, len(labels), full)
    return GenReductiveAlgebra(
        root_system=r,
        labels=tuple(labels),
        kinds=tuple(kinds),
        weights=tuple(weights),
        summands=tuple(summands),
        j1=j1,
        j2=j2,
        _brackets=full,
        _label_index={label: k for k, label in enumerate(labels)},
    )


def _split(g0_dim: int, dim: int, full: dict) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """J₁ = J^{g₀}（被 g₀ 全部零化的基元素），J₂ = 其余"""
    j1, j2 = [], []
    for u in range(g0_dim, dim):
        if any(full.get((x, u)) for x in range(g0_dim)):
            j2.append(u)
        else:
            j1.append(u)
    return tuple(j1), tuple(j2)


def split_radical(a: GenReductiveAlgebra) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """J = J₁ ⊕ J₂，并复核 J₂ = [g₀, J]

    Raises:
        InternalConsistencyError: [g₀, J] 的像与 J₂ 的维数不符
    """
    columns = []
    for x in range(a.g0_dim):
        for u in a.radical_indices:
            image = a.bracket(x, u)
            if image:
                columns.append(tuple(image.get(z, Fraction(0)) for z in a.radical_indices))
    image_dim = rank(RationalMatrix.from_columns(columns, a.radical_dim)) if columns else 0
    if image_dim != len(a.j2):
        raise InternalConsistencyError(
            f"[g0, J] has dimension {image_dim} but J2 has {len(a.j2)} basis elements"
        )
    return a.j1, a.j2


def _validate(a: GenReductiveAlgebra) -> None:
    r = a.root_system
    for i in range(r.rank):
        h = a.h(i)
        for u in a.radical_indices:
            expected = {u: a.weight(u)[i]} if a.weight(u)[i] else {}
            if dict(a.bracket(h, u)) != expected:
                raise InternalConsistencyError(f"[h{i + 1}, {a.labels[u]}] does not match its weight")
    for s in a.summands:
        for k in range(r.num_positive):
            if a.bracket(a.f(k), s.lowest):
                raise InternalConsistencyError(
                    f"{a.labels[s.lowest]} is not killed by {a.labels[a.f(k)]}"
                )
    failures = a.jacobi_failures(limit=1)
    if failures:
        raise InternalConsistencyError("Jacobi identity fails", failures[0])
    split_radical(a)


@lru_cache(maxsize=None)
def _g0_for(cartan: CartanMatrix) -> GenReductiveAlgebra:
    r = build_root_system(cartan)
    a = _assemble(r, _g0_table(r), [])
    _validate(a)
    return a


def g0_algebra(r: RootSystem) -> GenReductiveAlgebra:
    """只有 g₀ 的代数（J = 0），按 Cartan 矩阵缓存"""
    return _g0_for(r.cartan)


def build_algebra(
    r: RootSystem, radical: Iterable[Union[Weight, Sequence]]
) -> GenReductiveAlgebra:
    """g = g₀ ⊕ J，J = ⊕ L(γ_k)

    Raises:
        InvalidRadicalError: 某个 γ_k 不是支配整权
        InternalConsistencyError: 组装后的括号不满足 Jacobi 恒等式等
    """
    start = time.time()
    tops = []
    for value in radical:
        gamma = value if isinstance(value, Weight) else Weight.parse(value)
        if gamma.rank != r.rank:
            raise DimensionError(f"radical weight {gamma} has rank {gamma.rank}, expected {r.rank}")
        if not gamma.is_dominant_integral():
            raise InvalidRadicalError(
                f"radical summand {gamma} is not dominant integral", {"weight": gamma.to_json()}
            )
        tops.append(gamma)
    if not tops:
        return g0_algebra(r)

    realizations = [realize_simple(r, gamma) for gamma in tops]
    a = _assemble(r, dict(g0_algebra(r)._brackets), realizations)
    _validate(a)
    logger.info(
        f"代数构造完成: dim g0 = {a.g0_dim}, dim J = {a.radical_dim} "
        f"(J1 {len(a.j1)}, J2 {len(a.j2)})，耗时 {time.time() - start:.2f}s"
    )
    return a
