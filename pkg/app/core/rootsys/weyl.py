"""Weyl 群：枚举、线性作用与点作用"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence, Union

from app.core.exactla import RationalMatrix, rank
from app.core.exceptions import DimensionError

from .weights import Weight

if TYPE_CHECKING:
    from .root_system import RootSystem

IntMatrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class WeylElement:
    """Weyl 群元素

    word 是约化字（sᵢ 从左到右相乘），matrix 是在基本权坐标上的作用，
    permutation 记录对全体根的置换：下标 k < N 表示第 k 个正根，
    N + k 表示它的负根。
    """

    word: tuple[int, ...]
    matrix: IntMatrix
    permutation: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, lam: Weight) -> Weight:
        return Weight(
            tuple(
                sum((Fraction(a) * x for a, x in zip(row, lam.coords)), Fraction(0))
                for row in self.matrix
            )
        )

    def is_reflection(self) -> bool:
        """w 是反射当且仅当 w − 1 的秩为 1"""
        n = len(self.matrix)
        minus_identity = RationalMatrix.from_rows(
            [[self.matrix[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
        )
        return rank(minus_identity) == 1

    def label(self) -> str:
        return "".join(f"s{i + 1}" for i in self.word) or "1"


def simple_reflection_matrix(cartan: IntMatrix, i: int) -> IntMatrix:
    """sᵢ 在基本权坐标上：λ ↦ λ − λᵢ αᵢ，αᵢ 的坐标是 Cartan 矩阵第 i 行"""
    n = len(cartan)
    return tuple(
        tuple((1 if r == c else 0) - (cartan[i][r] if c == i else 0) for c in range(n))
        for r in range(n)
    )


def _matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n = len(a)
    return tuple(
        tuple(sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n)) for r in range(n)
    )


def enumerate_weyl_group(
    cartan: IntMatrix, root_weights: Sequence[Weight]
) -> tuple[WeylElement, ...]:
    """广度优先枚举整个 Weyl 群

    按字长分层、生成元下标升序扩展，首次到达的字就是约化字。
    root_weights 是正根在基本权坐标下的表示，用来计算根的置换。
    """
    n = len(cartan)
    generators = [simple_reflection_matrix(cartan, i) for i in range(n)]
    identity = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))

    num_positive = len(root_weights)
    lookup = {w: k for k, w in enumerate(root_weights)}
    lookup.update({-w: num_positive + k for k, w in enumerate(root_weights)})

    def permutation_of(matrix: IntMatrix) -> tuple[int, ...]:
        element = WeylElement((), matrix, ())
        images = []
        for k in range(2 * num_positive):
            root = root_weights[k] if k < num_positive else -root_weights[k - num_positive]
            images.append(lookup[element.act(root)])
        return tuple(images)

    seen = {identity: ()}
    order = [identity]
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        word = seen[current]
        for i, s in enumerate(generators):
            product = _matmul(s, current)
            if product not in seen:
                seen[product] = (i,) + word
                order.append(product)
                queue.append(product)

    return tuple(WeylElement(seen[m], m, permutation_of(m)) for m in order)


def _as_operator(r: "RootSystem", w: Union[WeylElement, Sequence[int]]):
    if isinstance(w, WeylElement):
        if len(w.matrix) != r.rank:
            raise DimensionError(f"Weyl element of rank {len(w.matrix)} for rank {r.rank}")
        return w.act
    beta = r.require_positive_root(w)
    return lambda lam: r.reflect(lam, beta)


def linear_action(r: "RootSystem", w: Union[WeylElement, Sequence[int]], lam: Weight) -> Weight:
    """普通反射表示下的作用 w(λ)"""
    r.check_weight(lam)
    return _as_operator(r, w)(lam)


def dot_action(r: "RootSystem", w: Union[WeylElement, Sequence[int]], lam: Weight) -> Weight:
    """点作用 w·λ = w(λ+ρ) − ρ

    w 可以是 WeylElement，也可以是一个正根（单根坐标的整数元组），表示反射 s_β。

    Raises:
        InvalidRootError: 给出的 β 不是正根
    """
    r.check_weight(lam)
    return _as_operator(r, w)(lam + r.rho) - r.rho
