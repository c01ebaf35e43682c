"""精确消元：核、秩、求解、逆矩阵与子空间

主路径是无分数（Bareiss）消元：每行先乘以分母的最小公倍数化为整数行，
消元全程只做整数运算，最后回代时才回到 Fraction 并约成最简。
选主元规则固定为“按列从左到右，取下标最小的非零行”，结果可复现。

naive 的有理数 Gauss-Jordan（rref_rational）保留作交叉校验的 oracle。
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from app.core.exceptions import DimensionError, InternalConsistencyError

from .matrix import RationalMatrix, Vector, dot, is_zero_vector


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    """每行乘以分母的 lcm，得到同一行空间的整数矩阵"""
    dense = m.to_rows()
    out = []
    for row in dense:
        scale = math.lcm(*(q.denominator for q in row)) if row else 1
        out.append([int(q * scale) for q in row])
    return out


def _bareiss(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """无分数行阶梯化

    Returns:
        (阶梯形的非零行, 主元列)；除法都是整除，余数非零即说明实现有误。
    """
    work = [row[:] for row in rows]
    nrows = len(work)
    pivots: list[int] = []
    prev = 1
    k = 0
    for c in range(ncols):
        if k == nrows:
            break
        p = next((i for i in range(k, nrows) if work[i][c] != 0), None)
        if p is None:
            continue
        if p != k:
            work[k], work[p] = work[p], work[k]
        pivot_row = work[k]
        pivot = pivot_row[c]
        for i in range(k + 1, nrows):
            row = work[i]
            factor = row[c]
            for j in range(c + 1, ncols):
                q, r = divmod(pivot * row[j] - factor * pivot_row[j], prev)
                if r:
                    raise InternalConsistencyError(
                        "non-exact division in fraction-free elimination"
                    )
                row[j] = q
            row[c] = 0
        prev = pivot
        pivots.append(c)
        k += 1
    return work[:k], pivots


def _back_substitute(
    echelon: list[list[int]], pivots: list[int]
) -> list[list[Fraction]]:
    """从整数阶梯形得到约化阶梯形（主元为 1，主元列其它位置为 0）"""
    rows = []
    for row, p in zip(echelon, pivots):
        lead = Fraction(row[p])
        rows.append([Fraction(x) / lead for x in row])
    for t in range(len(rows) - 1, -1, -1):
        p = pivots[t]
        pivot_row = rows[t]
        for s in range(t):
            factor = rows[s][p]
            if factor:
                rows[s] = [a - factor * b for a, b in zip(rows[s], pivot_row)]
    return rows


def reduced_echelon(m: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """约化行阶梯形 (RREF) 及主元列，经 Bareiss 消元得到"""
    echelon, pivots = _bareiss(_integer_rows(m), m.cols)
    return _back_substitute(echelon, pivots), pivots


def rref_rational(m: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """朴素的有理数 Gauss-Jordan 消元（交叉校验用）"""
    work = m.to_rows()
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    k = 0
    for c in range(ncols):
        if k == nrows:
            break
        p = next((i for i in range(k, nrows) if work[i][c] != 0), None)
        if p is None:
            continue
        work[k], work[p] = work[p], work[k]
        lead = work[k][c]
        work[k] = [x / lead for x in work[k]]
        for i in range(nrows):
            if i != k and work[i][c] != 0:
                factor = work[i][c]
                work[i] = [a - factor * b for a, b in zip(work[i], work[k])]
        pivots.append(c)
        k += 1
    return work[:k], pivots


def rank(m: RationalMatrix) -> int:
    """精确秩（无分数消元）"""
    if m.is_zero():
        return 0
    _, pivots = _bareiss(_integer_rows(m), m.cols)
    return len(pivots)


def rank_rational(m: RationalMatrix) -> int:
    return len(rref_rational(m)[1])


def _kernel_from_rref(
    rows: list[list[Fraction]], pivots: list[int], ncols: int
) -> list[Vector]:
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[free]
        basis.append(tuple(v))
    return basis


def kernel(m: RationalMatrix) -> list[Vector]:
    """右零空间的基

    每个自由列给出一个基向量（自由变量取 1，其余自由变量取 0），
    按自由列升序排列。
    """
    rows, pivots = reduced_echelon(m)
    return _kernel_from_rref(rows, pivots, m.cols)


class SolveTag(str, Enum):
    SOLUTION = "solution"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class SolveOutcome:
    """线性方程组 a·x = b 的求解结果

    Solution 给出一个精确解（自由变量取 0）；Inconsistent 给出证书 w，
    满足 wᵀa = 0 且 wᵀb ≠ 0。
    """

    tag: SolveTag
    solution: Optional[Vector] = None
    witness: Optional[Vector] = None

    @property
    def is_solution(self) -> bool:
        return self.tag == SolveTag.SOLUTION

    def verify(self, a: RationalMatrix, b: Sequence[Fraction]) -> bool:
        """独立复核：把解代回去，或把证书作用在增广矩阵上"""
        if self.tag == SolveTag.SOLUTION:
            if self.solution is None or len(self.solution) != a.cols:
                return False
            return tuple(a.apply(self.solution)) == tuple(Fraction(x) for x in b)
        if self.witness is None or len(self.witness) != a.rows:
            return False
        combination = a.transpose().apply(self.witness)
        return is_zero_vector(combination) and dot(self.witness, tuple(b)) != 0


def solve(a: RationalMatrix, b: Sequence[Fraction]) -> SolveOutcome:
    """求解 a·x = b

    Raises:
        DimensionError: 行数与 b 的长度不一致
    """
    if a.rows != len(b):
        raise DimensionError(f"system has {a.rows} rows but right side has {len(b)}")
    b = tuple(Fraction(x) for x in b)
    augmented_entries = {key: value for key, value in a.items()}
    for i, value in enumerate(b):
        if value:
            augmented_entries[(i, a.cols)] = value
    augmented = RationalMatrix(a.rows, a.cols + 1, augmented_entries)
    rows, pivots = reduced_echelon(augmented)

    if pivots and pivots[-1] == a.cols:
        # 不相容：在左零空间里找一个与 b 不正交的向量
        for w in kernel(a.transpose()):
            if dot(w, b) != 0:
                return SolveOutcome(tag=SolveTag.INCONSISTENT, witness=w)
        raise InternalConsistencyError("inconsistent system without a left witness")

    x = [Fraction(0)] * a.cols
    for row, p in zip(rows, pivots):
        x[p] = row[a.cols]
    return SolveOutcome(tag=SolveTag.SOLUTION, solution=tuple(x))


def inverse(m: RationalMatrix) -> RationalMatrix:
    if m.rows != m.cols:
        raise DimensionError(f"cannot invert non-square {m.shape} matrix")
    n = m.rows
    entries = {key: value for key, value in m.items()}
    for i in range(n):
        entries[(i, n + i)] = 1
    rows, pivots = reduced_echelon(RationalMatrix(n, 2 * n, entries))
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise DimensionError("matrix is singular")
    return RationalMatrix.from_rows([row[n:] for row in rows])


@dataclass(frozen=True)
class Subspace:
    """有理向量空间的子空间，以 RREF 基存储（因而是规范的）

    reduce / quotient_coordinates 用于商空间：非主元坐标就是商空间坐标。
    """

    dim_ambient: int
    basis: tuple[Vector, ...] = ()
    pivots: tuple[int, ...] = field(default=())

    @classmethod
    def span(cls, dim_ambient: int, vectors: Sequence[Sequence[Fraction]]) -> "Subspace":
        if not vectors:
            return cls(dim_ambient)
        for v in vectors:
            if len(v) != dim_ambient:
                raise DimensionError(
                    f"vector of length {len(v)} in ambient dimension {dim_ambient}"
                )
        rows, pivots = reduced_echelon(RationalMatrix.from_rows(vectors, dim_ambient))
        return cls(dim_ambient, tuple(tuple(r) for r in rows), tuple(pivots))

    @classmethod
    def whole(cls, dim_ambient: int) -> "Subspace":
        return cls(
            dim_ambient,
            tuple(
                tuple(Fraction(int(i == j)) for j in range(dim_ambient))
                for i in range(dim_ambient)
            ),
            tuple(range(dim_ambient)),
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.dim_ambient - len(self.basis)

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """v 减去它在主元坐标上的分量，得到规范代表元"""
        out = list(Fraction(x) for x in v)
        for row, p in zip(self.basis, self.pivots):
            c = out[p]
            if c:
                out = [a - c * b for a, b in zip(out, row)]
        return tuple(out)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero_vector(self.reduce(v))

    def complement_indices(self) -> tuple[int, ...]:
        pivot_set = set(self.pivots)
        return tuple(j for j in range(self.dim_ambient) if j not in pivot_set)

    def quotient_coordinates(self, v: Sequence[Fraction]) -> Vector:
        reduced = self.reduce(v)
        return tuple(reduced[j] for j in self.complement_indices())

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        """v 在 RREF 基下的坐标（v 必须属于子空间）"""
        if not self.contains(v):
            raise DimensionError("vector does not lie in the subspace")
        return tuple(Fraction(v[p]) for p in self.pivots)

    def with_vector(self, v: Sequence[Fraction]) -> Optional["Subspace"]:
        """加入 v 后的子空间；v 已在子空间中时返回 None"""
        residual = self.reduce(v)
        if is_zero_vector(residual):
            return None
        p = next(j for j, x in enumerate(residual) if x != 0)
        lead = residual[p]
        new_row = tuple(x / lead for x in residual)
        rows = []
        for row in self.basis:
            c = row[p]
            rows.append(tuple(a - c * b for a, b in zip(row, new_row)) if c else row)
        entries = sorted(zip(self.pivots + (p,), rows + [new_row]))
        return Subspace(
            self.dim_ambient,
            tuple(r for _, r in entries),
            tuple(q for q, _ in entries),
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        if other.dim_ambient != self.dim_ambient:
            raise DimensionError(
                f"intersecting subspaces of dimension {self.dim_ambient} and {other.dim_ambient}"
            )
        if not self.basis or not other.basis:
            return Subspace(self.dim_ambient)
        # U·a = V·b  ⇔  (a, b) ∈ ker [U | −V]
        columns = list(self.basis) + [tuple(-x for x in v) for v in other.basis]
        k = len(self.basis)
        vectors = []
        for coeffs in kernel(RationalMatrix.from_columns(columns, self.dim_ambient)):
            v = [Fraction(0)] * self.dim_ambient
            for c, row in zip(coeffs[:k], self.basis):
                if c:
                    v = [x + c * y for x, y in zip(v, row)]
            vectors.append(tuple(v))
        return Subspace.span(self.dim_ambient, vectors)

    def as_columns(self) -> RationalMatrix:
        """基向量排成列的矩阵（dim_ambient × dim）"""
        return RationalMatrix.from_columns(list(self.basis), self.dim_ambient)
