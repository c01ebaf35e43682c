"""稀疏有理矩阵

不存零元素；所有元素都是最简 Fraction（分母为正，Fraction 自动保证）。
向量一律用 tuple[Fraction, ...] 表示。
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from app.core.exceptions import DimensionError

Vector = tuple[Fraction, ...]
Scalar = Union[int, Fraction]


def as_vector(values: Iterable[Scalar]) -> Vector:
    return tuple(Fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise DimensionError(f"dot product of lengths {len(a)} and {len(b)}")
    return sum((x * y for x, y in zip(a, b) if x and y), Fraction(0))


def add_vectors(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    if len(a) != len(b):
        raise DimensionError(f"adding vectors of lengths {len(a)} and {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def scale_vector(c: Scalar, v: Sequence[Fraction]) -> Vector:
    c = Fraction(c)
    return tuple(c * x for x in v)


class RationalMatrix:
    """rows × cols 的稀疏有理矩阵，构造后不可变"""

    __slots__ = ("_rows", "_cols", "_entries")

    def __init__(
        self,
        rows: int,
        cols: int,
        entries: Optional[Mapping[tuple[int, int], Scalar]] = None,
    ):
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative shape {rows}x{cols}")
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionError(f"entry ({i}, {j}) outside {rows}x{cols}")
            q = Fraction(value)
            if q != 0:
                clean[(i, j)] = q
        self._rows = rows
        self._cols = cols
        self._entries = clean

    # ---- 构造 ----

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def scalar(cls, n: int, c: Scalar) -> "RationalMatrix":
        return cls(n, n, {(i, i): c for i in range(n)})

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[Scalar]], cols: Optional[int] = None
    ) -> "RationalMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise DimensionError(f"row {i} has length {len(row)}, expected {cols}")
            for j, value in enumerate(row):
                if value:
                    entries[(i, j)] = value
        return cls(len(rows), cols, entries)

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence[Scalar]], rows: Optional[int] = None
    ) -> "RationalMatrix":
        if rows is None:
            rows = len(columns[0]) if columns else 0
        entries = {}
        for j, column in enumerate(columns):
            if len(column) != rows:
                raise DimensionError(
                    f"column {j} has length {len(column)}, expected {rows}"
                )
            for i, value in enumerate(column):
                if value:
                    entries[(i, j)] = value
        return cls(rows, len(columns), entries)

    # ---- 访问 ----

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._rows, self._cols)

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def get(self, i: int, j: int) -> Fraction:
        return self._entries.get((i, j), Fraction(0))

    def items(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        """按 (行, 列) 排序遍历非零元素"""
        for key in sorted(self._entries):
            yield key, self._entries[key]

    def row(self, i: int) -> Vector:
        return tuple(self.get(i, j) for j in range(self._cols))

    def column(self, j: int) -> Vector:
        return tuple(self.get(i, j) for i in range(self._rows))

    def to_rows(self) -> list[list[Fraction]]:
        dense = [[Fraction(0)] * self._cols for _ in range(self._rows)]
        for (i, j), value in self._entries.items():
            dense[i][j] = value
        return dense

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self._cols)]

    def is_zero(self) -> bool:
        return not self._entries

    # ---- 运算 ----

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self._cols, self._rows, {(j, i): v for (i, j), v in self._entries.items()}
        )

    def _check_same_shape(self, other: "RationalMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same_shape(other)
        entries = dict(self._entries)
        for key, value in other._entries.items():
            entries[key] = entries.get(key, 0) + value
        return RationalMatrix(self._rows, self._cols, entries)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def scale(self, c: Scalar) -> "RationalMatrix":
        c = Fraction(c)
        if c == 0:
            return RationalMatrix(self._rows, self._cols)
        return RationalMatrix(
            self._rows, self._cols, {k: c * v for k, v in self._entries.items()}
        )

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            return self.matmul(other)
        return self.apply(other)

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self._cols != other._rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (k, j), value in other._entries.items():
            by_row.setdefault(k, []).append((j, value))
        entries: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self._entries.items():
            for j, b in by_row.get(k, ()):
                entries[(i, j)] = entries.get((i, j), 0) + a * b
        return RationalMatrix(self._rows, other._cols, entries)

    def apply(self, vector: Sequence[Scalar]) -> Vector:
        if len(vector) != self._cols:
            raise DimensionError(
                f"cannot apply {self.shape} matrix to vector of length {len(vector)}"
            )
        out = [Fraction(0)] * self._rows
        for (i, j), value in self._entries.items():
            x = vector[j]
            if x:
                out[i] += value * x
        return tuple(out)

    def restrict_rows(self, indices: Sequence[int]) -> "RationalMatrix":
        position = {old: new for new, old in enumerate(indices)}
        return RationalMatrix(
            len(indices),
            self._cols,
            {(position[i], j): v for (i, j), v in self._entries.items() if i in position},
        )

    # ---- 比较 ----

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self._rows, self._cols, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"RationalMatrix({self._rows}x{self._cols}, nnz={len(self._entries)})"


def hstack(blocks: Sequence[RationalMatrix]) -> RationalMatrix:
    if not blocks:
        return RationalMatrix(0, 0)
    rows = blocks[0].rows
    entries = {}
    offset = 0
    for block in blocks:
        if block.rows != rows:
            raise DimensionError("hstack: row counts differ")
        for (i, j), value in block.items():
            entries[(i, j + offset)] = value
        offset += block.cols
    return RationalMatrix(rows, offset, entries)


def vstack(blocks: Sequence[RationalMatrix], cols: Optional[int] = None) -> RationalMatrix:
    if not blocks:
        return RationalMatrix(0, cols or 0)
    cols = blocks[0].cols if cols is None else cols
    entries = {}
    offset = 0
    for block in blocks:
        if block.cols != cols:
            raise DimensionError("vstack: column counts differ")
        for (i, j), value in block.items():
            entries[(i + offset, j)] = value
        offset += block.rows
    return RationalMatrix(offset, cols, entries)


def block_diagonal(blocks: Sequence[RationalMatrix]) -> RationalMatrix:
    entries = {}
    row_offset = col_offset = 0
    for block in blocks:
        for (i, j), value in block.items():
            entries[(i + row_offset, j + col_offset)] = value
        row_offset += block.rows
        col_offset += block.cols
    return RationalMatrix(row_offset, col_offset, entries)


def kronecker(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """a ⊗ b，行/列下标按 (i_a * rows_b + i_b) 排列"""
    entries = {}
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            entries[(i * b.rows + k, j * b.cols + l)] = x * y
    return RationalMatrix(a.rows * b.rows, a.cols * b.cols, entries)
