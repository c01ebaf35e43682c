"""Cartan 矩阵：命名类型与合法性检查

约定 a_ij = ⟨αᵢ, αⱼ∨⟩（Humphreys），因此 sᵢ(αⱼ) = αⱼ − a_ji αᵢ，
αᵢ 在基本权坐标下就是第 i 行。
"""

from typing import Sequence, Union

from app.core.exceptions import DimensionError, FiniteTypeError, SpecError

CartanMatrix = tuple[tuple[int, ...], ...]

# 命名类型（Bourbaki 编号）
NAMED_CARTAN: dict[str, CartanMatrix] = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    "B2": ((2, -2), (-1, 2)),
    "C2": ((2, -1), (-2, 2)),
    "B3": ((2, -1, 0), (-1, 2, -2), (0, -1, 2)),
    "C3": ((2, -1, 0), (-1, 2, -1), (0, -2, 2)),
    "G2": ((2, -1), (-3, 2)),
}


def parse_cartan(value: Union[str, Sequence[Sequence[int]]]) -> CartanMatrix:
    """命名类型或显式整数矩阵 → 规范的元组矩阵

    Raises:
        SpecError: 未知的类型名或非整数元素
        DimensionError: 非方阵
        FiniteTypeError: 对角线不为 2、非对角元为正或零模式不对称
    """
    if isinstance(value, str):
        key = value.strip().upper()
        if key not in NAMED_CARTAN:
            raise SpecError(
                f"unknown Cartan type {value!r}",
                {"known": sorted(NAMED_CARTAN)},
            )
        return NAMED_CARTAN[key]

    rows = [list(row) for row in value]
    n = len(rows)
    if n == 0:
        raise DimensionError("empty Cartan matrix")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise DimensionError(f"Cartan matrix row {i} has length {len(row)}, expected {n}")
        for j, entry in enumerate(row):
            if isinstance(entry, bool) or not isinstance(entry, int):
                raise SpecError(f"Cartan entry ({i},{j}) is not an integer: {entry!r}")
    matrix = tuple(tuple(row) for row in rows)
    validate_cartan(matrix)
    return matrix


def validate_cartan(matrix: CartanMatrix) -> None:
    n = len(matrix)
    for i in range(n):
        if matrix[i][i] != 2:
            raise FiniteTypeError(f"Cartan diagonal entry ({i},{i}) is {matrix[i][i]}, not 2")
        for j in range(n):
            if i == j:
                continue
            if matrix[i][j] > 0:
                raise FiniteTypeError(f"positive off-diagonal Cartan entry at ({i},{j})")
            if (matrix[i][j] == 0) != (matrix[j][i] == 0):
                raise FiniteTypeError(f"asymmetric zero pattern at ({i},{j})")
