"""
代数描述文件与命令行权重参数的数据模型
"""

from typing import Any, Optional, Union

from pydantic import BaseModel, Field, field_validator

from app.core.utils.rational import parse_rational

RationalInput = Union[int, str]


def _check_rationals(values: Any) -> Any:
    """嵌套列表里的每个数都必须能解析为有理数（拒绝浮点数）"""
    if isinstance(values, (list, tuple)):
        for v in values:
            _check_rationals(v)
    else:
        parse_rational(values)
    return values


class AlgebraSpec(BaseModel):
    """g = g₀ ⊕ J 的描述

    示例::

        {"cartan": "A1", "radical": [[0]], "g": ["3"], "depth": 12}
    """

    cartan: Union[str, list[list[int]]] = Field(..., description="命名类型（A1、A2、B2 …）或整数 Cartan 矩阵")
    radical: list[list[RationalInput]] = Field(
        default_factory=list, description="根基直和项的最高权（基本权坐标）"
    )
    g: Optional[list[Union[RationalInput, list[RationalInput]]]] = Field(
        None, description="按直和项给出的 g 取值；一维项给一个数，其余给整个列表"
    )
    depth: Optional[int] = Field(None, ge=1, description="截断深度，缺省按秩取配置值")

    @field_validator("radical", "g", mode="before")
    @classmethod
    def reject_floats(cls, value):
        if value is None:
            return value
        return _check_rationals(value)

    @field_validator("cartan")
    @classmethod
    def strip_name(cls, value):
        if isinstance(value, str):
            value = value.strip()
            if not value:
                raise ValueError("empty Cartan type")
        return value


class WeightInput(BaseModel):
    """命令行上的一个权：基本权坐标"""

    coords: list[RationalInput] = Field(..., min_length=1, description="基本权坐标")

    @field_validator("coords", mode="before")
    @classmethod
    def reject_floats(cls, value):
        return _check_rationals(value)
