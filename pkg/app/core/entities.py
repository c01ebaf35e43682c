"""
核心枚举与共享的小数据结构
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class WindowStatus(str, Enum):
    """权相对截断窗口的位置

    INSIDE: 在窗口内，分量（可能为零维）完全已知
    ZERO: 不在任何顶权之下，数学上必为零
    OUTSIDE: 在某个顶权之下但超出深度，结果未知（边界）
    """

    INSIDE = "inside"
    ZERO = "zero"
    OUTSIDE = "outside"


class BasisKind(str, Enum):
    """代数基元素的种类"""

    E = "e"
    F = "f"
    H = "h"
    U = "u"


class FiltrationKind(str, Enum):
    HIGHEST_WEIGHT = "highest_weight"
    STANDARD = "standard"


class LiftTag(str, Enum):
    LIFTABLE = "liftable"
    INCONSISTENT = "inconsistent"


class Axiom(Enum):
    """O' 公理：(编号, 描述)"""

    FINITELY_GENERATED = ("O'1", "finitely generated")
    H0_SEMISIMPLE = ("O'2", "h0-semisimple with exact weight action")
    LOCALLY_N_FINITE = ("O'3", "locally n-finite")
    FINITE_WEIGHT_SPACES = ("O'4", "finite-dimensional weight spaces")

    @property
    def code(self) -> str:
        return self.value[0]

    @property
    def description(self) -> str:
        return self.value[1]


@dataclass
class CheckResult:
    """单项检查的结果（报告里的一行）"""

    name: str
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}
