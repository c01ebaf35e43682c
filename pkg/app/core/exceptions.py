"""
异常层次

输入类错误映射到退出码 2，计算/断言类错误映射到退出码 1。
"""

from typing import Any, Optional


class OPrimeError(Exception):
    """所有领域错误的基类"""

    exit_code: int = 1

    def __init__(self, message: str, details: Optional[dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    @property
    def kind(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "message": self.message, "details": self.details}


class InputError(OPrimeError):
    """调用方给出的数据不合法"""

    exit_code = 2


class ComputationError(OPrimeError):
    """计算过程中无法得到可信结论"""

    exit_code = 1


# ---- 输入类 ----


class SpecError(InputError):
    """代数描述文件或命令行参数无法解析"""


class DimensionError(InputError):
    pass


class FiniteTypeError(InputError):
    """Cartan 矩阵不是有限型"""


class InvalidRootError(InputError):
    pass


class NonIntegralError(InputError):
    """权之差不在整根格中"""


class InvalidRadicalError(InputError):
    """根基的最高权不是支配整权"""


class InvalidFunctional(InputError):
    """泛函不在 G 中（或不属于该代数）"""


class DepthLimitError(InputError):
    """截断深度超过 OPRIME_DEPTH_LIMIT"""


class UnsupportedRank(InputError):
    pass


class UnsupportedTensor(InputError):
    """J₂ 在因子上非零作用时不支持张量积"""


class NotApplicable(InputError):
    """前提条件不满足（例如 n = ⟨λ+ρ, αᵢ∨⟩ 不是正整数）"""


class SingularBlockUnsupported(InputError):
    pass


# ---- 计算类 ----


class TruncationError(ComputationError):
    """结果落在截断窗口之外（与数学上的零区分）"""


class InconsistentAction(ComputationError):
    """构造出的作用不满足括号相容性"""


class NotNilpotentWithinBound(ComputationError):
    pass


class NoStandardFiltration(ComputationError):
    """贪心剥离停滞：窗口内不存在标准滤过"""


class InternalConsistencyError(ComputationError):
    """内部自检失败，说明构造有缺陷"""
