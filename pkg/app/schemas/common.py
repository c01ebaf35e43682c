"""
通用数据模型
"""

from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, Field


class CheckStatus(str, Enum):
    """命令结果状态，与退出码一一对应"""

    PASSED = "passed"
    FAILED = "failed"
    ERROR = "error"

    @property
    def exit_code(self) -> int:
        return {CheckStatus.PASSED: 0, CheckStatus.FAILED: 1, CheckStatus.ERROR: 2}[self]


class ErrorInfo(BaseModel):
    """错误报告"""

    kind: str = Field(..., description="异常类型名")
    message: str = Field(..., description="错误信息")
    details: dict[str, Any] = Field(default_factory=dict, description="出错位置等附加信息")


class ReportEnvelope(BaseModel):
    """每个子命令输出的 JSON 外壳"""

    command: str = Field(..., description="子命令名")
    status: CheckStatus = Field(..., description="结果状态")
    request: dict[str, Any] = Field(default_factory=dict, description="请求回显（用于 --recheck 重放）")
    payload: dict[str, Any] = Field(default_factory=dict, description="计算结果")
    failures: list[str] = Field(default_factory=list, description="未通过的断言")
    error: Optional[ErrorInfo] = Field(None, description="错误信息")

    @property
    def exit_code(self) -> int:
        return self.status.exit_code
