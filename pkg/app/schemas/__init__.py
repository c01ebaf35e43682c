"""
Pydantic 数据模型
"""
from app.schemas.algebra import (
    AlgebraSpec,
    WeightInput,
)
from app.schemas.common import (
    CheckStatus,
    ErrorInfo,
    ReportEnvelope,
)

__all__ = [
    "AlgebraSpec",
    "WeightInput",
    "CheckStatus",
    "ErrorInfo",
    "ReportEnvelope",
]
