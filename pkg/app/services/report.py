"""报告的组装与输出（JSON 或文本表格）"""

from typing import Any, Iterable

import orjson

from app.core.exceptions import OPrimeError
from app.schemas.common import CheckStatus, ErrorInfo, ReportEnvelope

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2


def make_report(
    command: str, request: dict[str, Any], payload: dict[str, Any], failures: Iterable[str] = ()
) -> ReportEnvelope:
    failures = list(failures)
    return ReportEnvelope(
        command=command,
        status=CheckStatus.FAILED if failures else CheckStatus.PASSED,
        request=request,
        payload=payload,
        failures=failures,
    )


def error_report(command: str, request: dict[str, Any], error: OPrimeError) -> ReportEnvelope:
    status = CheckStatus.ERROR if error.exit_code == 2 else CheckStatus.FAILED
    return ReportEnvelope(
        command=command,
        status=status,
        request=request,
        error=ErrorInfo(kind=error.kind, message=error.message, details=error.details),
    )


def to_json(report: ReportEnvelope) -> bytes:
    """同样的输入得到逐字节相同的输出"""
    return orjson.dumps(report.model_dump(mode="json"), option=JSON_OPTIONS) + b"\n"


def _cell(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return orjson.dumps(value, option=orjson.OPT_SORT_KEYS).decode()
    if value is None:
        return "-"
    return str(value)


def _table(rows: list[tuple[str, str]]) -> list[str]:
    width = max((len(k) for k, _ in rows), default=0)
    return [f"{k.ljust(width)}  {v}" for k, v in rows]


def to_table(report: ReportEnvelope) -> str:
    """把 payload 的顶层字段逐行列出；列表型字段的元素是 dict 时展开成子表"""
    lines = [f"{report.command}: {report.status.value}"]
    if report.error is not None:
        lines.append(f"{report.error.kind}: {report.error.message}")
        lines.extend(_table([(k, _cell(v)) for k, v in sorted(report.error.details.items())]))
        return "\n".join(lines) + "\n"
    scalar_rows = []
    for key in sorted(report.payload):
        value = report.payload[key]
        if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append("")
            lines.append(f"[{key}]")
            columns = sorted({c for v in value for c in v})
            widths = {c: max([len(c)] + [len(_cell(v.get(c))) for v in value]) for c in columns}
            lines.append("  ".join(c.ljust(widths[c]) for c in columns))
            for v in value:
                lines.append("  ".join(_cell(v.get(c)).ljust(widths[c]) for c in columns))
        else:
            scalar_rows.append((key, _cell(value)))
    if scalar_rows:
        lines[1:1] = _table(scalar_rows)
    if report.failures:
        lines.append("")
        lines.append("failures:")
        lines.extend(f"  - {f}" for f in report.failures)
    return "\n".join(lines) + "\n"
