"""--recheck：重放保存的报告并独立复核其中的证书"""

import argparse
from pathlib import Path
from typing import Any

import orjson
from pydantic import ValidationError

from app.commands import COMMANDS
from app.core.category_o import verify_serialized_lift
from app.core.exceptions import OPrimeError, SpecError
from app.core.rootsys import Weight, build_root_system, parse_cartan
from app.core.utils.logger import setup_logger
from app.schemas.common import CheckStatus, ReportEnvelope
from app.services.algebra_service import load_spec
from app.services.report import make_report

logger = setup_logger("recheck")


def _normalize(payload: dict[str, Any]) -> Any:
    """经过一次 JSON 往返，使元组与列表等价"""
    return orjson.loads(orjson.dumps(payload, option=orjson.OPT_SORT_KEYS))


def verify_chain(request: dict[str, Any], payload: dict[str, Any]) -> bool:
    """按报告中的链逐步复核点反射"""
    if not payload.get("chain"):
        return True
    spec = load_spec(path=request.get("spec"), cartan=request.get("cartan"))
    r = build_root_system(parse_cartan(spec.cartan))
    by_label = {r.root_label(beta): beta for beta in r.positive_roots}
    current = Weight.parse(payload["lam"])
    for label, weight in payload["chain"]:
        beta = by_label.get(label)
        if beta is None:
            return False
        nxt = Weight.parse(weight)
        if r.dot_reflect(current, beta) != nxt or not r.dominance_leq(nxt, current):
            return False
        current = nxt
    return current == Weight.parse(payload["mu"])


def _certificates(saved: ReportEnvelope) -> dict[str, bool]:
    payload = saved.payload
    checks: dict[str, bool] = {}
    if saved.command == "witness":
        checks["full_system"] = verify_serialized_lift(payload["full"])
        checks["g0_system"] = verify_serialized_lift(payload["g0"])
    if saved.command in ("linkage", "embed"):
        checks["chain"] = verify_chain(saved.request, payload)
    return checks


def load_report(path: str) -> ReportEnvelope:
    file = Path(path)
    if not file.is_file():
        raise SpecError(f"report file not found: {path}", {"file": path})
    try:
        return ReportEnvelope.model_validate(orjson.loads(file.read_bytes()))
    except orjson.JSONDecodeError as e:
        raise SpecError(f"cannot parse report: {e}", {"file": path, "line": e.lineno, "column": e.colno}) from e
    except ValidationError as e:
        raise SpecError("not a report file", {"file": path, "errors": len(e.errors())}) from e


def recheck(path: str) -> ReportEnvelope:
    """重放请求并比较 payload；证书只用报告中的数据复核"""
    saved = load_report(path)
    handler = COMMANDS.get(saved.command)
    if handler is None:
        raise SpecError(f"report of unknown command {saved.command!r}")
    args = argparse.Namespace(command=saved.command, **saved.request)

    failures: list[str] = []
    try:
        result = handler(args)
        replayed_status = CheckStatus.FAILED if result.failures else CheckStatus.PASSED
        same_payload = _normalize(result.payload) == _normalize(saved.payload)
    except OPrimeError as e:
        replayed_status = CheckStatus.ERROR if e.exit_code == 2 else CheckStatus.FAILED
        same_payload = saved.error is not None and saved.error.kind == e.kind
    if not same_payload:
        failures.append("replayed payload differs from the saved payload")
    if replayed_status != saved.status:
        failures.append(f"replayed status {replayed_status.value} differs from saved {saved.status.value}")

    certificates = _certificates(saved) if saved.error is None else {}
    failures.extend(f"certificate {name} failed" for name, ok in sorted(certificates.items()) if not ok)
    logger.info(f"复核 {path}: {'通过' if not failures else '失败'}")
    return make_report(
        "recheck",
        {"file": str(path)},
        {
            "command": saved.command,
            "payload_equal": same_payload,
            "status": saved.status.value,
            "certificates": certificates,
        },
        failures,
    )
