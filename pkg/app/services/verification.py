"""
验收检查套件（verify-all）

每项检查是一个返回 CheckResult 的函数，互相独立；用线程池并发执行，
结果按编号排序，输出与调度顺序无关。
"""

import random
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence

from app.config import SAMPLE_SEED, VERIFY_WORKERS
from app.core.category_o import (
    j2_nilpotency_degree,
    jordan_tower_growth,
    jordan_witness,
    linkage_completeness,
    reciprocity_check_sl2,
    singular_vector_formula_check,
    standard_filtration,
    verify_serialized_lift,
)
from app.core.entities import CheckResult
from app.core.exceptions import OPrimeError, SpecError
from app.core.glie import GenReductiveAlgebra, build_algebra, from_summands, validate_g
from app.core.pbwmod import build_verma, direct_sum
from app.core.rootsys import Weight, build_root_system, kostant_partition, strongly_linked
from app.core.utils.logger import setup_logger

logger = setup_logger("verification")

Check = Callable[[], CheckResult]


def _algebra(cartan: str, radical: Sequence[Sequence[int]] = ()) -> GenReductiveAlgebra:
    return build_algebra(build_root_system(cartan), [Weight.of(*w) for w in radical])


def _gl2() -> GenReductiveAlgebra:
    return _algebra("A1", [[0]])


def check_linkage_sl2() -> CheckResult:
    a = _gl2()
    results = {str(n): linkage_completeness(a, Weight.of(n), [3], 12).passed for n in range(-5, 6)}
    return CheckResult("01-strong-linkage-sl2", all(results.values()), {"per_lambda": results})


def check_linkage_sl3() -> CheckResult:
    a = _algebra("A2")
    r = a.root_system
    report = linkage_completeness(a, Weight.of(0, 0), None, 6)
    chain = strongly_linked(r, Weight.of(-3, 0), Weight.of(0, 0))
    labels = [label for label, _ in chain.to_json(r)] if chain is not None else None
    return CheckResult(
        "02-strong-linkage-sl3",
        report.passed and labels == ["a2", "a1"],
        {"completeness": report.to_dict(), "chain_to_(-3,0)": labels},
    )


def _radicals(rank: int) -> dict[str, list[list[int]]]:
    two = [2] + [0] * (rank - 1)
    zero = [0] * rank
    return {"L(0)": [zero], "L(2)": [two], "L(0)+L(2)": [zero, two]}


def check_singular_formula() -> CheckResult:
    rng = random.Random(SAMPLE_SEED)
    checked, failed = 0, []
    grids = {
        "A1": [(n,) for n in range(0, 3)],
        "A2": [(p, q) for p in range(-1, 3) for q in range(-1, 3)],
    }
    for cartan, grid in grids.items():
        for name, radical in _radicals(len(grid[0])).items():
            a = _algebra(cartan, radical)
            per_summand = [rng.randint(-4, 4) if s.is_trivial else [0] * s.dim for s in a.summands]
            values = from_summands(a, per_summand)
            for coords in grid:
                lam = Weight.of(*coords)
                for i in range(a.rank):
                    if not 1 <= lam[i] + 1 <= 3:
                        continue
                    check = singular_vector_formula_check(a, lam, values, i)
                    checked += 1
                    if not check.passed:
                        failed.append({"cartan": cartan, "radical": name, "lambda": lam.to_json(), "i": i + 1})
    return CheckResult("03-singular-vector-formula", not failed and checked > 0, {"checked": checked, "failed": failed})


def check_g_constraints() -> CheckResult:
    a = _algebra("A1", [[0], [2]])
    rng = random.Random(SAMPLE_SEED)
    nontrivial = [u for s in a.summands if not s.is_trivial for u in range(s.start, s.stop)]
    mismatches, accepted = [], 0
    for _ in range(100):
        values = [rng.randint(-3, 3) for _ in range(a.radical_dim)]
        if rng.random() < 0.5:
            for u in nontrivial:
                values[u - a.g0_dim] = 0
        result = validate_g(a, values)
        expected = all(values[u - a.g0_dim] == 0 for u in nontrivial)
        if result.is_valid != expected:
            mismatches.append([str(v) for v in values])
            continue
        if not result.is_valid:
            continue
        accepted += 1
        g = result.functional
        for x in range(a.dim):
            for u in a.radical_indices:
                if x != u and g.evaluate(a.bracket(x, u)):
                    mismatches.append({"values": [str(v) for v in values], "pair": [a.labels[x], a.labels[u]]})
    return CheckResult("04-g-constraints", not mismatches, {"accepted": accepted, "mismatches": mismatches[:10]})


def check_j2_action_zero() -> CheckResult:
    a = _algebra("A1", [[2]])
    detail = {}
    for n in (0, 2, 5):
        m = build_verma(a, Weight.of(n), None, 8)
        zero = all(block.is_zero() for u in a.j2 for block in m.actions.get(u, {}).values())
        detail[str(n)] = {"j2_acts_by_zero": zero, "degree": j2_nilpotency_degree(m)}
    passed = all(d["j2_acts_by_zero"] and d["degree"] == 1 for d in detail.values())
    return CheckResult("05-j2-acts-by-zero", passed, detail)


def check_witness() -> CheckResult:
    a = _gl2()
    certificate = jordan_witness(a, Weight.of(2), [3], 12)
    data = certificate.to_dict()
    reverified = verify_serialized_lift(data["full"]) and verify_serialized_lift(data["g0"])
    return CheckResult(
        "06-nonliftability-witness",
        certificate.certifies_nonprojective and bool(certificate.radical_failures) and reverified,
        {
            "full_system": data["full_system"],
            "g0_system": data["g0_system"],
            "radical_failures": len(certificate.radical_failures),
            "reverified": reverified,
        },
    )


def check_tower() -> CheckResult:
    levels = jordan_tower_growth(_gl2(), Weight.of(1), [3], 6)
    return CheckResult(
        "07-jordan-tower",
        all(level.passed for level in levels),
        {"levels": [level.to_dict() for level in levels]},
    )


def check_reciprocity() -> CheckResult:
    report = reciprocity_check_sl2(_gl2(), [3], Weight.of(0), 12)
    return CheckResult(
        "08-bgg-reciprocity",
        report.holds and report.left == [[1, 1], [0, 1]] and report.generator_independence,
        report.to_dict(),
    )


def check_weight_spaces() -> CheckResult:
    a = _algebra("A2")
    lam = Weight.of(1, 0)
    m = build_verma(a, lam, None, 6)
    r = a.root_system
    bad = []
    for p in range(7):
        for q in range(7 - p):
            mu = r.weight_of_drop(lam, (p, q))
            if m.dim(mu) != kostant_partition(r, (p, q)):
                bad.append({"drop": [p, q], "dim": m.dim(mu)})
    return CheckResult("09-weight-space-oracle", not bad, {"mismatches": bad})


def check_filtration_lengths() -> CheckResult:
    a = _gl2()
    modules = [
        direct_sum([build_verma(a, Weight.of(2), [3], 8), build_verma(a, Weight.of(-1), [3], 8)]),
        build_verma(a, Weight.of(3), [3], 8),
    ]
    detail = []
    for m in modules:
        report = standard_filtration(m)
        detail.append(
            {
                "module": m.name,
                "length": report.length,
                "g0_length": report.g0_length,
                "lengths_agree": report.lengths_agree,
                "bracket_compatible": not m.bracket_failures(limit=1),
            }
        )
    passed = all(d["lengths_agree"] and d["bracket_compatible"] for d in detail)
    return CheckResult("10-framework-soundness", passed, {"modules": detail})


CHECKS: dict[str, Check] = {
    "01": check_linkage_sl2,
    "02": check_linkage_sl3,
    "03": check_singular_formula,
    "04": check_g_constraints,
    "05": check_j2_action_zero,
    "06": check_witness,
    "07": check_tower,
    "08": check_reciprocity,
    "09": check_weight_spaces,
    "10": check_filtration_lengths,
}


def _run(check_id: str) -> CheckResult:
    start = time.time()
    try:
        result = CHECKS[check_id]()
    except OPrimeError as e:
        logger.error(f"检查 {check_id} 出错: {e}")
        result = CheckResult(check_id, False, {"error": e.to_dict()})
    logger.info(f"检查 {result.name}: {'通过' if result.passed else '失败'}，耗时 {time.time() - start:.2f}s")
    return result


def run_suite(only: Optional[Sequence[str]] = None, workers: int = VERIFY_WORKERS) -> list[CheckResult]:
    """并发执行检查，按编号排序返回"""
    ids = sorted(CHECKS) if not only else sorted(set(only))
    unknown = [i for i in ids if i not in CHECKS]
    if unknown:
        raise SpecError(f"unknown check ids: {unknown}", {"known": sorted(CHECKS)})
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = list(pool.map(_run, ids))
    return sorted(results, key=lambda r: r.name)
