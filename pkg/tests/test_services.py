"""
服务层测试：配置、代数描述加载、报告组装、验证套件
"""
import pytest

from app.config import default_depth, effective_depth_limit, settings
from app.core.exceptions import DimensionError, InvalidFunctional, SpecError, TruncationError
from app.schemas.common import CheckStatus
from app.services.algebra_service import load_spec, parse_weight, resolve
from app.services.report import error_report, make_report, to_json, to_table
from app.services.verification import run_suite


class TestConfig:
    """默认深度与深度上限"""

    def test_default_depths(self):
        assert default_depth(1) == settings.default_depth_rank1 == 12
        assert default_depth(2) == settings.default_depth_rank2 == 6
        assert default_depth(5) == settings.default_depth_higher == 4

    def test_depth_limit_from_environment(self, monkeypatch):
        monkeypatch.setenv("OPRIME_DEPTH_LIMIT", "10")
        assert effective_depth_limit() == 10

    def test_depth_limit_ignores_garbage(self, monkeypatch):
        monkeypatch.setenv("OPRIME_DEPTH_LIMIT", "deep")
        assert effective_depth_limit() == settings.oprime_depth_limit


class TestLoadSpec:
    """描述文件与命令行参数"""

    def test_inline(self):
        spec = load_spec(cartan="A1", radical="[[0]]", g='["1/2"]', depth=4)
        assert spec.cartan == "A1"
        assert spec.g == ["1/2"]

    def test_matrix_cartan(self):
        spec = load_spec(cartan="[[2,-1],[-1,2]]")
        assert spec.cartan == [[2, -1], [-1, 2]]

    def test_file(self, gl2_spec_file):
        spec = load_spec(path=str(gl2_spec_file))
        assert spec.depth == 8
        assert spec.radical == [[0]]

    def test_command_line_wins(self, gl2_spec_file):
        spec = load_spec(path=str(gl2_spec_file), depth=3, g="[7]")
        assert spec.depth == 3
        assert spec.g == [7]

    def test_missing_cartan(self):
        with pytest.raises(SpecError):
            load_spec(radical="[[0]]")

    def test_parse_error_location(self, broken_spec_file):
        with pytest.raises(SpecError) as exc:
            load_spec(path=str(broken_spec_file))
        assert "line" in exc.value.details

    def test_float_rejected(self):
        with pytest.raises(SpecError):
            load_spec(cartan="A1", radical="[[0]]", g="[0.5]")

    def test_non_positive_depth(self):
        with pytest.raises(SpecError):
            load_spec(cartan="A1", depth=0)


class TestResolve:
    """代数上下文"""

    def test_default_depth_by_rank(self):
        ctx = resolve(load_spec(cartan="A2", radical="[[0,0]]"))
        assert ctx.depth == 6
        assert ctx.algebra.dim == 9
        assert ctx.g.is_zero()

    def test_mixed_g(self):
        ctx = resolve(load_spec(cartan="A1", radical="[[0],[2]]", g="[5, [0,0,0]]"))
        assert ctx.g(ctx.algebra.u(0)) == 5

    def test_invalid_g(self):
        with pytest.raises(InvalidFunctional):
            resolve(load_spec(cartan="A1", radical="[[2]]", g="[[0,1,0]]"))

    def test_weight_rank(self):
        with pytest.raises(DimensionError):
            parse_weight("[1]", 2)

    def test_rational_weight(self):
        assert parse_weight('["-1/2", 3]', 2).to_json() == ["-1/2", 3]


class TestReport:
    """报告外壳与输出"""

    def test_status_and_exit_code(self):
        assert make_report("x", {}, {"a": 1}).exit_code == 0
        assert make_report("x", {}, {}, ["broken"]).status == CheckStatus.FAILED
        assert error_report("x", {}, SpecError("bad")).exit_code == 2
        assert error_report("x", {}, TruncationError("edge")).exit_code == 1

    def test_json_keys_sorted(self):
        out = to_json(make_report("x", {"b": 1, "a": 2}, {"z": 0, "y": [1]}))
        text = out.decode()
        assert text.index('"a"') < text.index('"b"')
        assert text.endswith("\n")

    def test_table_expands_rows(self):
        report = make_report("x", {}, {"rows": [{"k": 1, "v": "a"}, {"k": 2, "v": "b"}], "total": 2})
        table = to_table(report)
        assert "[rows]" in table
        assert "total" in table


class TestVerificationSuite:
    """并发运行的验收检查"""

    def test_unknown_id(self):
        with pytest.raises(SpecError):
            run_suite(["42"])

    def test_fast_checks(self):
        results = run_suite(["01", "04", "05"], workers=2)
        assert [r.name.split("-")[0] for r in results] == ["01", "04", "05"]
        assert all(r.passed for r in results)

    @pytest.mark.slow
    def test_full_suite(self):
        results = run_suite()
        assert len(results) == 10
        failed = [r.name for r in results if not r.passed]
        assert not failed
