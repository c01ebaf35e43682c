"""
命令行测试：报告外壳、退出码、输出格式、描述文件与 --recheck
"""
import orjson
import pytest

from app.main import run


def invoke(capsys, *argv):
    """运行 CLI，返回 (退出码, 解析后的 JSON 报告)"""
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, orjson.loads(out)


class TestLinkage:
    """linkage 子命令"""

    def test_linked(self, capsys):
        code, report = invoke(capsys, "linkage", "--cartan", "A1", "--mu", "[-4]", "--lam", "[2]")
        assert code == 0
        assert report["status"] == "passed"
        assert report["payload"]["linked"] is True
        assert report["payload"]["chain"] == [["a1", [-4]]]
        assert report["request"]["cartan"] == "A1"

    def test_not_linked_is_not_a_failure(self, capsys):
        code, report = invoke(capsys, "linkage", "--cartan", "A1", "--mu", "[2]", "--lam", "[-4]")
        assert code == 0
        assert report["payload"]["linked"] is False
        assert report["payload"]["chain"] is None

    def test_a2_matrix_form(self, capsys):
        code, report = invoke(
            capsys, "linkage", "--cartan", "[[2,-1],[-1,2]]", "--mu", "[-3,0]", "--lam", "[0,0]"
        )
        assert code == 0
        assert [label for label, _ in report["payload"]["chain"]] == ["a2", "a1"]

    def test_output_is_deterministic(self, capsys):
        argv = ["linkage", "--cartan", "A2", "--mu", "[-3,0]", "--lam", "[0,0]"]
        run(argv)
        first = capsys.readouterr().out
        run(argv)
        assert capsys.readouterr().out == first


class TestInputErrors:
    """输入错误：退出码 2 与错误报告"""

    def test_no_command(self, capsys):
        assert run([]) == 2

    def test_float_weight_rejected(self, capsys):
        code, report = invoke(capsys, "linkage", "--cartan", "A1", "--mu", "[1.5]", "--lam", "[2]")
        assert code == 2
        assert report["status"] == "error"
        assert report["error"]["kind"] == "SpecError"

    def test_wrong_rank(self, capsys):
        code, report = invoke(capsys, "linkage", "--cartan", "A2", "--mu", "[0]", "--lam", "[0,0]")
        assert code == 2
        assert report["error"]["kind"] == "DimensionError"

    def test_affine_cartan(self, capsys):
        code, report = invoke(capsys, "roots", "--cartan", "[[2,-2],[-2,2]]")
        assert code == 2
        assert report["error"]["kind"] == "FiniteTypeError"

    def test_invalid_g(self, capsys):
        """g 在 J₂ 上不为零"""
        code, report = invoke(
            capsys, "singular", "--cartan", "A1", "--radical", "[[2]]", "--g", "[[1,0,0]]",
            "--lam", "[2]", "--mu", "[-4]", "--depth", "6",
        )
        assert code == 2
        assert report["error"]["kind"] == "InvalidFunctional"

    def test_missing_cartan(self, capsys):
        code, report = invoke(capsys, "linkage", "--mu", "[0]", "--lam", "[0]")
        assert code == 2
        assert report["error"]["kind"] == "SpecError"


class TestModuleCommands:
    """Verma 模相关子命令"""

    def test_singular(self, capsys):
        code, report = invoke(
            capsys, "singular", "--cartan", "A1", "--radical", "[[0]]", "--g", "[3]",
            "--lam", "[2]", "--mu", "[-4]", "--depth", "6",
        )
        assert code == 0
        assert report["payload"]["dim"] == 1
        assert report["payload"]["vectors"] == ["f^3 w"]
        assert report["payload"]["g"] == [3]

    def test_singular_at_window_bottom(self, capsys):
        """sl₂ ⋉ L(2)：−4 在深度 3 的窗口底部，u3 的目标越界也能判定"""
        code, report = invoke(
            capsys, "singular", "--cartan", "A1", "--radical", "[[2]]",
            "--lam", "[2]", "--mu", "[-4]", "--depth", "3",
        )
        assert code == 0
        assert report["payload"]["vectors"] == ["f^3 w"]

    def test_singular_with_formula(self, capsys):
        code, report = invoke(
            capsys, "singular", "--cartan", "A1", "--radical", "[[0]]", "--g", "[3]",
            "--lam", "[2]", "--mu", "[-4]", "--depth", "6", "--simple", "1",
        )
        assert code == 0
        assert report["payload"]["formula"]["n"] == 3

    def test_truncation_is_a_computation_error(self, capsys):
        """窗口太浅：退出码 1"""
        code, report = invoke(
            capsys, "singular", "--cartan", "A1", "--radical", "[[0]]", "--g", "[3]",
            "--lam", "[2]", "--mu", "[-4]", "--depth", "2",
        )
        assert code == 1
        assert report["status"] == "failed"
        assert report["error"]["kind"] == "TruncationError"

    def test_verma_dim_a2(self, capsys):
        code, report = invoke(capsys, "verma-dim", "--cartan", "A2", "--lam", "[1,0]", "--depth", "3")
        assert code == 0
        dims = {tuple(row["drop"]): row["dim"] for row in report["payload"]["components"]}
        assert dims[(1, 1)] == 2
        assert dims[(0, 0)] == 1

    def test_nilpotency_of_tower(self, capsys):
        code, report = invoke(
            capsys, "nilpotency", "--cartan", "A1", "--radical", "[[2]]",
            "--module", "tower", "--gamma", "[2]", "--k", "2", "--u", "u3",
        )
        assert code == 0
        assert report["payload"]["degree"] == 2

    def test_axioms(self, capsys):
        code, report = invoke(
            capsys, "axioms", "--cartan", "A1", "--radical", "[[0]]", "--g", "[3]", "--lam", "[2]", "--depth", "6"
        )
        assert code == 0
        assert report["failures"] == []

    def test_embed(self, capsys):
        code, report = invoke(
            capsys, "embed", "--cartan", "A1", "--radical", "[[0]]", "--g", "[3]",
            "--lam", "[2]", "--mu", "[-4]", "--depth", "6",
        )
        assert code == 0
        assert report["payload"]["generator_image"] == "f^3 w"
        assert report["payload"]["injective"] is True

    def test_dump(self, capsys):
        code, report = invoke(
            capsys, "dump", "--cartan", "A1", "--radical", "[[0]]", "--g", "[3]", "--lam", "[2]", "--depth", "3"
        )
        assert code == 0
        payload = report["payload"]
        assert payload["name"] == "M((2),g=(3))"
        assert payload["components"][0] == {"weight": [2], "dim": 1, "basis": ["w"]}
        assert payload["actions"]

    def test_tensor_filtration(self, capsys):
        """M(−1) ⊗ L(1) 的标准滤过"""
        code, report = invoke(
            capsys, "filtration", "--cartan", "A1", "--radical", "[[0]]", "--g", "[3]", "--depth", "6",
            "--module", "tensor", "--lam", "[-1]", "--tensor-weight", "[1]",
        )
        assert code == 0
        assert [step["weight"] for step in report["payload"]["steps"]] == [[0], [-2]]

    def test_stalled_g0_peeling_fails(self, capsys, monkeypatch):
        """g₀ 层面剥离卡住时长度无法比较，命令以 1 退出"""
        from app.core.category_o import filtrations
        from app.core.exceptions import NoStandardFiltration

        original = filtrations._peel

        def stalling(m, include_radical):
            if not include_radical:
                raise NoStandardFiltration("stalled")
            return original(m, include_radical)

        monkeypatch.setattr(filtrations, "_peel", stalling)
        code, report = invoke(
            capsys, "filtration", "--cartan", "A1", "--radical", "[[0]]", "--g", "[3]", "--depth", "6",
            "--module", "verma", "--lam", "[2]",
        )
        assert code == 1
        assert report["status"] == "failed"
        assert report["payload"]["g0_length"] is None
        assert report["payload"]["lengths_agree"] is False
        assert any("stalled" in f for f in report["failures"])

    def test_missing_module_weight(self, capsys):
        code, report = invoke(capsys, "axioms", "--cartan", "A1", "--radical", "[[0]]", "--module", "tower")
        assert code == 2
        assert report["error"]["kind"] == "SpecError"


class TestAlgebraAndProjectiveCommands:
    """roots、tower、reciprocity"""

    def test_roots_with_orbit(self, capsys):
        code, report = invoke(capsys, "roots", "--cartan", "A2", "--lam", "[0,0]")
        assert code == 0
        assert report["payload"]["root_system"]["rank"] == 2
        assert len(report["payload"]["dot_orbit"]) == 6

    def test_roots_with_algebra(self, capsys):
        code, report = invoke(capsys, "roots", "--cartan", "A1", "--radical", "[[0]]", "--g", "[3]")
        assert code == 0
        assert "algebra" in report["payload"]

    def test_tower(self, capsys):
        code, report = invoke(
            capsys, "tower", "--cartan", "A1", "--radical", "[[0]]", "--g", "[3]", "--gamma", "[1]", "--k-max", "3"
        )
        assert code == 0
        assert [level["nilpotency_degree"] for level in report["payload"]["levels"]] == [1, 2, 3]

    def test_tower_k_max(self, capsys):
        code, report = invoke(
            capsys, "tower", "--cartan", "A1", "--radical", "[[0]]", "--gamma", "[1]", "--k-max", "0"
        )
        assert code == 2

    @pytest.mark.slow
    def test_reciprocity(self, capsys):
        code, report = invoke(
            capsys, "reciprocity", "--cartan", "A1", "--radical", "[[0]]", "--g", "[3]", "--lam", "[0]", "--depth", "12"
        )
        assert code == 0
        assert report["payload"]["P_side"] == [[1, 1], [0, 1]]
        assert report["payload"]["equal"] is True


class TestOutputFormats:
    """JSON 与表格输出"""

    def test_table(self, capsys):
        code = run(["--output", "table", "linkage", "--cartan", "A1", "--mu", "[-4]", "--lam", "[2]"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.startswith("linkage: passed")
        assert "linked" in out

    def test_table_error(self, capsys):
        code = run(["--output", "table", "linkage", "--cartan", "A2", "--mu", "[0]", "--lam", "[0,0]"])
        out = capsys.readouterr().out
        assert code == 2
        assert "DimensionError" in out


class TestSpecFile:
    """--spec 描述文件与命令行参数的合并"""

    def test_spec_file(self, capsys, gl2_spec_file):
        code, report = invoke(capsys, "singular", "--spec", str(gl2_spec_file), "--lam", "[2]", "--mu", "[-4]")
        assert code == 0
        assert report["payload"]["module"] == "M((2),g=(3))"

    def test_command_line_overrides_file(self, capsys, gl2_spec_file):
        code, report = invoke(
            capsys, "singular", "--spec", str(gl2_spec_file), "--lam", "[2]", "--mu", "[-4]", "--g", "[5]"
        )
        assert code == 0
        assert report["payload"]["module"] == "M((2),g=(5))"

    def test_broken_spec_file(self, capsys, broken_spec_file):
        code, report = invoke(capsys, "singular", "--spec", str(broken_spec_file), "--lam", "[2]", "--mu", "[0]")
        assert code == 2
        assert report["error"]["kind"] == "SpecError"
        assert "line" in report["error"]["details"]

    def test_missing_spec_file(self, capsys, temp_dir):
        code, report = invoke(capsys, "roots", "--spec", str(temp_dir / "absent.json"))
        assert code == 2


class TestRecheck:
    """--recheck 重放保存的报告"""

    def test_recheck_linkage(self, capsys, temp_dir):
        run(["linkage", "--cartan", "A2", "--mu", "[-3,0]", "--lam", "[0,0]"])
        saved = temp_dir / "linkage.json"
        saved.write_text(capsys.readouterr().out, encoding="utf-8")

        code, report = invoke(capsys, "--recheck", str(saved))
        assert code == 0
        assert report["payload"]["payload_equal"] is True
        assert report["payload"]["certificates"] == {"chain": True}

    def test_tampered_chain(self, capsys, temp_dir):
        run(["linkage", "--cartan", "A1", "--mu", "[-4]", "--lam", "[2]"])
        data = orjson.loads(capsys.readouterr().out)
        data["payload"]["chain"] = [["a1", [-6]]]
        saved = temp_dir / "tampered.json"
        saved.write_bytes(orjson.dumps(data))

        code, report = invoke(capsys, "--recheck", str(saved))
        assert code == 1
        assert report["payload"]["certificates"] == {"chain": False}

    @pytest.mark.slow
    def test_recheck_witness(self, capsys, temp_dir):
        run(["witness", "--cartan", "A1", "--radical", "[[0]]", "--g", "[3]", "--lam", "[0]", "--depth", "8"])
        saved = temp_dir / "witness.json"
        saved.write_text(capsys.readouterr().out, encoding="utf-8")

        code, report = invoke(capsys, "--recheck", str(saved))
        assert code == 0
        assert report["payload"]["certificates"] == {"full_system": True, "g0_system": True}

    def test_not_a_report(self, capsys, broken_spec_file):
        code, report = invoke(capsys, "--recheck", str(broken_spec_file))
        assert code == 2
        assert report["command"] == "recheck"


class TestVerifyAll:
    """verify-all 子命令"""

    def test_single_check(self, capsys):
        code, report = invoke(capsys, "verify-all", "--checks", "04", "--workers", "1")
        assert code == 0
        assert report["payload"]["total"] == 1
        assert report["payload"]["checks"][0]["name"] == "04-g-constraints"

    def test_unknown_check(self, capsys):
        code, report = invoke(capsys, "verify-all", "--checks", "99")
        assert code == 2
        assert report["error"]["kind"] == "SpecError"
