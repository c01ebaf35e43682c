"""
测试配置和 Fixtures
"""
import tempfile
from pathlib import Path

import orjson
import pytest

from app.core.glie import build_algebra
from app.core.rootsys import Weight, build_root_system


@pytest.fixture
def temp_dir():
    """创建临时目录"""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture(scope="session")
def a1():
    """A1 根系"""
    return build_root_system("A1")


@pytest.fixture(scope="session")
def a2():
    """A2 根系"""
    return build_root_system("A2")


@pytest.fixture(scope="session")
def gl2(a1):
    """sl2 ⋉ L(0)：根基是一维中心（gl2 型）"""
    return build_algebra(a1, [Weight.of(0)])


@pytest.fixture(scope="session")
def sl2_adjoint(a1):
    """sl2 ⋉ L(2)：J = J₂ 是伴随表示"""
    return build_algebra(a1, [Weight.of(2)])


@pytest.fixture(scope="session")
def sl2_mixed(a1):
    """sl2 ⋉ (L(0) ⊕ L(2))"""
    return build_algebra(a1, [Weight.of(0), Weight.of(2)])


@pytest.fixture
def gl2_spec_file(temp_dir):
    """gl2 型代数的 JSON 描述文件"""
    spec = {"cartan": "A1", "radical": [[0]], "g": [3], "depth": 8}
    path = temp_dir / "gl2.json"
    path.write_bytes(orjson.dumps(spec))
    return str(path)


@pytest.fixture
def broken_spec_file(temp_dir):
    """语法错误的 JSON 文件"""
    path = temp_dir / "broken.json"
    path.write_text('{"cartan": "A1",\n  "radical": [[0]\n', encoding="utf-8")
    return str(path)
