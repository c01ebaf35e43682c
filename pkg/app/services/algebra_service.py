"""代数描述的加载、解析与缓存"""

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Optional

import orjson
from pydantic import ValidationError

from app.config import default_depth
from app.core.exceptions import DimensionError, SpecError
from app.core.glie import GenReductiveAlgebra, GFunctional, build_algebra, from_summands, require_g
from app.core.pbwmod import check_depth
from app.core.rootsys import RootSystem, Weight, build_root_system, parse_cartan
from app.core.utils.logger import setup_logger
from app.core.utils.rational import parse_vector
from app.schemas.algebra import AlgebraSpec, WeightInput

logger = setup_logger("algebra_service")


@dataclass(frozen=True)
class AlgebraContext:
    """一次请求用到的代数、泛函与默认深度"""

    spec: AlgebraSpec
    root_system: RootSystem
    algebra: GenReductiveAlgebra
    g: GFunctional
    depth: int

    def weight(self, text: Optional[str], name: str) -> Weight:
        if text is None:
            raise SpecError(f"--{name} is required")
        return parse_weight(text, self.root_system.rank, name)


def _loads(text: str, name: str) -> Any:
    try:
        return orjson.loads(text)
    except orjson.JSONDecodeError as e:
        raise SpecError(
            f"cannot parse {name}: {e}",
            {"argument": name, "line": e.lineno, "column": e.colno},
        ) from e


def parse_weight(text: str, rank: int, name: str = "weight") -> Weight:
    """'[-1/2, 3]' 形式的权"""
    try:
        coords = WeightInput(coords=_loads(text, name)).coords
        weight = Weight(parse_vector(coords))
    except ValidationError as e:
        raise SpecError(f"invalid {name}: {text}", {"argument": name, "errors": e.errors()}) from e
    except ValueError as e:
        raise SpecError(f"invalid {name}: {e}", {"argument": name}) from e
    if weight.rank != rank:
        raise DimensionError(f"--{name} has {weight.rank} coordinates, rank is {rank}")
    return weight


def load_spec(
    path: Optional[str] = None,
    cartan: Optional[str] = None,
    radical: Optional[str] = None,
    g: Optional[str] = None,
    depth: Optional[int] = None,
) -> AlgebraSpec:
    """描述文件与命令行参数合并（命令行优先）

    Raises:
        SpecError: 文件缺失、JSON 无法解析或字段不合法（附出错位置）
    """
    data: dict[str, Any] = {}
    if path:
        file = Path(path)
        if not file.is_file():
            raise SpecError(f"algebra spec file not found: {path}", {"file": path})
        data = _loads(file.read_text(encoding="utf-8"), str(file))
        if not isinstance(data, dict):
            raise SpecError("algebra spec must be a JSON object", {"file": path})
    if cartan is not None:
        data["cartan"] = _loads(cartan, "cartan") if cartan.lstrip().startswith("[") else cartan
    if radical is not None:
        data["radical"] = _loads(radical, "radical")
    if g is not None:
        data["g"] = _loads(g, "g")
    if depth is not None:
        data["depth"] = depth
    if "cartan" not in data:
        raise SpecError("no Cartan type given (use --cartan or --spec)")
    try:
        return AlgebraSpec(**data)
    except ValidationError as e:
        raise SpecError(
            "invalid algebra spec",
            {"errors": [{"loc": list(err["loc"]), "msg": err["msg"]} for err in e.errors()]},
        ) from e


def _key(value: Any) -> Any:
    if isinstance(value, list):
        return tuple(_key(v) for v in value)
    return value


@lru_cache(maxsize=16)
def _algebra(cartan_key: Any, radical_key: tuple) -> GenReductiveAlgebra:
    cartan = cartan_key if isinstance(cartan_key, str) else [list(row) for row in cartan_key]
    r = build_root_system(parse_cartan(cartan))
    radical = [Weight(parse_vector(w)) for w in radical_key]
    return build_algebra(r, radical)


def resolve(spec: AlgebraSpec) -> AlgebraContext:
    """构造代数（按描述缓存）并验证 g"""
    a = _algebra(_key(spec.cartan), _key(spec.radical))
    g = require_g(a, from_summands(a, spec.g)) if spec.g is not None else require_g(a, None)
    depth = check_depth(spec.depth if spec.depth is not None else default_depth(a.rank))
    logger.debug(f"代数 dim = {a.dim}，g = {g}，depth = {depth}")
    return AlgebraContext(spec=spec, root_system=a.root_system, algebra=a, g=g, depth=depth)


def context_from_args(args) -> AlgebraContext:
    """从 argparse 参数得到上下文（--spec 与内联参数）"""
    spec = load_spec(
        path=getattr(args, "spec", None),
        cartan=getattr(args, "cartan", None),
        radical=getattr(args, "radical", None),
        g=getattr(args, "g", None),
        depth=getattr(args, "depth", None),
    )
    return resolve(spec)
