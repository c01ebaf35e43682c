"""J 上的线性泛函 g 及其合法性检查

合法的 g（g ∈ G）必须让一维 b-模 C_(λ,g) 成立：
g([h,u]) = 0，g([x,u]) = 0（x ∈ n₀），g([u,u']) = 0，从而 g 在 J₂ 上为零。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Optional, Sequence, Union

from app.core.exceptions import DimensionError, InvalidFunctional
from app.core.rootsys import Weight
from app.core.utils.rational import format_coord, format_rational, parse_rational

from .algebra import Combination, GenReductiveAlgebra


@dataclass(frozen=True)
class GFunctional:
    """g 在 J 的基上的取值（下标 0 对应全局下标 radical_start）"""

    fingerprint: str
    radical_start: int
    values: tuple[Fraction, ...]

    def __call__(self, x: int) -> Fraction:
        k = x - self.radical_start
        if not 0 <= k < len(self.values):
            raise DimensionError(f"g is only defined on the radical, not on basis index {x}")
        return self.values[k]

    def evaluate(self, v: Mapping[int, Fraction]) -> Fraction:
        """g 在线性组合上的值（g₀ 分量不计入）"""
        total = Fraction(0)
        for x, c in v.items():
            k = x - self.radical_start
            if 0 <= k < len(self.values):
                total += c * self.values[k]
        return total

    def is_zero(self) -> bool:
        return not any(self.values)

    def to_json(self) -> list:
        return [format_coord(v) for v in self.values]

    def __str__(self) -> str:
        return "(" + ",".join(format_rational(v) for v in self.values) + ")"


@dataclass(frozen=True)
class Violation:
    """一条失败的约束：约束名、涉及的基元素、g 的取值"""

    constraint: str
    elements: tuple[str, ...]
    value: Fraction

    def to_dict(self) -> dict[str, Any]:
        return {
            "constraint": self.constraint,
            "elements": list(self.elements),
            "value": format_coord(self.value),
        }


@dataclass
class GValidation:
    functional: Optional[GFunctional]
    violations: list[Violation] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.violations


def _check_against(
    a: GenReductiveAlgebra, value_of: Mapping[int, Fraction]
) -> list[Violation]:
    def g(v: Combination) -> Fraction:
        return sum((c * value_of.get(x, 0) for x, c in v.items()), Fraction(0))

    violations: list[Violation] = []
    for x in a.j2:
        if value_of.get(x, 0):
            violations.append(Violation("vanishes on J2", (a.labels[x],), value_of[x]))
    r = a.root_system
    checked = [a.h(i) for i in range(r.rank)] + [a.e(k) for k in range(r.num_positive)]
    for y in checked:
        for u in a.radical_indices:
            value = g(dict(a.bracket(y, u)))
            if value:
                name = "g([h,u]) = 0" if a.kind(y).value == "h" else "g([x,u]) = 0"
                violations.append(Violation(name, (a.labels[y], a.labels[u]), value))
    for u in a.radical_indices:
        for w in a.radical_indices:
            if u < w:
                value = g(dict(a.bracket(u, w)))
                if value:
                    violations.append(Violation("g([u,u']) = 0", (a.labels[u], a.labels[w]), value))
    return violations


def validate_g(
    a: GenReductiveAlgebra, values: Union[GFunctional, Sequence[Any]]
) -> GValidation:
    """检查 g ∈ G

    Args:
        values: J 基上的取值序列（长度 = dim J），或已有的 GFunctional

    Raises:
        DimensionError: 取值个数与 dim J 不符
    """
    if isinstance(values, GFunctional):
        if values.fingerprint != a.fingerprint:
            raise InvalidFunctional("functional belongs to a different algebra")
        raw = values.values
    else:
        raw = tuple(parse_rational(v) for v in values)
    if len(raw) != a.radical_dim:
        raise DimensionError(f"g has {len(raw)} values but dim J = {a.radical_dim}")
    value_of = {a.u(k): v for k, v in enumerate(raw)}
    violations = _check_against(a, value_of)
    functional = None
    if not violations:
        functional = GFunctional(a.fingerprint, a.g0_dim, raw)
    return GValidation(functional=functional, violations=violations)


def require_g(a: GenReductiveAlgebra, values: Union[GFunctional, Sequence[Any], None]) -> GFunctional:
    """validate_g 的严格版本：不合法时抛 InvalidFunctional；None 视为 g = 0"""
    if values is None:
        return zero_functional(a)
    result = validate_g(a, values)
    if not result.is_valid:
        raise InvalidFunctional(
            "g does not define a one-dimensional b-module",
            {"violations": [v.to_dict() for v in result.violations]},
        )
    return result.functional


def zero_functional(a: GenReductiveAlgebra) -> GFunctional:
    return GFunctional(a.fingerprint, a.g0_dim, (Fraction(0),) * a.radical_dim)


def from_summands(a: GenReductiveAlgebra, per_summand: Sequence[Any]) -> tuple[Fraction, ...]:
    """把按直和项给出的取值展开成 J 基上的取值

    每一项可以是一个数（只允许一维直和项）或长度等于直和项维数的列表。
    """
    if len(per_summand) != len(a.summands):
        raise DimensionError(
            f"g lists {len(per_summand)} summands but the radical has {len(a.summands)}"
        )
    values: list[Fraction] = []
    for s, entry in zip(a.summands, per_summand):
        if isinstance(entry, (list, tuple)):
            if len(entry) != s.dim:
                raise DimensionError(
                    f"summand {s.highest_weight} has dimension {s.dim}, got {len(entry)} values"
                )
            values.extend(parse_rational(v) for v in entry)
        elif s.dim == 1:
            values.append(parse_rational(entry))
        else:
            raise DimensionError(
                f"summand {s.highest_weight} has dimension {s.dim}; give a list of values"
            )
    return tuple(values)


@dataclass
class BorelCharacter:
    """一维 b-模 C_(λ,g) 的检查结果"""

    weight: Weight
    violations: list[Violation]

    @property
    def is_module(self) -> bool:
        return not self.violations


def borel_character(
    a: GenReductiveAlgebra, lam: Weight, values: Sequence[Any]
) -> BorelCharacter:
    """直接检查 ρ(h) = λ(h)、ρ(n₀) = 0、ρ(u) = g(u) 是否是 b = h ⊕ n₀ ⊕ J 的表示

    对 b 的每对基元素 x, y 检查 ρ([x,y]) = [ρ(x), ρ(y)] = 0。
    """
    a.root_system.check_weight(lam)
    raw = tuple(parse_rational(v) for v in values)
    if len(raw) != a.radical_dim:
        raise DimensionError(f"g has {len(raw)} values but dim J = {a.radical_dim}")
    r = a.root_system

    def rho(v: Mapping[int, Fraction]) -> Fraction:
        total = Fraction(0)
        for x, c in v.items():
            kind = a.kind(x).value
            if kind == "h":
                total += c * lam[x - a.h(0)]
            elif kind == "u":
                total += c * raw[x - a.g0_dim]
        return total

    borel = (
        [a.h(i) for i in range(r.rank)]
        + [a.e(k) for k in range(r.num_positive)]
        + list(a.radical_indices)
    )
    violations = []
    for p, x in enumerate(borel):
        for y in borel[p + 1 :]:
            value = rho(a.bracket(x, y))
            if value:
                violations.append(Violation("rho([x,y]) = 0", (a.labels[x], a.labels[y]), value))
    return BorelCharacter(weight=lam, violations=violations)
