"""广义约化 Lie 代数 g = g₀ ⊕ J（J 交换、J 是 g₀-模）

基的顺序固定为：e_β（β ∈ Φ⁺ 按顺序），f_β，hᵢ，然后是 J 的基 u_k。
J 的基按不可约直和项排列，每个直和项内部是权基（最高权在前，最低权在最后）。
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

from app.core.entities import BasisKind
from app.core.exceptions import SpecError
from app.core.rootsys import RootSystem, Weight

Combination = dict[int, Fraction]


@dataclass(frozen=True)
class RadicalSummand:
    """J 的一个不可约直和项 L(γ)，全局下标区间 [start, stop)"""

    highest_weight: Weight
    start: int
    stop: int

    @property
    def dim(self) -> int:
        return self.stop - self.start

    @property
    def lowest(self) -> int:
        return self.stop - 1

    @property
    def is_trivial(self) -> bool:
        return self.highest_weight.is_zero()

    def __contains__(self, x: int) -> bool:
        return self.start <= x < self.stop


@dataclass(frozen=True, eq=False)
class GenReductiveAlgebra:
    root_system: RootSystem
    labels: tuple[str, ...]
    kinds: tuple[tuple[BasisKind, int], ...]
    weights: tuple[Weight, ...]
    summands: tuple[RadicalSummand, ...]
    j1: tuple[int, ...]
    j2: tuple[int, ...]
    # 反对称补全后的括号表：(x, y) → [x, y] 的展开
    _brackets: dict[tuple[int, int], Combination] = field(repr=False)
    _label_index: dict[str, int] = field(repr=False)

    # ---- 维数与下标 ----

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def rank(self) -> int:
        return self.root_system.rank

    @property
    def num_positive(self) -> int:
        return self.root_system.num_positive

    @property
    def g0_dim(self) -> int:
        return 2 * self.num_positive + self.rank

    @property
    def radical_dim(self) -> int:
        return self.dim - self.g0_dim

    @property
    def radical_indices(self) -> range:
        return range(self.g0_dim, self.dim)

    def e(self, k: int) -> int:
        return k

    def f(self, k: int) -> int:
        return self.num_positive + k

    def h(self, i: int) -> int:
        return 2 * self.num_positive + i

    def u(self, j: int) -> int:
        return self.g0_dim + j

    def e_simple(self, i: int) -> int:
        r = self.root_system
        return self.e(r.root_index(r.simple_root(i)))

    def f_simple(self, i: int) -> int:
        r = self.root_system
        return self.f(r.root_index(r.simple_root(i)))

    def kind(self, x: int) -> BasisKind:
        return self.kinds[x][0]

    def weight(self, x: int) -> Weight:
        return self.weights[x]

    def is_radical(self, x: int) -> bool:
        return x >= self.g0_dim

    def is_g0_only(self) -> bool:
        return self.radical_dim == 0

    def positive_indices(self) -> list[int]:
        """n = n₀ ⊕ J 的基"""
        return list(range(self.num_positive)) + list(self.radical_indices)

    def summand_of(self, x: int) -> RadicalSummand:
        for s in self.summands:
            if x in s:
                return s
        raise SpecError(f"{self.labels[x]} is not a radical basis element")

    def index(self, ref: Union[int, str]) -> int:
        """基元素的下标（接受下标或标签）"""
        if isinstance(ref, int) and not isinstance(ref, bool):
            if 0 <= ref < self.dim:
                return ref
            raise SpecError(f"basis index {ref} out of range 0..{self.dim - 1}")
        if isinstance(ref, str) and ref in self._label_index:
            return self._label_index[ref]
        raise SpecError(f"unknown basis element {ref!r}", {"labels": list(self.labels)})

    # ---- 括号 ----

    def bracket(self, x: int, y: int) -> Mapping[int, Fraction]:
        """[x, y] 的展开（只读）"""
        return self._brackets.get((x, y), _EMPTY)

    def bracket_combination(self, v: Mapping[int, Fraction], w: Mapping[int, Fraction]) -> Combination:
        out: Combination = {}
        for x, a in v.items():
            for y, b in w.items():
                for z, c in self.bracket(x, y).items():
                    total = out.get(z, 0) + a * b * c
                    if total:
                        out[z] = total
                    else:
                        out.pop(z, None)
        return out

    def ad_power(self, x: int, y: int, power: int) -> Combination:
        """(ad x)^power (y)"""
        current: Combination = {y: Fraction(1)}
        for _ in range(power):
            current = self.bracket_combination({x: Fraction(1)}, current)
            if not current:
                break
        return current

    def jacobi_failures(self, limit: int = 10) -> list[dict]:
        failures = []
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                ab = self.bracket(a, b)
                for c in range(b + 1, self.dim):
                    total = self.bracket_combination(ab, {c: Fraction(1)})
                    for v in (
                        self.bracket_combination(self.bracket(b, c), {a: Fraction(1)}),
                        self.bracket_combination(self.bracket(c, a), {b: Fraction(1)}),
                    ):
                        for z, coeff in v.items():
                            s = total.get(z, 0) + coeff
                            if s:
                                total[z] = s
                            else:
                                total.pop(z, None)
                    if total:
                        failures.append({"triple": [self.labels[a], self.labels[b], self.labels[c]]})
                        if len(failures) >= limit:
                            return failures
        return failures

    # ---- 描述 ----

    @property
    def fingerprint(self) -> str:
        payload = repr(
            (self.root_system.cartan, tuple(str(s.highest_weight) for s in self.summands))
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def format_combination(self, v: Mapping[int, Fraction]) -> str:
        return format_linear(self.labels, v)

    def describe(self) -> dict:
        table = []
        for (x, y), value in sorted(self._brackets.items()):
            if x < y:
                table.append([self.labels[x], self.labels[y], self.format_combination(value)])
        return {
            "dim": self.dim,
            "g0_dim": self.g0_dim,
            "basis": [
                {"label": label, "kind": self.kind(x).value, "weight": self.weights[x].to_json()}
                for x, label in enumerate(self.labels)
            ],
            "radical": [
                {
                    "highest_weight": s.highest_weight.to_json(),
                    "basis": list(self.labels[s.start : s.stop]),
                }
                for s in self.summands
            ],
            "j1": [self.labels[x] for x in self.j1],
            "j2": [self.labels[x] for x in self.j2],
            "brackets": table,
        }


_EMPTY: Mapping[int, Fraction] = {}


def format_linear(labels: Iterable[str], v: Union[Mapping[int, Fraction], Iterable[Fraction]]) -> str:
    """把线性组合写成 "2 e[a1] - 1/2 h1" 的形式"""
    labels = list(labels)
    items = sorted(v.items()) if isinstance(v, Mapping) else list(enumerate(v))
    parts = []
    for k, c in items:
        if not c:
            continue
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        coeff = "" if mag == 1 else f"{mag} "
        parts.append((sign, f"{coeff}{labels[k]}"))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, term in parts[1:]:
        text += f" {sign} {term}"
    return text


def basis_labels(r: RootSystem, radical_dim: int) -> list[str]:
    if r.rank == 1:
        g0 = ["e", "f", "h"]
    else:
        g0 = (
            [f"e[{r.root_label(b)}]" for b in r.positive_roots]
            + [f"f[{r.root_label(b)}]" for b in r.positive_roots]
            + [f"h{i + 1}" for i in range(r.rank)]
        )
    return g0 + [f"u{j + 1}" for j in range(radical_dim)]
