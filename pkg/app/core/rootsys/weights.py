"""权：基本权坐标下的有理向量（coords[i] = ⟨λ, αᵢ∨⟩）"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

from app.core.exceptions import DimensionError
from app.core.utils.rational import format_coord, format_rational, parse_rational


@dataclass(frozen=True, order=True)
class Weight:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def of(cls, *values: Union[int, str, Fraction]) -> "Weight":
        return cls(tuple(parse_rational(v) for v in values))

    @classmethod
    def parse(cls, values: Iterable) -> "Weight":
        return cls(tuple(parse_rational(v) for v in values))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((Fraction(0),) * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def _check(self, other: "Weight") -> None:
        if len(other.coords) != len(self.coords):
            raise DimensionError(
                f"weights of rank {len(self.coords)} and {len(other.coords)}"
            )

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def scale(self, c: Union[int, Fraction]) -> "Weight":
        return Weight(tuple(Fraction(c) * a for a in self.coords))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coords)

    def is_dominant_integral(self) -> bool:
        return self.is_integral() and all(a >= 0 for a in self.coords)

    def to_json(self) -> list:
        return [format_coord(a) for a in self.coords]

    def __str__(self) -> str:
        return "(" + ",".join(format_rational(a) for a in self.coords) + ")"
